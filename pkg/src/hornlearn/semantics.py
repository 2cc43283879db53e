"""
Bounded Herbrand semantics: the term universe up to a depth bound, the
immediate-consequence step, the least-model fixpoint and coverage checks.

The true Herbrand universe is infinite; everything here is its depth-bounded
fragment. For simple programs (every body subterm occurs in the head) the
bounded least model equals the depth-restricted fragment of the true least
model, because no derivation of a shallow atom needs a deeper premise.

Rule heads whose instantiated depth exceeds the bound are silently not
derived (frontier truncation), which keeps the model well-defined as the
depth-<=D fragment.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .logic import (
    Clause,
    Fn,
    HornProgram,
    Literal,
    Term,
    Var,
    apply_to_literal,
    depth,
    is_ground_literal,
    literal_depth,
    literal_variables,
)
from .subsumption import match_literals
from .syntax import render_literal, render_term

# Universe enumeration is only a fallback for clauses whose head variables are
# not all bound by the body; learned programs never need it.
_UNIVERSE_CAP = 200_000


@dataclass(frozen=True)
class BoundedModel:
    """The least set of ground atoms (depth <= depth_bound) closed under the
    program's rules restricted to the bound."""

    depth_bound: int
    atoms: frozenset[Literal]
    saturated: bool

    def __contains__(self, a: Literal) -> bool:
        return a in self.atoms

    def sorted_atoms(self) -> list[Literal]:
        return sorted(self.atoms, key=lambda a: (a.predicate, literal_depth(a), render_literal(a)))


def bounded_universe(
    signature: frozenset[tuple[str, int]] | set[tuple[str, int]], depth_bound: int
) -> frozenset[Term]:
    """All ground terms over the signature with depth <= depth_bound.
    Depth counts nodes: constants have depth 1."""
    if depth_bound < 1:
        raise ValueError("depth bound must be a positive integer")
    constants = sorted(name for name, arity in signature if arity == 0)
    functions = sorted((name, arity) for name, arity in signature if arity > 0)
    if not constants:
        raise ValueError("signature has no constant: the universe would be empty")

    by_depth: dict[int, set[Term]] = {1: {Fn(name) for name in constants}}
    all_terms: set[Term] = set(by_depth[1])
    for d in range(2, depth_bound + 1):
        new: set[Term] = set()
        shallower = list(all_terms)
        for name, arity in functions:
            for args in product(shallower, repeat=arity):
                if 1 + max(depth(a) for a in args) == d:
                    new.add(Fn(name, args))
                    if len(all_terms) + len(new) > _UNIVERSE_CAP:
                        raise RuntimeError(
                            f"bounded universe exceeds {_UNIVERSE_CAP} terms at depth {d}; "
                            "lower the depth bound"
                        )
        by_depth[d] = new
        all_terms |= new
        if not new:
            break
    return frozenset(all_terms)


def _unbound_head_vars(clause: Clause) -> frozenset[Var]:
    body_vars: set[Var] = set()
    for b in clause.body:
        body_vars |= literal_variables(b)
    return literal_variables(clause.head) - body_vars


def _universe_for(
    p: HornProgram,
    depth_bound: int,
    signature: frozenset[tuple[str, int]] | None = None,
) -> frozenset[Term] | None:
    """A materialized universe is needed only when some head variable is not
    bound by its body; learned programs are range-restricted and skip this.
    An explicit signature widens the term language beyond the program's own
    symbols (the ambient language is fixed, not per-program)."""
    if not any(_unbound_head_vars(c) for c in p):
        return None
    return bounded_universe(signature if signature is not None else p.signature(), depth_bound)


def _ground_clause_instances(
    clause: Clause, atoms: frozenset[Literal], universe: frozenset[Term] | None
) -> list[Literal]:
    """Heads of ground instances whose bodies hold in `atoms`.

    Bodies are grounded by matching body atoms against the current atom set;
    head variables not bound by the body fall back to universe enumeration.
    """
    bindings: list[dict[Var, Term]] = [{}]
    for b in clause.body:
        next_bindings: list[dict[Var, Term]] = []
        for theta in bindings:
            for a in atoms:
                extended = match_literals(b, a, theta)
                if extended is not None:
                    next_bindings.append(dict(extended))
        bindings = next_bindings
        if not bindings:
            return []

    head = clause.head
    heads: list[Literal] = []
    for theta in bindings:
        instantiated = apply_to_literal(head, theta)
        free = literal_variables(instantiated)
        if not free:
            heads.append(instantiated)
            continue
        if universe is None:
            raise RuntimeError(
                "clause head has variables not bound by the body and no universe "
                f"was supplied: {render_literal(head)}"
            )
        free_sorted = sorted(free, key=lambda v: v.name)
        for values in product(sorted(universe, key=render_term), repeat=len(free_sorted)):
            full = dict(theta)
            full.update(zip(free_sorted, values))
            heads.append(apply_to_literal(head, full))
    return heads


def tp_step(
    p: HornProgram,
    atoms: frozenset[Literal],
    depth_bound: int,
    universe: frozenset[Term] | None = None,
) -> frozenset[Literal]:
    """One immediate-consequence round: atoms plus every rule-head instance
    whose body holds in atoms, truncated at the depth bound. Monotone and
    inflationary."""
    if universe is None:
        universe = _universe_for(p, depth_bound)
    out = set(atoms)
    for clause in p:
        for h in _ground_clause_instances(clause, atoms, universe):
            if literal_depth(h) <= depth_bound:
                out.add(h)
    return frozenset(out)


def least_model_bounded(
    p: HornProgram,
    depth_bound: int,
    signature: frozenset[tuple[str, int]] | None = None,
) -> BoundedModel:
    """Iterate tp_step from the empty set to its fixpoint (the bounded base is
    finite and the step is inflationary and monotone, so this terminates)."""
    universe = _universe_for(p, depth_bound, signature)
    atoms: frozenset[Literal] = frozenset()
    while True:
        nxt = tp_step(p, atoms, depth_bound, universe)
        if nxt == atoms:
            return BoundedModel(depth_bound, atoms, saturated=True)
        atoms = nxt


def _term_signature(t: Term) -> set[tuple[str, int]]:
    if isinstance(t, Var):
        return set()
    out = {(t.functor, t.arity)}
    for a in t.args:
        out |= _term_signature(a)
    return out


def covers(
    p: HornProgram,
    examples: frozenset[Literal] | set[Literal],
    depth_bound: int,
    allow_deeper: bool = False,
) -> dict[Literal, bool]:
    """Per-example membership in the bounded least model.

    Examples deeper than the bound are rejected with a sizing hint unless
    allow_deeper is set, in which case they are reported uncovered (a
    depth-bounded model cannot contain them).
    """
    too_deep = [e for e in examples if literal_depth(e) > depth_bound]
    if too_deep and not allow_deeper:
        worst = max(literal_depth(e) for e in too_deep)
        raise ValueError(
            f"{len(too_deep)} example(s) exceed depth bound {depth_bound}; "
            f"use a bound of at least {worst}"
        )
    signature = set(p.signature())
    for e in examples:
        if not e.positive or not is_ground_literal(e):
            raise ValueError(f"examples must be ground positive atoms: {render_literal(e)}")
        for arg in e.args:
            signature |= _term_signature(arg)
    model = least_model_bounded(p, depth_bound, frozenset(signature))
    return {e: e in model.atoms for e in examples}


def is_covered(p: HornProgram, e: Literal, depth_bound: int) -> bool:
    return covers(p, {e}, depth_bound)[e]


def default_depth_bound(max_example_depth: int) -> int:
    """Large enough that every trace at desk scale saturates."""
    return max_example_depth + 4
