"""
Least general generalization over terms, literals, clauses and clause sets;
saturation of an example against background knowledge; program reduction.

The lgg of two terms recurses argumentwise while root symbols agree and maps
each mismatched ordered pair (t, s) to one fresh variable. The pair table is
shared across a whole clause-pair lgg, so every occurrence of the same pair
generalizes to the same variable; that consistency is what lets the lgg of
two ground chain clauses come out as a single recursive rule.
"""

from __future__ import annotations

from enum import Enum
from itertools import product

from .logic import (
    Clause,
    Fn,
    HornProgram,
    Literal,
    Term,
    Var,
    is_ground_literal,
    literal_variables,
)
from .metric import clause_distance
from .semantics import is_covered, least_model_bounded
from .subsumption import reduce_clause, theta_subsumes
from .syntax import render_clause, render_literal


class PairTable:
    """Injective association from ordered term pairs to fresh variables.

    Fresh names are allocated in first-use order (X0, X1, ...), skipping any
    name already taken by the input clauses so generalization never captures
    an existing variable.
    """

    def __init__(self, reserved: set[str] | frozenset[str] = frozenset()):
        self.pairs: dict[tuple[Term, Term], Var] = {}
        self._reserved = set(reserved)
        self._next = 0

    def reserve(self, names: set[str] | frozenset[str]) -> None:
        self._reserved |= set(names)

    def variable_for(self, t: Term, s: Term) -> Var:
        key = (t, s)
        found = self.pairs.get(key)
        if found is not None:
            return found
        while f"X{self._next}" in self._reserved:
            self._next += 1
        v = Var(f"X{self._next}")
        self._next += 1
        self.pairs[key] = v
        return v


def _reserved_names(c: Clause, d: Clause) -> set[str]:
    names = set()
    for clause in (c, d):
        for lit in clause.literals:
            names |= {v.name for v in literal_variables(lit)}
    return names


def lgg_terms(t: Term, s: Term, table: PairTable) -> Term:
    """Argumentwise recursion on equal roots, a table variable otherwise.
    Variables act as 0-arity symbols, so lgg(X, X) = X."""
    if t == s:
        return t
    if isinstance(t, Var) or isinstance(s, Var):
        return table.variable_for(t, s)
    if t.functor != s.functor or len(t.args) != len(s.args):
        return table.variable_for(t, s)
    return Fn(t.functor, tuple(lgg_terms(a, b, table) for a, b in zip(t.args, s.args)))


def lgg_literals(l: Literal, m: Literal, table: PairTable) -> Literal | None:
    """None (undefined) on sign or predicate mismatch."""
    if l.positive != m.positive or l.pred_key != m.pred_key:
        return None
    return Literal(
        l.positive,
        l.predicate,
        tuple(lgg_terms(a, b, table) for a, b in zip(l.args, m.args)),
    )


def lgg_clauses(c: Clause, d: Clause, table: PairTable | None = None) -> Clause:
    """All defined pairwise literal lggs under one shared pair table,
    deduplicated, then Plotkin-reduced.

    The reduction drops redundant generalized literals (the all-pairs set of
    lgg(c, c) otherwise strictly grows whenever two same-sign literals share a
    predicate); it preserves theta-equivalence, so the result still subsumes
    both inputs.
    """
    if table is None:
        table = PairTable()
    table.reserve(_reserved_names(c, d))
    out = []
    for l in sorted(c.literals, key=_literal_order):
        for m in sorted(d.literals, key=_literal_order):
            g = lgg_literals(l, m, table)
            if g is not None:
                out.append(g)
    result = Clause(out)
    if not result.literals:
        return result
    return reduce_clause(result)


def _literal_order(l: Literal) -> tuple[bool, str]:
    return (not l.positive, render_literal(l))


def _clause_order(c: Clause) -> str:
    return render_clause(c)


def lgg_clause_sets(
    a: frozenset[Clause] | set[Clause], b: frozenset[Clause] | set[Clause]
) -> frozenset[Clause]:
    """Pair each clause of a with its distance-nearest clause of b (ties go to
    the first in canonical order) and keep the nonempty lggs."""
    if not a or not b:
        raise ValueError("lgg over clause sets requires nonempty inputs")
    b_sorted = sorted(b, key=_clause_order)
    out = set()
    for c in sorted(a, key=_clause_order):
        nearest = min(b_sorted, key=lambda d: clause_distance(c, d))
        g = lgg_clauses(c, nearest)
        if g.literals:
            out.add(g)
    return frozenset(out)


class SaturationPolicy(Enum):
    """How the background is folded into the clause to be generalized."""

    PAPER_TRACE = "paper"
    GROUND_ATOMS = "ground"


class AlreadyCovered(Exception):
    """The example is derivable from the background at the depth bound; a
    distinct outcome rather than a failure."""

    def __init__(self, example: Literal, depth_bound: int):
        super().__init__(
            f"example {render_literal(example)} is already covered at depth {depth_bound}"
        )
        self.example = example
        self.depth_bound = depth_bound


def saturate(
    background: HornProgram,
    e: Literal,
    policy: SaturationPolicy,
    depth_bound: int,
) -> frozenset[Clause]:
    """Clauses expressing 'e given the background', ready for generalization.

    PAPER_TRACE negates the conjunction of the background's non-unit clauses,
    disjoins e, and expands to clause normal form with tautologies removed;
    a fact-only background instead yields the single clause e <- facts.
    GROUND_ATOMS yields the single clause whose body is the background's
    bounded model: { ~q : q in model } ∪ { e }.
    """
    if not e.positive or not is_ground_literal(e):
        raise ValueError(f"saturation needs a ground positive example: {render_literal(e)}")
    if len(background) and is_covered(background, e, depth_bound):
        raise AlreadyCovered(e, depth_bound)

    if policy is SaturationPolicy.GROUND_ATOMS:
        model = least_model_bounded(background, depth_bound)
        return frozenset((Clause([q.negated() for q in model.atoms] + [e]),))

    rules = sorted(background.rules, key=_clause_order)
    if not rules:
        body = [c.head.negated() for c in sorted(background.facts, key=_clause_order)]
        return frozenset((Clause(body + [e]),))

    # ~(R1 ∧ R2 ∧ ...) ∨ e in clause normal form: one clause per choice of a
    # negated literal from each rule, tautologies dropped.
    choice_sets = [[lit.negated() for lit in sorted(r.literals, key=_literal_order)] for r in rules]
    clauses = set()
    for choice in product(*choice_sets):
        clause = Clause(list(choice) + [e])
        if not clause.is_tautology():
            clauses.add(clause)
    return frozenset(clauses)


def reduce_program(p: HornProgram, depth_bound: int) -> HornProgram:
    """Fixpoint removal of redundant clauses: a clause goes when another
    remaining clause theta-subsumes it, or when it is a ground fact derivable
    from the remaining program's bounded model. Scanning is largest clause
    first with canonical-text tiebreak, so the result is deterministic."""
    clauses = set(p.clauses)
    signature = p.signature()  # removals must not shrink the term language
    while True:
        ordered = sorted(clauses, key=lambda c: (-len(c.literals), _clause_order(c)))
        removed = None
        for c in ordered:
            rest = clauses - {c}
            if any(theta_subsumes(d, c)[0] for d in rest):
                removed = c
                break
            if c.is_fact and rest:
                model = least_model_bounded(HornProgram(rest), depth_bound, signature)
                if c.head in model.atoms:
                    removed = c
                    break
        if removed is None:
            return HornProgram(clauses)
        clauses.discard(removed)
