"""
Theta-subsumption and clause variant equality.

Clause c subsumes d iff some substitution theta over c's variables makes
c·theta a literal subset of d. The search is complete backtracking over
literal matchings; clause sizes in this artifact stay small, so correctness
wins over speed.
"""

from __future__ import annotations

from .logic import Clause, Literal, Substitution, Term, Var, literal_variables
from .syntax import render_clause, render_literal


def _lit_key(l: Literal) -> tuple[bool, str]:
    return (not l.positive, render_literal(l))


def match_terms(pattern: Term, target: Term, theta: dict[Var, Term]) -> dict[Var, Term] | None:
    """One-way matching: only pattern-side variables bind."""
    if isinstance(pattern, Var):
        bound = theta.get(pattern)
        if bound is None:
            out = dict(theta)
            out[pattern] = target
            return out
        return theta if bound == target else None
    if isinstance(target, Var):
        return None
    if pattern.functor != target.functor or len(pattern.args) != len(target.args):
        return None
    for pa, ta in zip(pattern.args, target.args):
        next_theta = match_terms(pa, ta, theta)
        if next_theta is None:
            return None
        theta = next_theta
    return theta


def match_literals(
    pattern: Literal, target: Literal, theta: dict[Var, Term]
) -> dict[Var, Term] | None:
    if pattern.positive != target.positive or pattern.pred_key != target.pred_key:
        return None
    for pa, ta in zip(pattern.args, target.args):
        next_theta = match_terms(pa, ta, theta)
        if next_theta is None:
            return None
        theta = next_theta
    return theta


def theta_subsumes(c: Clause, d: Clause) -> tuple[bool, Substitution | None]:
    """Whether c theta-subsumes d; on success also the witness substitution.

    The witness is over c's original variables, so
    apply_to_clause(c, theta).literals ⊆ d.literals holds literally.
    """
    # Most-constrained literals first (fewest variables) prunes early; the
    # text tiebreak keeps the found witness deterministic.
    c_lits = sorted(c.literals, key=lambda l: (len(literal_variables(l)), _lit_key(l)))
    d_lits = sorted(d.literals, key=_lit_key)

    def search(i: int, theta: dict[Var, Term]) -> dict[Var, Term] | None:
        if i == len(c_lits):
            return theta
        for target in d_lits:
            extended = match_literals(c_lits[i], target, theta)
            if extended is not None:
                found = search(i + 1, extended)
                if found is not None:
                    return found
        return None

    witness = search(0, {})
    if witness is None:
        return False, None
    return True, witness


def subsumes(c: Clause, d: Clause) -> bool:
    return theta_subsumes(c, d)[0]


def clause_variant_equal(c: Clause, d: Clause) -> bool:
    """Equality up to bijective variable renaming.

    Canonical renderings are renaming-invariant, so this reduces to string
    equality; used as clause identity for set-theoretic limits.
    """
    return render_clause(c) == render_clause(d)


def clause_key(c: Clause) -> str:
    """Canonical identity key for variant-equality-based collections."""
    return render_clause(c)


def program_variant_equal(p, q) -> bool:
    return {clause_key(c) for c in p} == {clause_key(c) for c in q}


def reduce_clause(c: Clause) -> Clause:
    """Plotkin literal-reduction: drop literals while the clause still
    theta-subsumes the smaller clause (the result is theta-equivalent)."""
    current = c
    changed = True
    while changed:
        changed = False
        for lit in sorted(current.literals, key=_lit_key):
            smaller = Clause(current.literals - {lit})
            if not smaller.literals:
                continue
            if theta_subsumes(current, smaller)[0]:
                current = smaller
                changed = True
                break
    return current
