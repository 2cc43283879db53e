"""
Distances on terms, literals and clauses; the priority pre-order on literals;
the simplicity predicate on clauses and programs.

The term distance takes values in {0} ∪ {1/m}: 0 for equal terms, 1 when the
root symbols differ, and d/(d+1) for equal roots where d is the maximum
argument distance. Two terms are at distance at most 1/(m+1) exactly when
their trees agree to depth m. Values are exact rationals, never floats, so
the codomain is assertable exactly.

Variables are treated as 0-arity symbols distinct from every functor and from
each other, the minimal total extension of the functor-rooted definition.
"""

from __future__ import annotations

from fractions import Fraction

from .logic import Clause, HornProgram, Literal, Term, Var, literal_subterms

Distance = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def term_distance(t: Term, s: Term) -> Distance:
    if t == s:
        return ZERO
    if isinstance(t, Var) or isinstance(s, Var):
        # Distinct symbols (a variable never shares a root with anything else).
        return ONE
    if t.functor != s.functor or len(t.args) != len(s.args):
        return ONE
    delta = max(term_distance(a, b) for a, b in zip(t.args, s.args))
    return delta / (delta + 1)


def literal_distance(l: Literal, m: Literal) -> Distance:
    """1 on sign or predicate mismatch; otherwise the literal is treated as a
    compound term rooted at the predicate symbol."""
    if l.positive != m.positive or l.pred_key != m.pred_key:
        return ONE
    if l.args == m.args:
        return ZERO
    delta = max(term_distance(a, b) for a, b in zip(l.args, m.args))
    return delta / (delta + 1)


def clause_distance(c: Clause, d: Clause) -> Distance:
    """Hausdorff lift of literal_distance: max over both directed max-min
    distances. Rejects empty clauses."""
    if not c.literals or not d.literals:
        raise ValueError("clause_distance is undefined for empty clauses")
    forward = max(min(literal_distance(l, m) for m in d.literals) for l in c.literals)
    backward = max(min(literal_distance(l, m) for l in c.literals) for m in d.literals)
    return max(forward, backward)


def priority_precedes(l: Literal, m: Literal) -> bool:
    """l ≺ m: every subterm occurring in l occurs in m (l has the higher
    priority). Reflexive and transitive."""
    return literal_subterms(l) <= literal_subterms(m)


def is_simple(c: Clause) -> bool:
    """Every subterm occurring in the body occurs in the head. Facts are
    vacuously simple. Rejects non-definite clauses."""
    head_terms = literal_subterms(c.head)
    return all(literal_subterms(b) <= head_terms for b in c.body)


def is_simple_program(p: HornProgram) -> bool:
    return all(is_simple(c) for c in p)


def format_distance(d: Distance) -> str:
    return str(d)
