"""
Built-in even-number streams used by the reproduce cases and tests.

Both streams enumerate the same example set (p applied to every even numeral)
and differ only in arrival order. The ascending order lets the plain learner
stabilize; the reordered one makes it rotate its retained fact forever, which
is the order-sensitivity the prioritized learner removes.
"""

from __future__ import annotations

from .logic import ExampleStream, Fn, Literal, Term, atom


def numeral(n: int, base: Term | None = None) -> Term:
    """s^n(base), defaulting to s^n(0)."""
    t: Term = base if base is not None else Fn("0")
    for _ in range(n):
        t = Fn("s", (t,))
    return t


def even_atom(n: int) -> Literal:
    return atom("p", numeral(n))


def even_ascending_stream(stages: int) -> ExampleStream:
    """p(0), p(s^2(0)), p(s^4(0)), ..."""
    return ExampleStream(even_atom(2 * k) for k in range(stages))


def even_reordered_stream(stages: int) -> ExampleStream:
    """Stage 3k+i arrives p(s^(6k+4-2i)(0)): each block of three runs
    downward (4, 2, 0 then 10, 8, 6 then 16, 14, 12, ...)."""
    arrivals = []
    for stage in range(stages):
        k, i = divmod(stage, 3)
        arrivals.append(even_atom(6 * k + 4 - 2 * i))
    return ExampleStream(arrivals)
