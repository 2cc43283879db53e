"""
Set-theoretic limit analysis of finite program-sequence prefixes.

True limits are not decidable from a finite prefix, so everything is
finitized over a window of the last w snapshots: liminf holds the clauses
present in all of them, limsup those present in at least one. The verdict is
three-way on purpose: a sequence can have a set-theoretic limit while never
repeating a snapshot (a rotating transient fact enters and leaves exactly
once), and a binary stable/divergent split would misreport that case.

Clause identity throughout is variant equality (canonical rendering), never
syntactic equality: generalization regenerates fresh variable names at every
stage, and membership in a limit must not be sensitive to that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .learner import StageRecord
from .logic import Clause, HornProgram, Literal
from .semantics import BoundedModel, covers, least_model_bounded
from .subsumption import clause_key
from .syntax import render_clause, render_literal, render_program

SCHEMA_VERSION = 1


class Verdict(Enum):
    STABLE = "stable"
    CONVERGENT_MODULO_TRANSIENTS = "convergent-modulo-transients"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class LimitReport:
    window_size: int
    liminf_window: frozenset[Clause]
    limsup_window: frozenset[Clause]
    per_clause_occurrences: dict[str, list[tuple[int, int]]]
    verdict: Verdict
    candidate_limit: HornProgram
    correctness: dict[Literal, bool]
    candidate_model: BoundedModel

    @property
    def limit_correct(self) -> bool:
        return all(self.correctness.values())

    def to_json_dict(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "windowSize": self.window_size,
            "liminfWindow": sorted(render_clause(c) for c in self.liminf_window),
            "limsupWindow": sorted(render_clause(c) for c in self.limsup_window),
            "perClauseOccurrences": {
                key: [list(iv) for iv in ivs]
                for key, ivs in sorted(self.per_clause_occurrences.items())
            },
            "verdict": self.verdict.value,
            "candidateLimit": render_program(self.candidate_limit),
            "correctness": {
                render_literal(e): ok
                for e, ok in sorted(
                    self.correctness.items(), key=lambda kv: render_literal(kv[0])
                )
            },
            "limitCorrect": self.limit_correct,
            "candidateModel": {
                "depthBound": self.candidate_model.depth_bound,
                "saturated": self.candidate_model.saturated,
                "atoms": [render_literal(a) for a in self.candidate_model.sorted_atoms()],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False)


def default_window(stages: int) -> int:
    return max(4, -(-stages // 3))


def window_limits(
    snapshots: list[HornProgram], w: int
) -> tuple[frozenset[Clause], frozenset[Clause]]:
    """liminf/limsup over the last w snapshots, clause identity up to variant
    equality."""
    if w < 1 or w > len(snapshots):
        raise ValueError(f"window {w} does not fit a prefix of {len(snapshots)} snapshots")
    window = snapshots[-w:]
    by_key: dict[str, Clause] = {}
    key_sets: list[set[str]] = []
    for prog in window:
        keys = set()
        for c in prog:
            k = clause_key(c)
            keys.add(k)
            by_key.setdefault(k, c)
        key_sets.append(keys)
    limsup_keys = set().union(*key_sets)
    liminf_keys = set.intersection(*key_sets)
    return (
        frozenset(by_key[k] for k in liminf_keys),
        frozenset(by_key[k] for k in limsup_keys),
    )


def _occurrence_intervals(present: list[bool], first_stage: int) -> list[tuple[int, int]]:
    """Maximal runs of consecutive stages, as inclusive (start, end) pairs."""
    intervals = []
    start = None
    for offset, here in enumerate(present):
        if here and start is None:
            start = first_stage + offset
        if not here and start is not None:
            intervals.append((start, first_stage + offset - 1))
            start = None
    if start is not None:
        intervals.append((start, first_stage + len(present) - 1))
    return intervals


def convergence_report(
    trace: list[StageRecord],
    streamed_examples: frozenset[Literal] | set[Literal],
    w: int,
    depth_bound: int,
) -> LimitReport:
    """Verdict, candidate limit and limit-correctness for a learner trace.

    Stable: the last w snapshots are identical programs. Convergent modulo
    transients: liminf and limsup differ, but every transient clause occupies
    a single run of consecutive stages inside the window, consistent with a
    true set-theoretic limit equal to liminf. Divergent: some clause leaves
    and re-enters. The candidate limit is the window liminf; its coverage is
    checked against everything streamed (examples deeper than the bound count
    as uncovered).
    """
    if not trace:
        raise ValueError("empty trace")
    snapshots = [rec.program for rec in trace]
    liminf, limsup = window_limits(snapshots, w)
    first_stage = trace[-w].stage

    occurrences: dict[str, list[tuple[int, int]]] = {}
    for c in limsup:
        key = clause_key(c)
        present = [
            any(clause_key(d) == key for d in prog) for prog in snapshots[-w:]
        ]
        occurrences[key] = _occurrence_intervals(present, first_stage)

    window_keysets = [{clause_key(c) for c in prog} for prog in snapshots[-w:]]
    if all(ks == window_keysets[0] for ks in window_keysets):
        verdict = Verdict.STABLE
    else:
        liminf_keys = {clause_key(c) for c in liminf}
        transients = [k for k in occurrences if k not in liminf_keys]
        if all(len(occurrences[k]) <= 1 for k in transients):
            verdict = Verdict.CONVERGENT_MODULO_TRANSIENTS
        else:
            verdict = Verdict.DIVERGENT

    candidate = HornProgram(liminf)
    correctness = covers(candidate, frozenset(streamed_examples), depth_bound, allow_deeper=True)
    model = least_model_bounded(candidate, depth_bound)
    return LimitReport(
        window_size=w,
        liminf_window=liminf,
        limsup_window=limsup,
        per_clause_occurrences=occurrences,
        verdict=verdict,
        candidate_limit=candidate,
        correctness=correctness,
        candidate_model=model,
    )
