"""
Command-line surface for batch runs.

Subcommands: distance, lgg, rlgg, model, learn, analyze, reproduce.
Exit codes: 0 success, 1 assertion/golden failure, 2 usage error,
3 input parse error. Identical invocations produce bit-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .cases import even_ascending_stream, even_reordered_stream
from .generalize import AlreadyCovered, SaturationPolicy, lgg_clauses, saturate
from .learner import (
    LearnerConfig,
    StageBudgetExceeded,
    StageRecord,
    System,
    run_stream,
)
from .limits import Verdict, convergence_report, default_window
from .logic import ExampleStream, HornProgram, literal_depth
from .metric import is_simple_program, priority_precedes, term_distance
from .semantics import default_depth_bound, least_model_bounded
from .subsumption import program_variant_equal
from .syntax import (
    ParseError,
    parse_atom,
    parse_clauses,
    parse_example_stream,
    parse_program,
    parse_term,
    render_clause,
    render_literal,
    render_program,
)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_PARSE = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 0, 0) from exc


def _policy(name: str) -> SaturationPolicy:
    return SaturationPolicy.PAPER_TRACE if name == "paper" else SaturationPolicy.GROUND_ATOMS


# ---------------------------------------------------------------------------
# Subcommands


def cmd_distance(args: argparse.Namespace) -> int:
    d = term_distance(parse_term(args.term1), parse_term(args.term2))
    if args.format == "json":
        print(json.dumps({"distance": str(d)}))
    else:
        print(d)
    return EXIT_OK


def cmd_lgg(args: argparse.Namespace) -> int:
    clauses = parse_clauses(_read(args.file))
    if len(clauses) != 2:
        print(f"error: expected exactly two clauses, found {len(clauses)}", file=sys.stderr)
        return EXIT_USAGE
    g = lgg_clauses(clauses[0], clauses[1])
    out = render_clause(g) if g.literals else "% empty (no common literals)"
    if args.format == "json":
        print(json.dumps({"lgg": out}))
    else:
        print(out)
    return EXIT_OK


def cmd_rlgg(args: argparse.Namespace) -> int:
    background = parse_program(_read(args.background)) if args.background else HornProgram()
    example = parse_atom(args.example)
    depth = args.depth
    if depth is None:
        deepest = max(
            [literal_depth(example)] + [c.max_depth() for c in background], default=1
        )
        depth = default_depth_bound(deepest)
    try:
        clauses = saturate(background, example, _policy(args.policy), depth)
    except AlreadyCovered as exc:
        print(f"% {exc}")
        return EXIT_OK
    lines = sorted(render_clause(c) for c in clauses)
    if args.format == "json":
        print(json.dumps({"clauses": lines, "depthBound": depth}))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def cmd_model(args: argparse.Namespace) -> int:
    program = parse_program(_read(args.program))
    model = least_model_bounded(program, args.depth)
    atoms = [render_literal(a) for a in model.sorted_atoms()]
    if args.format == "json":
        print(
            json.dumps(
                {"depthBound": model.depth_bound, "saturated": model.saturated, "atoms": atoms},
                indent=2,
            )
        )
    else:
        for a in atoms:
            print(f"{a}.")
        print(f"% {len(atoms)} atom(s), depth bound {model.depth_bound}, "
              f"saturated: {'yes' if model.saturated else 'no'}")
    return EXIT_OK


def _record_json(rec: StageRecord) -> dict:
    return {
        "stage": rec.stage,
        "example": render_literal(rec.example),
        "action": rec.action_text(),
        "program": render_program(rec.program),
        "simple": rec.simple,
    }


def _write_trace(records: list[StageRecord], path: str) -> None:
    lines = [json.dumps(_record_json(r), sort_keys=False) for r in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _run_configured(
    stream: ExampleStream, args: argparse.Namespace, background: HornProgram
) -> tuple[list[StageRecord], LearnerConfig]:
    depth = args.depth if args.depth is not None else default_depth_bound(stream.max_depth())
    cfg = LearnerConfig(
        system=System(args.system),
        policy=_policy(args.policy),
        depth_bound=depth,
        max_stages=args.stages,
    )
    return run_stream(stream, cfg, background), cfg


def cmd_learn(args: argparse.Namespace) -> int:
    stream = parse_example_stream(_read(args.examples))
    background = parse_program(_read(args.background)) if args.background else HornProgram()
    try:
        records, cfg = _run_configured(stream, args, background)
    except StageBudgetExceeded as exc:
        if args.trace:
            _write_trace(exc.records, args.trace)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    if args.trace:
        _write_trace(records, args.trace)
    final = records[-1]
    print(f"% {len(records)} stage(s), depth bound {cfg.depth_bound}")
    print(render_program(final.program))
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    records = _load_trace(args.trace)
    if not records:
        print("error: trace file holds no stages", file=sys.stderr)
        return EXIT_USAGE
    if args.window is not None:
        w = args.window
    else:
        w = min(default_window(len(records)), len(records))
    streamed = frozenset(rec.example for rec in records)
    depth = args.depth
    if depth is None:
        depth = default_depth_bound(max(literal_depth(e) for e in streamed))
    report = convergence_report(records, streamed, w, depth)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def _load_trace(path: str) -> list[StageRecord]:
    """Rebuild stage records from a trace file (canonical program text)."""
    from .learner import Action

    records = []
    for line in _read(path).splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        action_text = obj["action"]
        if action_text.startswith("restarted"):
            action = Action.RESTARTED
            frm = int(action_text.partition("(")[2].rstrip(")")) if "(" in action_text else None
        else:
            action = Action(action_text)
            frm = None
        program = parse_program(obj["program"])
        records.append(
            StageRecord(
                stage=obj["stage"],
                example=parse_atom(obj["example"]),
                action=action,
                restarted_from=frm,
                program=program,
                simple=obj.get("simple", is_simple_program(program)),
            )
        )
    return records


# ---------------------------------------------------------------------------
# Reproduce: built-in cases checked against committed golden fixtures


REPRODUCE_CASES = ("example-3.1", "example-3.2", "case-1", "case-2", "pgolem-fix")


def _golden_text(name: str) -> str:
    return resources.files("hornlearn").joinpath("golden", name).read_text(encoding="utf-8")


def _check_trace_against_golden(records: list[StageRecord], golden_name: str) -> str | None:
    """None if the trace matches the committed fixture; otherwise a message
    naming the first differing stage."""
    golden_lines = [l for l in _golden_text(golden_name).splitlines() if l.strip()]
    actual_lines = [json.dumps(_record_json(r), sort_keys=False) for r in records]
    if len(golden_lines) != len(actual_lines):
        return f"stage count differs: expected {len(golden_lines)}, got {len(actual_lines)}"
    for i, (want, got) in enumerate(zip(golden_lines, actual_lines)):
        if json.loads(want) != json.loads(got):
            return f"first difference at stage {i}:\n  expected: {want}\n  actual:   {got}"
    return None


def _reproduce_trace_case(
    name: str,
    stream: ExampleStream,
    system: System,
    outdir: Path,
    expectations,
    report_depth: int | None = None,
    window: int | None = None,
) -> int:
    cfg = LearnerConfig(
        system=system,
        policy=SaturationPolicy.PAPER_TRACE,
        depth_bound=default_depth_bound(stream.max_depth()),
        max_stages=len(stream),
    )
    records = run_stream(stream, cfg)
    _write_trace(records, str(outdir / f"{name}.trace.jsonl"))

    mismatch = _check_trace_against_golden(records, f"{name}.trace.jsonl")
    if mismatch:
        print(f"FAIL {name}: {mismatch}", file=sys.stderr)
        return EXIT_ASSERTION

    w = window if window is not None else default_window(len(records))
    depth = report_depth if report_depth is not None else cfg.depth_bound
    report = convergence_report(records, frozenset(rec.example for rec in records), w, depth)
    (outdir / f"{name}.report.json").write_text(report.to_json() + "\n", encoding="utf-8")

    for label, ok in expectations(records, report):
        if not ok:
            print(f"FAIL {name}: {label}", file=sys.stderr)
            return EXIT_ASSERTION
    print(f"PASS {name}")
    return EXIT_OK


def _reproduce_example_31(outdir: Path) -> int:
    def expectations(records, report):
        yield "verdict is stable", report.verdict is Verdict.STABLE
        yield "limit is the ascending chain program", render_program(
            report.candidate_limit
        ) == "p(0).\np(s(s(X0))) :- p(X0)."
        yield "limit covers every streamed example", report.limit_correct
        # Point values of the machinery this trace runs on.
        zero, s_zero = parse_term("0"), parse_term("s(0)")
        yield "distance of a term to itself is 0", term_distance(zero, zero) == 0
        yield "distance across root symbols is 1", str(term_distance(s_zero, zero)) == "1"
        e = parse_atom("p(0)")
        yield "priority pre-order is reflexive", priority_precedes(e, e)

    return _reproduce_trace_case(
        "example-3.1", even_ascending_stream(11), System.GOLEM, outdir, expectations
    )


def _reproduce_example_32(outdir: Path) -> int:
    def expectations(records, report):
        yield "verdict is convergent-modulo-transients", (
            report.verdict is Verdict.CONVERGENT_MODULO_TRANSIENTS
        )
        yield "limit is the bare descending rule", render_program(
            report.candidate_limit
        ) == "p(X0) :- p(s(s(X0)))."
        yield "candidate model is empty", not report.candidate_model.atoms
        # Limit-incorrectness is the expected golden outcome here.
        yield "no streamed example is covered", not any(report.correctness.values())

    return _reproduce_trace_case(
        "example-3.2",
        even_reordered_stream(12),
        System.GOLEM,
        outdir,
        expectations,
        report_depth=14,
        window=4,
    )


def _reproduce_case_1(outdir: Path) -> int:
    program = parse_program("p(0).\np(s(s(X))) :- p(X).")
    model = least_model_bounded(program, 7)
    atoms = sorted(render_literal(a) for a in model.atoms)
    expected = ["p(0)", "p(s(s(0)))", "p(s(s(s(s(0)))))", "p(s(s(s(s(s(s(0)))))))"]
    (outdir / "case-1.model.txt").write_text("\n".join(atoms) + "\n", encoding="utf-8")
    if atoms != sorted(expected):
        print(f"FAIL case-1: model mismatch: {atoms}", file=sys.stderr)
        return EXIT_ASSERTION
    print("PASS case-1")
    return EXIT_OK


def _reproduce_case_2(outdir: Path) -> int:
    program = parse_program("p(X) :- p(s(s(X))).")
    for depth in (4, 8, 12):
        model = least_model_bounded(program, depth)
        if model.atoms:
            print(f"FAIL case-2: model not empty at depth {depth}", file=sys.stderr)
            return EXIT_ASSERTION
    (outdir / "case-2.model.txt").write_text("% empty model at depths 4, 8, 12\n", encoding="utf-8")
    print("PASS case-2")
    return EXIT_OK


def _reproduce_pgolem_fix(outdir: Path) -> int:
    finals = []
    for name, stream in (
        ("ascending", even_ascending_stream(11)),
        ("reordered", even_reordered_stream(12)),
    ):
        cfg = LearnerConfig(
            system=System.PRIORITIZED_GOLEM,
            policy=SaturationPolicy.PAPER_TRACE,
            depth_bound=default_depth_bound(stream.max_depth()),
            max_stages=len(stream),
        )
        records = run_stream(stream, cfg)
        _write_trace(records, str(outdir / f"pgolem-fix.{name}.trace.jsonl"))
        report = convergence_report(
            records, frozenset(rec.example for rec in records), 4, cfg.depth_bound
        )
        (outdir / f"pgolem-fix.{name}.report.json").write_text(
            report.to_json() + "\n", encoding="utf-8"
        )
        if not all(rec.simple for rec in records):
            print(f"FAIL pgolem-fix: non-simple snapshot on {name} order", file=sys.stderr)
            return EXIT_ASSERTION
        if report.verdict is not Verdict.STABLE:
            print(f"FAIL pgolem-fix: {name} order verdict {report.verdict.value}", file=sys.stderr)
            return EXIT_ASSERTION
        if not report.limit_correct:
            print(f"FAIL pgolem-fix: {name} order limit not correct", file=sys.stderr)
            return EXIT_ASSERTION
        finals.append(report.candidate_limit)
    if not program_variant_equal(finals[0], finals[1]):
        print("FAIL pgolem-fix: limits differ across orderings", file=sys.stderr)
        return EXIT_ASSERTION
    print("PASS pgolem-fix")
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runner = {
        "example-3.1": _reproduce_example_31,
        "example-3.2": _reproduce_example_32,
        "case-1": _reproduce_case_1,
        "case-2": _reproduce_case_2,
        "pgolem-fix": _reproduce_pgolem_fix,
    }[args.case]
    return runner(outdir)


# ---------------------------------------------------------------------------
# Parser / dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hornlearn",
        description="Incremental Horn-program learners with bounded-model "
        "semantics and limit analysis.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed recorded for randomized corpora (all shipped subcommands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="exact distance between two terms")
    p.add_argument("term1")
    p.add_argument("term2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("lgg", help="least general generalization of the two clauses in a file")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_lgg)

    p = sub.add_parser("rlgg", help="saturate an example against background knowledge")
    p.add_argument("--background", help="program file (omit for an empty background)")
    p.add_argument("--example", required=True, help="ground atom, e.g. 'p(s(0))'")
    p.add_argument("--policy", choices=("paper", "ground"), default="paper")
    p.add_argument("--depth", type=int, default=None, help="depth bound (default: auto)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_rlgg)

    p = sub.add_parser("model", help="bounded least model of a program")
    p.add_argument("--program", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("learn", help="run a learner over an example stream")
    p.add_argument("--system", choices=("golem", "pgolem"), required=True)
    p.add_argument("--examples", required=True, help="stream file, one ground atom per line")
    p.add_argument("--background", help="initial program file")
    p.add_argument("--stages", type=int, default=200)
    p.add_argument("--depth", type=int, default=None, help="depth bound (default: auto)")
    p.add_argument("--policy", choices=("paper", "ground"), default="paper")
    p.add_argument("--trace", help="write the per-stage trace as JSON lines")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("analyze", help="limit analysis of a learner trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--window", type=int, default=None, help="window size (default: max(4, stages/3))")
    p.add_argument("--depth", type=int, default=None, help="depth bound (default: auto)")
    p.add_argument("--report", help="write the report JSON to this file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reproduce", help="run a built-in case against its golden fixture")
    p.add_argument("case", choices=REPRODUCE_CASES)
    p.add_argument("--outdir", default="out", help="directory for trace and report files")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
