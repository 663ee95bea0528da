"""``segstab`` command line: check, oracle and locus subcommands.

Exit codes: 0 robustly stable / all samples inside, 1 unstable / violation,
2 marginal / near the boundary, 64 usage or input error, 70 numerical
failure.
"""

import argparse
import csv
import dataclasses
import json
import logging
import sys

from .errors import SegstabError
from .oracle import DEFAULT_SEED, SampleVerdict, eigen_locus, sample_polytope, sample_segment
from .polytope import check_polytope
from .problemfile import ProblemFileError, load
from .segment import (
    UNIT_DISK,
    Condition,
    SegmentProblem,
    Status,
    check_segment_disk,
    locate_crossing,
)

EXIT_OK = 0
EXIT_UNSTABLE = 1
EXIT_MARGINAL = 2
EXIT_USAGE = 64
EXIT_NUMERICAL = 70

STATUS_EXIT = {
    Status.ROBUST_STABLE: EXIT_OK,
    Status.UNSTABLE: EXIT_UNSTABLE,
    Status.MARGINAL: EXIT_MARGINAL,
}
SAMPLE_EXIT = {
    SampleVerdict.ALL_INSIDE: EXIT_OK,
    SampleVerdict.VIOLATION: EXIT_UNSTABLE,
    SampleVerdict.NEAR_BOUNDARY: EXIT_MARGINAL,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "Marginal"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exit_code_for(report):
    """Exit code implied by a JSON report produced by this CLI."""
    if "status" in report:
        return STATUS_EXIT[Status(report["status"])]
    return SAMPLE_EXIT[SampleVerdict(report["verdict"])]


def _tol_overrides(problem, args):
    updates = {
        name: value
        for name, value in (
            ("imag_tol", args.tol_imag),
            ("sign_tol", args.tol_sign),
            ("one_tol", args.tol_one),
            ("cond_max", args.cond_max),
        )
        if value is not None
    }
    if not updates:
        return problem
    try:
        tol = dataclasses.replace(problem.tol, **updates)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return problem.with_tol(tol)


def _format_witness(w):
    if w is None:
        return "none"
    z = w["re"] if w["is_real"] else complex(w["re"], w["im"])
    kind = "real" if w["is_real"] else "complex"
    return f"{z:.10g} ({kind}, margin {w['margin']:.3e})"


def _human_report(report):
    dims = report.get("dims") or {}
    lines = [f"status: {report['status']}"]
    if dims:
        lines.append(
            f"dimensions: n={dims['n']}, bialternate d={dims['bialternate']}, "
            f"companion 2d={dims['companion']} (Kronecker n^2={dims['kronecker']})"
        )
    if report.get("kind") == "polytope":
        lines.append(f"edges checked: {report['edges_checked']}")
        if report.get("failing_vertex") is not None:
            lines.append(f"failing vertex: {report['failing_vertex']}")
        if report.get("failing_edge") is not None:
            lines.append(f"failing edge: {tuple(report['failing_edge'])}")
        seg = report.get("edge_verdict") or {}
    else:
        seg = report
    if seg.get("failed_condition"):
        lines.append(f"failed condition: {seg['failed_condition']}")
        if len(seg.get("failures") or []) > 1:
            lines.append(f"all failures: {', '.join(seg['failures'])}")
        lines.append(f"witness eigenvalue: {_format_witness(seg.get('witness'))}")
    if seg.get("alpha_witness") is not None:
        lines.append(f"alpha witness: {seg['alpha_witness']:.12g}")
    words = {"Holds": "crossing found", "Fails": "no crossing", "Marginal": "marginal"}
    for name, res in (seg.get("checks") or {}).items():
        lines.append(f"  {name}: {words[res['verdict']]}")
    return "\n".join(lines)


def cmd_check(args):
    problem = _tol_overrides(load(args.file), args)
    if problem.kind == "polytope":
        verdict = check_polytope(problem.polytope, problem.tol, full_report=args.full_report)
        if (
            args.locate
            and verdict.status is Status.UNSTABLE
            and verdict.failing_edge is not None
            and verdict.edge_verdict.failed_condition is not Condition.ENDPOINT_UNSTABLE
        ):
            i, j = verdict.failing_edge
            edge = SegmentProblem(problem.polytope.vertex(i), problem.polytope.vertex(j), problem.tol)
            verdict.edge_verdict.alpha_witness = locate_crossing(edge, verdict.edge_verdict.failed_condition)
        report = verdict.to_dict()
    else:
        disk = problem.disk or UNIT_DISK
        verdict = check_segment_disk(problem.segment, disk, full_report=args.full_report, locate=args.locate)
        report = verdict.to_dict()
        if problem.disk is not None:
            report["disk"] = {"delta": disk.delta, "r": disk.r}
    report["kind"] = problem.kind
    report["exit_code"] = STATUS_EXIT[verdict.status]
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(_human_report(report))
    return report["exit_code"]


def cmd_oracle(args):
    if args.samples < 2:
        raise UsageError(f"--samples must be at least 2, got {args.samples}")
    problem = _tol_overrides(load(args.file), args)
    if problem.kind == "polytope":
        rep = sample_polytope(problem.polytope, args.samples, args.samples, problem.tol, args.seed)
    else:
        rep = sample_segment(problem.segment.A1, problem.segment.A2, args.samples, problem.tol,
                             problem.disk or UNIT_DISK)
    report = rep.to_dict()
    report["kind"] = problem.kind
    report["exit_code"] = SAMPLE_EXIT[rep.verdict]
    print(json.dumps(report, indent=2))
    return report["exit_code"]


def write_locus_csv(fh, alphas, table):
    n = table.shape[1]
    writer = csv.writer(fh, lineterminator="\n")
    header = ["alpha"]
    for k in range(1, n + 1):
        header += [f"re_{k}", f"im_{k}"]
    writer.writerow(header)
    for a, row in zip(alphas, table):
        cells = [f"{a:.16e}"]
        for z in row:
            cells += [f"{z.real:.16e}", f"{z.imag:.16e}"]
        writer.writerow(cells)


def cmd_locus(args):
    if args.samples < 2:
        raise UsageError(f"--samples must be at least 2, got {args.samples}")
    problem = load(args.file)
    if problem.segment is None:
        raise UsageError("locus needs a segment or disk-segment problem")
    alphas, table = eigen_locus(problem.segment.A1, problem.segment.A2, args.samples)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_locus_csv(fh, alphas, table)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {len(alphas)} rows to {args.out}")
    return EXIT_OK


def _add_tol_flags(p):
    p.add_argument("--tol-imag", type=float, help="relative imaginary-part threshold for real eigenvalues")
    p.add_argument("--tol-sign", type=float, help="band around 0 for the negative-eigenvalue tests")
    p.add_argument("--tol-one", type=float, help="band around 1 for the [1, inf) and modulus tests")
    p.add_argument("--cond-max", type=float, help="largest acceptable condition estimate for solves")


def build_parser():
    parser = _Parser(prog="segstab", description="Robust Schur stability of matrix segments and rank-one polytopes.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide robust stability")
    p.add_argument("file")
    p.add_argument("--locate", action="store_true", help="recover the crossing parameter alpha")
    p.add_argument("--full-report", action="store_true", help="evaluate every condition")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="sample spectral radii (falsification only)")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_tol_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("locus", help="write eigenvalue loci of C(alpha) as CSV")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_locus)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ProblemFileError, UsageError) as exc:
        print(f"segstab {args.command}: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SegstabError as exc:
        print(f"segstab {args.command}: numerical error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
