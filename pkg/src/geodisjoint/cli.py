"""Command-line front end.

Exit codes: 0 when everything checked holds, 1 when some claim, audit or
oracle comparison fails, 2 for unusable input (bad flags, malformed or
invalid graph files, unknown claim names, I/O errors).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .generators import GenerationError, GenSpec, generate
from .geometry import convex_position_order
from .graph import GraphValidationError, aggregates, dj_graph
from .search import (
    FAMILIES,
    PARALLELISM_ENV,
    SearchConfig,
    SearchConfigError,
    default_parallelism,
    run_search,
)
from .serialize import (
    ANALYSIS_FORMAT,
    aggregates_to_dict,
    analysis_document,
    claim_report_to_dict,
    dumps,
    graph_from_dict,
    graph_to_dict,
    loads_document,
    write_text,
)
from .verifier import (
    HOLDS,
    NOT_APPLICABLE,
    VIOLATED,
    ClaimId,
    UnknownClaimError,
    brute_force_dj,
    check_all,
    convex_chord_oracle,
    parse_claim,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
VERIFY_FORMAT = "geodisjoint/verify-v1"
ORACLE_FORMAT = "geodisjoint/oracle-v1"
GENERATOR_KINDS = {
    "extremal": "extremal_gnk",
    "stars": "disjoint_stars",
    "random-convex": "random_convex",
    "random-general": "random_general",
    "convex-complete": "convex_complete",
}


class InputError(Exception):
    """Anything that should end the run with exit code 2."""


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _n_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    return lo, hi


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(part) for part in text.split(",") if part)


def _claim_list(text: str) -> tuple[ClaimId, ...] | None:
    if text == "all":
        return None
    return tuple(parse_claim(part.strip()) for part in text.split(",") if part.strip())


def _read_document(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads_document(text)


def _graph_of(doc: dict):
    return graph_from_dict(doc["graph"] if doc.get("format") == ANALYSIS_FORMAT else doc)


def _note(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _emit(args, doc) -> None:
    try:
        write_text(args.out, dumps(doc))
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror}") from None


# --- subcommands -------------------------------------------------------------


def cmd_generate(args) -> int:
    kind = GENERATOR_KINDS[args.kind]
    seed = args.seed if kind.startswith("random") else None
    p = args.p if kind.startswith("random") else None
    if kind.startswith("random") and p is None:
        raise InputError(f"{args.kind} needs --p")
    spec = GenSpec(kind=kind, n=args.n, k=args.k, p=p, seed=seed, box=args.box, strict=args.strict)
    g = generate(spec)
    _emit(args, graph_to_dict(g))
    _note(args, f"generated {g.name}: {g.n} points, {g.e} edges")
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _graph_of(_read_document(args.input))
    agg = aggregates(g)
    _emit(args, analysis_document(g, agg))
    _note(args, f"{g.name or args.input}: n={agg.n} e={agg.e} DJ={agg.dj_total} m={agg.m_max}")
    return EXIT_OK


def audit_analysis(doc: dict) -> list[dict]:
    """Cross-check a stored analysis report against a fresh recomputation of its embedded graph."""
    g = graph_from_dict(doc.get("graph", {}))
    stored = doc.get("aggregates")
    if not isinstance(stored, dict):
        raise InputError('analysis report has no "aggregates" object')
    fresh = aggregates_to_dict(aggregates(g))
    checks = []
    try:
        per_edge = sum(int(row[2]) for row in stored.get("dj_per_edge", []))
    except (TypeError, ValueError, IndexError):
        raise InputError("malformed dj_per_edge table") from None
    dj_total = stored.get("dj_total")
    checks.append(
        {
            "check": "handshake",
            "verdict": HOLDS if isinstance(dj_total, int) and 2 * dj_total == per_edge else VIOLATED,
            "expected": per_edge,
            "found": None if dj_total is None else 2 * dj_total if isinstance(dj_total, int) else dj_total,
        }
    )
    for key, value in fresh.items():
        found = stored.get(key)
        checks.append(
            {
                "check": f"aggregate:{key}",
                "verdict": HOLDS if found == value else VIOLATED,
                "expected": value if key != "dj_per_edge" else len(value),
                "found": found if key != "dj_per_edge" else (len(found) if isinstance(found, list) else found),
            }
        )
    return checks


def cmd_verify(args) -> int:
    doc = _read_document(args.input)
    audit = audit_analysis(doc) if doc.get("format") == ANALYSIS_FORMAT else None
    g = _graph_of(doc)
    reports = check_all(g, args.claims)
    summary = {HOLDS: 0, VIOLATED: 0, NOT_APPLICABLE: 0}
    for r in reports:
        summary[r.verdict] += 1
    body = {"format": VERIFY_FORMAT, "graph": g.name, "claims": [claim_report_to_dict(r) for r in reports]}
    if audit is not None:
        body["audit"] = audit
    body["summary"] = summary
    _emit(args, body)
    failed_audit = [c["check"] for c in audit or [] if c["verdict"] == VIOLATED]
    failed = [r.claim.value for r in reports if r.verdict == VIOLATED]
    if failed_audit:
        _note(args, f"report audit failed: {', '.join(failed_audit)}")
    if failed:
        _note(args, f"violated: {', '.join(failed)}")
    if not failed and not failed_audit:
        _note(args, f"{summary[HOLDS]} holds, {summary[NOT_APPLICABLE]} not applicable")
    return EXIT_FAIL if failed or failed_audit else EXIT_OK


def cmd_oracle(args) -> int:
    g = _graph_of(_read_document(args.input))
    fast, brute = dj_graph(g), brute_force_dj(g)
    order = convex_position_order(g.points)
    if order is None:
        chord = "skipped"
    else:
        position = {v: i for i, v in enumerate(order)}
        chord = convex_chord_oracle(g.n, [(position[u], position[v]) for u, v in g.edges])
    agree = fast == brute and (chord == "skipped" or chord == fast)
    body = {"format": ORACLE_FORMAT, "graph": g.name, "dj_graph": fast, "brute_force": brute, "chord_rule": chord}
    body["agree"] = agree
    _emit(args, body)
    _note(args, f"dj_graph={fast} brute_force={brute} chord_rule={chord}")
    return EXIT_OK if agree else EXIT_FAIL


def cmd_search(args) -> int:
    parallelism = args.parallelism if args.parallelism is not None else default_parallelism()
    claims = args.claims if args.claims is not None else tuple(ClaimId)
    config = SearchConfig(
        family=args.family,
        n_range=args.n_range,
        p_values=args.p,
        instances=args.instances,
        master_seed=args.seed,
        claims=claims,
        box=args.box,
        min_degree=args.min_degree,
        stop_on_violation=args.stop_on_violation,
        parallelism=parallelism,
    )
    report = run_search(config)
    _emit(args, report.to_dict())
    if args.csv:
        try:
            Path(args.csv).write_text(report.tallies_csv(), encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {args.csv}: {exc.strerror}") from None
    _note(args, f"{report.evaluated} instances evaluated, {len(report.violations)} violations")
    return EXIT_FAIL if report.violated else EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--seed", type=_u64, default=0, help="seed (unsigned 64-bit)")
    common.add_argument("--quiet", action="store_true", help="no summary line on stderr")

    parser = argparse.ArgumentParser(prog="geodisjoint", description="Disjoint-edge counts in geometric graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write a generated graph")
    gen.add_argument("kind", choices=sorted(GENERATOR_KINDS))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int)
    gen.add_argument("--p", type=_rational)
    gen.add_argument("--box", type=int, default=10**6)
    gen.add_argument("--strict", action="store_true", help="extremal family: require k > 2")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", parents=[common], help="aggregates and per-vertex data")
    ana.add_argument("input")
    ana.set_defaults(func=cmd_analyze)

    ver = sub.add_parser("verify", parents=[common], help="check claims on a graph or analysis report")
    ver.add_argument("input")
    ver.add_argument("--claims", default="all", help="comma-separated claim names or 'all'")
    ver.set_defaults(func=cmd_verify)

    ora = sub.add_parser("oracle", parents=[common], help="compare DJ against brute-force oracles")
    ora.add_argument("input")
    ora.set_defaults(func=cmd_oracle)

    sea = sub.add_parser("search", parents=[common], help="seeded counterexample search")
    sea.add_argument("--family", choices=sorted(FAMILIES), default="random-convex")
    sea.add_argument("--instances", type=int, default=1000)
    sea.add_argument("--n-range", type=_n_range, default=(6, 14))
    sea.add_argument("--p", type=_rational_list, default=(Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)))
    sea.add_argument("--claims", default="all")
    sea.add_argument("--box", type=int, default=10**6)
    sea.add_argument("--min-degree", type=int, default=0)
    sea.add_argument("--parallelism", type=int, default=None, help=f"worker processes (default: ${PARALLELISM_ENV} or core count)")
    sea.add_argument("--stop-on-violation", action="store_true")
    sea.add_argument("--csv", default=None, help="also write claim tallies as CSV")
    sea.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "claims"):
            args.claims = _claim_list(args.claims)
        return args.func(args)
    except UnknownClaimError as exc:
        message = exc.args[0]
    except GraphValidationError as exc:
        message = f"invalid graph ({exc.rule}): {exc}"
    except (InputError, GenerationError, SearchConfigError) as exc:
        message = str(exc)
    print(f"geodisjoint {args.command}: error: {message}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
