"""Seeded, parallel falsification runs over random instance families.

Instance ``i`` of a run is a pure function of ``(config, i)``: its
parameters and generator seed come from ``derive_seed(master_seed, i)``.
Workers return per-instance results which are merged strictly by index, so
the report does not depend on the worker count or on scheduling.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import potential
from .generators import DEFAULT_BOX, GenerationError, GenSpec, SeededSource, derive_seed, generate
from .graph import dj_graph
from .serialize import SEARCH_FORMAT, claim_report_to_dict
from .verifier import CONJECTURES, HOLDS, NOT_APPLICABLE, VIOLATED, ClaimId, check_claim, parse_claim

PARALLELISM_ENV = "GEODISJOINT_PARALLELISM"
FAMILIES = {"random-convex": "random_convex", "random-general": "random_general"}
# redraws per instance when a min-degree filter rejects the sampled graph
MAX_REDRAWS = 1000
CANDIDATE_LABEL = "candidate counterexample - requires manual audit"
DEFECT_LABEL = "violation of a proven statement - implementation or statement defect"
CSV_COLUMNS = ("claim", "holds", "violated", "not_applicable")


class SearchConfigError(ValueError):
    pass


def default_parallelism() -> int:
    raw = os.environ.get(PARALLELISM_ENV)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError:
            raise SearchConfigError(f"{PARALLELISM_ENV} must be an integer, got {raw!r}") from None
        if value < 1:
            raise SearchConfigError(f"{PARALLELISM_ENV} must be at least 1")
        return value
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SearchConfig:
    family: str
    n_range: tuple[int, int]
    p_values: tuple[Fraction, ...]
    instances: int
    master_seed: int
    claims: tuple[ClaimId, ...]
    box: int = DEFAULT_BOX
    min_degree: int = 0
    stop_on_violation: bool = False
    parallelism: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SearchConfigError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        lo, hi = self.n_range
        if lo > hi:
            raise SearchConfigError(f"empty n-range {lo}:{hi}")
        if lo < (3 if self.family == "random-convex" else 1):
            raise SearchConfigError(f"n-range {lo}:{hi} is too small for {self.family}")
        if not self.p_values:
            raise SearchConfigError("at least one edge probability is required")
        object.__setattr__(self, "p_values", tuple(Fraction(p) for p in self.p_values))
        if any(not 0 <= p <= 1 for p in self.p_values):
            raise SearchConfigError("edge probabilities must lie in [0, 1]")
        if self.instances < 1:
            raise SearchConfigError("instances must be at least 1")
        if not 0 <= self.master_seed < 2**64:
            raise SearchConfigError("master seed must be an unsigned 64-bit integer")
        if not self.claims:
            raise SearchConfigError("no claims selected")
        object.__setattr__(self, "claims", tuple(parse_claim(c) for c in self.claims))
        if self.parallelism < 1:
            raise SearchConfigError("parallelism must be at least 1")
        if self.min_degree < 0:
            raise SearchConfigError("min degree must be non-negative")

    def to_dict(self) -> dict:
        # parallelism is deliberately left out: it must not influence the report body
        return {
            "family": self.family,
            "n_range": list(self.n_range),
            "p_values": [str(p) for p in self.p_values],
            "instances": self.instances,
            "master_seed": self.master_seed,
            "claims": [c.value for c in self.claims],
            "box": self.box,
            "min_degree": self.min_degree,
            "stop_on_violation": self.stop_on_violation,
        }


@dataclass
class InstanceResult:
    index: int
    spec: GenSpec | None
    verdicts: dict[str, str] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    n: int = 0
    e: int = 0
    m_max: int = 0
    slack: Fraction | None = None


def instance_spec(config: SearchConfig, index: int) -> GenSpec | None:
    """Resolve instance ``index`` to a concrete generator spec, or None when the degree filter never passes."""
    source = SeededSource(derive_seed(config.master_seed, index))
    n = source.between(*config.n_range)
    p = config.p_values[source.below(len(config.p_values))]
    kind = FAMILIES[config.family]
    for _ in range(MAX_REDRAWS):
        spec = GenSpec(kind=kind, n=n, p=p, seed=source.word(), box=config.box)
        if config.min_degree == 0 or generate(spec).min_degree >= config.min_degree:
            return spec
    return None


def run_instance(config: SearchConfig, index: int) -> InstanceResult:
    spec = instance_spec(config, index)
    result = InstanceResult(index=index, spec=spec)
    if spec is None:
        return result
    g = generate(spec)
    result.n, result.e = g.n, g.e
    result.m_max = max(g.dj_counts, default=0)
    result.slack = dj_graph(g) - potential(g.n, g.e)
    for claim in config.claims:
        report = check_claim(g, claim)
        result.verdicts[claim.value] = report.verdict
        if report.verdict == VIOLATED:
            result.violations.append(
                {
                    "index": index,
                    "label": CANDIDATE_LABEL if claim in CONJECTURES else DEFECT_LABEL,
                    "spec": spec.to_dict(),
                    "report": claim_report_to_dict(report),
                }
            )
    return result


def _run_chunk(config: SearchConfig, indices: list[int]) -> list[InstanceResult]:
    return [run_instance(config, i) for i in indices]


def _results(config: SearchConfig):
    """Yield instance results in index order."""
    indices = range(config.instances)
    if config.parallelism == 1:
        for i in indices:
            yield run_instance(config, i)
        return
    chunk = max(1, min(64, config.instances // (4 * config.parallelism)))
    batches = [list(indices[s : s + chunk]) for s in range(0, config.instances, chunk)]
    with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
        futures = [pool.submit(_run_chunk, config, b) for b in batches]
        try:
            for fut in futures:
                yield from fut.result()
        finally:
            for fut in futures:
                fut.cancel()


@dataclass
class SearchReport:
    config: SearchConfig
    tallies: dict[str, dict[str, int]]
    violations: list[dict]
    evaluated: int
    filtered_out: int
    stopped_at: int | None
    max_ratio_by_m: dict[int, tuple[Fraction, int]]
    min_slack: tuple[Fraction, int] | None

    @property
    def violated(self) -> bool:
        return bool(self.violations)

    def to_dict(self) -> dict:
        ratios = {
            str(m): {"e_over_n": str(r), "index": i} for m, (r, i) in sorted(self.max_ratio_by_m.items())
        }
        slack = None if self.min_slack is None else {"value": str(self.min_slack[0]), "index": self.min_slack[1]}
        return {
            "format": SEARCH_FORMAT,
            "config": self.config.to_dict(),
            "evaluated": self.evaluated,
            "filtered_out": self.filtered_out,
            "stopped_at": self.stopped_at,
            "tallies": self.tallies,
            "violations": self.violations,
            "statistics": {
                "max_e_over_n_by_m": ratios,
                "min_dj_minus_potential": slack,
            },
        }

    def tallies_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for claim, counts in self.tallies.items():
            writer.writerow([claim, counts[HOLDS], counts[VIOLATED], counts[NOT_APPLICABLE]])
        return buf.getvalue()


def run_search(config: SearchConfig) -> SearchReport:
    tallies = {c.value: {HOLDS: 0, VIOLATED: 0, NOT_APPLICABLE: 0} for c in config.claims}
    violations: list[dict] = []
    ratios: dict[int, tuple[Fraction, int]] = {}
    min_slack = None
    evaluated = filtered = 0
    stopped_at = None
    for res in _results(config):
        if res.spec is None:
            filtered += 1
            continue
        evaluated += 1
        for claim, verdict in res.verdicts.items():
            tallies[claim][verdict] += 1
        violations.extend(res.violations)
        if res.n:
            ratio = Fraction(res.e, res.n)
            best = ratios.get(res.m_max)
            if best is None or ratio > best[0]:
                ratios[res.m_max] = (ratio, res.index)
        if min_slack is None or res.slack < min_slack[0]:
            min_slack = (res.slack, res.index)
        if res.violations and config.stop_on_violation:
            stopped_at = res.index
            break
    return SearchReport(config, tallies, violations, evaluated, filtered, stopped_at, ratios, min_slack)


def replay(entry: dict) -> bool:
    """Regenerate a recorded violation and confirm the identical claim report comes back."""
    spec = GenSpec.from_dict(entry["spec"])
    report = check_claim(generate(spec), entry["report"]["claim"])
    return claim_report_to_dict(report) == entry["report"]


__all__ = [
    "CANDIDATE_LABEL",
    "CSV_COLUMNS",
    "FAMILIES",
    "PARALLELISM_ENV",
    "GenerationError",
    "SearchConfig",
    "SearchConfigError",
    "SearchReport",
    "default_parallelism",
    "instance_spec",
    "replay",
    "run_instance",
    "run_search",
]
