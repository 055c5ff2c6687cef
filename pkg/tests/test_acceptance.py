"""Acceptance criteria 1-10, each at its stated tolerance.

Every test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion. Run just this module with
``pytest tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from functools import lru_cache

import mpmath
import pytest

from geodisjoint.cli import main as cli_main
from geodisjoint.exact import binom3, sqrt_edge_bound, within_sqrt_bound
from geodisjoint.generators import SeededSource, derive_seed, disjoint_stars, extremal_gnk, generate, random_convex_graph
from geodisjoint.graph import aggregates, dj_graph
from geodisjoint.search import SearchConfig, instance_spec, run_search
from geodisjoint.serialize import analysis_document, claim_report_to_dict, dumps
from geodisjoint.verifier import HOLDS, VIOLATED, ClaimId, audit_charges, brute_force_dj, check_all, check_claim, convex_chord_oracle

QUARTERS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
UNIVERSAL_CLAIMS = (
    "lemma_2_1",
    "identity_3",
    "corollary_2_2",
    "lemma_2_3",
    "ineq_LLpd",
    "corollary_2_4",
    "corollary_2_5",
    "theorem_2",
    "ineq_10",
    "ineq_11",
    "prune_cardinalities",
    "eq_9",
)
GENERAL_CLAIMS = ("theorem_1", "theorem_3", "dj_ge_e_minus_n", "theorem_1_nonconvex_branch")
CONVEX_SEED = 20_240_601
GENERAL_SEED = 20_240_602


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def convex_corpus_config(parallelism=1):
    return SearchConfig(
        family="random-convex",
        n_range=(6, 14),
        p_values=QUARTERS,
        instances=1000,
        master_seed=CONVEX_SEED,
        claims=UNIVERSAL_CLAIMS,
        min_degree=2,
        parallelism=parallelism,
    )


@lru_cache(maxsize=1)
def convex_corpus_run():
    start = time.perf_counter()
    report = run_search(convex_corpus_config())
    return report, time.perf_counter() - start


# --- 1 ---------------------------------------------------------------------------------

C1 = criterion(1, "extremal family table, exact, < 5 s")
TABLE = [(11, 2, 22, 22, 3), (12, 3, 30, 60, 6), (13, 4, 39, 130, 10), (6, 3, 15, 30, 6)]


@C1
@pytest.mark.parametrize("n, k, e, dj, m", TABLE)
def test_c1_extremal_counts(n, k, e, dj, m):
    agg = aggregates(extremal_gnk(n, k))
    assert agg.e == e == n * (k + 2) // 2
    assert agg.dj_total == dj == Fraction(n, 2) * binom3(k + 2)
    assert agg.m_max == m == k * (k + 1) // 2


@C1
def test_c1_runtime():
    start = time.perf_counter()
    for n, k, *_ in TABLE:
        aggregates(extremal_gnk(n, k))
    assert time.perf_counter() - start < 5


# --- 2 ---------------------------------------------------------------------------------

C2 = criterion(2, "tightness of theorem_1 and theorem_2 on G_{n,k}")


@C2
@pytest.mark.parametrize("n, k", [(11, 2), (12, 3), (13, 4)])
def test_c2_theorem_1_tight(n, k):
    r = check_claim(extremal_gnk(n, k), ClaimId.theorem_1)
    assert r.verdict == HOLDS
    assert r.lhs == r.rhs
    if (n, k) != (11, 2):
        assert r.details["dominant_branch"] == "sqrt"


@C2
@pytest.mark.parametrize("n, k", [(11, 2), (12, 3), (13, 4)])
def test_c2_theorem_2_tight(n, k):
    r = check_claim(extremal_gnk(n, k), ClaimId.theorem_2)
    assert r.verdict == HOLDS and r.lhs == r.rhs


# --- 3 ---------------------------------------------------------------------------------

C3 = criterion(3, "two-stars family: DJ = n^2 and the sign flip against half-sum C(deg, 3)")


@C3
@pytest.mark.parametrize("n, dj, half_sum, sign", [(3, 9, 1, -1), (9, 81, 84, 1)])
def test_c3_stars(n, dj, half_sum, sign):
    g = disjoint_stars(n)
    assert dj_graph(g) == dj
    total = Fraction(1, 2) * sum(binom3(d) for d in g.degrees)
    assert total == half_sum
    assert (total > dj) - (total < dj) == sign


# --- 4 ---------------------------------------------------------------------------------

C4 = criterion(4, "1,000 random convex graphs, min degree >= 2: zero violations, < 60 s")


@C4
@pytest.mark.parametrize("claim", UNIVERSAL_CLAIMS)
def test_c4_no_violations(claim):
    report, _ = convex_corpus_run()
    assert report.evaluated == 1000
    counts = report.tallies[claim]
    assert counts[VIOLATED] == 0, f"{counts[VIOLATED]} violations, first at {[v['index'] for v in report.violations if v['report']['claim'] == claim][:5]}"
    assert counts[HOLDS] == 1000


@C4
def test_c4_runtime():
    _, elapsed = convex_corpus_run()
    assert elapsed < 60


# --- 5 ---------------------------------------------------------------------------------

C5 = criterion(5, "1,000 random general-position graphs: theorem_1, theorem_3, dj >= e - n, non-convex branch")


@lru_cache(maxsize=1)
def general_corpus_run():
    cfg = SearchConfig(
        family="random-general",
        n_range=(4, 12),
        p_values=QUARTERS,
        instances=1000,
        master_seed=GENERAL_SEED,
        claims=GENERAL_CLAIMS,
    )
    return run_search(cfg)


@C5
@pytest.mark.parametrize("claim", GENERAL_CLAIMS)
def test_c5_no_violations(claim):
    report = general_corpus_run()
    assert report.evaluated == 1000
    assert report.tallies[claim][VIOLATED] == 0


@C5
def test_c5_nonconvex_branch_exercised():
    assert general_corpus_run().tallies["theorem_1_nonconvex_branch"][HOLDS] > 0


# --- 6 ---------------------------------------------------------------------------------

C6 = criterion(6, "geometric brute force equals chord interleaving on 200 convex graphs")


@C6
def test_c6_chord_oracle():
    mismatches = []
    for i in range(200):
        src = SeededSource(derive_seed(6, i))
        n, p = src.between(3, 20), QUARTERS[src.below(3)]
        g = random_convex_graph(n, p, src.word())
        if not brute_force_dj(g) == convex_chord_oracle(n, g.edges) == dj_graph(g):
            mismatches.append(i)
    assert mismatches == []


# --- 7 ---------------------------------------------------------------------------------

C7 = criterion(7, "exact sqrt comparator vs 100-digit evaluation on 10,000 triples")


@C7
def test_c7_sqrt_comparator():
    rng = random.Random(7)
    disagreements = []
    with mpmath.workdps(100):
        for i in range(10_000):
            n, m = rng.randint(1, 10**6), rng.randint(0, 10**9)
            bound = n * (mpmath.sqrt(1 + 8 * m) + 3) / 4
            if i % 2:
                e = rng.randint(0, 10**12)
            else:
                e = int(mpmath.floor(bound)) + rng.choice((-1, 0, 1))
            e = max(e, 0)
            expected = e <= bound
            if within_sqrt_bound(n, e, m) is not expected or (sqrt_edge_bound(n, m) >= e) is not expected:
                disagreements.append((n, e, m))
    assert disagreements == []


# --- 8 ---------------------------------------------------------------------------------

C8 = criterion(8, "discharging audit on every vertex of the criterion-4 corpus")


@C8
def test_c8_charge_audit():
    cfg = convex_corpus_config()
    failures = []
    vertices = 0
    for i in range(cfg.instances):
        spec = instance_spec(cfg, i)
        g = generate(spec)
        for v in range(g.n):
            audit = audit_charges(g, v)
            vertices += 1
            if not audit.ok:
                failures.append((i, v, audit.total, audit.rhs, audit.failures))
    assert vertices > 0
    assert failures == []


# --- 9 ---------------------------------------------------------------------------------

C9 = criterion(9, "byte-identical reports on repeated runs and across --parallelism")


def _cli_bytes(tmp_path, argv, name):
    out = tmp_path / name
    code = cli_main([str(a) for a in argv] + ["--out", str(out), "--quiet"])
    assert code in (0, 1)
    return out.read_bytes()


@C9
def test_c9_generate_analyze_verify(tmp_path):
    g1 = _cli_bytes(tmp_path, ["generate", "random-general", "--n", 12, "--p", "1/2", "--seed", 99], "g1.json")
    g2 = _cli_bytes(tmp_path, ["generate", "random-general", "--n", 12, "--p", "1/2", "--seed", 99], "g2.json")
    assert g1 == g2
    a1 = _cli_bytes(tmp_path, ["analyze", tmp_path / "g1.json"], "a1.json")
    a2 = _cli_bytes(tmp_path, ["analyze", tmp_path / "g2.json"], "a2.json")
    assert a1 == a2
    v1 = _cli_bytes(tmp_path, ["verify", tmp_path / "g1.json"], "v1.json")
    v2 = _cli_bytes(tmp_path, ["verify", tmp_path / "g1.json"], "v2.json")
    assert v1 == v2


@C9
def test_c9_search_across_parallelism(tmp_path):
    base = ["search", "--instances", 120, "--n-range", "6:12", "--min-degree", 2, "--seed", 77]
    runs = [_cli_bytes(tmp_path, base + ["--parallelism", p], f"s{p}.json") for p in (1, 1, 2, 4)]
    assert len(set(runs)) == 1


# --- 10 --------------------------------------------------------------------------------

C10 = criterion(10, "G_{201,6} analyze + verify < 2 s; search speedup >= 3x at 4 cores")


@C10
def test_c10_large_instance():
    start = time.perf_counter()
    g = extremal_gnk(201, 6)
    dumps(analysis_document(g, aggregates(g)))
    reports = check_all(g)
    dumps([claim_report_to_dict(r) for r in reports])
    elapsed = time.perf_counter() - start
    assert g.e == 804
    assert not [r for r in reports if r.verdict == VIOLATED]
    assert elapsed < 2


@C10
def test_c10_parallel_speedup():
    timings = {}
    for workers in (1, 4):
        start = time.perf_counter()
        run_search(convex_corpus_config(parallelism=workers))
        timings[workers] = time.perf_counter() - start
    speedup = timings[1] / timings[4]
    assert speedup >= 3, f"speedup {speedup:.2f}x (serial {timings[1]:.1f} s, 4 workers {timings[4]:.1f} s)"
