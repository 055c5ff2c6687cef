"""Instance-level checks of the disjoint-edge lemmas, theorems and conjectures.

Each claim is evaluated on one concrete graph and produces a
:class:`ClaimReport` with the two exact sides of the checked relation. A
claim whose hypotheses fail on the instance is ``not_applicable``; it is
never counted as a pass or a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .exact import (
    Surd,
    conjecture_threshold,
    potential,
    sqrt_edge_bound,
    surd_max,
    within_sqrt_bound,
)
from .geometry import angle_sign, segments_disjoint
from .graph import (
    Edge,
    GeometricGraph,
    NotApplicableError,
    all_local_data,
    double_edges,
    edge_key,
    is_locally_convex,
    leftmost_pairs,
    leftmost_pruning,
    saturated_count,
)

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not_applicable"


class ClaimId(str, Enum):
    lemma_2_1 = "lemma_2_1"
    identity_3 = "identity_3"
    corollary_2_2 = "corollary_2_2"
    lemma_2_3 = "lemma_2_3"
    ineq_LLpd = "ineq_LLpd"
    corollary_2_4 = "corollary_2_4"
    corollary_2_5 = "corollary_2_5"
    theorem_1 = "theorem_1"
    theorem_1_nonconvex_branch = "theorem_1_nonconvex_branch"
    theorem_2 = "theorem_2"
    theorem_3 = "theorem_3"
    dj_ge_e_minus_n = "dj_ge_e_minus_n"
    eq_9 = "eq_9"
    ineq_10 = "ineq_10"
    ineq_11 = "ineq_11"
    nell_equals_eGprime = "nell_equals_eGprime"
    prune_cardinalities = "prune_cardinalities"
    F_removal_monotone = "F_removal_monotone"
    conjecture_1 = "conjecture_1"
    conjecture_2 = "conjecture_2"
    conjecture_1_threshold = "conjecture_1_threshold"


CONJECTURES = frozenset({ClaimId.conjecture_1, ClaimId.conjecture_2, ClaimId.conjecture_1_threshold})


class UnknownClaimError(KeyError):
    pass


def parse_claim(name: str | ClaimId) -> ClaimId:
    try:
        return ClaimId(name)
    except ValueError:
        raise UnknownClaimError(
            f"unknown claim {name!r}; valid names: {', '.join(c.value for c in ClaimId)}"
        ) from None


@dataclass(frozen=True)
class ClaimReport:
    claim: ClaimId
    verdict: str
    lhs: int | Fraction | Surd | None = None
    rhs: int | Fraction | Surd | None = None
    relation: str | None = None
    witness: object = None
    context: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def tight(self) -> bool:
        """Both sides are equal."""
        if self.lhs is None or self.rhs is None:
            return False
        if isinstance(self.lhs, Surd):
            return self.lhs == self.rhs
        if isinstance(self.rhs, Surd):
            return self.rhs == self.lhs
        return self.lhs == self.rhs


def context_of(g: GeometricGraph) -> dict:
    return {
        "n": g.n,
        "e": g.e,
        "locally_convex": is_locally_convex(g),
        "min_degree": g.min_degree,
        "two_e_ge_n": 2 * g.e >= g.n,
    }


def _compare(lhs, relation: str, rhs) -> bool:
    if isinstance(rhs, Surd) and not isinstance(lhs, Surd):
        lhs, rhs = rhs, lhs
        relation = {"<=": ">=", ">=": "<=", "<": ">", ">": "<", "==": "=="}[relation]
    return {
        "<=": lambda a, b: a <= b,
        ">=": lambda a, b: a >= b,
        "<": lambda a, b: a < b,
        ">": lambda a, b: a > b,
        "==": lambda a, b: a == b,
    }[relation](lhs, rhs)


def _relation(claim, g, lhs, relation, rhs, witness=None, **details) -> ClaimReport:
    verdict = HOLDS if _compare(lhs, relation, rhs) else VIOLATED
    return ClaimReport(claim, verdict, lhs, rhs, relation, witness, context_of(g), details)


def _na(claim, g, reason: str, **details) -> ClaimReport:
    return ClaimReport(claim, NOT_APPLICABLE, context=context_of(g), details={"reason": reason, **details})


def _local_gate(g: GeometricGraph) -> str | None:
    if not is_locally_convex(g):
        return "graph is not locally convex"
    if g.min_degree < 2:
        return "some vertex has degree below 2"
    return None


# --- discharging ------------------------------------------------------------


@dataclass(frozen=True)
class ChargeAudit:
    vertex: int
    charges: dict[Edge, int]
    total: int
    rhs: int
    failures: tuple[tuple[Edge, str], ...]

    @property
    def ok(self) -> bool:
        return self.total == self.rhs and not self.failures


def _lemma_rhs(g: GeometricGraph, v: int) -> int:
    local = all_local_data(g)[v]
    middle = g.adjacency[v] - {local.leftmost, local.rightmost}
    return sum(g.degrees[w] - 1 for w in middle) + len(local.set_L) + len(local.set_R)


def charge_assignment(g: GeometricGraph, v: int) -> dict[Edge, int]:
    """Charge in {0, 1, 2} on every edge for the discharging argument at ``v``.

    Edges at ``v`` get 0, edges of the left/right side sets get 1, and any
    other edge gets the number of its endpoints among the neighbours of
    ``v`` other than the two extreme ones.
    """
    gate = _local_gate(g)
    if gate:
        raise NotApplicableError(gate)
    local = all_local_data(g)[v]
    middle = g.adjacency[v] - {local.leftmost, local.rightmost}
    sides = local.set_L | local.set_R
    charges = {}
    for uv in g.edges:
        if v in uv:
            charges[uv] = 0
        elif uv in sides:
            charges[uv] = 1
        else:
            charges[uv] = len(set(uv) & middle)
    return charges


def audit_charges(g: GeometricGraph, v: int) -> ChargeAudit:
    """Charge map at ``v`` plus the case-by-case disjointness audit of the discharging proof."""
    charges = charge_assignment(g, v)
    local = all_local_data(g)[v]
    left, right = local.leftmost, local.rightmost
    e_left, e_right = edge_key(v, left), edge_key(v, right)
    P = g.points
    failures = []
    for uv, c in charges.items():
        if c == 0:
            continue
        d_left, d_right = g.disjoint(uv, e_left), g.disjoint(uv, e_right)
        if c == 1 and not (d_left or d_right):
            failures.append((uv, "charge-1 edge meets both extreme edges"))
        elif c == 2:
            if not (d_left and d_right):
                failures.append((uv, "charge-2 edge meets an extreme edge"))
            inside = all(
                angle_sign(P[right], P[v], P[w]) > 0 and angle_sign(P[w], P[v], P[left]) > 0 for w in uv
            )
            if not inside:
                failures.append((uv, "charge-2 edge leaves the extreme cone"))
    for uv in local.set_L | local.set_R:
        pivot = left if uv in local.set_L else right
        far = uv[1] if uv[0] == pivot else uv[0]
        if far in g.adjacency[v]:
            failures.append((uv, "side-set edge ends at a neighbour of v"))
    return ChargeAudit(v, charges, sum(charges.values()), _lemma_rhs(g, v), tuple(failures))


# --- individual claims --------------------------------------------------------


def _sides_total(g):
    return sum(len(x.dj_l) + len(x.dj_r) for x in all_local_data(g))


def _check_lemma_2_1(g):
    lhs_total = rhs_total = 0
    for v, local in enumerate(all_local_data(g)):
        lhs = len(local.dj_l) + len(local.dj_r)
        audit = audit_charges(g, v)
        if lhs < audit.rhs or not audit.ok:
            return ClaimReport(
                ClaimId.lemma_2_1,
                VIOLATED,
                lhs,
                audit.rhs,
                ">=",
                v,
                context_of(g),
                {"charge_total": audit.total, "audit_failures": [[list(uv), why] for uv, why in audit.failures]},
            )
        lhs_total += lhs
        rhs_total += audit.rhs
    return _relation(ClaimId.lemma_2_1, g, lhs_total, ">=", rhs_total, scope="summed over vertices")


def _check_identity_3(g):
    local = all_local_data(g)
    sum_l = sum(x.alpha_l for x in local)
    sum_r = sum(x.alpha_r for x in local)
    if sum_l != g.n:
        return _relation(ClaimId.identity_3, g, sum_l, "==", g.n, sum_alpha_r=sum_r)
    return _relation(ClaimId.identity_3, g, sum_r, "==", g.n, sum_alpha_l=sum_l, side="right")


def _check_corollary_2_2(g):
    local = all_local_data(g)
    deg = g.degrees
    rhs = (
        sum(d * d for d in deg)
        - sum((x.alpha_l + x.alpha_r) * deg[x.vertex] for x in local)
        - 2 * (g.e - g.n)
        + sum(len(x.set_L) for x in local)
        + sum(len(x.set_R) for x in local)
    )
    return _relation(ClaimId.corollary_2_2, g, _sides_total(g), ">=", rhs)


def _check_lemma_2_3(g):
    local = all_local_data(g)
    lhs_l = sum(len(x.set_Lp) for x in local)
    rhs_l = sum(x.alpha_l * (x.alpha_l - 1) // 2 for x in local)
    lhs_r = sum(len(x.set_Rp) for x in local)
    rhs_r = sum(x.alpha_r * (x.alpha_r - 1) // 2 for x in local)
    if lhs_l != rhs_l:
        return _relation(ClaimId.lemma_2_3, g, lhs_l, "==", rhs_l, side="left", right=[lhs_r, rhs_r])
    return _relation(ClaimId.lemma_2_3, g, lhs_r, "==", rhs_r, side="right", left=[lhs_l, rhs_l])


def _check_ineq_LLpd(g):
    lhs_total = rhs_total = 0
    for x in all_local_data(g):
        checks = [
            (len(x.set_L), len(x.set_Lp) + x.delta_l, "left"),
            (len(x.set_R), len(x.set_Rp) + x.delta_r, "right"),
        ]
        for lhs, rhs, side in checks:
            if lhs < rhs:
                return ClaimReport(ClaimId.ineq_LLpd, VIOLATED, lhs, rhs, ">=", x.vertex, context_of(g), {"side": side})
        if x.delta_l != int(bool(x.set_L - x.set_Lp)) or x.delta_r != int(bool(x.set_R - x.set_Rp)):
            return ClaimReport(
                ClaimId.ineq_LLpd,
                VIOLATED,
                x.delta_l,
                int(bool(x.set_L - x.set_Lp)),
                "==",
                x.vertex,
                context_of(g),
                {"reason": "indicator disagrees with the side-set difference"},
            )
        lhs_total += len(x.set_L) + len(x.set_R)
        rhs_total += len(x.set_Lp) + x.delta_l + len(x.set_Rp) + x.delta_r
    return _relation(ClaimId.ineq_LLpd, g, lhs_total, ">=", rhs_total, scope="summed over vertices")


def _check_corollary_2_4(g):
    local = all_local_data(g)
    n, e = g.n, g.e
    n_l, n_r = saturated_count(g, 0), saturated_count(g, 1)
    if n_l == n or n_r == n:
        return _na(ClaimId.corollary_2_4, g, "every vertex is saturated", n_l=n_l, n_r=n_r)
    s = 2 * e - n
    rhs = (
        Fraction(s * s, 2 * (n - n_l))
        + Fraction(s * s, 2 * (n - n_r))
        - s
        + sum(x.delta_l + x.delta_r for x in local)
    )
    return _relation(ClaimId.corollary_2_4, g, _sides_total(g), ">=", rhs, n_l=n_l, n_r=n_r)


def _check_corollary_2_5(g):
    local = all_local_data(g)
    dj = g.dj_counts
    idx = g.edge_index
    lhs = sum(dj[idx[edge_key(x.vertex, x.leftmost)]] + dj[idx[edge_key(x.vertex, x.rightmost)]] for x in local)
    d = Fraction(2 * g.e, g.n)
    rhs = g.n * (d - 1) * (d - 2)
    return _relation(ClaimId.corollary_2_5, g, lhs, ">=", rhs)


def _m_max(g):
    return max(g.dj_counts, default=0)


def _check_theorem_1(g):
    n, e, m = g.n, g.e, _m_max(g)
    sqrt_branch = sqrt_edge_bound(n, m)
    linear_branch = n + 3 * m - 1
    rhs = surd_max(sqrt_branch, linear_branch)
    ok = within_sqrt_bound(n, e, m) or e <= linear_branch
    return ClaimReport(
        ClaimId.theorem_1,
        HOLDS if ok else VIOLATED,
        e,
        rhs,
        "<=",
        None,
        context_of(g),
        {
            "m": m,
            "sqrt_branch": sqrt_branch,
            "linear_branch": linear_branch,
            "dominant_branch": "sqrt" if sqrt_branch >= linear_branch else "linear",
        },
    )


def _check_theorem_1_nonconvex_branch(g):
    nonconvex = [v for v in range(g.n) if not g.convex_flags[v]]
    if not nonconvex:
        return _na(ClaimId.theorem_1_nonconvex_branch, g, "every vertex is convex")
    m = _m_max(g)
    v = min(nonconvex, key=lambda u: (g.degrees[u], u))
    return _relation(
        ClaimId.theorem_1_nonconvex_branch,
        g,
        g.e,
        "<=",
        3 * m + g.degrees[v],
        v,
        m=m,
        nonconvex_vertices=nonconvex,
        max_degree_bound=3 * m + g.max_degree,
    )


def _check_theorem_2(g):
    if not is_locally_convex(g):
        return _na(ClaimId.theorem_2, g, "graph is not locally convex")
    if 2 * g.e < g.n:
        return _na(ClaimId.theorem_2, g, "2e < n")
    return _relation(ClaimId.theorem_2, g, _dj(g), ">=", potential(g.n, g.e))


def _dj(g):
    return sum(g.dj_counts) // 2


def _check_theorem_3(g):
    if _dj(g) != 0:
        return _na(ClaimId.theorem_3, g, "the graph has a pair of disjoint edges")
    return _relation(ClaimId.theorem_3, g, g.e, "<=", g.n)


def _check_dj_ge_e_minus_n(g):
    return _relation(ClaimId.dj_ge_e_minus_n, g, _dj(g), ">=", g.e - g.n)


def _check_eq_9(g):
    pruning = leftmost_pruning(g)
    rhs = _dj(pruning.graph) + sum(len(x.dj_l) for x in all_local_data(g)) - len(leftmost_pairs(g))
    return _relation(ClaimId.eq_9, g, _dj(g), ">=", rhs, dj_pruned=_dj(pruning.graph), n_ell_pairs=len(leftmost_pairs(g)))


def _check_ineq_10(g):
    local = all_local_data(g)
    n_l = saturated_count(g, 0)
    doubles = double_edges(g, 0)
    t_l = len(doubles)
    deltas = sum(x.delta_l for x in local)
    identity_failures = [
        [u, v]
        for u, v in doubles
        if local[u].delta_l + local[v].delta_l + local[u].beta_l + local[v].beta_l != 2
    ]
    details = {"n_l": n_l, "t_l": t_l, "sum_delta_l": deltas, "double_edge_identity_failures": identity_failures}
    if deltas + n_l < 2 * t_l:
        return _relation(ClaimId.ineq_10, g, deltas + n_l, ">=", 2 * t_l, **details)
    return _relation(ClaimId.ineq_10, g, 2 * t_l, ">=", n_l, **details)


def _check_ineq_11(g):
    pruning = leftmost_pruning(g)
    n, e = g.n, g.e
    kept = len(pruning.kept)
    if kept == 0:
        return _na(ClaimId.ineq_11, g, "pruning removed every vertex")
    d_pruned = Fraction(2 * pruning.graph.e, kept)
    first = Fraction(2 * e - n, n - pruning.n_l) - 1
    second = Fraction(2 * e, n) - 2
    if d_pruned < first:
        return _relation(ClaimId.ineq_11, g, d_pruned, ">=", first, step="first", second_bound=second)
    return _relation(ClaimId.ineq_11, g, first, ">=", second, step="second", pruned_average_degree=d_pruned)


def _check_nell_equals_eGprime(g):
    pruning = leftmost_pruning(g)
    kept_edges = pruning.original_edges()
    ext = g.extremes
    for u, v in g.edges:
        disjoint = g.disjoint(edge_key(u, ext[u][0]), edge_key(v, ext[v][0]))
        if disjoint != ((u, v) in kept_edges):
            return ClaimReport(
                ClaimId.nell_equals_eGprime,
                VIOLATED,
                len(leftmost_pairs(g)),
                pruning.graph.e,
                "==",
                [u, v],
                context_of(g),
                {"leftmost_edges_disjoint": disjoint, "edge_survives_pruning": not disjoint},
            )
    return _relation(ClaimId.nell_equals_eGprime, g, len(leftmost_pairs(g)), "==", pruning.graph.e)


def _check_prune_cardinalities(g):
    p = leftmost_pruning(g)
    details = {"n_l": p.n_l, "t_l": p.t_l, "pruned_edges": p.graph.e, "expected_edges": g.e - g.n + p.t_l}
    if not p.vertex_count_holds:
        return _relation(ClaimId.prune_cardinalities, g, len(p.kept), "==", g.n - p.n_l, **details)
    return _relation(ClaimId.prune_cardinalities, g, p.graph.e, "==", g.e - g.n + p.t_l, pruned_vertices=len(p.kept), **details)


def _check_F_removal_monotone(g):
    n, e = g.n, g.e
    if not e > n > 1:
        return _na(ClaimId.F_removal_monotone, g, "needs e > n > 1")
    low = [v for v in range(n) if g.degrees[v] <= 1]
    if not low:
        return _na(ClaimId.F_removal_monotone, g, "no vertex of degree 0 or 1")
    before = potential(n, e)
    worst = min(low, key=lambda v: (potential(n - 1, e - g.degrees[v]), v))
    after = potential(n - 1, e - g.degrees[worst])
    return _relation(ClaimId.F_removal_monotone, g, after, ">", before, worst if after <= before else None, removed_vertex=worst)


def _check_conjecture_1(g):
    n, e, m = g.n, g.e, _m_max(g)
    bound = sqrt_edge_bound(n, m)
    ok = within_sqrt_bound(n, e, m)
    return ClaimReport(ClaimId.conjecture_1, HOLDS if ok else VIOLATED, e, bound, "<=", None, context_of(g), {"m": m})


def _check_conjecture_2(g):
    if 2 * g.e < g.n:
        return _na(ClaimId.conjecture_2, g, "2e < n")
    return _relation(ClaimId.conjecture_2, g, _dj(g), ">=", potential(g.n, g.e))


def _check_conjecture_1_threshold(g):
    n, e, m = g.n, g.e, _m_max(g)
    if m < 2:
        return _na(ClaimId.conjecture_1_threshold, g, "threshold undefined for m < 2", m=m)
    threshold = conjecture_threshold(m)
    if threshold > n:
        return _na(ClaimId.conjecture_1_threshold, g, "n below threshold", m=m, threshold=threshold, threshold_met=False)
    bound = sqrt_edge_bound(n, m)
    ok = within_sqrt_bound(n, e, m)
    return ClaimReport(
        ClaimId.conjecture_1_threshold,
        HOLDS if ok else VIOLATED,
        e,
        bound,
        "<=",
        None,
        context_of(g),
        {"m": m, "threshold": threshold, "threshold_met": True},
    )


_LOCAL = {
    ClaimId.lemma_2_1,
    ClaimId.identity_3,
    ClaimId.corollary_2_2,
    ClaimId.lemma_2_3,
    ClaimId.ineq_LLpd,
    ClaimId.corollary_2_4,
    ClaimId.corollary_2_5,
    ClaimId.eq_9,
    ClaimId.ineq_10,
    ClaimId.ineq_11,
    ClaimId.nell_equals_eGprime,
    ClaimId.prune_cardinalities,
}

_CHECKS: dict[ClaimId, Callable[[GeometricGraph], ClaimReport]] = {
    ClaimId.lemma_2_1: _check_lemma_2_1,
    ClaimId.identity_3: _check_identity_3,
    ClaimId.corollary_2_2: _check_corollary_2_2,
    ClaimId.lemma_2_3: _check_lemma_2_3,
    ClaimId.ineq_LLpd: _check_ineq_LLpd,
    ClaimId.corollary_2_4: _check_corollary_2_4,
    ClaimId.corollary_2_5: _check_corollary_2_5,
    ClaimId.theorem_1: _check_theorem_1,
    ClaimId.theorem_1_nonconvex_branch: _check_theorem_1_nonconvex_branch,
    ClaimId.theorem_2: _check_theorem_2,
    ClaimId.theorem_3: _check_theorem_3,
    ClaimId.dj_ge_e_minus_n: _check_dj_ge_e_minus_n,
    ClaimId.eq_9: _check_eq_9,
    ClaimId.ineq_10: _check_ineq_10,
    ClaimId.ineq_11: _check_ineq_11,
    ClaimId.nell_equals_eGprime: _check_nell_equals_eGprime,
    ClaimId.prune_cardinalities: _check_prune_cardinalities,
    ClaimId.F_removal_monotone: _check_F_removal_monotone,
    ClaimId.conjecture_1: _check_conjecture_1,
    ClaimId.conjecture_2: _check_conjecture_2,
    ClaimId.conjecture_1_threshold: _check_conjecture_1_threshold,
}


def check_claim(g: GeometricGraph, claim: ClaimId | str) -> ClaimReport:
    claim = parse_claim(claim)
    if claim in _LOCAL:
        gate = _local_gate(g)
        if gate:
            return _na(claim, g, gate)
    return _CHECKS[claim](g)


def check_all(g: GeometricGraph, claims=None) -> list[ClaimReport]:
    """Reports for ``claims`` (default: every claim), in enumeration order."""
    wanted = set(ClaimId) if claims is None else {parse_claim(c) for c in claims}
    return [check_claim(g, c) for c in ClaimId if c in wanted]


# --- independent oracles --------------------------------------------------------


def brute_force_dj(g: GeometricGraph) -> int:
    """Disjoint pair count straight from the closed-segment predicate, pair by pair."""
    P = g.points
    return sum(
        1
        for (a, b), (c, d) in combinations(g.edges, 2)
        if segments_disjoint(P[a], P[b], P[c], P[d])
    )


def convex_chord_oracle(n: int, edges) -> int:
    """Disjoint pair count for chords of a convex ``n``-gon labelled in cyclic order.

    Two chords are disjoint iff they have no common endpoint and their
    endpoints do not interleave around the polygon.
    """
    chords = [tuple(sorted(uv)) for uv in edges]
    for a, b in chords:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise ValueError(f"chord ({a}, {b}) is not valid for n = {n}")
    count = 0
    for (a, b), (c, d) in combinations(chords, 2):
        if len({a, b, c, d}) < 4:
            continue
        if not (a < c < b < d or c < a < d < b):
            count += 1
    return count
