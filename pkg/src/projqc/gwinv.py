"""Catalog of genus-0 three-point Gromov-Witten invariants of P(V).

Values come from three sources: computations done here (the W_i numbers by
two independent routes, classical triple intersections for A = 0), constants
established geometrically for specific curve classes and insertions, and
vanishing statements. Anything else is reported as unknown rather than 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .bundle import BundleSpec, CohClass, cup, integrate
from .errors import HypothesisError, InvariantViolation
from .exactpoly import series_expand
from .fano import CurveClass, anticanonical_degree, classify_hypotheses
from .schubert import check_w_hypothesis, gw_integral_W

# provenance tags
DEGREE = "degree-mismatch"
CLASSICAL = "classical-triple-intersection"
FIBER_LINE = "fiber-line-count"
FIBER_VANISHING = "fiber-class-vanishing"
SECTION_POINT = "section-line-through-point"
W_TWO_PATHS = "series-and-moduli-integral-agree"
TANGENT_COUNT = "tangent-section-count"
TANGENT_POINT = "tangent-section-through-point"
UNKNOWN = "unknown"

Insertion = tuple[int, int]


@dataclass(frozen=True)
class GwQuery:
    """Phi_(A,0)(h^i1 xi^j1, h^i2 xi^j2, ...) on P(V)."""

    spec: BundleSpec
    curve: CurveClass
    insertions: tuple[Insertion, ...]

    def __post_init__(self):
        ins = tuple((int(i), int(j)) for i, j in self.insertions)
        for i, j in ins:
            if not (0 <= i <= self.spec.n and 0 <= j < self.spec.r):
                raise ValueError(f"insertion h^{i} xi^{j} is not a basis monomial")
        object.__setattr__(self, "insertions", ins)

    def to_json(self) -> dict:
        return {"curve": [self.curve.a, self.curve.b],
                "insertions": [list(x) for x in self.insertions]}


@dataclass(frozen=True)
class GwResult:
    query: GwQuery
    value: int | None
    provenance: str

    @property
    def known(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {"query": self.query.to_json(),
                "value": None if self.value is None else str(self.value),
                "status": "known" if self.known else "unknown",
                "provenance": self.provenance}


def degree_deficit(q: GwQuery) -> int:
    """Sum of insertion degrees minus (-K(A) + dim P(V)); nonzero forces Phi = 0."""
    total = sum(i + j for i, j in q.insertions)
    return total - (anticanonical_degree(q.spec, q.curve) + q.spec.dim)


def expected_dim(spec: BundleSpec, A: CurveClass) -> int:
    return anticanonical_degree(spec, A) + spec.dim - 3


def gw_fiber_line(spec: BundleSpec) -> int:
    """Lines in a fiber through a point meeting xi and xi^(r-1) cycles: exactly one."""
    if spec.r < 2:
        raise ValueError("fiber lines need rank r >= 2")
    return 1


def gw_vanishes_fiber_multiple(b: int, q1: int, q2: int, r: int) -> bool:
    """True when Phi_(b A1)(h^p1 xi^q1, h^p2 xi^q2, any) = 0 is guaranteed (q1 + q2 < r)."""
    if b < 1 or q1 < 0 or q2 < 0:
        raise ValueError("need b >= 1 and q1, q2 >= 0")
    return q1 + q2 < r


def w_series(spec: BundleSpec, i: int) -> int:
    """Coefficient of t^i in prod_u (1 - m_u t)^(m_u - 2)."""
    return series_expand([(m, m - 2) for m in spec.splitting], i).int_coeff(i)


def gw_W(spec: BundleSpec, i: int) -> int:
    """W_i computed as a series coefficient and as a moduli-space integral; both must agree."""
    check_w_hypothesis(spec, i)
    s = w_series(spec, i)
    w = gw_integral_W(spec, i)
    if s != w:
        raise InvariantViolation(f"W_{i} disagrees for {spec.label()}: series {s}, integral {w}")
    return w


def w_query(spec: BundleSpec, i: int) -> GwQuery:
    n, r, c1 = spec.n, spec.r, spec.c1
    nt = (n + 1) // 2
    return GwQuery(spec, CurveClass.section_line(spec),
                   ((nt, 0), (n + 1 - nt, 0), (n - i, 2 * r - c1 - 1 + i)))


def _tangent_ii_ok(n: int, jkst: Sequence[int]) -> bool:
    j, k, s, t = jkst
    return min(jkst) >= 0 and max(j, k) > 0 and max(s, t) > 0 and j + k + s + t == n


def gw_tangent(n: int, which: str, jkst: Sequence[int] | None = None) -> int:
    """Known invariants of P(T_{P^n}) for the section class (1, -n).

    ``"count"``: Phi(h, h^n, h^(n-1) xi^(n-1)) = n.
    ``"point"``: Phi(h^j xi^k, h^s xi^t, h^n xi^(n-1)) = 1 with jkst = (j, k, s, t),
    max(j, k) > 0, max(s, t) > 0, j + k + s + t = n.
    ``"leading"``: Phi(h, h^n, h^n xi^(n-2)) = 1.
    """
    if n < 2:
        raise ValueError("tangent-bundle invariants need n >= 2")
    if which == "count":
        return n
    if which == "leading":
        return 1
    if which == "point":
        if jkst is None or len(jkst) != 4 or not _tangent_ii_ok(n, jkst):
            raise ValueError(f"insertions {jkst} outside max(j,k)>0, max(s,t)>0, j+k+s+t=n")
        return 1
    raise ValueError(f"unknown tangent query tag {which!r}")


def _is_section_class(spec: BundleSpec, A: CurveClass) -> bool:
    return spec.m1 == 1 and A == CurveClass.section_line(spec)


def lookup(q: GwQuery) -> GwResult:
    spec, A, ins = q.spec, q.curve, q.insertions
    n, r, c1 = spec.n, spec.r, spec.c1
    bag = Counter(ins)

    if degree_deficit(q) != 0:
        return GwResult(q, 0, DEGREE)

    if A == CurveClass(0, 0):
        prod = CohClass.one(spec)
        for i, j in ins:
            prod = cup(prod, CohClass.monomial(spec, i, j))
        return GwResult(q, integrate(prod), CLASSICAL)

    if len(ins) != 3:
        return GwResult(q, None, UNKNOWN)

    if A.a == 0 and A.b >= 1:
        if A.b == 1 and r >= 2 and bag == Counter([(0, 1), (0, r - 1), (n, r - 1)]):
            return GwResult(q, gw_fiber_line(spec), FIBER_LINE)
        for x in range(3):
            for y in range(x + 1, 3):
                if gw_vanishes_fiber_multiple(A.b, ins[x][1], ins[y][1], r):
                    return GwResult(q, 0, FIBER_VANISHING)
        return GwResult(q, None, UNKNOWN)

    if _is_section_class(spec, A):
        hyp = classify_hypotheses(spec)
        if spec.is_split and hyp.first_relation_range:
            for i in range(c1 - r + 1):
                if bag == Counter(w_query(spec, i).insertions):
                    return GwResult(q, gw_W(spec, i), W_TWO_PATHS)
        if hyp.leading_coefficient and bag == Counter([(1, 0), (n, 0), (n, 2 * r - c1 - 1)]):
            return GwResult(q, 1, SECTION_POINT)
        if spec.tangent and n >= 2:
            if bag == Counter([(1, 0), (n, 0), (n - 1, n - 1)]):
                return GwResult(q, gw_tangent(n, "count"), TANGENT_COUNT)
            point = (n, n - 1)
            if point in bag:
                rest = list(ins)
                rest.remove(point)
                jkst = (*rest[0], *rest[1])
                if _tangent_ii_ok(n, jkst):
                    return GwResult(q, gw_tangent(n, "point", jkst), TANGENT_POINT)

    return GwResult(q, None, UNKNOWN)


def catalog(spec: BundleSpec) -> list[GwResult]:
    """Every invariant of ``spec`` that this catalog can state, in a fixed order."""
    n, r, c1 = spec.n, spec.r, spec.c1
    queries: list[GwQuery] = []
    if r >= 2:
        queries.append(GwQuery(spec, CurveClass.fiber_line(), ((0, 1), (0, r - 1), (n, r - 1))))
    if spec.m1 == 1:
        A2 = CurveClass.section_line(spec)
        hyp = classify_hypotheses(spec)
        if hyp.leading_coefficient:
            queries.append(GwQuery(spec, A2, ((1, 0), (n, 0), (n, 2 * r - c1 - 1))))
        if spec.is_split and hyp.first_relation_range:
            queries.extend(w_query(spec, i) for i in range(c1 - r + 1))
        if spec.tangent and n >= 2:
            queries.append(GwQuery(spec, A2, ((1, 0), (n, 0), (n - 1, n - 1))))
            queries.extend(GwQuery(spec, A2, (alpha, beta, (n, n - 1)))
                           for alpha, beta in tangent_point_pairs(n))
    seen, unique = set(), []
    for q in queries:
        key = tuple(sorted(q.insertions)), q.curve
        if key not in seen:
            seen.add(key)
            unique.append(q)
    return [lookup(q) for q in unique]


def tangent_point_pairs(n: int) -> list[tuple[Insertion, Insertion]]:
    """For i = 0..n, the insertion pair whose product is h^(n-i) xi^i.

    (h^(n-1), h) for i = 0, (h^(n-i), xi^i) for 0 < i < n, (xi, xi^(n-1)) for i = n.
    """
    pairs = [((n - 1, 0), (1, 0))]
    pairs += [((n - i, 0), (0, i)) for i in range(1, n)]
    pairs.append(((0, 1), (0, n - 1)))
    return pairs


def require_known(res: GwResult) -> int:
    if res.value is None:
        raise HypothesisError(f"invariant {res.query.to_json()} is not determined", "unknown")
    return res.value
