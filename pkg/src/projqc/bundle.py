"""Bundles over P^n and the classical cohomology ring of their projectivization.

H*(P(V); Z) is generated by the hyperplane class ``h`` and the tautological
class ``xi`` subject to

    h^(n+1) = 0,      sum_{i=0..r} (-1)^i c_i h^i xi^(r-i) = 0,

so it is free over Z on the box of monomials h^i xi^j, 0 <= i <= n,
0 <= j <= r-1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import SpecMismatch
from .exactpoly import IntPoly, binom, format_terms

HX = ("h", "xi")
HX_NAMES = ("h", "ξ")


def chern_from_splitting(m: Sequence[int]) -> tuple[int, ...]:
    """Chern numbers c_0..c_r of O(m_1) + ... + O(m_r) (elementary symmetric polys)."""
    if not m:
        raise ValueError("splitting type must be non-empty")
    if any(x < 1 for x in m):
        raise ValueError(f"splitting degrees must be >= 1, got {tuple(m)}")
    c = [1]
    for x in m:
        c = [a + x * b for a, b in zip(c + [0], [0] + c)]
    return tuple(c)


@dataclass(frozen=True)
class BundleSpec:
    """Either a split bundle O(m_1)+...+O(m_r) on P^n or the tangent bundle of P^n."""

    n: int
    splitting: tuple[int, ...] | None = None
    tangent: bool = False
    chern: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"base dimension n must be >= 1, got {self.n!r}")
        if self.tangent:
            if self.splitting is not None:
                raise ValueError("tangent bundle takes no splitting type")
            chern = tuple(binom(self.n + 1, i) for i in range(self.n + 1))
        else:
            if self.splitting is None:
                raise ValueError("split bundle needs a splitting type")
            ms = tuple(sorted(int(x) for x in self.splitting))
            object.__setattr__(self, "splitting", ms)
            chern = chern_from_splitting(ms)
        object.__setattr__(self, "chern", chern)

    @classmethod
    def split(cls, n: int, m: Iterable[int]) -> BundleSpec:
        return cls(n, tuple(m))

    @classmethod
    def tangent_bundle(cls, n: int) -> BundleSpec:
        return cls(n, None, True)

    @classmethod
    def parse(cls, n: int, split: str | None = None, tangent: bool = False) -> BundleSpec:
        if tangent == (split is not None):
            raise ValueError("give exactly one of a splitting list or the tangent marker")
        if tangent:
            return cls.tangent_bundle(n)
        try:
            ms = [int(x) for x in split.replace(" ", "").split(",") if x]
        except ValueError:
            raise ValueError(f"cannot parse splitting list {split!r}") from None
        return cls.split(n, ms)

    @property
    def is_split(self) -> bool:
        return not self.tangent

    @property
    def r(self) -> int:
        return self.n if self.tangent else len(self.splitting)

    @property
    def c1(self) -> int:
        return self.chern[1]

    @property
    def generic_splitting(self) -> tuple[int, ...]:
        """Splitting type on a generic line; T_{P^n} restricts to O(1)^(n-1) + O(2)."""
        if self.tangent:
            return (1,) * (self.n - 1) + (2,)
        return self.splitting

    @property
    def m1(self) -> int:
        return self.generic_splitting[0]

    @property
    def k(self) -> int:
        """Number of generic splitting degrees equal to the smallest one."""
        gs = self.generic_splitting
        return gs.count(gs[0])

    @property
    def dim(self) -> int:
        return self.n + self.r - 1

    def normalized(self) -> BundleSpec:
        """Twist a split bundle so that its smallest degree is 1; P(V) is unchanged."""
        if self.tangent:
            return self
        shift = self.m1 - 1
        return BundleSpec.split(self.n, [x - shift for x in self.splitting])

    def label(self) -> str:
        if self.tangent:
            return f"T P^{self.n}"
        return " + ".join(f"O({m})" for m in self.splitting) + f" over P^{self.n}"

    def to_json(self) -> dict:
        d = {"n": self.n, "kind": "tangent" if self.tangent else "split", "r": self.r,
             "chern": [str(c) for c in self.chern]}
        if not self.tangent:
            d["splitting"] = list(self.splitting)
        return d


def segre_classes(spec: BundleSpec, N: int) -> list[int]:
    """s_0..s_N with s_0 = 1 and s_i = -sum_{j=1..min(i,r)} c_j s_{i-j}."""
    if N < 0:
        raise ValueError("order must be >= 0")
    c = spec.chern
    s = [1]
    for i in range(1, N + 1):
        s.append(-sum(c[j] * s[i - j] for j in range(1, min(i, spec.r) + 1)))
    return s


@lru_cache(maxsize=None)
def _xi_power(spec: BundleSpec, b: int) -> tuple[tuple[tuple[int, int], int], ...]:
    # xi^b as a Z[h]-combination of h^i xi^j, j < r, with no truncation in h
    r, c = spec.r, spec.chern
    if b < r:
        return (((0, b), 1),)
    out: dict[tuple[int, int], int] = {}
    for i in range(1, r + 1):
        coef = c[i] if i % 2 else -c[i]
        if not coef:
            continue
        for (a, j), v in _xi_power(spec, b - i):
            key = (a + i, j)
            out[key] = out.get(key, 0) + coef * v
    return tuple(sorted((k, v) for k, v in out.items() if v))


def _as_hx(p: IntPoly) -> IntPoly:
    if p.vars != HX:
        raise ValueError(f"expected a polynomial in {HX}, got {p.vars}")
    return p


def normal_form_classical(p: IntPoly, spec: BundleSpec, truncate_h: bool = True) -> CohClass:
    """Reduce a polynomial in (h, xi) into the monomial basis.

    xi-powers >= r are eliminated first; then h-powers > n are set to zero.
    With ``truncate_h=False`` the result is the reduction in the free
    Z[h]-module (h unbounded); it is then not a valid CohClass for integration.
    """
    _as_hx(p)
    n = spec.n
    out: dict[tuple[int, int], int] = {}
    for (a, b), coef in p.items():
        for (i, j), v in _xi_power(spec, b):
            i += a
            if truncate_h and i > n:
                continue
            out[(i, j)] = out.get((i, j), 0) + coef * v
    return CohClass(spec, out, _check=truncate_h)


def reduce_classical_randomly(p: IntPoly, spec: BundleSpec, rng: random.Random) -> CohClass:
    """Rewrite with the two classical relations one step at a time, in random order.

    Used to test that the normal form does not depend on the reduction order.
    """
    _as_hx(p)
    n, r, c = spec.n, spec.r, spec.chern
    terms = dict(p.terms)
    while True:
        reducible = [e for e in terms if e[0] > n or e[1] >= r]
        if not reducible:
            return CohClass(spec, terms)
        a, b = rng.choice(sorted(reducible))
        coef = terms.pop((a, b))
        rules = []
        if a > n:
            rules.append("h")
        if b >= r:
            rules.append("xi")
        if rng.choice(rules) == "h":
            continue
        for i in range(1, r + 1):
            v = c[i] if i % 2 else -c[i]
            key = (a + i, b - i)
            terms[key] = terms.get(key, 0) + coef * v
            if not terms[key]:
                del terms[key]


class CohClass:
    """Element of H*(P(V); Z) in normal form: {(i, j): coeff} for h^i xi^j."""

    __slots__ = ("spec", "_coeffs")

    def __init__(self, spec: BundleSpec, coeffs: Mapping[tuple[int, int], int] | None = None,
                 _check: bool = True):
        self.spec = spec
        clean = {}
        for (i, j), v in (coeffs or {}).items():
            if not v:
                continue
            if _check and not (0 <= i <= spec.n and 0 <= j < spec.r):
                raise ValueError(f"h^{i} xi^{j} lies outside the basis box")
            clean[(i, j)] = v
        self._coeffs = clean

    @classmethod
    def from_poly(cls, p: IntPoly, spec: BundleSpec) -> CohClass:
        return normal_form_classical(p, spec)

    @classmethod
    def monomial(cls, spec: BundleSpec, i: int, j: int, c: int = 1) -> CohClass:
        return normal_form_classical(IntPoly.monomial(HX, (i, j), c), spec)

    @classmethod
    def one(cls, spec: BundleSpec) -> CohClass:
        return cls.monomial(spec, 0, 0)

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def coeff(self, i: int, j: int) -> int:
        return self._coeffs.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degrees(self) -> set[int]:
        return {i + j for i, j in self._coeffs}

    def as_poly(self) -> IntPoly:
        return IntPoly(HX, self._coeffs)

    def _same(self, other: CohClass) -> None:
        if not isinstance(other, CohClass):
            raise TypeError(f"expected CohClass, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec.label()} vs {other.spec.label()}")

    def __add__(self, other: CohClass) -> CohClass:
        self._same(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return CohClass(self.spec, out)

    def __neg__(self) -> CohClass:
        return CohClass(self.spec, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: CohClass) -> CohClass:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CohClass(self.spec, {k: v * other for k, v in self._coeffs.items()})
        return cup(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CohClass:
        out = CohClass.one(self.spec)
        for _ in range(k):
            out = cup(out, self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.spec == other.spec and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.spec, frozenset(self._coeffs.items())))

    def format(self) -> str:
        return format_terms(self.items(), HX_NAMES)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"CohClass({self.spec.label()}: {self.format()})"

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "coeff": str(v)} for (i, j), v in self.items()]


def cup(a: CohClass, b: CohClass) -> CohClass:
    a._same(b)
    return normal_form_classical(a.as_poly() * b.as_poly(), a.spec)


def integrate(a: CohClass) -> int:
    """Pairing with the fundamental class: the coefficient of the point class h^n xi^(r-1)."""
    return a.coeff(a.spec.n, a.spec.r - 1)


def xi_top_coefficient(spec: BundleSpec, i: int) -> int:
    """Coefficient of h^(i-r+1) xi^(r-1) in xi^i, namely (-1)^(i-r+1) s_(i-r+1)."""
    r = spec.r
    if i < r - 1:
        raise ValueError(f"need i >= r-1 = {r - 1}, got {i}")
    d = i - (r - 1)
    s = segre_classes(spec, d)[d]
    return -s if d % 2 else s


def basis(spec: BundleSpec) -> list[tuple[int, int]]:
    return [(i, j) for i in range(spec.n + 1) for j in range(spec.r)]


def pairing_matrix(spec: BundleSpec) -> list[list[int]]:
    """Matrix of integrate(b_i * b_j) over the monomial basis."""
    b = basis(spec)
    mono = {e: CohClass.monomial(spec, *e) for e in b}
    return [[integrate(cup(mono[x], mono[y])) for y in b] for x in b]


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    size = len(a)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def classical_relation_poly(spec: BundleSpec) -> IntPoly:
    """sum_i (-1)^i c_i h^i xi^(r-i), the relation coming from the Chern classes."""
    r = spec.r
    return IntPoly(HX, {(i, r - i): (-1) ** i * spec.chern[i] for i in range(r + 1)})


def split_factor_product(ms: Sequence[int], powers: Sequence[int]) -> IntPoly:
    """prod_u (xi - m_u h)^(powers_u) as a polynomial in (h, xi)."""
    h, xi = IntPoly.gens(HX)
    out = IntPoly.const(HX, 1)
    for m, e in zip(ms, powers):
        out = out * (xi - m * h) ** e
    return out


def format_split_product(ms: Sequence[int], powers: Sequence[int] | None = None) -> str:
    """Factored display such as ``(ξ - h)^2·(ξ - 2·h)``."""
    powers = powers if powers is not None else [1] * len(ms)
    grouped: dict[int, int] = {}
    for m, e in zip(ms, powers):
        if e:
            grouped[m] = grouped.get(m, 0) + e
    parts = []
    for m in sorted(grouped):
        e = grouped[m]
        if m == 0:
            base = "ξ"
        elif m in (1, -1):
            base = "(ξ - h)" if m == 1 else "(ξ + h)"
        else:
            base = f"(ξ - {m}·h)" if m > 0 else f"(ξ + {-m}·h)"
        parts.append(base if e == 1 else f"{base}^{e}")
    return "·".join(parts) if parts else "1"
