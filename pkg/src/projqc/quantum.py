"""Quantum relations for P(V) and arithmetic in Z[h, xi, q]/(f1, f2).

The exponential e^(-t m) is written q^m, and q has complex degree 1. The two
relations are always stored in the shape

    h^(n+1)                      = sum_{i+j <= c1-r}   a_ij h^i xi^j q^(n+1-i-j)
    sum_i (-1)^i c_i h^i xi^(r-i) = q^r + sum_{i+j <= c1-n-1} b_ij h^i xi^j q^(r-i-j)

with ``None`` marking a coefficient that is not determined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .bundle import (HX, BundleSpec, CohClass, classical_relation_poly, format_split_product,
                     integrate, normal_form_classical, split_factor_product)
from .errors import HypothesisError, SpecMismatch
from .exactpoly import IntPoly, format_terms
from .fano import CurveClass, classify_hypotheses
from .gwinv import (GwQuery, gw_W, gw_tangent, lookup, require_known, tangent_point_pairs)
from .schubert import check_w_hypothesis

HXQ = ("h", "xi", "q")
HXQ_NAMES = ("h", "ξ", "q")

SPLIT_THEOREM = "split-bundle-theorem"
ALL_DEGREE_ONE = "product-of-projective-spaces"
TANGENT = "tangent-bundle"
TANGENT_DERIVED = "tangent-bundle-from-invariants"
TEMPLATE = "general-template"
CONJECTURAL = "conjectural"

Coeffs = dict[tuple[int, int], "int | None"]


def _keys(d: int) -> list[tuple[int, int]]:
    return sorted((i, s - i) for s in range(d + 1) for i in range(s + 1))


def lift(p: IntPoly) -> IntPoly:
    """View a polynomial in (h, xi) as one in (h, xi, q)."""
    if p.vars == HXQ:
        return p
    if p.vars != HX:
        raise ValueError(f"cannot lift polynomial in {p.vars}")
    return IntPoly(HXQ, {(i, j, 0): c for (i, j), c in p.items()})


@dataclass(eq=False)
class QuantumRelations:
    spec: BundleSpec
    a: Coeffs
    b: Coeffs
    provenance: str
    _nf: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n, r, c1 = self.spec.n, self.spec.r, self.spec.c1
        if set(self.a) != set(_keys(c1 - r)):
            raise ValueError("first-relation coefficients must be indexed by i+j <= c1-r")
        if set(self.b) != set(_keys(c1 - n - 1)):
            raise ValueError("second-relation coefficients must be indexed by i+j <= c1-n-1")
        if c1 - r > n:
            raise ValueError("c1 - r > n: q-exponents would be non-positive")

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumRelations):
            return NotImplemented
        return (self.spec, self.a, self.b) == (other.spec, other.a, other.b)

    def holes(self) -> list[str]:
        return ([f"a[{i},{j}]" for (i, j), v in sorted(self.a.items()) if v is None]
                + [f"b[{i},{j}]" for (i, j), v in sorted(self.b.items()) if v is None])

    @property
    def is_numeric(self) -> bool:
        return not self.holes()

    def _need_numeric(self) -> None:
        if not self.is_numeric:
            raise ValueError(f"relations have undetermined coefficients {self.holes()}")

    def lhs1(self) -> IntPoly:
        return IntPoly.monomial(HXQ, (self.spec.n + 1, 0, 0))

    def lhs2(self) -> IntPoly:
        return lift(classical_relation_poly(self.spec))

    def rhs1(self) -> IntPoly:
        self._need_numeric()
        d = self.spec.n + 1
        return IntPoly(HXQ, {(i, j, d - i - j): v for (i, j), v in self.a.items()})

    def rhs2(self) -> IntPoly:
        self._need_numeric()
        r = self.spec.r
        out = {(i, j, r - i - j): v for (i, j), v in self.b.items()}
        out[(0, 0, r)] = out.get((0, 0, r), 0) + 1
        return IntPoly(HXQ, out)

    def relation_polys(self) -> tuple[IntPoly, IntPoly]:
        """f1, f2 as polynomials that vanish in the quantum ring."""
        return self.lhs1() - self.rhs1(), self.lhs2() - self.rhs2()

    # rewriting rules: h^(n+1) -> rhs1, xi^r -> xi^r - lhs2 + rhs2

    def _rules(self) -> tuple[IntPoly, IntPoly]:
        if "rules" not in self._nf:
            r = self.spec.r
            xi_r = IntPoly.monomial(HXQ, (0, r, 0))
            self._nf["rules"] = (self.rhs1(), xi_r - self.lhs2() + self.rhs2())
        return self._nf["rules"]

    # display

    def _rhs_terms(self, which: str) -> list[tuple[int, int, int, "int | None"]]:
        n, r = self.spec.n, self.spec.r
        if which == "a":
            return [(i, j, n + 1 - i - j, v) for (i, j), v in self.a.items() if v != 0]
        terms = [(i, j, r - i - j, v) for (i, j), v in self.b.items() if v != 0]
        if (0, 0) in self.b and self.b[(0, 0)] is not None:
            terms = [t for t in terms if (t[0], t[1]) != (0, 0)]
            terms.append((0, 0, r, 1 + self.b[(0, 0)]))
        else:
            terms.append((0, 0, r, 1))
        return [t for t in terms if t[3] != 0]

    def format(self) -> list[str]:
        """Two display lines, one per relation."""
        spec = self.spec
        lhs2 = (format_split_product(spec.splitting) if spec.is_split
                else format_terms(classical_relation_poly(spec).items(), ("h", "ξ")))
        return [f"h^{spec.n + 1} = {_format_rhs(self._rhs_terms('a'), 'a')}",
                f"{lhs2} = {_format_rhs(self._rhs_terms('b'), 'b')}"]

    def to_json(self) -> dict:
        n, r = self.spec.n, self.spec.r

        def terms(items):
            out = []
            for i, j, k, v in sorted(items, key=lambda t: t[:3]):
                t = {"i": i, "j": j, "k": k, "coeff": None if v is None else str(v)}
                out.append(t)
            return out

        def holes(items, tag):
            return [f"{tag}[{i},{j}]" if v is None else None
                    for i, j, k, v in sorted(items, key=lambda t: t[:3])]

        rel1_rhs = self._rhs_terms("a")
        rel2_rhs = self._rhs_terms("b")
        f1 = {"lhs": terms([(n + 1, 0, 0, 1)]), "rhs": terms(rel1_rhs)}
        f2 = {"lhs": terms([(i, j, 0, c) for (i, j), c in classical_relation_poly(self.spec).items()]),
              "rhs": terms(rel2_rhs)}
        for rel, items, tag in ((f1, rel1_rhs, "a"), (f2, rel2_rhs, "b")):
            for t, hole in zip(rel["rhs"], holes(items, tag)):
                if hole:
                    t["hole"] = hole
        return {"spec": self.spec.to_json(), "provenance": self.provenance,
                "numeric": self.is_numeric, "holes": self.holes(), "relations": [f1, f2]}


def _format_rhs(terms, tag: str) -> str:
    """Group terms by q-power: ``(ξ - 2·h)·q^2``, ``a[0,0]·q^3 + ...``."""
    groups: dict[int, list] = {}
    for i, j, k, v in terms:
        groups.setdefault(k, []).append((i, j, v))
    parts: list[str] = []
    for k in sorted(groups):
        qs = "q" if k == 1 else f"q^{k}"
        items = sorted(groups[k], key=lambda t: (t[0], t[1]))
        if all(v is not None for _, _, v in items):
            body = format_terms([((i, j), v) for i, j, v in items], ("h", "ξ"))
            single = len(items) == 1
        else:
            pieces = []
            for i, j, v in items:
                mono = format_terms([((i, j), 1)], ("h", "ξ"))
                if v is None:
                    coef = f"{tag}[{i},{j}]"
                    pieces.append(coef if mono == "1" else f"{coef}·{mono}")
                else:
                    pieces.append(format_terms([((i, j), v)], ("h", "ξ")))
            body = " + ".join(pieces)
            single = len(items) == 1
        if single and body in ("1", "-1"):
            piece = qs if body == "1" else f"-{qs}"
        elif single:
            piece = f"{body}·{qs}"
        else:
            piece = f"({body})·{qs}"
        parts.append(piece)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# constructing relations

def _product_first_relation(spec: BundleSpec) -> Coeffs:
    prod = split_factor_product(spec.splitting, [m - 1 for m in spec.splitting])
    return {key: prod.coeff(key) for key in _keys(spec.c1 - spec.r)}


def _zero(keys) -> Coeffs:
    return {key: 0 for key in keys}


def relations_split(spec: BundleSpec) -> QuantumRelations:
    """Relations of a split bundle in the range c1 < min(2r, (n+1+2r)/2, (2n+2+r)/2).

    h^(n+1) = prod (xi - m_u h)^(m_u - 1) q^(n+1+r-c1) and prod (xi - m_u h) = q^r.
    """
    if not spec.is_split:
        raise HypothesisError("split relations need a split bundle", "split bundle")
    hyp = classify_hypotheses(spec)
    if not hyp.split_range:
        bound = hyp.failed_split_bound(spec)
        raise HypothesisError(f"outside the proven split range: {bound} fails", bound)
    return QuantumRelations(spec, _product_first_relation(spec),
                            _zero(_keys(spec.c1 - spec.n - 1)), SPLIT_THEOREM)


def relations_conjectural(spec: BundleSpec) -> QuantumRelations:
    """The product-formula relations for any split Fano bundle, without proof outside the range."""
    if not spec.is_split:
        raise HypothesisError("product formula is stated for split bundles", "split bundle")
    if spec.c1 > spec.n + spec.r:
        raise HypothesisError(f"P(V) is not Fano here: c1 <= n+r fails ({spec.c1} <= "
                              f"{spec.n + spec.r})", "c1 <= n+r")
    hyp = classify_hypotheses(spec)
    prov = SPLIT_THEOREM if hyp.split_range else CONJECTURAL
    return QuantumRelations(spec, _product_first_relation(spec),
                            _zero(_keys(spec.c1 - spec.n - 1)), prov)


def relations_tangent(n: int) -> QuantumRelations:
    """h^(n+1) = xi q^n and sum (-1)^i C(n+1, i) h^i xi^(n-i) = (1 + (-1)^n) q^n."""
    if n < 2:
        raise HypothesisError(f"tangent-bundle relations need n >= 2, got {n}", "n >= 2")
    spec = BundleSpec.tangent_bundle(n)
    a = _zero(_keys(1))
    a[(0, 1)] = 1
    return QuantumRelations(spec, a, {(0, 0): (-1) ** n}, TANGENT)


def derive_tangent_relations(n: int) -> QuantumRelations:
    """Assemble the tangent-bundle relations from the invariant catalog.

    With a1 = Phi(h, h^(n-1), pt), a3 = Phi(h, h^n, h^n xi^(n-2)),
    a2 = Phi(h, h^n, h^(n-1) xi^(n-1)) - c1 a3 and b^(i) = Phi(pair_i, pt):
    h^(n+1) = ((a1 + a2) h + a3 xi) q^n and the second relation has
    q^n coefficient 1 + sum_i (-1)^i c_i b^(n-i).
    """
    if n < 2:
        raise HypothesisError(f"tangent-bundle relations need n >= 2, got {n}", "n >= 2")
    spec = BundleSpec.tangent_bundle(n)
    A2 = CurveClass.section_line(spec)
    point = (n, n - 1)

    def phi(*ins):
        return require_known(lookup(GwQuery(spec, A2, ins)))

    a1 = phi((1, 0), (n - 1, 0), point)
    a3 = phi((1, 0), (n, 0), (n, n - 2))
    a2 = phi((1, 0), (n, 0), (n - 1, n - 1)) - spec.c1 * a3
    b2 = [phi(alpha, beta, point) for alpha, beta in tangent_point_pairs(n)]
    # cross-check against the direct constants
    assert a1 == gw_tangent(n, "point", (1, 0, n - 1, 0))
    assert a3 == gw_tangent(n, "leading")
    c = spec.chern
    b00 = sum((-1) ** i * c[i] * b2[n - i] for i in range(n + 1))
    a = {(0, 0): 0, (1, 0): a1 + a2, (0, 1): a3}
    return QuantumRelations(spec, a, {(0, 0): b00}, TANGENT_DERIVED)


def relations_template_general(spec: BundleSpec, fill: bool = True) -> QuantumRelations:
    """The general shape of the relations with unknown coefficients as ``None``.

    With ``fill``, split bundles in the proven range and all-degree-one bundles
    get their full relations. Otherwise the partial split results, the leading
    coefficient a[0, c1-r] = 1 when c1 < 2r and the zeros forced by degree
    bounds are filled in. The tangent bundle keeps its holes here; its complete
    relations come from ``relations_tangent``.
    """
    hyp = classify_hypotheses(spec)
    n, r, c1 = spec.n, spec.r, spec.c1
    if not hyp.fano:
        raise HypothesisError(
            f"c1 <= n or (c1 <= n+r and V(-1) nef) fails (c1={c1}, n={n}, r={r})",
            "c1 <= n or (c1 <= n+r and V(-1) nef)")
    a: Coeffs = {key: None for key in _keys(c1 - r)}
    b: Coeffs = {key: None for key in _keys(c1 - n - 1)}
    if not fill:
        return QuantumRelations(spec, a, b, TEMPLATE)
    if spec.is_split and hyp.split_range:
        return relations_split(spec)
    if spec.is_split and c1 == r:
        return QuantumRelations(spec, _product_first_relation(spec), _zero(b), ALL_DEGREE_ONE)

    if spec.is_split and hyp.first_relation_range:
        a = _product_first_relation(spec)
    else:
        if hyp.leading_coefficient:
            a[(0, c1 - r)] = 1
        if hyp.first_relation_shape:
            for (i, j) in a:
                if i + j < c1 - r:
                    a[(i, j)] = 0
    if spec.is_split and hyp.second_relation_range:
        b = _zero(b)
    elif hyp.second_relation_shape:
        for (i, j) in b:
            if i + j < c1 - n - 1:
                b[(i, j)] = 0
    rel = QuantumRelations(spec, a, b, TEMPLATE)
    if rel.is_numeric:
        rel.provenance = SPLIT_THEOREM
    return rel


# normal forms

def _mono_nf(rel: QuantumRelations, a: int, b: int) -> dict[tuple[int, int, int], int]:
    cache = rel._nf.setdefault("mono", {})
    hit = cache.get((a, b))
    if hit is not None:
        return hit
    n, r = rel.spec.n, rel.spec.r
    h_rule, xi_rule = rel._rules()
    if b >= r:
        src, da, db = xi_rule, a, b - r
    elif a > n:
        src, da, db = h_rule, a - n - 1, b
    else:
        out = {(a, b, 0): 1}
        cache[(a, b)] = out
        return out
    out: dict[tuple[int, int, int], int] = {}
    for (i, j, k), c in src.items():
        for (x, y, z), v in _mono_nf(rel, i + da, j + db).items():
            key = (x, y, z + k)
            out[key] = out.get(key, 0) + c * v
    out = {key: v for key, v in out.items() if v}
    cache[(a, b)] = out
    return out


def q_normal_form(p: IntPoly, rel: QuantumRelations) -> QClass:
    """Unique representative of p supported on h^i xi^j q^k, i <= n, j < r."""
    rel._need_numeric()
    p = lift(p)
    out: dict[tuple[int, int, int], int] = {}
    for (a, b, k), c in p.items():
        for (x, y, z), v in _mono_nf(rel, a, b).items():
            key = (x, y, z + k)
            out[key] = out.get(key, 0) + c * v
    return QClass(rel, out)


def reduce_quantum_randomly(p: IntPoly, rel: QuantumRelations, rng: random.Random) -> QClass:
    """Single-step rewriting that picks the next term and rule at random."""
    rel._need_numeric()
    n, r = rel.spec.n, rel.spec.r
    h_rule, xi_rule = rel._rules()
    terms = dict(lift(p).terms)
    while True:
        reducible = sorted(e for e in terms if e[0] > n or e[1] >= r)
        if not reducible:
            return QClass(rel, terms)
        a, b, k = rng.choice(reducible)
        coef = terms.pop((a, b, k))
        rules = []
        if a > n:
            rules.append("h")
        if b >= r:
            rules.append("xi")
        if rng.choice(rules) == "h":
            src, shift = h_rule, (a - n - 1, b, k)
        else:
            src, shift = xi_rule, (a, b - r, k)
        for (i, j, kk), c in src.items():
            key = (i + shift[0], j + shift[1], kk + shift[2])
            v = terms.get(key, 0) + coef * c
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)


class QClass:
    """Element of the quantum ring in normal form: {(i, j, k): coeff} for h^i xi^j q^k."""

    __slots__ = ("rel", "_coeffs")

    def __init__(self, rel: QuantumRelations, coeffs: Mapping[tuple[int, int, int], int]):
        self.rel = rel
        n, r = rel.spec.n, rel.spec.r
        clean = {}
        for (i, j, k), v in coeffs.items():
            if not v:
                continue
            if not (0 <= i <= n and 0 <= j < r and k >= 0):
                raise ValueError(f"h^{i} xi^{j} q^{k} is not a normal-form monomial")
            clean[(i, j, k)] = v
        self._coeffs = clean

    @classmethod
    def from_poly(cls, p: IntPoly, rel: QuantumRelations) -> QClass:
        return q_normal_form(p, rel)

    @property
    def spec(self) -> BundleSpec:
        return self.rel.spec

    @property
    def coeffs(self) -> dict[tuple[int, int, int], int]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def as_poly(self) -> IntPoly:
        return IntPoly(HXQ, self._coeffs)

    def q0(self) -> CohClass:
        """The classical limit q = 0."""
        return CohClass(self.spec, {(i, j): v for (i, j, k), v in self._coeffs.items() if k == 0})

    def is_homogeneous(self) -> bool:
        return len({i + j + k for i, j, k in self._coeffs}) <= 1

    def _same(self, other: QClass) -> None:
        if not isinstance(other, QClass):
            raise TypeError(f"expected QClass, got {type(other).__name__}")
        if other.rel != self.rel:
            raise SpecMismatch("quantum classes over different relations")

    def __add__(self, other: QClass) -> QClass:
        self._same(other)
        return QClass(self.rel, (self.as_poly() + other.as_poly()).terms)

    def __neg__(self) -> QClass:
        return QClass(self.rel, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: QClass) -> QClass:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QClass(self.rel, {k: v * other for k, v in self._coeffs.items()})
        return q_product(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QClass):
            return NotImplemented
        return self.rel == other.rel and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def format(self) -> str:
        return format_terms(self.items(), HXQ_NAMES)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"QClass({self.format()})"

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "k": k, "coeff": str(v)} for (i, j, k), v in self.items()]


def q_product(a: QClass, b: QClass) -> QClass:
    a._same(b)
    return q_normal_form(a.as_poly() * b.as_poly(), a.rel)


# checks

def q0_limit_holds(rel: QuantumRelations) -> bool:
    f1, f2 = rel.relation_polys()
    h_top = IntPoly.monomial(HXQ, (rel.spec.n + 1, 0, 0))
    return f1.subs("q", 0) == h_top and f2.subs("q", 0) == rel.lhs2()


def homogeneity_holds(rel: QuantumRelations) -> bool:
    f1, f2 = rel.relation_polys()
    return (f1.weighted_degrees((1, 1, 1)) == {rel.spec.n + 1}
            and f2.weighted_degrees((1, 1, 1)) == {rel.spec.r})


def basis_reduction_holds(rel: QuantumRelations) -> bool:
    """Every h^a xi^b with a <= 2n, b <= 2r reduces into the (n+1) r monomial basis."""
    n, r = rel.spec.n, rel.spec.r
    for a in range(2 * n + 1):
        for b in range(2 * r + 1):
            nf = q_normal_form(IntPoly.monomial(HXQ, (a, b, 0)), rel)
            if any(i > n or j >= r for i, j, _ in nf.coeffs):
                return False
            if not nf.is_homogeneous() or (nf.coeffs and
                                           {i + j + k for i, j, k in nf.coeffs} != {a + b}):
                return False
    return len({(i, j) for i in range(n + 1) for j in range(r)}) == (n + 1) * r


def section_pairing(spec: BundleSpec, i: int) -> int:
    """Classical pairing of prod (xi - m_u h)^(m_u - 1) with h^(n-i) xi^(2r-c1-1+i)."""
    n, r, c1 = spec.n, spec.r, spec.c1
    prod = split_factor_product(spec.splitting, [m - 1 for m in spec.splitting])
    mono = IntPoly.monomial(HX, (n - i, 2 * r - c1 - 1 + i))
    return integrate(normal_form_classical(prod * mono, spec))


def verify_516(spec: BundleSpec, i: int) -> bool:
    """W_i equals the classical pairing of the first-relation correction with its dual class."""
    check_w_hypothesis(spec, i)
    return gw_W(spec, i) == section_pairing(spec, i)
