"""Intersection theory on G(2, n+1) x P^(k-1) in Chern-root form.

Classes on the Grassmannian of lines in P^n are symmetric polynomials in the
Chern roots ``a``, ``b`` of the dual tautological subbundle; ``ht`` is the
hyperplane class of the extra projective factor, nilpotent of order k.
"""

from __future__ import annotations

from .bundle import BundleSpec
from .errors import HypothesisError
from .exactpoly import IntPoly, binom

SYM = ("a", "b", "ht")
SYM_NAMES = ("α", "β", "h̃")

_A, _B, _HT = IntPoly.gens(SYM)


def sigma_meet(p: int, n: int | None = None) -> IntPoly:
    """Class of the lines meeting a fixed codimension-p linear subspace.

    Equals (a^p - b^p)/(a - b) = sum_{i<p} a^i b^(p-1-i). When ``n`` is given
    and p > n the subspace is empty and the class is 0.
    """
    if p < 1:
        raise ValueError(f"sigma_meet needs p >= 1, got {p}")
    if n is not None and p > n:
        return IntPoly.zero(SYM)
    return IntPoly(SYM, {(i, p - 1 - i, 0): 1 for i in range(p)})


def kill_ht(P: IntPoly, k: int) -> IntPoly:
    """Impose ht^k = 0."""
    return P.truncate("ht", k)


def is_symmetric(P: IntPoly) -> bool:
    return P == P.swap("a", "b")


def integrate_g2(P: IntPoly, n: int) -> int:
    """Integral over G(2, n+1) of a symmetric polynomial in the Chern roots.

    Only the component of degree 2n-2 contributes. The integral is the
    coefficient of a^n b^n in -(1/2)(a - b)^2 P.
    """
    if P.degree_in("ht") > 0:
        raise ValueError("integrate_g2 expects a polynomial free of ht")
    if not is_symmetric(P):
        raise ValueError(f"integrand is not symmetric in the Chern roots: {P.format(SYM_NAMES)}")
    top = P.homogeneous_part(2 * n - 2)
    c = ((_A - _B) ** 2 * top).coeff((n, n, 0))
    assert c % 2 == 0, f"odd coefficient {c} in (a-b)^2 P for symmetric P"
    return -(c // 2)


def integrate_g2_pk(P: IntPoly, n: int, k: int) -> int:
    """Integral over G(2, n+1) x P^(k-1): take the ht^(k-1) coefficient, then integrate."""
    return integrate_g2(kill_ht(P, k).coefficient_of("ht", k - 1), n)


def euler_cob(spec: BundleSpec) -> IntPoly:
    """Euler class of the obstruction bundle over the space of sections over lines.

    Product over splitting degrees m_u > 1 and v = 0..m_u-3 of
    (1+v)(-a) + (m_u-2-v)(-b) + ht; the empty product is 1.
    """
    if not spec.is_split:
        raise ValueError("euler_cob is defined for split bundles")
    if spec.m1 != 1:
        raise HypothesisError(f"need smallest degree 1, got {spec.m1}", "m1 = 1")
    out = IntPoly.const(SYM, 1)
    for m in spec.splitting[spec.k:]:
        for v in range(m - 2):
            out = out * (-(1 + v) * _A - (m - 2 - v) * _B + _HT)
    return out


def check_w_hypothesis(spec: BundleSpec, i: int) -> None:
    """Raise HypothesisError unless c1 < min(2r, (n+1+2r)/2), m1 = 1, 0 <= i <= c1 - r."""
    if not spec.is_split:
        raise HypothesisError("W_i is computed for split bundles only", "split bundle")
    n, r, c1 = spec.n, spec.r, spec.c1
    if spec.m1 != 1:
        raise HypothesisError(f"smallest splitting degree is {spec.m1}, need 1", "m1 = 1")
    if not c1 < 2 * r:
        raise HypothesisError(f"c1 < 2r fails ({c1} < {2 * r})", "c1 < 2r")
    if not 2 * c1 < n + 1 + 2 * r:
        raise HypothesisError(f"2c1 < n+1+2r fails ({2 * c1} < {n + 1 + 2 * r})",
                              "2c1 < n+1+2r")
    if not 0 <= i <= c1 - r:
        raise HypothesisError(f"index i={i} outside 0..c1-r = 0..{c1 - r}", "0 <= i <= c1-r")


def w_integrand(spec: BundleSpec, i: int) -> IntPoly:
    """Integrand whose integral over G(2, n+1) x P^(k-1) is W_i.

    Lines through general linear spaces of codimension floor((n+1)/2) and
    n+1-floor((n+1)/2), the restriction of h^(n-i) xi^(2r-c1-1+i) to
    P^n x P^(k-1) (where xi restricts to h + ht), and the obstruction Euler class.
    """
    check_w_hypothesis(spec, i)
    n, r, c1, k = spec.n, spec.r, spec.c1, spec.k
    nt = (n + 1) // 2
    e = 2 * r - c1 - 1 + i
    third = IntPoly.zero(SYM)
    for j in range(e + 1):
        third = third + binom(e, j) * sigma_meet(n - i + j, n) * _HT ** (e - j)
    P = sigma_meet(nt, n) * sigma_meet(n + 1 - nt, n) * kill_ht(third, k)
    return kill_ht(kill_ht(P, k) * euler_cob(spec), k)


def gw_integral_W(spec: BundleSpec, i: int) -> int:
    """W_i by direct integration over the moduli space G(2, n+1) x P^(k-1)."""
    return integrate_g2_pk(w_integrand(spec, i), spec.n, spec.k)
