"""Numerical geometry of P(V): curve classes, -K, extremal data, moduli dimensions."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum

from .bundle import BundleSpec
from .errors import HypothesisError


@dataclass(frozen=True, order=True)
class CurveClass:
    """a·(h^(n-1) xi^(r-1))_* + b·(h^n xi^(r-2))_* in H_2(P(V); Z)."""

    a: int
    b: int

    @classmethod
    def fiber_line(cls) -> CurveClass:
        return cls(0, 1)

    @classmethod
    def section_line(cls, spec: BundleSpec) -> CurveClass:
        """Class of a section over a line for the smallest generic degree: (1, m1 - c1)."""
        return cls(1, spec.m1 - spec.c1)

    def degrees(self, spec: BundleSpec) -> tuple[int, int]:
        """(h(A), xi(A))."""
        return self.a, self.a * spec.c1 + self.b

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


def anticanonical_divisor(spec: BundleSpec) -> tuple[int, int]:
    """-K = (n + 1 - c1) h + r xi, returned as the pair of coefficients."""
    return spec.n + 1 - spec.c1, spec.r


def anticanonical_degree(spec: BundleSpec, A: CurveClass) -> int:
    n, r, c1 = spec.n, spec.r, spec.c1
    return A.a * (n + 1 - c1) + r * (A.a * c1 + A.b)


class Certificate(str, Enum):
    SMALL_C1 = "generates-ray: 2c1 <= n+1"
    NEF_TWIST = "generates-ray: xi - m1 h nef"
    REPRESENTATIVE_ONLY = "representative-only"


def xi_minus_m1h_nef(spec: BundleSpec) -> bool | None:
    """Nefness of xi - m1 h where a criterion is available, else None.

    Split: V(-m1) is globally generated. Tangent bundle: xi - h is nef.
    """
    if spec.is_split or spec.tangent:
        return True
    return None


def twist_nef(spec: BundleSpec) -> bool:
    """V(-1) nef. For split bundles this is m_i >= 1 for every i."""
    if spec.tangent:
        return True
    return spec.m1 >= 1


def extremal_A2(spec: BundleSpec) -> tuple[CurveClass, Certificate]:
    A = CurveClass.section_line(spec)
    if 2 * spec.c1 <= spec.n + 1:
        return A, Certificate.SMALL_C1
    if xi_minus_m1h_nef(spec):
        return A, Certificate.NEF_TWIST
    return A, Certificate.REPRESENTATIVE_ONLY


class EmptyModuli(ValueError):
    """No sections of degree m exist over lines when m < m1."""


def moduli_dimension(spec: BundleSpec, m: int) -> int | None:
    """Dimension of the space of sections over lines with xi-degree m.

    Returns None when neither m = m1 nor m >= m_r, where no formula is known.
    """
    if not spec.is_split:
        raise ValueError("moduli_dimension is implemented for split bundles")
    n, r, c1 = spec.n, spec.r, spec.c1
    if m < spec.m1:
        raise EmptyModuli(f"no such sections: degree {m} < m1 = {spec.m1}")
    if m == spec.m1:
        return 2 * n + spec.k
    if m >= spec.splitting[-1]:
        return 2 * n + r + r * m - c1
    return None


def obstruction_rank(spec: BundleSpec) -> int:
    """Rank c1 + k - 2r = sum over m_u > 1 of (m_u - 2) of the obstruction bundle."""
    if spec.m1 != 1:
        raise HypothesisError(f"need m1 = 1, got {spec.m1}", "m1 = 1")
    return spec.c1 + spec.k - 2 * spec.r


INEQUALITIES = {
    "split_range": "split and c1 < min(2r, (n+1+2r)/2, (2n+2+r)/2)",
    "first_relation_range": "split, m1 = 1 and c1 < min(2r, (n+1+2r)/2)",
    "second_relation_range": "split, m1 = 1 and c1 < (2n+2+r)/2",
    "fano_small_c1": "c1 <= n",
    "fano_twist_nef": "c1 <= n+r and V(-1) nef",
    "leading_coefficient": "(c1 <= n or (c1 <= n+r and V(-1) nef)) and c1 < 2r",
    "first_relation_shape": "c1 < 2r and (2c1 <= n+r or (2c1 <= n+2r and V(-1) nef))",
    "second_relation_shape": "2c1 <= 2n+r+1 and V(-1) nef",
    "section_extremal_small_c1": "2c1 <= n+1",
    "xi_minus_m1h_nef": "xi - m1 h nef",
    "twist_nef": "V(-1) nef",
}


@dataclass(frozen=True)
class HypothesisReport:
    split_range: bool
    first_relation_range: bool
    second_relation_range: bool
    fano_small_c1: bool
    fano_twist_nef: bool
    leading_coefficient: bool
    first_relation_shape: bool
    second_relation_shape: bool
    section_extremal_small_c1: bool
    xi_minus_m1h_nef: bool | None
    twist_nef: bool

    @property
    def fano(self) -> bool:
        return self.fano_small_c1 or self.fano_twist_nef

    def failed_split_bound(self, spec: BundleSpec) -> str | None:
        """First failing inequality of the split range, or None."""
        n, r, c1 = spec.n, spec.r, spec.c1
        if not spec.is_split:
            return "split bundle"
        checks = [
            (c1 < 2 * r, f"c1 < 2r ({c1} < {2 * r})"),
            (2 * c1 < n + 1 + 2 * r, f"2c1 < n+1+2r ({2 * c1} < {n + 1 + 2 * r})"),
            (2 * c1 < 2 * n + 2 + r, f"2c1 < 2n+2+r ({2 * c1} < {2 * n + 2 + r})"),
        ]
        return next((msg for ok, msg in checks if not ok), None)

    def to_json(self) -> dict:
        return {"flags": asdict(self), "fano": self.fano, "inequalities": dict(INEQUALITIES)}


def classify_hypotheses(spec: BundleSpec) -> HypothesisReport:
    n, r, c1 = spec.n, spec.r, spec.c1
    tn = twist_nef(spec)
    split_m1 = spec.is_split and spec.m1 == 1
    small = c1 <= n
    twisted = c1 <= n + r and tn
    return HypothesisReport(
        split_range=spec.is_split and c1 < 2 * r and 2 * c1 < n + 1 + 2 * r
        and 2 * c1 < 2 * n + 2 + r,
        first_relation_range=split_m1 and c1 < 2 * r and 2 * c1 < n + 1 + 2 * r,
        second_relation_range=split_m1 and 2 * c1 < 2 * n + 2 + r,
        fano_small_c1=small,
        fano_twist_nef=twisted,
        leading_coefficient=(small or twisted) and c1 < 2 * r,
        first_relation_shape=c1 < 2 * r and (2 * c1 <= n + r or (2 * c1 <= n + 2 * r and tn)),
        second_relation_shape=2 * c1 <= 2 * n + r + 1 and tn,
        section_extremal_small_c1=2 * c1 <= n + 1,
        xi_minus_m1h_nef=xi_minus_m1h_nef(spec),
        twist_nef=tn,
    )
