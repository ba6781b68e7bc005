"""Exact arithmetic kernel.

Sparse multivariate polynomials with Python integer coefficients, and
truncated univariate power series with exact rational coefficients.
Everything here is immutable once built.
"""

from __future__ import annotations

import math
from fractions import Fraction
from operator import add
from typing import Iterable, Iterator, Mapping, Sequence

Exps = tuple[int, ...]


def binom(a: int, k: int) -> int:
    """Generalized binomial coefficient a(a-1)...(a-k+1)/k! for any integer a."""
    if k < 0:
        raise ValueError(f"binomial needs k >= 0, got k={k}")
    if a >= 0:
        return math.comb(a, k)
    # (-1)^k * C(k - a - 1, k) for negative upper index
    sign = -1 if k % 2 else 1
    return sign * math.comb(k - a - 1, k)


class IntPoly:
    """Polynomial with integer coefficients in a fixed tuple of named variables.

    Terms are stored as ``{exponent tuple: coefficient}`` with zero
    coefficients dropped. Iteration is lexicographic in the exponent tuple.
    """

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Sequence[int], int] | None = None):
        self.vars = tuple(vars)
        nv = len(self.vars)
        clean: dict[Exps, int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nv:
                raise ValueError(f"exponent {exps} does not match variables {self.vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
            c = clean.get(exps, 0) + c
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, vars: Sequence[str], c: int) -> IntPoly:
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> IntPoly:
        return cls(vars)

    @classmethod
    def gen(cls, vars: Sequence[str], name: str) -> IntPoly:
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls(vars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c: int = 1) -> IntPoly:
        return cls(vars, {tuple(exps): c})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> tuple[IntPoly, ...]:
        return tuple(cls.gen(vars, v) for v in vars)

    # inspection

    @property
    def terms(self) -> dict[Exps, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exps, int]]:
        for exps in sorted(self._terms):
            yield exps, self._terms[exps]

    def __iter__(self):
        return self.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * x for w, x in zip(weights, e)) for e in self._terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        weights = weights or (1,) * len(self.vars)
        return len(self.weighted_degrees(weights)) <= 1

    def homogeneous_part(self, d: int, weights: Sequence[int] | None = None) -> IntPoly:
        weights = weights or (1,) * len(self.vars)
        return IntPoly(self.vars, {
            e: c for e, c in self._terms.items()
            if sum(w * x for w, x in zip(weights, e)) == d
        })

    # transformations

    def _check(self, other: IntPoly) -> None:
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return IntPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(self.vars, {e: c * other for e, c in self._terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(map(add, e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative int, got {k!r}")
        result = IntPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def subs(self, name: str, value: int) -> IntPoly:
        """Substitute an integer for one variable (its exponent slot becomes 0)."""
        i = self.vars.index(name)
        out: dict[Exps, int] = {}
        for e, c in self._terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * value ** e[i]
        return IntPoly(self.vars, out)

    def coefficient_of(self, name: str, power: int) -> IntPoly:
        """Collect the terms with ``name**power`` and strip that factor."""
        i = self.vars.index(name)
        return IntPoly(self.vars, {
            e[:i] + (0,) + e[i + 1:]: c for e, c in self._terms.items() if e[i] == power
        })

    def truncate(self, name: str, order: int) -> IntPoly:
        """Drop every term whose exponent of ``name`` is >= order."""
        i = self.vars.index(name)
        return IntPoly(self.vars, {e: c for e, c in self._terms.items() if e[i] < order})

    def swap(self, a: str, b: str) -> IntPoly:
        i, j = self.vars.index(a), self.vars.index(b)
        out = {}
        for e, c in self._terms.items():
            le = list(e)
            le[i], le[j] = le[j], le[i]
            out[tuple(le)] = c
        return IntPoly(self.vars, out)

    def map_terms(self, fn) -> IntPoly:
        """Rebuild from ``fn(exps, coeff) -> iterable of (exps, coeff)``."""
        out: dict[Exps, int] = {}
        for e, c in self._terms.items():
            for ne, nc in fn(e, c):
                out[ne] = out.get(ne, 0) + nc
        return IntPoly(self.vars, out)

    # comparison / display

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(self.vars, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or self.vars
        return format_terms(((e, c) for e, c in self.items()), names)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"IntPoly({self.vars!r}, {self.format()!r})"


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "·".join(parts)


def format_terms(terms: Iterable[tuple[Sequence[int], int]], names: Sequence[str]) -> str:
    """Render signed terms as ``3·h·ξ - 2·h^2``; the order of ``terms`` is kept."""
    out = []
    for exps, c in terms:
        mono = format_monomial(exps, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}·{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"


class TruncSeries:
    """Power series c_0 + c_1 t + ... + c_N t^N, arithmetic modulo t^(N+1)."""

    __slots__ = ("var", "order", "coeffs", "integral")

    def __init__(self, coeffs: Iterable, order: int | None = None, var: str = "t",
                 integral: bool = False):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if integral:
            bad = [c for c in cs if c.denominator != 1]
            assert not bad, f"non-integral coefficient(s) {bad} in an integral series"
        self.var = var
        self.order = order
        self.coeffs = tuple(cs)
        self.integral = integral

    def coeff(self, i: int) -> Fraction:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient t^{i} outside truncation order {self.order}")
        return self.coeffs[i]

    def int_coeff(self, i: int) -> int:
        c = self.coeff(i)
        assert c.denominator == 1, f"coefficient of t^{i} is not an integer: {c}"
        return c.numerator

    def ints(self) -> list[int]:
        return [self.int_coeff(i) for i in range(self.order + 1)]

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1], order, self.var, self.integral)

    def _coerce(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise ValueError("series in different variables")
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries([other], self.order, self.var, isinstance(other, int))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n,
                           self.var, self.integral and other.integral)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries([-c for c in self.coeffs], self.order, self.var, self.integral)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [sum((a[j] * b[i - j] for j in range(i + 1)), Fraction(0)) for i in range(n + 1)]
        return TruncSeries(out, n, self.var, self.integral and other.integral)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.var, self.order, self.coeffs) == (other.var, other.order, other.coeffs)

    def __repr__(self) -> str:
        terms = [((i,), int(c) if c.denominator == 1 else c) for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(f"{c}*{self.var}^{e[0]}" for e, c in terms) or "0"
        return f"TruncSeries({body} + O({self.var}^{self.order + 1}))"


def linear_power_series(m: int, e: int, order: int, var: str = "t") -> TruncSeries:
    """(1 - m t)^e to the given order; negative e uses the binomial series."""
    return TruncSeries([binom(e, j) * (-m) ** j for j in range(order + 1)], order, var,
                       integral=True)


def series_expand(factors: Iterable[tuple[int, int]], order: int, var: str = "t") -> TruncSeries:
    """Truncated product of (1 - m t)^e over ``factors`` given as (m, e) pairs."""
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    out = TruncSeries([1], order, var, integral=True)
    for m, e in factors:
        if not isinstance(m, int) or not isinstance(e, int):
            raise TypeError("factor (m, e) must be a pair of ints")
        out = out * linear_power_series(m, e, order, var)
    return out
