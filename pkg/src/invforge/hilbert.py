"""Hilbert series of the invariant rings as quotients of (1 - t^k) products."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .groupenum import GroupKind, group_kind

MAX_EXPANSION_DEGREE = 64


class ZeroPoleOrder(ValueError):
    pass


@dataclass(frozen=True)
class HilbertSeries:
    """prod_j (1 - t^b_j) / prod_i (1 - t^a_i), stored as sorted degree tuples."""

    numerator_degrees: tuple[int, ...]
    denominator_degrees: tuple[int, ...]
    note: str = ""

    def __post_init__(self):
        if any(d < 1 for d in self.numerator_degrees + self.denominator_degrees):
            raise ValueError("all degrees must be positive")
        if self.pole_order < 0:
            raise ValueError("more numerator than denominator factors")

    @classmethod
    def reduced(cls, numerator, denominator, note: str = "") -> "HilbertSeries":
        """Cancel factors common to numerator and denominator."""
        num, den = Counter(numerator), Counter(denominator)
        common = num & den
        num -= common
        den -= common
        return cls(tuple(sorted(num.elements())), tuple(sorted(den.elements())), note)

    @property
    def pole_order(self) -> int:
        return len(self.denominator_degrees) - len(self.numerator_degrees)

    def times_factor(self, degree: int) -> "HilbertSeries":
        """Multiply by (1 - t^degree)."""
        return HilbertSeries.reduced(self.numerator_degrees + (degree,), self.denominator_degrees, self.note)

    def to_json(self) -> dict:
        return {"num": list(self.numerator_degrees), "den": list(self.denominator_degrees)}


def _d_degree(n: int, j: int) -> int:
    return (1 << (2 * n - 1)) - (1 << (j - 1))


def _xi_degree(i: int) -> int:
    return 2 if i == 0 else (1 << i) + 1


def series_for_group(n: int, kind) -> HilbertSeries:
    """Series read off from generator and relation degrees.

    Each relation that merely defines a top xi in terms of the others is kept
    with that xi and cancelled, which makes the rule uniform in n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    kind = group_kind(kind)
    half = 1 << (2 * n - 1)
    if kind is GroupKind.SP:
        den = [_xi_degree(i) for i in range(1, 2 * n + 1)]
        den += [(1 << (2 * n)) - (1 << j) for j in range(n, 2 * n)]
        num = [(1 << (2 * n)) + (1 << i) for i in range(n)]
        return HilbertSeries.reduced(num, den, "symplectic degrees from the Dickson and xi generators")
    xis = [_xi_degree(i) for i in range(2 * n)]
    num = [half + (1 << (i - 1)) for i in range(1, n)]
    if kind is GroupKind.O_ODD:
        den = xis + [_d_degree(n, j) for j in range(n, 2 * n)]
    elif kind is GroupKind.O_MINUS:
        den = xis + [_d_degree(n, j) for j in range(n + 1, 2 * n)]
    elif kind is GroupKind.O_PLUS:
        den = xis + [_d_degree(n, j) for j in range(n, 2 * n)]
        num.append(half + (1 << (n - 1)))
    else:
        raise ValueError(f"no series for {kind.value}")
    return HilbertSeries.reduced(num, den)


def laurent_leading(series: HilbertSeries) -> tuple[Fraction, Fraction]:
    """(|G|, r) from the two leading Laurent coefficients at t = 1."""
    if series.pole_order < 1:
        raise ZeroPoleOrder("the series has no pole at t = 1")
    a, b = series.denominator_degrees, series.numerator_degrees
    order = Fraction(prod(a), prod(b))
    reflections = Fraction(sum(x - 1 for x in a) - sum(x - 1 for x in b))
    return order, reflections


def expand_coeffs(series: HilbertSeries, degree: int) -> list[int]:
    """Power-series coefficients of t^0 .. t^degree."""
    if not 0 <= degree <= MAX_EXPANSION_DEGREE:
        raise ValueError(f"degree must lie in 0..{MAX_EXPANSION_DEGREE}")
    coeffs = [1] + [0] * degree
    for b in series.numerator_degrees:
        for d in range(degree, b - 1, -1):
            coeffs[d] -= coeffs[d - b]
    for a in series.denominator_degrees:
        for d in range(a, degree + 1):
            coeffs[d] += coeffs[d - a]
    return coeffs
