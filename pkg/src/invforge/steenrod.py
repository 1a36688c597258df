"""Steenrod squares acting on a polynomial algebra over F2.

The total square is the ring endomorphism fixing constants and sending each
linear variable x to x + x^2.  Individual squares are its homogeneous pieces.
"""

from __future__ import annotations

from typing import Iterable

from .polyring import FIELD_BITS, FIELD_MASK, Polynomial, Ring, RingMismatch, VariableTable


class NonLinearVariablePresent(ValueError):
    pass


class NonHomogeneous(ValueError):
    pass


class SteenrodContext:
    """A table together with the variables treated as degree-one classes."""

    def __init__(self, table: VariableTable, linear_variables: Iterable[str]):
        self.table = table
        self.linear_variables = tuple(linear_variables)
        for name in self.linear_variables:
            if table.weight(name) != 1:
                raise ValueError(f"linear variable {name} must have weight 1")
        self._linear_mask = 0
        for name in self.linear_variables:
            self._linear_mask |= FIELD_MASK << (FIELD_BITS * table.index(name))
        self._linear_indices = tuple(table.index(name) for name in self.linear_variables)

    def _check(self, p: Polynomial) -> None:
        if p.table != self.table:
            raise ValueError("polynomial table differs from the Steenrod context table")
        if p.ring is not Ring.F2:
            raise RingMismatch("Steenrod squares act on F2 polynomials")
        for m in p.monomials():
            if m & ~self._linear_mask:
                bad = [n for n in p.variables() if n not in self.linear_variables]
                raise NonLinearVariablePresent(f"variables {bad} are not linear")

    def total_sq(self, p: Polynomial) -> Polynomial:
        self._check(p)
        bindings = {}
        for name in p.variables():
            x = Polynomial.variable(self.table, name)
            bindings[name] = x + x.square()
        return p.substitute(bindings, self.table)

    def sq(self, i: int, p: Polynomial) -> Polynomial:
        """Sq^i via the Cartan formula and Lucas' theorem on each monomial."""
        if i < 0:
            raise ValueError("Steenrod square index must be non-negative")
        self._check(p)
        if not p.is_homogeneous():
            raise NonHomogeneous("Sq^i is applied to homogeneous polynomials")
        if i == 0:
            return p
        shifts = [FIELD_BITS * k for k in self._linear_indices]
        out: set[int] = set()
        for m in p.monomials():
            exps = [(m >> s) & FIELD_MASK for s in shifts]
            for bump in _lucas_splits(exps, i):
                k = m
                for s, b in zip(shifts, bump):
                    k += b << s
                out ^= {k}
        return Polynomial(self.table, Ring.F2, frozenset(out))


def _lucas_splits(exps: list[int], total: int):
    """Tuples (k_j) with sum total and each binomial(e_j, k_j) odd."""
    n = len(exps)
    # suffix capacity prunes the search
    cap = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        cap[j] = cap[j + 1] + exps[j]
    if cap[0] < total:
        return
    current = [0] * n

    def rec(j: int, remaining: int):
        if j == n:
            if remaining == 0:
                yield tuple(current)
            return
        if cap[j] < remaining:
            return
        e = exps[j]
        sub = e
        # every submask of e gives an odd binomial coefficient
        while True:
            if sub <= remaining:
                current[j] = sub
                yield from rec(j + 1, remaining - sub)
            if sub == 0:
                break
            sub = (sub - 1) & e
        current[j] = 0

    yield from rec(0, total)
