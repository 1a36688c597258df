"""Arithmetic in GF(2^16) through exponent and logarithm tables."""

from __future__ import annotations

from functools import lru_cache


class GF2m:
    """The field F2[x]/(modulus), with modulus primitive of degree ``bits``."""

    def __init__(self, bits: int = 16, modulus: int = 0x1100B):
        if modulus.bit_length() != bits + 1:
            raise ValueError("modulus degree does not match the field size")
        self.bits = bits
        self.size = 1 << bits
        self.order = self.size - 1
        exp = [0] * (2 * self.order)
        log = [0] * self.size
        x = 1
        for i in range(self.order):
            if i and x == 1:
                raise ValueError(f"modulus {modulus:#x} is not primitive")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x >> bits:
                x ^= modulus
        if x != 1:
            raise ValueError(f"modulus {modulus:#x} is not primitive")
        exp[self.order:] = exp[: self.order]
        self.exp = exp
        self.log = log

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(self.order - self.log[a]) % self.order]

    def power(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if not a:
            return 0
        return self.exp[(self.log[a] * e) % self.order]

    def poly_mul(self, p: list[int], q: list[int]) -> list[int]:
        """Product of coefficient lists, lowest degree first."""
        if not p or not q:
            return []
        out = [0] * (len(p) + len(q) - 1)
        exp, log = self.exp, self.log
        for i, a in enumerate(p):
            if not a:
                continue
            la = log[a]
            for j, b in enumerate(q):
                if b:
                    out[i + j] ^= exp[la + log[b]]
        return out

    def poly_frobenius(self, p: list[int], k: int) -> list[int]:
        """p(X)^(2^k): coefficients are raised to 2^k and spread out."""
        if k == 0:
            return list(p)
        step = 1 << k
        out = [0] * ((len(p) - 1) * step + 1) if p else []
        for i, a in enumerate(p):
            out[i * step] = self.power(a, step)
        return out


@lru_cache(maxsize=None)
def default_field() -> GF2m:
    return GF2m()
