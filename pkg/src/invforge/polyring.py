"""Sparse multivariate polynomials over F2 and Z/4 with weighted gradings.

Monomials are packed into a single Python int, one 16-bit field per
variable.  Multiplying monomials is then integer addition, squaring a
monomial is a left shift, and divisibility is a borrow test on guard bits.
F2 polynomials are frozensets of packed monomials; Z/4 polynomials are
dicts mapping packed monomials to coefficients 1, 2 or 3.
"""

from __future__ import annotations

import heapq
import operator
from enum import Enum
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


class PolyError(Exception):
    """Base class for polynomial errors."""


class UnknownVariable(PolyError):
    pass


class PolySyntaxError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CoefficientOutOfRange(PolyError):
    pass


class TableMismatch(PolyError):
    pass


class RingMismatch(PolyError):
    pass


class UnboundVariableOccurs(PolyError):
    pass


class NotASquare(PolyError):
    pass


class NotDivisible(PolyError):
    pass


class NotSquareMatrix(PolyError):
    pass


class SizeLimitExceeded(PolyError):
    pass


class NotAlternating(PolyError):
    pass


class OddSize(PolyError):
    pass


class ExponentOverflow(PolyError):
    pass


class Ring(Enum):
    F2 = 2
    Z4 = 4

    @property
    def modulus(self) -> int:
        return self.value


class VariableTable:
    """Ordered, immutable list of (name, weight) pairs."""

    __slots__ = ("names", "weights", "_index", "_shifts", "guard", "low_bits", "all_ones", "_hash")

    def __init__(self, entries: Iterable[tuple[str, int]]):
        entries = tuple((str(name), int(weight)) for name, weight in entries)
        names = tuple(name for name, _ in entries)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name, weight in entries:
            if weight < 1:
                raise ValueError(f"variable {name} has weight {weight} < 1")
            if not name[:1].isalpha() or not name.isalnum() or not name.isascii():
                raise ValueError(f"invalid variable name {name!r}")
        self.names = names
        self.weights = tuple(weight for _, weight in entries)
        self._index = {name: i for i, name in enumerate(names)}
        self._shifts = tuple(FIELD_BITS * i for i in range(len(names)))
        self.guard = sum(1 << (s + FIELD_BITS - 1) for s in self._shifts)
        self.low_bits = sum(1 << s for s in self._shifts)
        self.all_ones = sum(FIELD_MASK << s for s in self._shifts)
        self._hash = hash(entries)

    @property
    def entries(self) -> tuple[tuple[str, int], ...]:
        return tuple(zip(self.names, self.weights))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, VariableTable):
            return NotImplemented
        return self.names == other.names and self.weights == other.weights

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}:{w}" for n, w in self.entries)
        return f"VariableTable({inner})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != len(self.names):
            raise ValueError("exponent tuple length does not match table")
        m = 0
        for e, s in zip(exponents, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} outside 0..{MAX_EXPONENT}")
            m |= e << s
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & FIELD_MASK for s in self._shifts)

    def unit(self, name: str) -> int:
        return 1 << self._shifts[self.index(name)]

    def exponent(self, m: int, i: int) -> int:
        return (m >> self._shifts[i]) & FIELD_MASK

    def degree(self, m: int) -> int:
        d = 0
        for w, s in zip(self.weights, self._shifts):
            d += ((m >> s) & FIELD_MASK) * w
        return d

    def sort_key(self, m: int) -> int:
        """Integer key realising the graded reverse-lexicographic order."""
        return (self.degree(m) << (FIELD_BITS * len(self.names))) + (self.all_ones - m)

    def divides(self, a: int, b: int) -> bool:
        """True when monomial a divides monomial b."""
        return ((b | self.guard) - a) & self.guard == self.guard


def _check_overflow(table: VariableTable, monomials: Iterable[int]) -> None:
    if reduce(operator.or_, monomials, 0) & table.guard:
        raise ExponentOverflow(f"an exponent exceeded {MAX_EXPONENT}")


class Polynomial:
    """Immutable sparse polynomial attached to a variable table and ring."""

    __slots__ = ("table", "ring", "_terms")

    def __init__(self, table: VariableTable, ring: Ring, terms):
        self.table = table
        self.ring = ring
        if ring is Ring.F2:
            self._terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        else:
            self._terms = {m: c % 4 for m, c in dict(terms).items() if c % 4}

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, table: VariableTable, ring: Ring = Ring.F2) -> "Polynomial":
        return cls(table, ring, frozenset() if ring is Ring.F2 else {})

    @classmethod
    def one(cls, table: VariableTable, ring: Ring = Ring.F2) -> "Polynomial":
        return cls.constant(table, 1, ring)

    @classmethod
    def constant(cls, table: VariableTable, value: int, ring: Ring = Ring.F2) -> "Polynomial":
        value %= ring.modulus
        if ring is Ring.F2:
            return cls(table, ring, frozenset([0]) if value else frozenset())
        return cls(table, ring, {0: value} if value else {})

    @classmethod
    def variable(cls, table: VariableTable, name: str, ring: Ring = Ring.F2) -> "Polynomial":
        m = table.unit(name)
        return cls(table, ring, frozenset([m]) if ring is Ring.F2 else {m: 1})

    @classmethod
    def from_terms(
        cls, table: VariableTable, terms: Mapping[tuple[int, ...], int] | Iterable[tuple[int, ...]],
        ring: Ring = Ring.F2,
    ) -> "Polynomial":
        """Build from unpacked exponent tuples; repeated monomials are summed."""
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((t, 1) for t in terms)
        for exps, c in items:
            m = table.pack(exps)
            acc[m] = acc.get(m, 0) + c
        if ring is Ring.F2:
            return cls(table, ring, frozenset(m for m, c in acc.items() if c % 2))
        return cls(table, ring, acc)

    # basic views --------------------------------------------------------

    @property
    def packed(self):
        return self._terms

    def terms(self) -> dict[tuple[int, ...], int]:
        if self.ring is Ring.F2:
            return {self.table.unpack(m): 1 for m in self._terms}
        return {self.table.unpack(m): c for m, c in self._terms.items()}

    def monomials(self) -> Iterator[int]:
        return iter(self._terms)

    def coefficient_of(self, m: int) -> int:
        if self.ring is Ring.F2:
            return 1 if m in self._terms else 0
        return self._terms.get(m, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == 0 for m in self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == Polynomial.constant(self.table, other, self.ring)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.ring is other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self.ring is Ring.F2:
            return hash((self.table, self._terms))
        return hash((self.table, frozenset(self._terms.items())))

    def degree(self) -> int:
        """Maximum weighted degree; -1 for the zero polynomial."""
        deg = self.table.degree
        return max((deg(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        deg = self.table.degree
        return min((deg(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        deg = self.table.degree
        return len({deg(m) for m in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        deg = self.table.degree
        return self._filter(lambda m: deg(m) == d)

    def variables(self) -> list[str]:
        """Names of variables that occur, in table order."""
        seen = reduce(operator.or_, self._terms, 0)
        return [name for i, name in enumerate(self.table.names) if self.table.exponent(seen, i)]

    def occurs(self, name: str) -> bool:
        i = self.table.index(name)
        return any(self.table.exponent(m, i) for m in self._terms)

    def leading_monomial(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.table.sort_key)

    def _filter(self, keep) -> "Polynomial":
        if self.ring is Ring.F2:
            return Polynomial(self.table, self.ring, frozenset(m for m in self._terms if keep(m)))
        return Polynomial(self.table, self.ring, {m: c for m, c in self._terms.items() if keep(m)})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial.constant(self.table, other, self.ring)
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.table != self.table:
            raise TableMismatch(f"{self.table!r} vs {other.table!r}")
        if other.ring is not self.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
        return other

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if self.ring is Ring.F2:
            return Polynomial(self.table, self.ring, self._terms ^ other._terms)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.table, self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        if self.ring is Ring.F2:
            return self
        return Polynomial(self.table, self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if self.ring is Ring.F2:
                return self if other % 2 else Polynomial.zero(self.table, self.ring)
            return Polynomial(self.table, self.ring, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial.zero(self.table, self.ring)
        if self.ring is Ring.F2:
            if len(a) > len(b):
                a, b = b, a
            if len(a) == 1:
                (x,) = a
                acc = {x + y for y in b} if x else set(b)
            else:
                acc = set()
                for x in a:
                    acc ^= {x + y for y in b}
            _check_overflow(self.table, acc)
            return Polynomial(self.table, self.ring, frozenset(acc))
        acc2: dict[int, int] = {}
        for x, cx in a.items():
            for y, cy in b.items():
                k = x + y
                acc2[k] = acc2.get(k, 0) + cx * cy
        _check_overflow(self.table, acc2)
        return Polynomial(self.table, self.ring, acc2)

    __rmul__ = __mul__

    def square(self) -> "Polynomial":
        if self.ring is Ring.F2:
            return self.frobenius(1)
        return self * self

    def frobenius(self, k: int) -> "Polynomial":
        """Raise an F2 polynomial to the power 2**k."""
        if self.ring is not Ring.F2:
            raise RingMismatch("Frobenius shortcut needs F2 coefficients")
        if k == 0:
            return self
        acc = frozenset(m << k for m in self._terms)
        _check_overflow(self.table, acc)
        return Polynomial(self.table, self.ring, acc)

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.table, self.ring)
        if self.ring is Ring.F2:
            k = 0
            while e:
                if e & 1:
                    result = result * self.frobenius(k)
                e >>= 1
                k += 1
            return result
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # structural operations ---------------------------------------------

    def coefficients(self, name: str) -> dict[int, "Polynomial"]:
        """Split by powers of one variable: {power: coefficient polynomial}."""
        i = self.table.index(name)
        shift = FIELD_BITS * i
        out: dict[int, dict | set] = {}
        if self.ring is Ring.F2:
            for m in self._terms:
                e = (m >> shift) & FIELD_MASK
                out.setdefault(e, set()).add(m - (e << shift))
            return {e: Polynomial(self.table, self.ring, frozenset(s)) for e, s in out.items()}
        for m, c in self._terms.items():
            e = (m >> shift) & FIELD_MASK
            out.setdefault(e, {})[m - (e << shift)] = c
        return {e: Polynomial(self.table, self.ring, d) for e, d in out.items()}

    def coefficient(self, name: str, power: int) -> "Polynomial":
        return self.coefficients(name).get(power, Polynomial.zero(self.table, self.ring))

    def partial_derivative(self, name: str) -> "Polynomial":
        i = self.table.index(name)
        shift = FIELD_BITS * i
        unit = 1 << shift
        acc: dict[int, int] = {}
        items = ((m, 1) for m in self._terms) if self.ring is Ring.F2 else self._terms.items()
        for m, c in items:
            e = (m >> shift) & FIELD_MASK
            if e:
                k = m - unit
                acc[k] = acc.get(k, 0) + e * c
        if self.ring is Ring.F2:
            return Polynomial(self.table, self.ring, frozenset(m for m, c in acc.items() if c % 2))
        return Polynomial(self.table, self.ring, acc)

    def sqrt_exact(self) -> "Polynomial":
        if self.ring is not Ring.F2:
            raise RingMismatch("square roots are only defined here over F2")
        low = self.table.low_bits
        for m in self._terms:
            if m & low:
                raise NotASquare(f"monomial {_monomial_text(self.table, m)} has an odd exponent")
        return Polynomial(self.table, self.ring, frozenset(m >> 1 for m in self._terms))

    def is_square(self) -> bool:
        low = self.table.low_bits
        return self.ring is Ring.F2 and not any(m & low for m in self._terms)

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient by leading-term reduction in graded reverse-lex order."""
        divisor = self._coerce(divisor)
        if self.ring is not Ring.F2:
            raise RingMismatch("exact division is implemented over F2")
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        table = self.table
        key = table.sort_key
        lead = divisor.leading_monomial()
        dterms = tuple(divisor._terms)
        remainder = set(self._terms)
        heap = [(-key(m), m) for m in remainder]
        heapq.heapify(heap)
        quotient = set()
        while remainder:
            _, m = heapq.heappop(heap)
            if m not in remainder:
                continue
            if not table.divides(lead, m):
                raise NotDivisible(
                    f"leading monomial {_monomial_text(table, m)} of the remainder is not divisible by "
                    f"{_monomial_text(table, lead)}"
                )
            q = m - lead
            quotient ^= {q}
            for t in dterms:
                k = q + t
                if k in remainder:
                    remainder.remove(k)
                else:
                    remainder.add(k)
                    heapq.heappush(heap, (-key(k), k))
        return Polynomial(table, self.ring, frozenset(quotient))

    def substitute(
        self, bindings: Mapping[str, "Polynomial"], target: VariableTable | None = None
    ) -> "Polynomial":
        """Ring homomorphism sending each bound variable to its image.

        Unbound variables go to the variable of the same name in the target
        table; if the target has no such variable they must not occur.
        """
        for name in bindings:
            self.table.index(name)
        used = self.variables()
        # only images of occurring variables are looked up, so lazy mappings stay lazy
        images = {name: bindings[name] for name in used if name in bindings}
        if target is None:
            target = next(iter(images.values())).table if images else self.table
        ring = next(iter(images.values())).ring if images else self.ring
        for img in images.values():
            if img.table != target:
                raise TableMismatch(f"image table {img.table!r} differs from target {target!r}")
            if img.ring is not ring:
                raise RingMismatch("images live in different coefficient rings")
        per_var: list[tuple[int, Polynomial]] = []
        for name in used:
            i = self.table.index(name)
            if name in images:
                per_var.append((i, images[name]))
            elif name in target:
                per_var.append((i, Polynomial.variable(target, name, ring)))
            else:
                raise UnboundVariableOccurs(f"variable {name!r} occurs but is not bound")
        items = [(self.table.unpack(m), c) for m, c in self._items()]
        return _substitute_terms(items, per_var, target, ring)

    def _items(self):
        if self.ring is Ring.F2:
            return ((m, 1) for m in self._terms)
        return self._terms.items()

    def embed(self, target: VariableTable) -> "Polynomial":
        """Re-express in another table by matching variable names."""
        if target == self.table:
            return self
        positions = []
        for name in self.variables():
            positions.append((self.table.index(name), target.index(name)))
        def move(m: int) -> int:
            out = 0
            for i, j in positions:
                out |= self.table.exponent(m, i) << (FIELD_BITS * j)
            return out
        if self.ring is Ring.F2:
            return Polynomial(target, self.ring, frozenset(move(m) for m in self._terms))
        return Polynomial(target, self.ring, {move(m): c for m, c in self._terms.items()})

    def reduce_mod2(self) -> "Polynomial":
        if self.ring is Ring.F2:
            return self
        return Polynomial(self.table, Ring.F2, frozenset(m for m, c in self._terms.items() if c % 2))

    def lift_z4(self) -> "Polynomial":
        if self.ring is Ring.Z4:
            return self
        return Polynomial(self.table, Ring.Z4, {m: 1 for m in self._terms})

    def halve(self) -> "Polynomial":
        """For a Z/4 polynomial with even coefficients, return (p/2) mod 2."""
        if self.ring is not Ring.Z4:
            raise RingMismatch("halving applies to Z/4 polynomials")
        odd = [m for m, c in self._terms.items() if c % 2]
        if odd:
            raise ValueError(f"odd coefficient at {_monomial_text(self.table, odd[0])}")
        return Polynomial(self.table, Ring.F2, frozenset(m for m, c in self._terms.items() if c == 2))

    def set_zero(self, names: Iterable[str]) -> "Polynomial":
        """Reduce modulo the ideal generated by some variables."""
        mask = 0
        for name in names:
            mask |= FIELD_MASK << (FIELD_BITS * self.table.index(name))
        return self._filter(lambda m: not m & mask)

    # text ---------------------------------------------------------------

    def sorted_monomials(self) -> list[int]:
        return sorted(self._terms, key=self.table.sort_key, reverse=True)

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self.coefficient_of(m)
            body = _monomial_text(self.table, m)
            if m == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}{body}")
        return "+".join(parts)

    __str__ = to_string

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r}, {self.ring.name})"


def _monomial_text(table: VariableTable, m: int) -> str:
    factors = []
    for name, e in zip(table.names, table.unpack(m)):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def _substitute_terms(items, per_var, target: VariableTable, ring: Ring) -> Polynomial:
    """Horner-style substitution: group terms by the first variable's exponent."""
    one = Polynomial.one(target, ring)
    if not per_var:
        total = sum(c for _, c in items)
        return Polynomial.constant(target, total, ring)
    i, image = per_var[0]
    rest = per_var[1:]
    groups: dict[int, list] = {}
    for exps, c in items:
        groups.setdefault(exps[i], []).append((exps, c))
    result = Polynomial.zero(target, ring)
    powers = sorted(groups)
    # ascending powers; reuse the previous power of the image
    prev_e, prev_pow = 0, one
    for e in powers:
        if ring is Ring.F2 and prev_e and e % prev_e == 0 and (e // prev_e) & (e // prev_e - 1) == 0:
            power = prev_pow.frobenius((e // prev_e).bit_length() - 1)
        else:
            power = prev_pow * image ** (e - prev_e)
        prev_e, prev_pow = e, power
        inner = _substitute_terms(groups[e], rest, target, ring)
        result = result + (inner * power if e else inner)
    return result


# parsing --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, table: VariableTable, ring: Ring):
        self.text = text
        self.pos = 0
        self.table = table
        self.ring = ring

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolySyntaxError("expected an unsigned integer", start)
        return int(self.text[start:self.pos])

    def name(self) -> tuple[str, int]:
        self.skip()
        start = self.pos
        if self.pos >= len(self.text) or not (self.text[self.pos].isascii() and self.text[self.pos].isalpha()):
            raise PolySyntaxError("expected a variable name", start)
        while self.pos < len(self.text) and self.text[self.pos].isascii() and self.text[self.pos].isalnum():
            self.pos += 1
        return self.text[start:self.pos], start

    def factor(self) -> int:
        name, start = self.name()
        if name not in self.table:
            raise UnknownVariable(f"unknown variable {name!r} at position {start}")
        e = 1
        if self.peek() == "^":
            self.pos += 1
            e = self.uint()
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} at position {start} is too large")
        return e * self.table.unit(name)

    def term(self) -> tuple[int, int]:
        c = 1
        start = self.pos
        if self.peek().isdigit():
            start = self.pos
            c = self.uint()
            limit = 1 if self.ring is Ring.F2 else 3
            if not 1 <= c <= limit:
                raise CoefficientOutOfRange(
                    f"coefficient {c} at position {start} is outside 1..{limit} for {self.ring.name}"
                )
            nxt = self.peek()
            if nxt == "*":
                self.pos += 1
            elif not (nxt.isascii() and nxt.isalpha()):
                return c, 0
        m = self.factor()
        while self.peek() == "*":
            self.pos += 1
            m += self.factor()
        return c, m

    def parse(self) -> Polynomial:
        if self.peek() == "0":
            self.pos += 1
            if self.peek() != "":
                raise PolySyntaxError("unexpected text after 0", self.pos)
            return Polynomial.zero(self.table, self.ring)
        acc: dict[int, int] = {}
        while True:
            if self.peek() == "":
                raise PolySyntaxError("expected a term", self.pos)
            c, m = self.term()
            acc[m] = acc.get(m, 0) + c
            nxt = self.peek()
            if nxt == "":
                break
            if nxt != "+":
                raise PolySyntaxError(f"unexpected character {nxt!r}", self.pos)
            self.pos += 1
        _check_overflow(self.table, acc)
        if self.ring is Ring.F2:
            return Polynomial(self.table, self.ring, frozenset(m for m, c in acc.items() if c % 2))
        return Polynomial(self.table, self.ring, acc)


def poly_parse(text: str, table: VariableTable, ring: Ring = Ring.F2) -> Polynomial:
    return _Parser(text, table, ring).parse()


def poly_to_string(p: Polynomial) -> str:
    return p.to_string()


def poly_arith(op: str, a: Polynomial, b) -> Polynomial:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Polynomial, bindings: Mapping[str, Polynomial], target: VariableTable | None = None) -> Polynomial:
    return p.substitute(bindings, target)


def partial_derivative(p: Polynomial, name: str) -> Polynomial:
    return p.partial_derivative(name)


def sqrt_exact(p: Polynomial) -> Polynomial:
    return p.sqrt_exact()


def divide_exact(p: Polynomial, d: Polynomial) -> Polynomial:
    return p.divide_exact(d)


# matrices -------------------------------------------------------------------


class PolyMatrix:
    """Dense matrix of polynomials sharing one table and ring."""

    __slots__ = ("rows", "cols", "entries", "table", "ring")

    def __init__(self, rows: int, cols: int, entries: Sequence[Polynomial], table: VariableTable, ring: Ring):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        for p in entries:
            if p.table != table:
                raise TableMismatch("matrix entries use different tables")
            if p.ring is not ring:
                raise RingMismatch("matrix entries use different rings")
        self.rows, self.cols = rows, cols
        self.entries = tuple(entries)
        self.table, self.ring = table, ring

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]], table: VariableTable | None = None,
                  ring: Ring | None = None) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        flat = [p for r in rows for p in r]
        if table is None:
            table = flat[0].table
        if ring is None:
            ring = flat[0].ring
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, flat, table, ring)

    @classmethod
    def column_vector(cls, items: Sequence[Polynomial], table: VariableTable | None = None) -> "PolyMatrix":
        return cls.from_rows([[p] for p in items], table)

    @classmethod
    def identity(cls, size: int, table: VariableTable, ring: Ring = Ring.F2) -> "PolyMatrix":
        one, zero = Polynomial.one(table, ring), Polynomial.zero(table, ring)
        return cls(size, size, [one if i == j else zero for i in range(size) for j in range(size)], table, ring)

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Polynomial]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Polynomial]]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def map(self, fn) -> "PolyMatrix":
        out = [fn(p) for p in self.entries]
        table = out[0].table if out else self.table
        ring = out[0].ring if out else self.ring
        return PolyMatrix(self.rows, self.cols, out, table, ring)

    def square_entries(self) -> "PolyMatrix":
        return self.map(Polynomial.square)

    def sqrt_entries(self) -> "PolyMatrix":
        return self.map(Polynomial.sqrt_exact)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)],
                          self.table, self.ring)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols], self.table, self.ring)

    def drop_row(self, i: int) -> "PolyMatrix":
        return self.submatrix([r for r in range(self.rows) if r != i], range(self.cols))

    def drop_column(self, j: int) -> "PolyMatrix":
        return self.submatrix(range(self.rows), [c for c in range(self.cols) if c != j])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)],
                          self.table, self.ring)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch for product")
        out = []
        zero = Polynomial.zero(self.table, self.ring)
        for i in range(self.rows):
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a, b = self[i, k], other[k, j]
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, out, self.table, self.ring)

    def hconcat(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return PolyMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)], self.table, self.ring)

    def vconcat(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return PolyMatrix.from_rows(self.to_rows() + other.to_rows(), self.table, self.ring)

    def embed(self, table: VariableTable) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [p.embed(table) for p in self.entries], table, self.ring)

    def to_strings(self) -> list[list[str]]:
        return [[p.to_string() for p in self.row(i)] for i in range(self.rows)]


DET_SIZE_LIMIT = 10
PFAFFIAN_SIZE_LIMIT = 8


def determinant(m: PolyMatrix) -> Polynomial:
    """Cofactor expansion along rows, memoised on the set of unused columns."""
    if m.rows != m.cols:
        raise NotSquareMatrix(f"{m.rows}x{m.cols} matrix has no determinant")
    size = m.rows
    if size > DET_SIZE_LIMIT:
        raise SizeLimitExceeded(f"determinant size {size} exceeds {DET_SIZE_LIMIT}")
    one = Polynomial.one(m.table, m.ring)
    zero = Polynomial.zero(m.table, m.ring)
    signed = m.ring is not Ring.F2
    memo: dict[int, Polynomial] = {0: one}

    def minor(cols: int) -> Polynomial:
        # cols is a bitmask of available columns; the row is fixed by its size
        if cols in memo:
            return memo[cols]
        row = size - bin(cols).count("1")
        acc = zero
        position = 0
        for j in range(size):
            if cols >> j & 1:
                a = m[row, j]
                if a:
                    sub = minor(cols & ~(1 << j))
                    if sub:
                        term = a * sub
                        acc = acc - term if signed and position % 2 else acc + term
                position += 1
        memo[cols] = acc
        return acc

    return minor((1 << size) - 1)


def pfaffian(m: PolyMatrix) -> Polynomial:
    """Pfaffian over F2 by expansion along the first remaining row."""
    if m.ring is not Ring.F2:
        raise RingMismatch("Pfaffians are computed over F2")
    if m.rows != m.cols:
        raise NotSquareMatrix(f"{m.rows}x{m.cols} matrix has no Pfaffian")
    size = m.rows
    if size % 2:
        raise OddSize(f"size {size} is odd")
    if size > PFAFFIAN_SIZE_LIMIT:
        raise SizeLimitExceeded(f"Pfaffian size {size} exceeds {PFAFFIAN_SIZE_LIMIT}")
    for i in range(size):
        if m[i, i]:
            raise NotAlternating(f"diagonal entry ({i},{i}) is nonzero")
        for j in range(i + 1, size):
            if m[i, j] != m[j, i]:
                raise NotAlternating(f"entries ({i},{j}) and ({j},{i}) differ")
    one = Polynomial.one(m.table, m.ring)
    zero = Polynomial.zero(m.table, m.ring)
    memo: dict[int, Polynomial] = {0: one}

    def pf(live: int) -> Polynomial:
        if live in memo:
            return memo[live]
        i = (live & -live).bit_length() - 1
        rest = live & ~(1 << i)
        acc = zero
        for j in range(i + 1, size):
            if rest >> j & 1 and m[i, j]:
                sub = pf(rest & ~(1 << j))
                if sub:
                    acc = acc + m[i, j] * sub
        memo[live] = acc
        return acc

    return pf((1 << size) - 1)
