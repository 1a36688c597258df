"""Quadratic and alternating forms over F2.

Vectors of an m-dimensional space are encoded as ints whose bit k is the
k-th coordinate.  A space remembers the names of its coordinate functions so
that forms can be exchanged with polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .polyring import Polynomial, VariableTable


class NotQuadratic(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class WrongParity(ValueError):
    pass


class FormType(Enum):
    NON_SINGULAR = "NonSingular"
    PLUS = "PlusType"
    MINUS = "MinusType"


class SpaceKind(Enum):
    ODD_NONSINGULAR = "OddNonsingular"
    EVEN_PLUS = "EvenPlus"
    EVEN_MINUS = "EvenMinus"


@lru_cache(maxsize=None)
def s_table(n: int) -> VariableTable:
    """Coordinates x0..x_{2n}, a degree-one parameter t and a degree-two X."""
    return VariableTable([(f"x{i}", 1) for i in range(2 * n + 1)] + [("t", 1), ("X", 2)])


def _quadratic_pairs(q: Polynomial, variables: tuple[str, ...]) -> list[tuple[int, int]]:
    """Monomials of q as coordinate index pairs (i, i) for squares, (i, j) for products."""
    table = q.table
    positions = {table.index(name): k for k, name in enumerate(variables)}
    pairs = []
    for exps in q.terms():
        support = [(i, e) for i, e in enumerate(exps) if e]
        if any(i not in positions for i, _ in support):
            raise NotQuadratic(f"{q} involves variables outside {variables}")
        if sum(e for _, e in support) != 2:
            raise NotQuadratic(f"{q} is not homogeneous quadratic")
        if len(support) == 1:
            k = positions[support[0][0]]
            pairs.append((k, k))
        else:
            a, b = sorted(positions[i] for i, _ in support)
            pairs.append((a, b))
    return pairs


def polarize(q: Polynomial, variables: tuple[str, ...] | int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of b(u, v) = q(u+v) + q(u) + q(v)."""
    if isinstance(variables, int):
        variables = _default_names(q.table, variables)
    m = len(variables)
    gram = [[0] * m for _ in range(m)]
    for a, b in _quadratic_pairs(q, tuple(variables)):
        if a != b:
            gram[a][b] ^= 1
            gram[b][a] ^= 1
    return tuple(tuple(row) for row in gram)


def _default_names(table: VariableTable, m: int) -> tuple[str, ...]:
    names = [name for name, w in table.entries if w == 1 and name.startswith("x")]
    return tuple(names[:m])


def gram_rows(gram) -> list[int]:
    return [sum(bit << j for j, bit in enumerate(row)) for row in gram]


@dataclass(frozen=True)
class QuadraticSpace:
    """An F2 space with coordinate names, Gram matrix and quadratic form."""

    dim: int
    bilinear: tuple[tuple[int, ...], ...]
    form: Polynomial
    variables: tuple[str, ...]

    def __post_init__(self):
        if len(self.variables) != self.dim or len(self.bilinear) != self.dim:
            raise ValueError("dimension mismatch")
        for i in range(self.dim):
            if self.bilinear[i][i]:
                raise ValueError("bilinear form must be alternating")
            for j in range(self.dim):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    raise ValueError("bilinear form must be symmetric")
        if polarize(self.form, self.variables) != self.bilinear:
            raise ValueError("form does not polarize to the given bilinear matrix")

    @classmethod
    def from_form(cls, form: Polynomial, variables: tuple[str, ...]) -> "QuadraticSpace":
        variables = tuple(variables)
        return cls(len(variables), polarize(form, variables), form, variables)

    @property
    def table(self) -> VariableTable:
        return self.form.table

    def evaluator(self):
        return form_evaluator(self.form, self.variables)

    def value(self, v: int) -> int:
        return self.evaluator()(v)

    def vectors(self) -> range:
        return range(1 << self.dim)

    def b(self, u: int, v: int) -> int:
        rows = gram_rows(self.bilinear)
        acc = 0
        for i in range(self.dim):
            if u >> i & 1:
                acc ^= bin(rows[i] & v).count("1") & 1
        return acc

    def linear_form(self, coeffs: int) -> Polynomial:
        """Polynomial of the functional with the given coefficient bits."""
        acc = Polynomial.zero(self.table)
        for k, name in enumerate(self.variables):
            if coeffs >> k & 1:
                acc = acc + Polynomial.variable(self.table, name)
        return acc


def form_evaluator(form: Polynomial, variables: tuple[str, ...]):
    pairs = _quadratic_pairs(form, tuple(variables))

    def value(v: int) -> int:
        acc = 0
        for a, b in pairs:
            acc ^= (v >> a) & (v >> b) & 1
        return acc

    return value


def kernel_basis(rows: list[int], dim: int) -> list[int]:
    """Basis of {v : row . v = 0 for all rows}, rows given as bit masks."""
    pivots: dict[int, int] = {}
    for row in rows:
        for p, prow in pivots.items():
            if row >> p & 1:
                row ^= prow
        if row:
            p = (row & -row).bit_length() - 1
            for q in list(pivots):
                if pivots[q] >> p & 1:
                    pivots[q] ^= row
            pivots[p] = row
    free = [k for k in range(dim) if k not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for p, prow in pivots.items():
            if prow >> f & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [v ^ b for v in out]
    return out


def radical_and_singularity(space: QuadraticSpace) -> tuple[list[int], list[int], bool]:
    rad_b = kernel_basis(gram_rows(space.bilinear), space.dim)
    value = space.evaluator()
    # q is additive on rad(b), so its zeros there form a subspace
    zeros = [v for v in span(rad_b) if v and not value(v)]
    rad_q: list[int] = []
    covered = {0}
    for v in sorted(zeros):
        if v not in covered:
            rad_q.append(v)
            covered |= {c ^ v for c in covered}
    return rad_b, rad_q, not rad_q


def classify_type(space: QuadraticSpace) -> FormType:
    rad_b, rad_q, nonsingular = radical_and_singularity(space)
    if space.dim % 2:
        if not nonsingular:
            raise DegenerateInput("odd-dimensional form is singular")
        return FormType.NON_SINGULAR
    if rad_b:
        raise DegenerateInput("even-dimensional form has a degenerate polarization")
    return type_by_majority(space.evaluator(), space.dim)


def type_by_majority(value, dim: int) -> FormType:
    zeros = sum(1 for v in range(1 << dim) if not value(v))
    return FormType.PLUS if 2 * zeros > (1 << dim) else FormType.MINUS


def hyperbolic_form(table: VariableTable, names: list[str]) -> Polynomial:
    acc = Polynomial.zero(table)
    for a, b in zip(names[0::2], names[1::2]):
        acc = acc + Polynomial.variable(table, a) * Polynomial.variable(table, b)
    return acc


def standard_space(n: int, kind: SpaceKind | str, table: VariableTable | None = None) -> QuadraticSpace:
    if n < 1:
        raise ValueError("n must be at least 1")
    kind = SpaceKind(kind) if isinstance(kind, str) else kind
    table = table or s_table(n)
    u_names = [f"x{i}" for i in range(1, 2 * n + 1)]
    base = hyperbolic_form(table, u_names)
    if kind is SpaceKind.ODD_NONSINGULAR:
        x0 = Polynomial.variable(table, "x0")
        return QuadraticSpace.from_form(x0.square() + base, tuple(["x0"] + u_names))
    if kind is SpaceKind.EVEN_PLUS:
        return QuadraticSpace.from_form(base, tuple(u_names))
    x1, x2 = Polynomial.variable(table, "x1"), Polynomial.variable(table, "x2")
    return QuadraticSpace.from_form(base + x1.square() + x2.square(), tuple(u_names))


def forms_with_polarization(space: QuadraticSpace) -> dict[FormType, int]:
    """Count forms polarizing to the space's bilinear form, split by type."""
    counts = {FormType.PLUS: 0, FormType.MINUS: 0}
    base = space.evaluator()
    for linear in range(1 << space.dim):
        # adding x^2 for a functional x adds a linear function to q
        def value(v, linear=linear):
            return base(v) ^ (bin(v & linear).count("1") & 1)
        counts[type_by_majority(value, space.dim)] += 1
    return counts


@dataclass(frozen=True)
class Families:
    """Vectors and forms of each type attached to an odd nonsingular space."""

    a_plus: tuple[Polynomial, ...]
    a_minus: tuple[Polynomial, ...]
    b_plus: tuple[Polynomial, ...]
    b_minus: tuple[Polynomial, ...]
    a_plus_vectors: tuple[int, ...]
    a_minus_vectors: tuple[int, ...]


def _type_on_kernel(value, functional: int, dim: int) -> FormType:
    """Type of q restricted to ker(functional), a hyperplane."""
    basis = kernel_basis([functional], dim)
    def restricted(c: int) -> int:
        v = 0
        for k, b in enumerate(basis):
            if c >> k & 1:
                v ^= b
        return value(v)
    return type_by_majority(restricted, len(basis))


def enumerate_families(space: QuadraticSpace) -> Families:
    """The sets A+, A-, B+, B- ordered as integers with x0 the lowest bit.

    A vector x outside U* lies in A+- when xi0 + x^2 has the given type; the
    type is computed on ker x and cross-checked against the form on U.
    """
    if space.dim % 2 == 0:
        raise WrongParity("families are defined for odd-dimensional spaces")
    rad_b, _, nonsingular = radical_and_singularity(space)
    if not nonsingular or rad_b != [1]:
        raise ValueError("expected a standard odd model with radical spanned by e0")
    m = space.dim
    value = space.evaluator()
    table = space.table
    q_u = space.form.set_zero([space.variables[0]])
    u_value = form_evaluator(q_u, space.variables[1:])
    a_plus, a_minus, b_plus, b_minus = [], [], [], []
    av_plus, av_minus = [], []
    x0_sq = Polynomial.variable(table, space.variables[0]).square()
    for u in range(1 << (m - 1)):
        functional = 1 | (u << 1)
        on_kernel = _type_on_kernel(value, functional, m)
        # on U, xi0 + x0^2 + u^2 is q_U plus the linear function u
        def shifted(w, u=u):
            return u_value(w) ^ (bin(w & u).count("1") & 1)
        on_u = type_by_majority(shifted, m - 1)
        if on_kernel is not on_u:
            raise AssertionError(f"type tests disagree for functional {functional:b}")
        x = space.linear_form(functional)
        form = space.form + x0_sq + space.linear_form(u << 1).square()
        if on_u is FormType.PLUS:
            a_plus.append(x)
            av_plus.append(functional)
            b_plus.append(form)
        else:
            a_minus.append(x)
            av_minus.append(functional)
            b_minus.append(form)
    return Families(tuple(a_plus), tuple(a_minus), tuple(b_plus), tuple(b_minus),
                    tuple(av_plus), tuple(av_minus))
