"""Generators, relations and structural identities for orthogonal invariants.

Concrete objects live in S = F2[x0..x_{2n}, t, X] (see ``quadforms.s_table``).
Abstract objects live in ``abstract_table(n)``, a graded polynomial ring on the
symbols xi0..xi_{2n}, c0..c_{2n-1}, d_n..d_{2n-1}, t and X, with each symbol
weighted by the degree of the invariant it stands for.  ``to_s`` maps abstract
polynomials to S; ``express_in_xi`` goes the other way.
"""

from __future__ import annotations

import os
import random
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from . import _linalg
from ._gf import GF2m, default_field
from .groupenum import GroupKind, group_kind
from .polyring import (
    NotASquare,
    NotDivisible,
    PolyMatrix,
    Polynomial,
    Ring,
    SizeLimitExceeded,
    VariableTable,
    determinant,
    pfaffian,
)
from .quadforms import (
    FormType,
    SpaceKind,
    enumerate_families,
    form_evaluator,
    s_table,
    standard_space,
    type_by_majority,
)
from .steenrod import SteenrodContext


class InvariantError(ArithmeticError):
    pass


class HalvingFailed(InvariantError):
    pass


class FactorizationMismatch(InvariantError):
    pass


class NotInSubring(InvariantError):
    pass


ExpressionNotInSubring = NotInSubring


class AmbiguousExpression(InvariantError):
    pass


class TriangularInversionFailed(InvariantError):
    pass


class IdentityFailed(InvariantError):
    pass


class ResidueNonzero(InvariantError):
    pass


class DeterminantMismatch(InvariantError):
    pass


class SquareRootFailed(InvariantError):
    pass


class UnknownIdentity(KeyError):
    pass


class SlowPathRequired(SizeLimitExceeded):
    """The request is supported but only with the slow flag set."""


# ---------------------------------------------------------------------------
# size gates


def slow_allowed(flag: bool = False) -> bool:
    return flag or os.environ.get("INVFORGE_ALLOW_SLOW", "") not in ("", "0")


def _gate(what: str, n: int, fast: int, slow: int, allow_slow: bool, low: int = 1) -> None:
    if n < low:
        raise ValueError(f"{what} needs n >= {low}, got {n}")
    if n <= fast:
        return
    if n <= slow:
        if slow_allowed(allow_slow):
            return
        raise SlowPathRequired(f"{what} at n={n} is gated as slow")
    raise SizeLimitExceeded(f"{what} is limited to n <= {slow}")


# ---------------------------------------------------------------------------
# tables and small helpers


@lru_cache(maxsize=None)
def abstract_table(n: int) -> VariableTable:
    """Symbols for the invariants at half-rank n, weighted by degree."""
    top = 1 << (2 * n)
    entries = [("xi0", 2)] + [(f"xi{i}", (1 << i) + 1) for i in range(1, 2 * n + 1)]
    entries += [(f"c{j}", top - (1 << j)) for j in range(2 * n)]
    entries += [(f"d{j}", top // 2 - (1 << (j - 1))) for j in range(n, 2 * n)]
    entries += [("t", 1), ("X", 2)]
    return VariableTable(entries)


def _var(table: VariableTable, name: str) -> Polynomial:
    return Polynomial.variable(table, name)


def _zero(table: VariableTable) -> Polynomial:
    return Polynomial.zero(table)


def _one(table: VariableTable) -> Polynomial:
    return Polynomial.one(table)


def _product(items: Iterable[Polynomial], table: VariableTable) -> Polynomial:
    """Balanced product, which keeps intermediate sizes even."""
    layer = list(items)
    if not layer:
        return _one(table)
    while len(layer) > 1:
        layer = [layer[i] * layer[i + 1] if i + 1 < len(layer) else layer[i] for i in range(0, len(layer), 2)]
    return layer[0]


def _sum(items: Iterable[Polynomial], table: VariableTable) -> Polynomial:
    return reduce(lambda a, b: a + b, items, _zero(table))


def chern_degree(n: int, sign: str) -> int:
    """Degree of P+- in t, equivalently the X-degree of Q+-."""
    half = 1 << (2 * n - 1)
    return half + (1 << (n - 1)) if _sign(sign) == "+" else half - (1 << (n - 1))


def _sign(sign: str) -> str:
    table = {"+": "+", "plus": "+", "-": "-", "minus": "-"}
    try:
        return table[sign]
    except KeyError:
        raise ValueError(f"sign must be + or -, got {sign!r}") from None


_KINDS = {
    "odd": SpaceKind.ODD_NONSINGULAR,
    "even_plus": SpaceKind.EVEN_PLUS,
    "even-plus": SpaceKind.EVEN_PLUS,
    "even_minus": SpaceKind.EVEN_MINUS,
    "even-minus": SpaceKind.EVEN_MINUS,
}


def space_kind(kind: str | SpaceKind) -> SpaceKind:
    if isinstance(kind, SpaceKind):
        return kind
    if kind in _KINDS:
        return _KINDS[kind]
    return SpaceKind(kind)


@lru_cache(maxsize=None)
def steenrod_context(n: int) -> SteenrodContext:
    return SteenrodContext(s_table(n), [f"x{i}" for i in range(2 * n + 1)])


# ---------------------------------------------------------------------------
# the xi sequence


@dataclass(frozen=True)
class XiContext:
    n: int
    kind: SpaceKind
    space: object
    xi: tuple[Polynomial, ...]
    abstract_table: VariableTable

    @property
    def table(self) -> VariableTable:
        return self.space.table


def xi_closed_form(n: int, j: int) -> Polynomial:
    """Sum over hyperbolic pairs of x_a^(2^j) x_b + x_a x_b^(2^j), for j >= 1."""
    table = s_table(n)
    acc = _zero(table)
    for pair in range(n):
        a, b = _var(table, f"x{2 * pair + 1}"), _var(table, f"x{2 * pair + 2}")
        acc = acc + a.frobenius(j) * b + a * b.frobenius(j)
    return acc


@lru_cache(maxsize=None)
def _xi_sequence(n: int, kind: SpaceKind) -> XiContext:
    space = standard_space(n, kind)
    sq = steenrod_context(n)
    xi = [space.form]
    for i in range(1, 2 * n + 1):
        xi.append(sq.sq(1 << (i - 1), xi[-1]))
        if xi[-1] != xi_closed_form(n, i):
            raise IdentityFailed(f"xi{i} from the Steenrod recursion differs from its closed form")
    return XiContext(n, kind, space, tuple(xi), abstract_table(n))


def xi_sequence(n: int, kind: str | SpaceKind = "odd") -> XiContext:
    if n < 1:
        raise ValueError("n must be at least 1")
    return _xi_sequence(n, space_kind(kind))


def xi_jacobian(n: int) -> PolyMatrix:
    """Matrix of partial derivatives d xi_j / d x_i over S."""
    ctx = xi_sequence(n)
    names = [f"x{i}" for i in range(2 * n + 1)]
    return PolyMatrix.from_rows([[p.partial_derivative(x) for x in names] for p in ctx.xi], ctx.table)


# ---------------------------------------------------------------------------
# Dickson invariants


@dataclass(frozen=True)
class DicksonData:
    """D(t) = prod over U* of (t + x) = sum_j c_j t^(2^j), with c_{2n} = 1.

    The polynomial variable is t because X has weight two in S.
    """

    n: int
    D: Polynomial
    c: tuple[Polynomial, ...]

    def evaluate(self, value: Polynomial) -> Polynomial:
        """D(value), using that D is additive."""
        return _sum((cj * value.frobenius(j) for j, cj in enumerate(self.c)), value.table)


def dickson_matrix(n: int) -> PolyMatrix:
    """Rows x_1^(2^i) .. x_{2n}^(2^i) for i = 0 .. 2n-1."""
    table = s_table(n)
    xs = [_var(table, f"x{k}") for k in range(1, 2 * n + 1)]
    return PolyMatrix.from_rows([[x.frobenius(i) for x in xs] for i in range(2 * n)], table)


@lru_cache(maxsize=None)
def _dickson(n: int) -> DicksonData:
    table = s_table(n)
    t = _var(table, "t")
    D = t
    # D_{W + <v>}(t) = D_W(t) D_W(t + v) and D_W is additive
    for k in range(1, 2 * n + 1):
        D = D * (D + D.substitute({"t": _var(table, f"x{k}")}, table))
    powers = D.coefficients("t")
    if any(e == 0 or e & (e - 1) for e in powers):
        raise IdentityFailed("the Dickson polynomial has a non-additive term")
    c = tuple(D.coefficient("t", 1 << j) for j in range(2 * n + 1))
    if c[-1] != 1:
        raise IdentityFailed("the Dickson polynomial is not monic")
    C0 = dickson_matrix(n)
    if determinant(C0) != c[0]:
        raise IdentityFailed("det(C0) differs from c0")
    lhs = C0.transpose() @ PolyMatrix.column_vector(list(c[:-1]), table)
    for k in range(2 * n):
        if lhs[k, 0] != _var(table, f"x{k + 1}").frobenius(2 * n):
            raise IdentityFailed(f"D(x{k + 1}) does not vanish")
    return DicksonData(n, D, c)


def dickson(n: int) -> DicksonData:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > 3:
        raise SizeLimitExceeded("Dickson invariants are limited to n <= 3")
    return _dickson(n)


# ---------------------------------------------------------------------------
# families, Chern polynomials and restrictions


@lru_cache(maxsize=None)
def _families(n: int):
    return enumerate_families(standard_space(n, SpaceKind.ODD_NONSINGULAR))


@dataclass(frozen=True)
class ChernData:
    n: int
    kind: SpaceKind
    P_plus: Polynomial
    P_minus: Polynomial
    Q_plus: Polynomial
    Q_minus: Polynomial
    d: tuple[Polynomial, ...]

    def dj(self, j: int) -> Polynomial:
        """d_j for n <= j <= 2n-1."""
        if not self.n <= j < 2 * self.n:
            raise IndexError(f"d{j} is not defined at n={self.n}")
        return self.d[j - self.n]

    def P(self, sign: str) -> Polynomial:
        return self.P_plus if _sign(sign) == "+" else self.P_minus

    def Q(self, sign: str) -> Polynomial:
        return self.Q_plus if _sign(sign) == "+" else self.Q_minus


def restriction(n: int, kind: str | SpaceKind) -> Callable[[Polynomial], Polynomial]:
    """Restriction from S to the symmetric algebra of U*, along ker x+- .

    For EvenMinus the hyperplane is ker(x0 + x1 + x2), so x0 becomes x1 + x2;
    for EvenPlus it is ker x0.  The odd kind gives the identity.
    """
    kind = space_kind(kind)
    table = s_table(n)
    if kind is SpaceKind.ODD_NONSINGULAR:
        return lambda p: p
    image = _var(table, "x1") + _var(table, "x2") if kind is SpaceKind.EVEN_MINUS else _zero(table)
    return lambda p: p.substitute({"x0": image}, table)


@lru_cache(maxsize=None)
def _chern_odd(n: int) -> ChernData:
    fam = _families(n)
    table = s_table(n)
    t, X = _var(table, "t"), _var(table, "X")
    P_plus = _product((t + x for x in fam.a_plus), table)
    P_minus = _product((t + x for x in fam.a_minus), table)
    Q_plus = _product((X + q for q in fam.b_plus), table)
    Q_minus = _product((X + q for q in fam.b_minus), table)
    top = chern_degree(n, "-")
    d = tuple(P_minus.coefficient("t", top - ((1 << (2 * n - 1)) - (1 << (j - 1)))) for j in range(n, 2 * n))
    shift = {"X": t.square() + xi_sequence(n).xi[0]}
    if P_minus.square() != Q_minus.substitute(shift, table):
        raise IdentityFailed("(P-)^2 differs from Q-(t^2 + xi0)")
    if P_plus.square() != Q_plus.substitute(shift, table):
        raise IdentityFailed("(P+)^2 differs from Q+(t^2 + xi0)")
    dk = dickson(n)
    if P_minus * P_plus != dk.D + dk.evaluate(_var(table, "x0")):
        raise IdentityFailed("P- P+ differs from D(t + x0)")
    return ChernData(n, SpaceKind.ODD_NONSINGULAR, P_plus, P_minus, Q_plus, Q_minus, d)


@lru_cache(maxsize=None)
def _chern(n: int, kind: SpaceKind) -> ChernData:
    odd = _chern_odd(n)
    if kind is SpaceKind.ODD_NONSINGULAR:
        return odd
    res = restriction(n, kind)
    return ChernData(n, kind, res(odd.P_plus), res(odd.P_minus), odd.Q_plus, odd.Q_minus,
                     tuple(res(dj) for dj in odd.d))


def chern(n: int, kind: str | SpaceKind = "odd", allow_slow: bool = False) -> ChernData:
    _gate("chern", n, 2, 3, allow_slow)
    return _chern(n, space_kind(kind))


def eta(n: int) -> Polynomial:
    """Product of all linear forms outside U*, checked against D(x0)."""
    _gate("eta", n, 2, 2, False)
    fam = _families(n)
    table = s_table(n)
    value = _product(fam.a_plus + fam.a_minus, table)
    ch = chern(n)
    if value != ch.P_plus.coefficient("t", 0) * ch.P_minus.coefficient("t", 0):
        raise IdentityFailed("eta differs from P+(0) P-(0)")
    if value != dickson(n).evaluate(_var(table, "x0")):
        raise IdentityFailed("eta differs from D(x0)")
    return value


# ---------------------------------------------------------------------------
# abstract <-> concrete


class _Images(Mapping):
    """Lazy images in S of the abstract symbols at half-rank n."""

    def __init__(self, n: int):
        self.n = n
        self._names = tuple(name for name in abstract_table(n).names if name not in ("t", "X"))
        self._known = frozenset(self._names)
        self._cache: dict[str, Polynomial] = {}

    def __getitem__(self, name: str) -> Polynomial:
        if name not in self._known:
            raise KeyError(name)
        if name not in self._cache:
            if name.startswith("xi"):
                value = xi_sequence(self.n).xi[int(name[2:])]
            elif name.startswith("c"):
                value = dickson(self.n).c[int(name[1:])]
            else:
                value = _chern(self.n, SpaceKind.ODD_NONSINGULAR).dj(int(name[1:]))
            self._cache[name] = value
        return self._cache[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __len__(self) -> int:
        return len(self._names)


@lru_cache(maxsize=None)
def _images(n: int) -> _Images:
    return _Images(n)


def to_s(p: Polynomial, n: int, kind: str | SpaceKind = "odd") -> Polynomial:
    """Image in S of an abstract polynomial; even kinds restrict along ker x+-."""
    p = p.embed(abstract_table(n))
    return restriction(n, kind)(p.substitute(_images(n), s_table(n)))


def _exponent_vectors(weights: list[int], degree: int, groups: list[int]) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of the given weighted degree; each group sums to at most one."""
    count = len(weights)
    exps = [0] * count
    used: dict[int, int] = {}

    def rec(i: int, remaining: int):
        if i == count:
            if remaining == 0:
                yield tuple(exps)
            return
        w, g = weights[i], groups[i]
        cap = remaining // w
        if g >= 0:
            cap = min(cap, 1 - used.get(g, 0))
        for e in range(cap, -1, -1):
            exps[i] = e
            if g >= 0:
                used[g] = used.get(g, 0) + e
            yield from rec(i + 1, remaining - e * w)
            if g >= 0:
                used[g] -= e
        exps[i] = 0

    yield from rec(0, degree)


def express_in_xi(
    p: Polynomial,
    generators: Mapping[str, Polynomial],
    target: VariableTable,
    linear: Iterable[Iterable[str] | str] = (),
) -> Polynomial:
    """Write p as the unique polynomial in the given generators.

    ``generators`` maps symbol names of ``target`` to their images, which must
    share p's table.  Each entry of ``linear`` names symbols whose combined
    degree is at most one in every term.  Raises NotInSubring when there is
    no expression and AmbiguousExpression when the allowed monomials are
    dependent in the degree being solved.
    """
    names = list(generators)
    group_of = {}
    for g, group in enumerate(linear):
        for name in [group] if isinstance(group, str) else group:
            if name not in generators:
                raise ValueError(f"linear symbol {name} is not a generator")
            if name in group_of:
                raise ValueError(f"symbol {name} listed in two linear groups")
            group_of[name] = g
    weights = [target.weight(name) for name in names]
    gens = [generators[name] for name in names]
    for name, w, g in zip(names, weights, gens):
        if g.table != p.table:
            raise ValueError(f"generator {name} lives in a different table")
        if not g or not g.is_homogeneous() or g.degree() != w:
            raise ValueError(f"generator {name} is not homogeneous of degree {w}")
    groups = [group_of.get(name, -1) for name in names]
    positions = [target.index(name) for name in names]
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = gens[i] if e == 1 else power(i, e - 1) * gens[i]
        return powers[key]

    result: set[int] = set()
    degrees = sorted({p.table.degree(m) for m in p.monomials()})
    for degree in degrees:
        part = p.homogeneous_part(degree)
        candidates = list(_exponent_vectors(weights, degree, groups))
        index: dict[int, int] = {}
        columns = []
        for exps in candidates:
            expansion = _one(p.table)
            for i, e in enumerate(exps):
                if e:
                    expansion = expansion * power(i, e)
            vec = 0
            for m in expansion.monomials():
                vec |= 1 << index.setdefault(m, len(index))
            columns.append(vec)
        target_vec = 0
        for m in part.monomials():
            if m not in index:
                raise NotInSubring(f"degree {degree} part is not in the generated subring")
            target_vec |= 1 << index[m]
        try:
            tag = _linalg.solve_combination(columns, target_vec)
        except _linalg.NoSolution:
            raise NotInSubring(f"degree {degree} part is not in the generated subring") from None
        except _linalg.NotUnique:
            raise AmbiguousExpression(f"generators are dependent in degree {degree}") from None
        for k, exps in enumerate(candidates):
            if tag >> k & 1:
                full = [0] * len(target)
                for pos, e in zip(positions, exps):
                    full[pos] = e
                result.add(target.pack(full))
    return Polynomial(target, Ring.F2, frozenset(result))


def xi_generators(n: int, indices: Iterable[int], kind: str | SpaceKind = "odd") -> dict[str, Polynomial]:
    res = restriction(n, kind)
    ctx = xi_sequence(n)
    return {f"xi{i}": res(ctx.xi[i]) for i in indices}


# ---------------------------------------------------------------------------
# Lambda


def xi_matrix(n: int, size: int) -> PolyMatrix:
    """Symmetric matrix with (i, j) entry xi_{|i-j|}^(2^min(i,j)) and zero diagonal."""
    table = abstract_table(n)
    zero = _zero(table)
    rows = [[zero if i == j else _var(table, f"xi{abs(i - j)}").frobenius(min(i, j)) for j in range(size)]
            for i in range(size)]
    return PolyMatrix.from_rows(rows, table)


def _matching_sum(n: int) -> Polynomial:
    table = abstract_table(n)
    size = 2 * n
    terms: list[int] = []

    def rec(live: list[int], monomial: Polynomial):
        if not live:
            terms.append(next(iter(monomial.monomials())))
            return
        i, rest = live[0], live[1:]
        for k, j in enumerate(rest):
            factor = _var(table, f"xi{j - i}").frobenius(i)
            rec(rest[:k] + rest[k + 1:], monomial * factor)

    rec(list(range(size)), _one(table))
    acc: set[int] = set()
    for m in terms:
        acc ^= {m}
    return Polynomial(table, Ring.F2, frozenset(acc))


@lru_cache(maxsize=None)
def _lambda(n: int, method: str) -> Polynomial:
    if n == 0:
        return _one(abstract_table(0))
    if method == "pfaffian":
        return pfaffian(xi_matrix(n, 2 * n))
    if method == "matchings":
        return _matching_sum(n)
    raise ValueError(f"unknown method {method!r}")


def lambda_(n: int, method: str = "pfaffian") -> Polynomial:
    """Lambda_{2n} in abstract_table(n); Lambda_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > 4:
        raise SizeLimitExceeded("Lambda is limited to n <= 4")
    return _lambda(n, method)


def abstract_total_square(p: Polynomial, top: int) -> Polynomial:
    """Total Steenrod square of a polynomial in xi0..xi_top, written in the xi's.

    Uses the images of the xi's under the total square, so the result may
    involve xi_{top+1}; p's table must contain it.
    """
    table = p.table
    bindings = {}
    for name in p.variables():
        if not name.startswith("xi"):
            raise ValueError(f"total square in xi-coordinates cannot act on {name}")
        i = int(name[2:])
        if i > top:
            raise ValueError(f"{name} is beyond xi{top}")
        x = _var(table, name)
        image = x + _var(table, f"xi{i + 1}") + x.square()
        if i >= 2:
            image = image + _var(table, f"xi{i - 1}").square()
        bindings[name] = image
    return p.substitute(bindings, table)


@lru_cache(maxsize=None)
def _lambda_i(n: int, i: int) -> Polynomial:
    lam = lambda_(n)
    total = abstract_total_square(lam, 2 * n - 1)
    return total.homogeneous_part(lam.degree() + (1 << (2 * n)) - (1 << i))


def lambda_i(n: int, i: int) -> Polynomial:
    """Lambda_{2n,i} = Sq^(2^(2n) - 2^i) Lambda_{2n}, written in xi1..xi_{2n}."""
    if not 0 <= i <= 2 * n:
        raise ValueError(f"i must lie in 0..{2 * n}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > 3:
        raise SizeLimitExceeded("Lambda_{2n,i} is limited to n <= 3")
    return _lambda_i(n, i)


# ---------------------------------------------------------------------------
# Omega


def omega_matrix(n: int) -> PolyMatrix:
    """The Z/4 matrix with diagonal 2X^(2^i) and off-diagonal xi_{|i-j|}^(2^min(i,j))."""
    table = abstract_table(n)
    size = 2 * n + 1
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == j:
                row.append(_var(table, "X").frobenius(i).lift_z4() * 2)
            else:
                row.append(_var(table, f"xi{abs(i - j)}").frobenius(min(i, j)).lift_z4())
        rows.append(row)
    return PolyMatrix.from_rows(rows, table, Ring.Z4)


@lru_cache(maxsize=None)
def _omega(n: int) -> Polynomial:
    det = determinant(omega_matrix(n))
    try:
        om = det.halve()
    except ValueError as exc:
        raise HalvingFailed(f"det H_{2 * n} has an odd coefficient: {exc}") from None
    table = abstract_table(n)
    X = _var(table, "X")
    expected = _sum((lambda_i(n, i).square() * X.frobenius(i) for i in range(2 * n + 1)), table)
    if om + om.set_zero(["X"]) != expected:
        raise IdentityFailed("the X-dependent part of Omega is not sum Lambda_{2n,i}^2 X^(2^i)")
    return om


def omega(n: int, allow_slow: bool = False) -> Polynomial:
    """Omega_{2n}(X) in abstract_table(n)."""
    _gate("omega", n, 2, 3, allow_slow)
    return _omega(n)


@dataclass(frozen=True)
class OmegaPM:
    n: int
    sign: str
    omega: Polynomial
    alphas: tuple[Polynomial, ...]


def _from_chern(n: int, sign: str) -> Polynomial:
    """c0 Q+-(X) computed in S and rewritten in xi1..xi_{2n}."""
    table = abstract_table(n)
    X = _var(table, "X")
    product = dickson(n).c[0] * _chern_odd(n).Q(sign)
    gens = xi_generators(n, range(1, 2 * n + 1))
    return _sum((express_in_xi(coeff, gens, table) * X ** k for k, coeff in product.coefficients("X").items()),
                table)


def _alpha_allowed(n: int) -> set[str]:
    return {"X"} | {f"xi{i}" for i in range(1, 2 * n)}


@lru_cache(maxsize=None)
def _omega_pm(n: int, sign: str) -> OmegaPM:
    table = abstract_table(n)
    if n == 0:
        value = _var(table, "X") if sign == "+" else _one(table)
        return OmegaPM(0, sign, value, (value,))
    prev = [_omega_pm(ell, sign).alphas[ell].embed(table) for ell in range(n)]
    known = _sum((lambda_i(n, n + ell) * prev[ell].frobenius(n - ell) for ell in range(n)), table)
    lam = lambda_(n)
    if n <= 2:
        value = _from_chern(n, sign)
        try:
            alpha = (value + known).divide_exact(lam)
        except NotDivisible as exc:
            raise NotDivisible(f"alpha{sign}_{n}: {exc}") from None
    else:
        alpha = _interpolate_alpha(n, sign, known)
        value = known + lam * alpha
    stray = set(alpha.variables()) - _alpha_allowed(n)
    if stray:
        raise IdentityFailed(f"alpha{sign}_{n} involves {sorted(stray)}")
    top = chern_degree(n, sign)
    coeffs = value.coefficients("X")
    if max(coeffs) != top or coeffs[top] != lam:
        raise IdentityFailed(f"Omega{sign}_{2 * n} does not lead with Lambda X^{top}")
    return OmegaPM(n, sign, value, tuple(prev) + (alpha,))


@lru_cache(maxsize=None)
def _checked_pair(n: int) -> tuple[OmegaPM, OmegaPM]:
    plus, minus = _omega_pm(n, "+"), _omega_pm(n, "-")
    if n >= 1 and plus.omega * minus.omega != _omega(n):
        raise FactorizationMismatch(f"Omega+ Omega- differs from Omega at n={n}")
    return plus, minus


def omega_pm(n: int, sign: str, allow_slow: bool = False) -> OmegaPM:
    """Omega+-_{2n}(X) with the alpha sequence that builds it."""
    sign = _sign(sign)
    if n == 0:
        return _omega_pm(0, sign)
    _gate("omega_pm", n, 2, 3, allow_slow)
    plus, minus = _checked_pair(n)
    return plus if sign == "+" else minus


# --- interpolation for the top alpha when S is too large to expand ----------


def _point_xi(field: GF2m, n: int, xs: list[int]) -> list[int]:
    """Values of xi_0 (placeholder 0), xi_1 .. xi_{2n} at a point of U."""
    out = [0]
    for j in range(1, 2 * n + 1):
        acc = 0
        for pair in range(n):
            a, b = xs[2 * pair], xs[2 * pair + 1]
            acc ^= field.mul(field.power(a, 1 << j), b) ^ field.mul(a, field.power(b, 1 << j))
        out.append(acc)
    return out


def _evaluate(field: GF2m, p: Polynomial, values: Mapping[str, int]) -> int:
    """Value of a polynomial at a point given by a name -> field element map."""
    names = [(i, values[name]) for i, name in enumerate(p.table.names) if p.occurs(name)]
    acc = 0
    for m in p.monomials():
        v = 1
        for i, value in names:
            e = p.table.exponent(m, i)
            if e:
                v = field.mul(v, field.power(value, e))
                if not v:
                    break
        acc ^= v
    return acc


def _evaluate_in_x(field: GF2m, p: Polynomial, values: Mapping[str, int]) -> list[int]:
    """Coefficient list in X of p at a point in the remaining variables."""
    parts = p.coefficients("X")
    out = [0] * (max(parts) + 1 if parts else 0)
    for k, coeff in parts.items():
        out[k] = _evaluate(field, coeff, values)
    return out


def _interpolate_alpha(n: int, sign: str, known: Polynomial, seed: int = 20240611) -> Polynomial:
    """Recover alpha+-_n from the recursion evaluated at random points.

    At each point of U over GF(2^16) the recursion gives the value of
    alpha_n(X) = (c0 Q(X) + known(X)) / c0; its X-coefficients are then fitted
    by polynomials in xi1..xi_{2n-1} of the right degree over F2.
    """
    field = default_field()
    table = abstract_table(n)
    fam = _families(n)
    forms = fam.b_plus if sign == "+" else fam.b_minus
    u_names = tuple(f"x{i}" for i in range(1, 2 * n + 1))
    form_values = [form.set_zero(["x0"]) for form in forms]
    top = chern_degree(n, sign)
    xi_names = [f"xi{i}" for i in range(1, 2 * n)]
    weights = [table.weight(name) for name in xi_names]
    candidates = {k: list(_exponent_vectors(weights, 2 * (top - k), [-1] * len(weights))) for k in range(top + 1)}
    width = max(len(c) for c in candidates.values())
    rng = random.Random(seed)
    lam = lambda_(n)

    def sample():
        while True:
            xs = [rng.randrange(field.size) for _ in u_names]
            c0 = 1
            for u in range(1, 1 << len(xs)):
                v = 0
                for k, x in enumerate(xs):
                    if u >> k & 1:
                        v ^= x
                c0 = field.mul(c0, v)
            if c0:
                break
        xi = _point_xi(field, n, xs)
        values = {name: xi[i] for i, name in enumerate(f"xi{j}" for j in range(2 * n + 1))}
        point = dict(zip(u_names, xs)) | {"x0": 0}
        if _evaluate(field, lam, values) != c0:
            raise IdentityFailed("Lambda does not evaluate to c0")
        q = [1]
        for form in form_values:
            q = field.poly_mul(q, [_evaluate(field, form, point), 1])
        rhs = [field.mul(c0, a) for a in q]
        extra = _evaluate_in_x(field, known, values)
        rhs += [0] * (len(extra) - len(rhs))
        for k, a in enumerate(extra):
            rhs[k] ^= a
        inv = field.inv(c0)
        alpha = [field.mul(a, inv) for a in rhs]
        if any(alpha[top + 1:]) or len(alpha) <= top:
            raise IdentityFailed(f"alpha{sign}_{n} has the wrong X-degree at a sample point")
        return values, alpha[: top + 1]

    def monomial_value(values, exps):
        v = 1
        for name, e in zip(xi_names, exps):
            if e:
                v = field.mul(v, field.power(values[name], e))
        return v

    points = [sample() for _ in range(width // field.bits + 8)]
    result: set[int] = set()
    for k in range(top + 1):
        cands = candidates[k]
        for _attempt in range(8):
            columns = [0] * len(cands)
            target = 0
            for pt, (values, alpha) in enumerate(points):
                shift = pt * field.bits
                for c, exps in enumerate(cands):
                    columns[c] |= monomial_value(values, exps) << shift
                target |= alpha[k] << shift
            try:
                tag = _linalg.solve_combination(columns, target)
                break
            except _linalg.NotUnique:
                points += [sample() for _ in range(len(points))]
            except _linalg.NoSolution:
                raise NotInSubring(f"X^{k} coefficient of alpha{sign}_{n} is not a polynomial in the xi's") from None
        else:
            raise AmbiguousExpression(f"could not separate the X^{k} coefficient of alpha{sign}_{n}")
        X_shift = table.index("X")
        for c, exps in enumerate(cands):
            if tag >> c & 1:
                full = [0] * len(table)
                for name, e in zip(xi_names, exps):
                    full[table.index(name)] = e
                full[X_shift] = k
                result.add(table.pack(full))
    alpha = Polynomial(table, Ring.F2, frozenset(result))
    for _ in range(8):
        values, expected = sample()
        if _evaluate_in_x(field, alpha, values) != expected:
            raise IdentityFailed(f"interpolated alpha{sign}_{n} fails at a fresh point")
    return alpha


# ---------------------------------------------------------------------------
# K/E and J/F matrices


def _column(items: list[Polynomial], table: VariableTable) -> PolyMatrix:
    return PolyMatrix.column_vector(items, table)


def _to_s_matrix(m: PolyMatrix, n: int) -> PolyMatrix:
    return PolyMatrix(m.rows, m.cols, [to_s(p, n) for p in m.entries], s_table(n), Ring.F2)


@lru_cache(maxsize=None)
def _ke(n: int) -> tuple[PolyMatrix, PolyMatrix]:
    table = abstract_table(n)
    zero = _zero(table)
    if n == 1:
        K = PolyMatrix.from_rows([[zero]], table)
    else:
        K_prev, E_prev = (m.embed(table).square_entries() for m in _ke(n - 1))
        rows = [[zero] * n] + [K_prev.row(i) + [E_prev[i, 0]] for i in range(n - 1)]
        K = PolyMatrix.from_rows(rows, table)
    for i in range(n):
        for j in range(n - i):
            if K[i, j]:
                raise IdentityFailed(f"K_{n} has a nonzero entry at ({i},{j}) on or above the anti-diagonal")
    c = dickson(n).c
    S = s_table(n)
    low = _column(list(c[:n]), S) + _to_s_matrix(K, n) @ _column(list(c[n:2 * n]), S)
    gens = xi_generators(n, range(1, 2 * n))
    E = _column([express_in_xi(low[i, 0], gens, table) for i in range(n)], table)
    if E[0, 0] != lambda_(n):
        raise IdentityFailed(f"top entry of E_{n} is not Lambda_{2 * n}")
    if n == 1 and E[0, 0] != _var(table, "xi1"):
        raise IdentityFailed("E_1 is not xi1")
    return K, E


def ke_matrices(n: int, allow_slow: bool = False) -> tuple[PolyMatrix, PolyMatrix]:
    """K_n and E_n with (c_0..c_{n-1}) = K_n (c_n..c_{2n-1}) + E_n."""
    _gate("ke_matrices", n, 2, 3, allow_slow)
    return _ke(n)


def invert_unitriangular(U: PolyMatrix) -> PolyMatrix:
    """Inverse of an upper uni-triangular matrix by back-substitution."""
    size = U.rows
    table = U.table
    for i in range(size):
        if U[i, i] != 1:
            raise TriangularInversionFailed(f"diagonal entry {i} is {U[i, i]}")
        for j in range(i):
            if U[i, j]:
                raise TriangularInversionFailed(f"entry ({i},{j}) below the diagonal is nonzero")
    J = [[_zero(table) for _ in range(size)] for _ in range(size)]
    for r in range(size - 1, -1, -1):
        J[r][r] = _one(table)
        for s in range(r + 1, size):
            J[r][s] = _sum((U[r, m] * J[m][s] for m in range(r + 1, s + 1) if U[r, m]), table)
    out = PolyMatrix.from_rows(J, table)
    if U @ out != PolyMatrix.identity(size, table):
        raise TriangularInversionFailed("back-substitution did not produce an inverse")
    return out


@dataclass(frozen=True)
class JFMatrices:
    J: PolyMatrix
    F: PolyMatrix
    U: PolyMatrix
    V: PolyMatrix


@lru_cache(maxsize=None)
def _jf(n: int) -> JFMatrices:
    table = abstract_table(n)
    shift = {"X": _var(table, "t").square() + _var(table, "xi0")}
    alphas = [a.embed(table).substitute(shift, table) for a in _omega_pm(n, "-").alphas]
    exps = [(1 << (j - 1)) - (1 << (n - 1)) for j in range(n, 2 * n)]
    U = PolyMatrix.from_rows(
        [[alphas[s].frobenius(n - 1 - s).coefficient("t", exps[r]) for s in range(n)] for r in range(n)], table)
    V = _column([alphas[n].coefficient("t", 2 * exps[r]) for r in range(n)], table)
    J = invert_unitriangular(U)
    F = J.square_entries() @ V
    S = s_table(n)
    ch = _chern_odd(n)
    c = dickson(n).c
    rebuilt = _to_s_matrix(J.square_entries(), n) @ _column([dj.square() for dj in ch.d], S) + _to_s_matrix(F, n)
    for r in range(n):
        if rebuilt[r, 0] != c[n + r]:
            raise IdentityFailed(f"c{n + r} is not recovered from the d's through J and F")
    return JFMatrices(J, F, U, V)


def jf_matrices(n: int, allow_slow: bool = False) -> JFMatrices:
    """J_n and F_n with (c_n..c_{2n-1}) = J_n^{*2} (d_n^2..d_{2n-1}^2) + F_n."""
    _gate("jf_matrices", n, 2, 3, allow_slow)
    return _jf(n)


# ---------------------------------------------------------------------------
# relation systems


@dataclass(frozen=True)
class RelationSystem:
    n: int
    group_kind: GroupKind
    matrices: dict[str, PolyMatrix]
    relators: tuple[Polynomial, ...]
    defining: Polynomial | None
    claimed_dets: dict[str, Polynomial] = field(default_factory=dict)


def _sqrt_matrix(m: PolyMatrix, label: str) -> PolyMatrix:
    try:
        return m.sqrt_entries()
    except NotASquare as exc:
        raise SquareRootFailed(f"{label} has a non-square entry: {exc}") from None


def _det(m: PolyMatrix) -> Polynomial:
    if m.rows == 0:
        return _one(m.table)
    return determinant(m)


def _check_dets(claims: dict[str, Polynomial], matrices: dict[str, PolyMatrix], label: str) -> None:
    for name, claimed in claims.items():
        actual = _det(matrices[name])
        if actual != claimed:
            raise DeterminantMismatch(f"{label}: det {name} = {actual}, expected {claimed}")


def _check_residues(rows: Iterable[Polynomial], n: int, kind: str, label: str) -> None:
    for k, row in enumerate(rows):
        image = to_s(row, n, kind)
        if image:
            raise ResidueNonzero(f"{label}: relation row {k} maps to {image}")


def _omega_at_xi0(n: int, level: int, sign: str) -> Polynomial:
    table = abstract_table(n)
    return _omega_pm(level, sign).omega.embed(table).substitute({"X": _var(table, "xi0")}, table)


def _sp_system(n: int) -> RelationSystem:
    table = abstract_table(n)
    Xi = xi_matrix(n, 2 * n)
    L = Xi.submatrix(range(n), range(n))
    R = Xi.submatrix(range(n), range(n, 2 * n))
    K, E = _ke(n)
    A = L @ K + R
    rhs = _column([_var(table, f"xi{2 * n - i}").frobenius(i) for i in range(n)], table)
    c_hi = _column([_var(table, f"c{j}") for j in range(n, 2 * n)], table)
    rows = (A @ c_hi + L @ E + rhs).column(0)
    matrices = {"L": L, "R": R, "K": K, "E": E, "LK+R": A}
    claims = {"LK+R": lambda_(n)}
    _check_dets(claims, matrices, "Sp")
    _check_residues(rows, n, "odd", "Sp")
    return RelationSystem(n, GroupKind.SP, matrices, tuple(rows[1:]), rows[0], claims)


def _odd_parts(n: int) -> dict:
    """The square-rooted system for O(V), shared by the three orthogonal kinds."""
    table = abstract_table(n)
    Xi = xi_matrix(n, 2 * n)
    L = Xi.submatrix(range(1, n), range(n))
    R = Xi.submatrix(range(1, n), range(n, 2 * n))
    K, E = _ke(n)
    jf = _jf(n)
    A = L @ K + R
    B = _sqrt_matrix(A, "L'K+R'") @ jf.J
    top = _column([_var(table, f"xi{2 * n - i}").frobenius(i - 1) for i in range(1, n)], table)
    rhs = top + _sqrt_matrix(L @ E + A @ jf.F, "L'E+(L'K+R')F")
    d = _column([_var(table, f"d{j}") for j in range(n, 2 * n)], table)
    return {"L": L, "R": R, "K": K, "E": E, "J": jf.J, "F": jf.F, "U": jf.U, "V": jf.V, "B": B, "rhs": rhs, "d": d}


def _o_odd_system(n: int) -> RelationSystem:
    parts = _odd_parts(n)
    B, rhs, d = parts.pop("B"), parts.pop("rhs"), parts.pop("d")
    rows = (B @ d + rhs).column(0)
    matrices = dict(parts, B=B, rhs=rhs,
                    S=B.drop_column(n - 1), G=B.submatrix(range(n - 1), [n - 1]),
                    T=B.drop_column(0), H=B.submatrix(range(n - 1), [0]))
    claims = {"S": lambda_(n - 1).embed(abstract_table(n)), "T": _omega_at_xi0(n, n - 1, "-")}
    _check_dets(claims, matrices, "OOdd")
    _check_residues(rows, n, "odd", "OOdd")
    return RelationSystem(n, GroupKind.O_ODD, matrices, tuple(rows[1:]), rows[0], claims)


def _o_minus_system(n: int) -> RelationSystem:
    parts = _odd_parts(n)
    B, rhs, d = parts.pop("B"), parts.pop("rhs"), parts.pop("d")
    T = B.drop_column(0)
    rows = (T @ d.drop_row(0) + rhs).column(0)
    T2 = T.drop_row(0).drop_column(n - 2) if n > 2 else PolyMatrix(0, 0, [], T.table, Ring.F2)
    matrices = dict(parts, B=B, rhs=rhs, T=T, T2=T2)
    claims = {"T2": _omega_at_xi0(n, n - 2, "-").square()}
    _check_dets(claims, matrices, "OMinus")
    _check_residues(rows, n, "even_minus", "OMinus")
    return RelationSystem(n, GroupKind.O_MINUS, matrices, tuple(rows[1:]), rows[0], claims)


def plus_constant_term(n: int) -> tuple[Polynomial, ...]:
    """f_0..f_n with P+(0) = sum f_l d_{n+l} + f_n."""
    table = abstract_table(n)
    d_names = [f"d{j}" for j in range(n, 2 * n)]
    ch = _chern_odd(n)
    gens = xi_generators(n, range(2 * n - 1)) | {name: ch.dj(int(name[1:])) for name in d_names}
    expr = express_in_xi(ch.P_plus.coefficient("t", 0), gens, table, linear=[d_names])
    f = [expr.coefficient(name, 1) for name in d_names] + [expr.set_zero(d_names)]
    for fj in f:
        if any(v.startswith("d") for v in fj.variables()):
            raise IdentityFailed("P+(0) is not linear in the d's")
    return tuple(f)


def _o_plus_system(n: int) -> RelationSystem:
    table = abstract_table(n)
    parts = _odd_parts(n)
    B, rhs, d = parts.pop("B"), parts.pop("rhs"), parts.pop("d")
    f = plus_constant_term(n)
    xi = [_var(table, f"xi{j}") for j in range(n + 1)]
    if f[0] != xi[0].frobenius(n - 1):
        raise IdentityFailed(f"f0 is {f[0]}, not xi0^(2^{n - 1})")
    for j in range(1, n + 1):
        lower = [f"xi{k}" for k in range(j)]
        if f[j].set_zero(lower) != xi[j].frobenius(n - 1):
            raise IdentityFailed(f"f{j} is not congruent to xi{j}^(2^{n - 1})")
    M = B.vconcat(PolyMatrix.from_rows([list(f[:n])], table))
    rhs_plus = rhs.vconcat(_column([f[n]], table))
    rows = (M @ d + rhs_plus).column(0)
    M2 = M.drop_row(0).drop_column(n - 1)
    matrices = dict(parts, B=B, rhs=rhs_plus, M=M, M2=M2)
    claims = {"M": _omega_at_xi0(n, n - 1, "+"), "M2": _omega_at_xi0(n, n - 2, "+").square()}
    _check_dets(claims, matrices, "OPlus")
    _check_residues(rows, n, "even_plus", "OPlus")
    return RelationSystem(n, GroupKind.O_PLUS, matrices, tuple(rows[1:]), rows[0], claims)


@lru_cache(maxsize=None)
def _relation_system(n: int, kind: GroupKind) -> RelationSystem:
    if kind is GroupKind.SP:
        return _sp_system(n)
    if n == 1:
        return RelationSystem(1, kind, {}, (), None, {})
    builders = {GroupKind.O_ODD: _o_odd_system, GroupKind.O_MINUS: _o_minus_system,
                GroupKind.O_PLUS: _o_plus_system}
    if kind not in builders:
        raise ValueError(f"no relation system for {kind.value}")
    return builders[kind](n)


def relation_system(n: int, kind: GroupKind | str, allow_slow: bool = False) -> RelationSystem:
    _gate("relation_system", n, 2, 3, allow_slow)
    return _relation_system(n, group_kind(kind))


# ---------------------------------------------------------------------------
# identity catalogue


@dataclass
class IdentityReport:
    name: str
    n: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} n={self.n}"

    def raise_for_failure(self) -> None:
        if not self.passed:
            raise IdentityFailed(f"{self.summary()}: " + "; ".join(self.failures))


def _diff(lhs: Polynomial, rhs: Polynomial, limit: int = 4) -> str:
    delta = lhs + rhs if lhs.ring is Ring.F2 else lhs - rhs
    terms = delta.sorted_monomials()[:limit]
    shown = [Polynomial(delta.table, delta.ring, frozenset([m]) if delta.ring is Ring.F2 else {m: delta.coefficient_of(m)})
             for m in terms]
    more = "" if len(delta) <= limit else f" (+{len(delta) - limit} more)"
    return "differ at " + ", ".join(str(p) for p in shown) + more


def _s_shift(n: int) -> dict[str, Polynomial]:
    table = s_table(n)
    return {"X": _var(table, "t").square() + xi_sequence(n).xi[0]}


def _lower_omega_s(n: int, sign: str, levels_down: int = 1) -> Polynomial:
    """Omega+-_{2n-2} (or lower) as an element of S[X]."""
    return to_s(_omega_pm(n - levels_down, sign).omega, n)


def _id_omega_cube(n):
    table = abstract_table(n)
    p_lo, m_lo = (_omega_pm(n - 1, s).omega.embed(table) for s in "+-")
    plus, minus = omega_pm(n, "+", True), omega_pm(n, "-", True)
    yield "cube", p_lo.square() * minus.omega + m_lo.square() * plus.omega, lambda_(n) ** 3


def _id_p_squared(n):
    ch = chern(n)
    table = s_table(n)
    shift = _s_shift(n)
    yield "(P-)^2", ch.P_minus.square(), ch.Q_minus.substitute(shift, table)
    yield "(P+)^2", ch.P_plus.square(), ch.Q_plus.substitute(shift, table)
    dk = dickson(n)
    yield "P- P+", ch.P_minus * ch.P_plus, dk.D + dk.evaluate(_var(table, "x0"))


def _id_nice(n):
    ch = chern(n)
    table = s_table(n)
    shift = _s_shift(n)
    A = _lower_omega_s(n, "+").substitute(shift, table)
    B = _lower_omega_s(n, "-").substitute(shift, table)
    lam = to_s(lambda_(n), n)
    dk = dickson(n)
    chern_sum = dk.D + dk.evaluate(_var(table, "x0"))
    yield "(i)", A * ch.P_minus + B * ch.P_plus, lam
    yield "(ii)", lam * ch.P_minus, A * ch.Q_minus.substitute(shift, table) + B * chern_sum
    yield "(iii)", lam * ch.P_plus, B * ch.Q_plus.substitute(shift, table) + A * chern_sum


def _caroline_checks(n, sign):
    ch = chern(n)
    table = s_table(n)
    sq = steenrod_context(n)
    xi0 = xi_sequence(n).xi[0]
    lower = _lower_omega_s(n, sign)
    at_xi0 = lower.substitute({"X": xi0}, table)
    shifted = lower.substitute(_s_shift(n), table)
    P = ch.P(sign)
    top = chern_degree(n, sign)
    constant = P.coefficient("t", 0)
    for j in range(top + 1):
        Pj = P.coefficient("t", top - j)
        Pj_prime = shifted.coefficient("t", top - j) if j else _zero(table)
        yield f"j={j}", sq.sq(j, at_xi0), at_xi0 * Pj + Pj_prime * constant


def _carolinex(n, sign):
    """Membership of the combination that isolates xi_{2n-1} in F2[xi0..xi_{2n-2}]."""
    table = s_table(n)
    ctx = xi_sequence(n)
    ch = chern(n)
    xi0 = ctx.xi[0]
    two_down = _lower_omega_s(n, sign, 2).substitute({"X": xi0}, table)
    one_down = _lower_omega_s(n, sign).substitute({"X": xi0}, table)
    tail = ch.dj(n) if sign == "-" else ch.P_plus.coefficient("t", 0)
    value = two_down.square() * ctx.xi[2 * n - 1] + one_down * ch.dj(2 * n - 1) + to_s(lambda_(n - 1), n) * tail
    try:
        expr = express_in_xi(value, xi_generators(n, range(2 * n - 1)), abstract_table(n))
    except NotInSubring:
        yield "membership in xi0..xi_{2n-2}", value, _zero(table)
        return
    yield "membership in xi0..xi_{2n-2}", value, to_s(expr, n)


def _id_caroline(n):
    yield from _caroline_checks(n, "-")
    if n >= 2:
        yield from _carolinex(n, "-")


def _id_carolinex(n):
    for sign in "-+":
        yield from _carolinex(n, sign)


def _id_caroline_plus(n):
    yield from _caroline_checks(n, "+")
    if n >= 2:
        yield from _carolinex(n, "+")


def _forms_on_u(n: int) -> list[tuple[Polynomial, FormType]]:
    fam = _families(n)
    return [(q.set_zero(["x0"]), FormType.PLUS) for q in fam.b_plus] + \
           [(q.set_zero(["x0"]), FormType.MINUS) for q in fam.b_minus]


def _id_omega_vanishing(n):
    table = s_table(n)
    u_names = tuple(f"x{i}" for i in range(1, 2 * n + 1))
    c0 = dickson(n).c[0]
    top = {s: to_s(omega_pm(n, s).omega, n) for s in "+-"}
    low = {s: _lower_omega_s(n, s) for s in "+-"}
    linear = [(u, reduce(lambda a, b: a + b, (_var(table, name) for k, name in enumerate(u_names) if u >> k & 1),
                         _zero(table))) for u in range(1 << (2 * n))]
    for q, kind in _forms_on_u(n):
        own, other = ("-", "+") if kind is FormType.MINUS else ("+", "-")
        base = form_evaluator(q, u_names)
        def shifted_type(u):
            return type_by_majority(lambda v: base(v) ^ (bin(v & u).count("1") & 1), 2 * n)
        flips = [x for u, x in linear if shifted_type(u) is not kind]
        same = [x for u, x in linear if u and shifted_type(u) is kind]
        at = {"X": q}
        yield f"Omega{own}({q})", top[own].substitute(at, table), _zero(table)
        yield f"Omega{other}({q})", top[other].substitute(at, table), c0 * _product((x.square() for x in flips), table)
        yield f"lower Omega{own}({q})", low[own].substitute(at, table), _product(same, table)


def _id_mis1(n):
    table = s_table(n)
    t = _var(table, "t")
    image = chern(n).Q_minus.substitute({"X": t.square()}, table).set_zero([f"x{2 * k}" for k in range(1, n + 1)])
    w_names = [f"x{2 * k + 1}" for k in range(n)]
    factors = []
    for u in range(1, 1 << n):
        factors.append(t + _sum((_var(table, w_names[k]) for k in range(n) if u >> k & 1), table))
    yield "Q-(t^2) on W", image, _product(factors, table).frobenius(n)


def _id_middle(n):
    table = abstract_table(n)
    plus, minus = omega_pm(n, "+", True).omega, omega_pm(n, "-", True).omega
    low = ["X"] + [f"xi{i}" for i in range(1, n)]
    xi = lambda i: _var(table, f"xi{i}")
    yield "Omega+ mod X,xi1..", plus.set_zero(low), xi(n) ** ((1 << (n + 1)) - 1)
    yield "Omega- mod X,xi1..", minus.set_zero(low), lambda_i(n, n).set_zero(low)
    yield "Omega- mod xi1..xi_n", minus.set_zero([f"xi{i}" for i in range(1, n + 1)]), xi(n + 1) ** ((1 << n) - 1)


def _id_squarexi(n):
    ctx = xi_sequence(n)
    sq = steenrod_context(n)
    xi = ctx.xi
    for i in range(2 * n):
        expected = xi[i] + xi[i + 1] + xi[i].square()
        if i >= 2:
            expected = expected + xi[i - 1].square()
        yield f"xi{i}", sq.total_sq(xi[i]), expected


def _id_wu_dickson(n):
    c = dickson(n).c
    sq = steenrod_context(n)
    top = 1 << (2 * n)
    special = {top - (1 << i): i for i in range(2 * n + 1)}
    for j in range(top + 1):
        expected = c[0] * c[special[j]] if j in special else _zero(s_table(n))
        yield f"Sq^{j} c0", sq.sq(j, c[0]), expected


def _id_lambda_in_s(n):
    c = dickson(n).c
    yield "Lambda = c0", to_s(lambda_(n), n), c[0]
    for i in range(2 * n + 1):
        yield f"Lambda_{{{2 * n},{i}}} = c0 c{i}", to_s(lambda_i(n, i), n), c[0] * c[i]


def _id_omega_c0sq(n):
    table = s_table(n)
    fam = _families(n)
    X = _var(table, "X")
    Q = _product((X + q for q in fam.b_plus + fam.b_minus), table)
    yield "Omega = c0^2 Q", to_s(omega(n), n), dickson(n).c[0].square() * Q


def _id_alpha_odd(n):
    table = abstract_table(n)
    X = _var(table, "X")
    for sign in "+-":
        alpha = omega_pm(n, sign, True).alphas[n]
        odd = _sum((coeff * X ** k for k, coeff in alpha.coefficients("X").items() if k % 2), table)
        lower = _omega_pm(n - 1, sign).omega.embed(table)
        yield f"alpha{sign}_{n} odd part", odd, lower.square() * X


def _id_coeff_t(n):
    ch = chern(n)
    table = s_table(n)
    xi0 = xi_sequence(n).xi[0]
    for sign in "+-":
        yield f"[t]P{sign}", ch.P(sign).coefficient("t", 1), _lower_omega_s(n, sign).substitute({"X": xi0}, table)


def _id_leading(n):
    table = abstract_table(n)
    X = _var(table, "X")
    lam = lambda_(n)
    full = omega(n, True)
    deg = max(full.coefficients("X"))
    yield "Omega leading", full.coefficient("X", deg) * X ** deg, lam.square() * X ** (1 << (2 * n))
    for sign in "+-":
        value = omega_pm(n, sign, True).omega
        deg = max(value.coefficients("X"))
        yield f"Omega{sign} leading", value.coefficient("X", deg) * X ** deg, lam * X ** chern_degree(n, sign)


def _id_omega_linear_top(n):
    """Omega+- is linear in xi_{2n} with coefficient (Omega+-_{2n-2})^2."""
    table = abstract_table(n)
    top = f"xi{2 * n}"
    for sign in "+-":
        value = omega_pm(n, sign, True).omega
        parts = value.coefficients(top)
        yield f"Omega{sign} degree in {top}", _var(table, "X") ** max(parts), _var(table, "X")
        lower = _omega_pm(n - 1, sign).omega.embed(table)
        yield f"Omega{sign} {top}-coefficient", parts.get(1, _zero(table)), lower.square()


@dataclass(frozen=True)
class _Identity:
    check: Callable
    fast: int
    slow: int
    low: int = 1
    summary: str = ""


IDENTITIES: dict[str, _Identity] = {
    "omega-cube": _Identity(_id_omega_cube, 2, 3, summary="Omega+_{2n-2}^2 Omega- + Omega-_{2n-2}^2 Omega+ = Lambda^3"),
    "p-squared": _Identity(_id_p_squared, 2, 2, summary="(P+-)^2 = Q+-(t^2+xi0) and P- P+ = D(t+x0)"),
    "nice-formulae": _Identity(_id_nice, 2, 2, summary="Omega_{2n-2}(t^2+xi0) combinations of P+- give Lambda"),
    "caroline": _Identity(_id_caroline, 2, 2, summary="Sq^j Omega-_{2n-2}(xi0) through coefficients of P-"),
    "carolinex": _Identity(_id_carolinex, 2, 2, low=2, summary="xi_{2n-1} combination lies in F2[xi0..xi_{2n-2}]"),
    "caroline-plus": _Identity(_id_caroline_plus, 2, 2, summary="Sq^j Omega+_{2n-2}(xi0) through coefficients of P+"),
    "omega-vanishing": _Identity(_id_omega_vanishing, 2, 2, summary="Omega+- evaluated at forms of each type"),
    "mis1-restriction": _Identity(_id_mis1, 2, 2, summary="Q-(t^2) on a maximal isotropic subspace"),
    "middle-of-omega": _Identity(_id_middle, 2, 3, summary="Omega+- modulo X and low xi's"),
    "squarexi": _Identity(_id_squarexi, 2, 3, summary="total square of each xi_i"),
    "wu-dickson": _Identity(_id_wu_dickson, 2, 2, summary="Sq^j c0 is c0 c_i or zero"),
    "lambda-sq-in-S": _Identity(_id_lambda_in_s, 2, 2, summary="Lambda = c0 and Lambda_{2n,i} = c0 c_i in S"),
    "omega-c0sq-Q": _Identity(_id_omega_c0sq, 2, 2, summary="Omega = c0^2 Q(X) in S"),
    "alpha-odd-part": _Identity(_id_alpha_odd, 2, 3, summary="odd X-part of alpha+-_n is Omega+-_{2n-2}^2 X"),
    "coeff-t-in-p": _Identity(_id_coeff_t, 2, 2, summary="coefficient of t in P+- is Omega+-_{2n-2}(xi0)"),
    "omega-leading-terms": _Identity(_id_leading, 2, 3, summary="leading X-terms of Omega, Omega+-"),
    "omega-linear-top": _Identity(_id_omega_linear_top, 2, 3, summary="Omega+- linear in xi_{2n}"),
}


def identity_names() -> list[str]:
    return sorted(IDENTITIES)


def verify_identity(name: str, n: int, allow_slow: bool = False) -> IdentityReport:
    """Evaluate both sides of a catalogued identity exactly."""
    try:
        entry = IDENTITIES[name]
    except KeyError:
        raise UnknownIdentity(name) from None
    _gate(name, n, entry.fast, entry.slow, allow_slow, entry.low)
    report = IdentityReport(name, n)
    for label, lhs, rhs in entry.check(n):
        report.checks += 1
        if lhs != rhs:
            report.failures.append(f"{label}: {_diff(lhs, rhs)}")
    return report
