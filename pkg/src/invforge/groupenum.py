"""Finite symplectic and orthogonal groups over F2, built by explicit enumeration.

A matrix is stored as a tuple of columns, each column an int bit vector, so
column j is the image of the basis vector e_j.  Groups act on polynomials in
the coordinate functions contragrediently: (g.f)(v) = f(g^-1 v).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import prod

from ._linalg import GF2Basis
from .polyring import FIELD_BITS, Polynomial
from .quadforms import QuadraticSpace, SpaceKind, gram_rows, standard_space


class DimensionTooLarge(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


class NoLiftFound(RuntimeError):
    pass


class GroupKind(Enum):
    SP = "Sp"
    O_ODD = "OOdd"
    O_PLUS = "OPlus"
    O_MINUS = "OMinus"
    GL = "GL"


DIRECT_DIM_LIMIT = 4
MAX_GENERATORS = 8
DEFAULT_DEGREE_BOUND = 12


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("INVFORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class GroupElement:
    columns: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.columns)

    @classmethod
    def identity(cls, dim: int) -> "GroupElement":
        return cls(tuple(1 << j for j in range(dim)))

    @classmethod
    def from_rows(cls, rows) -> "GroupElement":
        dim = len(rows)
        return cls(tuple(sum(rows[i][j] << i for i in range(dim)) for j in range(dim)))

    def to_rows(self) -> list[list[int]]:
        return [[(c >> i) & 1 for c in self.columns] for i in range(self.dim)]

    def apply(self, v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                out ^= self.columns[j]
            v >>= 1
            j += 1
        return out

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(self.apply(c) for c in other.columns))

    def inverse(self) -> "GroupElement":
        n = self.dim
        # Gauss-Jordan on rows of [g | I]
        rows = [(sum(((self.columns[j] >> i) & 1) << j for j in range(n)), 1 << i) for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][0] >> col & 1), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            for r in range(n):
                if r != col and rows[r][0] >> col & 1:
                    rows[r] = (rows[r][0] ^ rows[col][0], rows[r][1] ^ rows[col][1])
        inv_rows = [rows[i][1] for i in range(n)]
        return GroupElement(tuple(sum(((inv_rows[i] >> j) & 1) << i for i in range(n)) for j in range(n)))

    def is_identity(self) -> bool:
        return all(c == 1 << j for j, c in enumerate(self.columns))

    def displacement(self) -> tuple[int, ...]:
        """Columns of g - I."""
        return tuple(c ^ (1 << j) for j, c in enumerate(self.columns))


@dataclass(frozen=True)
class Group:
    elements: tuple[GroupElement, ...]
    kind: GroupKind
    dim: int
    generators: tuple[GroupElement, ...]
    space: QuadraticSpace | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)


def group_kind(kind) -> GroupKind:
    if isinstance(kind, GroupKind):
        return kind
    aliases = {"sp": GroupKind.SP, "o-odd": GroupKind.O_ODD, "o-plus": GroupKind.O_PLUS,
               "o-minus": GroupKind.O_MINUS, "gl": GroupKind.GL}
    return aliases.get(kind.lower(), None) or GroupKind(kind)


def order_formula(kind, n: int) -> int:
    """Classical orders of the groups attached to a 2n or 2n+1 dimensional space."""
    kind = group_kind(kind)
    odd_part = prod(4 ** j - 1 for j in range(1, n))
    if kind in (GroupKind.SP, GroupKind.O_ODD):
        return 2 ** (n * n) * odd_part * (4 ** n - 1)
    if kind is GroupKind.O_MINUS:
        return 2 ** (n * n - n + 1) * (2 ** n + 1) * odd_part
    if kind is GroupKind.O_PLUS:
        return 2 ** (n * n - n + 1) * (2 ** n - 1) * odd_part
    raise ValueError("no order formula for GL here")


def transvection_formula(kind, n: int) -> int:
    kind = group_kind(kind)
    if kind in (GroupKind.SP, GroupKind.O_ODD):
        return 4 ** n - 1
    if kind is GroupKind.O_MINUS:
        return 2 ** (2 * n - 1) + 2 ** (n - 1)
    if kind is GroupKind.O_PLUS:
        return 2 ** (2 * n - 1) - 2 ** (n - 1)
    raise ValueError("no transvection formula for GL here")


def _preserving_matrices(space: QuadraticSpace, keep_form: bool, keep_bilinear: bool) -> list[GroupElement]:
    """Backtrack over invertible matrices column by column.

    A matrix preserves q iff q(g e_j) = q(e_j) for all j and b(g e_i, g e_j) =
    b(e_i, e_j) for all i < j, so constraints can be checked as columns grow.
    """
    m = space.dim
    rows = gram_rows(space.bilinear)
    q = space.evaluator()

    def b(u: int, v: int) -> int:
        acc = 0
        for i in range(m):
            if u >> i & 1:
                acc ^= bin(rows[i] & v).count("1") & 1
        return acc

    basis_q = [q(1 << j) for j in range(m)]
    found: list[GroupElement] = []
    columns: list[int] = []

    def rec(j: int, span: set[int]):
        if j == m:
            found.append(GroupElement(tuple(columns)))
            return
        for v in range(1, 1 << m):
            if v in span:
                continue
            if keep_form and q(v) != basis_q[j]:
                continue
            if keep_bilinear and any(b(columns[i], v) != space.bilinear[i][j] for i in range(j)):
                continue
            columns.append(v)
            rec(j + 1, span | {s ^ v for s in span})
            columns.pop()

    rec(0, {0})
    return found


def closure(generators, dim: int) -> set[GroupElement]:
    identity = GroupElement.identity(dim)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in generators:
                k = g * h
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def _sparsity(g: GroupElement) -> tuple[int, tuple[int, ...]]:
    return (sum(bin(c).count("1") for c in g.displacement()), g.columns)


def greedy_generators(elements, dim: int) -> tuple[GroupElement, ...]:
    """Accumulate sparse elements until their closure is the whole group."""
    target = len(elements)
    gens: list[GroupElement] = []
    reached = {GroupElement.identity(dim)}
    for g in sorted(elements, key=_sparsity):
        if len(reached) == target:
            break
        if g in reached:
            continue
        gens.append(g)
        reached = closure(gens, dim)
    if len(reached) != target or len(gens) > MAX_GENERATORS:
        raise RuntimeError(f"greedy generation used {len(gens)} elements and reached {len(reached)} of {target}")
    return tuple(gens)


def enumerate_group(space: QuadraticSpace, kind) -> Group:
    kind = group_kind(kind)
    if space.dim > DIRECT_DIM_LIMIT + 1 or (space.dim > DIRECT_DIM_LIMIT and kind is not GroupKind.O_ODD):
        raise DimensionTooLarge(f"direct enumeration of {kind.value} in dimension {space.dim}")
    if space.dim > DIRECT_DIM_LIMIT:
        lifted = lift_orthogonal(space.dim // 2)
        if lifted.space.form != space.form:
            raise DimensionTooLarge("dimension-5 orthogonal groups are built only for the standard model")
        return lifted
    if kind is GroupKind.GL:
        elements = _preserving_matrices(space, False, False)
    elif kind is GroupKind.SP:
        elements = _preserving_matrices(space, False, True)
    else:
        elements = _preserving_matrices(space, True, True)
    elements.sort(key=lambda g: g.columns)
    return Group(tuple(elements), kind, space.dim, greedy_generators(elements, space.dim), space)


def standard_group(n: int, kind) -> Group:
    """The group of the given kind on the standard space of half-rank n."""
    kind = group_kind(kind)
    if kind is GroupKind.O_ODD:
        if 2 * n + 1 > DIRECT_DIM_LIMIT:
            return lift_orthogonal(n)
        return enumerate_group(standard_space(n, SpaceKind.ODD_NONSINGULAR), kind)
    model = SpaceKind.EVEN_MINUS if kind is GroupKind.O_MINUS else SpaceKind.EVEN_PLUS
    return enumerate_group(standard_space(n, model), kind)


def lift_orthogonal(n: int) -> Group:
    """O(V) for the standard odd space, as the lift of Sp(U) fixing e0.

    The lift of g sends e0 to e0 and e_i to g e_i + c_i e0, where the scalar c_i
    is forced by q(lift(g) e_i) = q(e_i) since q(a e0 + u) = a + q_U(u).
    """
    if n not in (1, 2):
        raise DimensionTooLarge("the lift is provided for n in {1, 2}")
    odd = standard_space(n, SpaceKind.ODD_NONSINGULAR)
    even = standard_space(n, SpaceKind.EVEN_PLUS, odd.table)
    sp = _preserving_matrices(even, False, True)
    q_u = even.evaluator()
    q = odd.evaluator()
    lifted = []
    for g in sp:
        cols = [1]
        for j, c in enumerate(g.columns):
            fix = q_u(c) ^ q_u(1 << j)
            cols.append((c << 1) | fix)
        h = GroupElement(tuple(cols))
        for j in range(odd.dim):
            if q(h.columns[j]) != q(1 << j):
                raise NoLiftFound(f"lift of {g.columns} does not preserve the form")
        lifted.append(h)
    lifted.sort(key=lambda g: g.columns)
    if len(set(lifted)) != len(sp):
        raise NoLiftFound("lift is not injective")
    return Group(tuple(lifted), GroupKind.O_ODD, odd.dim, greedy_generators(lifted, odd.dim), odd)


def standard_coordinates(dim: int) -> tuple[str, ...]:
    """x0..x_{2n} for odd models, x1..x_{2n} for the even models on U."""
    start = 0 if dim % 2 else 1
    return tuple(f"x{i}" for i in range(start, start + dim))


def _variables_for(group: Group, p: Polynomial) -> tuple[str, ...]:
    if group.space is not None:
        return group.space.variables
    return standard_coordinates(group.dim)


def act_on_poly(g: GroupElement, p: Polynomial, variables: tuple[str, ...] | None = None) -> Polynomial:
    """Contragredient action: x_i goes to the linear form x_i o g^-1."""
    if variables is None:
        variables = standard_coordinates(g.dim)
    if len(variables) != g.dim:
        raise DimensionMismatch(f"element of dimension {g.dim} acting on {len(variables)} coordinates")
    inverse = g.inverse()
    table = p.table
    bindings = {}
    for i, name in enumerate(variables):
        image = Polynomial.zero(table)
        for j, other in enumerate(variables):
            # row i of g^-1
            if inverse.columns[j] >> i & 1:
                image = image + Polynomial.variable(table, other)
        bindings[name] = image
    return p.substitute(bindings, table)


def act(group: Group, g: GroupElement, p: Polynomial) -> Polynomial:
    return act_on_poly(g, p, _variables_for(group, p))


def is_invariant(group: Group, p: Polynomial) -> bool:
    variables = _variables_for(group, p)
    return all(act_on_poly(g, p, variables) == p for g in group.generators)


def count_transvections(group: Group) -> tuple[int, dict[int, int]]:
    """Count elements with rank(g - I) = 1, keyed by the normal of the fixed hyperplane.

    The normal is returned as a bit mask over the coordinate functions.
    """
    per_hyperplane: dict[int, int] = {}
    total = 0
    for g in group.elements:
        cols = g.displacement()
        nonzero = {c for c in cols if c}
        if len(nonzero) != 1:
            continue
        normal = sum(1 << j for j, c in enumerate(cols) if c)
        per_hyperplane[normal] = per_hyperplane.get(normal, 0) + 1
        total += 1
    return total, per_hyperplane


# fixed spaces ----------------------------------------------------------------


def _monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for e in range(degree, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, degree - e):
            out.append((e,) + rest)
    return out


class _ImageCache:
    """Images of monomials under one group element, built multiplicatively."""

    def __init__(self, g: GroupElement, nvars: int):
        self.nvars = nvars
        self.shift = [FIELD_BITS * k for k in range(nvars)]
        inverse = g.inverse()
        self.linear = []
        for i in range(nvars):
            self.linear.append(frozenset(1 << self.shift[j] for j in range(nvars) if inverse.columns[j] >> i & 1))
        self.memo: dict[int, frozenset[int]] = {0: frozenset([0])}

    def image(self, exps: tuple[int, ...]) -> frozenset[int]:
        key = sum(e << s for e, s in zip(exps, self.shift))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        k = next(i for i, e in enumerate(exps) if e)
        lower = list(exps)
        lower[k] -= 1
        base = self.image(tuple(lower))
        out: set[int] = set()
        for a in base:
            for b in self.linear[k]:
                out ^= {a + b}
        result = frozenset(out)
        self.memo[key] = result
        return result


def invariant_dimensions(group: Group, max_degree: int) -> list[int]:
    """Dimensions of the fixed subspaces of S_d for d = 0..max_degree."""
    if max_degree > DEFAULT_DEGREE_BOUND:
        raise DegreeTooLarge(f"degree {max_degree} exceeds the bound {DEFAULT_DEGREE_BOUND}")
    nvars = group.dim
    caches = [_ImageCache(g, nvars) for g in group.generators]
    dims = []
    for degree in range(max_degree + 1):
        basis = _monomials_of_degree(nvars, degree)
        dims.append(_fixed_dimension(caches, basis))
    return dims


def invariant_dimension(group: Group, degree: int) -> int:
    if degree > DEFAULT_DEGREE_BOUND:
        raise DegreeTooLarge(f"degree {degree} exceeds the bound {DEFAULT_DEGREE_BOUND}")
    caches = [_ImageCache(g, group.dim) for g in group.generators]
    return _fixed_dimension(caches, _monomials_of_degree(group.dim, degree))


def _fixed_dimension(caches: list[_ImageCache], basis: list[tuple[int, ...]]) -> int:
    size = len(basis)
    if not caches:
        return size
    shift = caches[0].shift
    index = {sum(e << s for e, s in zip(exps, shift)): k for k, exps in enumerate(basis)}

    def column_block(cache: _ImageCache) -> list[int]:
        block = []
        for k, exps in enumerate(basis):
            vec = 0
            for m in cache.image(exps):
                vec ^= 1 << index[m]
            block.append(vec ^ (1 << k))
        return block

    workers = min(thread_count(), len(caches))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            blocks = list(pool.map(column_block, caches))
    else:
        blocks = [column_block(c) for c in caches]
    # column k of the stacked matrix (g_1 - 1; g_2 - 1; ...) applied to basis vector k
    echelon = GF2Basis()
    for k in range(size):
        vec = 0
        for r, block in enumerate(blocks):
            vec |= block[k] << (r * size)
        echelon.add(vec)
    return size - len(echelon)
