"""Canonical text files for the small explicit polynomials, and their checker.

Every entry computes a polynomial, prints it in canonical form and compares
the text byte for byte with a file under the ``golden`` directory that ships
with the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from . import invariants as inv
from .polyring import Polynomial, VariableTable

GOLDEN_DIR = Path(__file__).with_name("golden")


class GoldenMismatch(AssertionError):
    def __init__(self, files: list[str]):
        self.files = files
        super().__init__("golden files differ: " + ", ".join(files))


@dataclass(frozen=True)
class Golden:
    path: str
    compute: Callable[[], Polynomial]

    def text(self) -> str:
        return self.compute().to_string() + "\n"


def _symbols(table: VariableTable, names: Iterable[str]) -> VariableTable:
    return VariableTable([(name, table.weight(name)) for name in names])


@lru_cache(maxsize=None)
def sp_table(n: int) -> VariableTable:
    """xi1..xi_{2n-1}, c_n..c_{2n-1} and X: the symplectic generators."""
    names = [f"xi{i}" for i in range(1, 2 * n)] + [f"c{j}" for j in range(n, 2 * n)] + ["X"]
    return _symbols(inv.abstract_table(n), names)


def _orthogonal_xis(n: int) -> range:
    return range(max(2 * n - 1, 2))


@lru_cache(maxsize=None)
def orthogonal_table(n: int) -> VariableTable:
    """xi0..xi_{2n-2}, d_n..d_{2n-1} and t; at n = 1 xi1 is needed too."""
    names = [f"xi{i}" for i in _orthogonal_xis(n)] + [f"d{j}" for j in range(n, 2 * n)] + ["t"]
    return _symbols(inv.abstract_table(n), names)


def _sp_generators(n: int) -> dict[str, Polynomial]:
    gens = inv.xi_generators(n, range(1, 2 * n))
    c = inv.dickson(n).c
    gens.update({f"c{j}": c[j] for j in range(n, 2 * n)})
    return gens


def _orthogonal_generators(n: int) -> dict[str, Polynomial]:
    gens = inv.xi_generators(n, _orthogonal_xis(n))
    ch = inv.chern(n)
    gens.update({f"d{j}": ch.dj(j) for j in range(n, 2 * n)})
    return gens


def in_sp_generators(p: Polynomial, n: int) -> Polynomial:
    """Rewrite an element of S (possibly involving X) in the symplectic generators.

    The single relation at n = 2 is quadratic in xi3, so expressions are
    normalised to be at most linear in xi_{2n-1} there.
    """
    target = sp_table(n)
    linear = [[f"xi{2 * n - 1}"]] if n >= 2 else []
    return _by_coefficients(p, "X", _sp_generators(n), target, linear)


def in_orthogonal_generators(p: Polynomial, n: int) -> Polynomial:
    """Rewrite an element of S (possibly involving t) in xi0..xi_{2n-2} and the d's."""
    return _by_coefficients(p, "t", _orthogonal_generators(n), orthogonal_table(n), [])


def _by_coefficients(p, var, gens, target, linear) -> Polynomial:
    acc = Polynomial.zero(target)
    for k, coeff in p.coefficients(var).items():
        acc = acc + inv.express_in_xi(coeff, gens, target, linear) * Polynomial.variable(target, var) ** k
    return acc


def _n1_s(name: str) -> Callable[[], Polynomial]:
    def compute() -> Polynomial:
        if name == "c1":
            return inv.dickson(1).c[1]
        if name == "d1":
            return inv.chern(1).dj(1)
        return inv.xi_sequence(1).xi[0]
    return compute


def _sp_relation(n: int) -> Polynomial:
    system = inv.relation_system(n, "sp")
    (relator,) = system.relators
    return relator.embed(sp_table(n))


def _solve_top_xi(n: int) -> Polynomial:
    """xi_{2n} in the symplectic generators."""
    return in_sp_generators(inv.xi_sequence(n).xi[2 * n], n)


def _entries() -> list[Golden]:
    out = []
    for n in (1, 2, 3):
        out.append(Golden(f"lambda/L{2 * n}.txt", lambda n=n: inv.lambda_(n)))
    for n in (1, 2, 3):
        low = 0 if n <= 2 else 1
        for i in range(2 * n - 1, low - 1, -1):
            out.append(Golden(f"lambda_i/L{2 * n}_{i}.txt", lambda n=n, i=i: inv.lambda_i(n, i)))
    for n in (1, 2):
        out.append(Golden(f"omega/omega{2 * n}.txt", lambda n=n: inv.omega(n)))
        for sign, word in (("+", "plus"), ("-", "minus")):
            out.append(Golden(f"omega/omega{2 * n}_{word}.txt", lambda n=n, s=sign: inv.omega_pm(n, s).omega))
    for sign, word in (("+", "plus"), ("-", "minus")):
        for ell in range(3):
            out.append(Golden(f"alpha/alpha{ell}_{word}.txt",
                              lambda ell=ell, s=sign: inv.omega_pm(2, s).alphas[ell]))
    for n in (1, 2):
        for sign, word in (("+", "plus"), ("-", "minus")):
            out.append(Golden(f"chern/n{n}_Q_{word}.txt",
                              lambda n=n, s=sign: in_sp_generators(inv.chern(n).Q(s), n)))
            out.append(Golden(f"chern/n{n}_P_{word}.txt",
                              lambda n=n, s=sign: in_orthogonal_generators(inv.chern(n).P(s), n)))
    for name in ("c1", "d1", "xi0"):
        out.append(Golden(f"relations/n1_{name}.txt", _n1_s(name)))
    out.append(Golden("relations/n1_c0.txt", lambda: in_sp_generators(inv.dickson(1).c[0], 1)))
    out.append(Golden("relations/n2_sp_relation.txt", lambda: _sp_relation(2)))
    for j in (1, 0):
        out.append(Golden(f"relations/n2_c{j}.txt", lambda j=j: in_sp_generators(inv.dickson(2).c[j], 2)))
    out.append(Golden("relations/n2_xi4.txt", lambda: _solve_top_xi(2)))
    for j in (3, 2):
        out.append(Golden(f"relations/n2_c{j}.txt",
                          lambda j=j: in_orthogonal_generators(inv.dickson(2).c[j], 2)))
    out.append(Golden("relations/n2_xi3.txt",
                      lambda: in_orthogonal_generators(inv.xi_sequence(2).xi[3], 2)))
    return out


GOLDENS: tuple[Golden, ...] = tuple(_entries())


def golden_paths() -> list[str]:
    return [g.path for g in GOLDENS]


def read_golden(path: str, directory: Path | None = None) -> str:
    return ((directory or GOLDEN_DIR) / path).read_text()


def check(directory: Path | None = None) -> list[str]:
    """Paths that were compared; raises GoldenMismatch listing every failure."""
    directory = Path(directory or GOLDEN_DIR)
    bad = []
    for g in GOLDENS:
        file = directory / g.path
        if not file.is_file() or file.read_bytes() != g.text().encode():
            bad.append(g.path)
    if bad:
        raise GoldenMismatch(bad)
    return [g.path for g in GOLDENS]


def regenerate(directory: Path | None = None) -> dict[str, str]:
    """Rewrite every file; returns path -> 'unchanged' | 'changed' | 'created'."""
    directory = Path(directory or GOLDEN_DIR)
    stat = {}
    for g in GOLDENS:
        file = directory / g.path
        text = g.text()
        if not file.is_file():
            stat[g.path] = "created"
        elif file.read_text() != text:
            stat[g.path] = "changed"
        else:
            stat[g.path] = "unchanged"
        file.parent.mkdir(parents=True, exist_ok=True)
        file.write_text(text)
    return stat

