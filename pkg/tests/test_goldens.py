"""Golden files compared with independently typed reference formulas.

The expected values below are typed highest index first, as they are
conventionally written, then parsed and rendered canonically, so these
tests also exercise the parser and the canonical printer.
"""

import shutil

import pytest

from invforge import goldens as G
from invforge import invariants as inv
from invforge.polyring import Polynomial, poly_parse
from invforge.quadforms import s_table

REFERENCE_LAMBDAS = {
    "L2": "xi1",
    "L2_1": "xi2",
    "L2_0": "xi1^2",
    "L4": "xi3*xi1^2+xi2^3+xi1^5",
    "L4_3": "xi4*xi1^2+xi3^2*xi2+xi2^4*xi1",
    "L4_2": "xi4*xi2^2+xi3^3+xi1^9",
    "L4_1": "xi4*xi1^4+xi3*xi2^4+xi2*xi1^8",
    "L4_0": "xi3^2*xi1^4+xi2^6+xi1^10",
    "L6": "xi5*xi3^2*xi1^4+xi5*xi2^6+xi5*xi1^10+xi4^3*xi1^4+xi4^2*xi3*xi2^4+xi4^2*xi2*xi1^8+xi4*xi3^4*xi2^2+xi4*xi2^8*xi1^2+xi3^7+xi3^4*xi1^9+xi3^2*xi2^9+xi3*xi1^18+xi2^12*xi1+xi2^3*xi1^16+xi1^21",
    "L6_5": "xi6*xi3^2*xi1^4+xi6*xi2^6+xi6*xi1^10+xi5^2*xi4*xi1^4+xi5^2*xi3*xi2^4+xi5^2*xi2*xi1^8+xi4^5*xi2^2+xi4^4*xi3^3+xi4^4*xi1^9+xi4*xi3^8*xi1^2+xi3^10*xi2+xi3^8*xi2^4*xi1+xi3*xi2^16*xi1^2+xi2^19+xi2^16*xi1^5",
    "L6_4": "xi6*xi4^2*xi1^4+xi6*xi3^4*xi2^2+xi6*xi2^8*xi1^2+xi5^3*xi1^4+xi5^2*xi3^5+xi5^2*xi2^9+xi5*xi4^4*xi2^2+xi5*xi3^8*xi1^2+xi4^6*xi3+xi4^4*xi2^8*xi1+xi4^2*xi3^8*xi2+xi3^12*xi1+xi3*xi1^34+xi2^3*xi1^32+xi1^37",
    "L6_3": "xi6*xi4^2*xi2^4+xi6*xi3^6+xi6*xi1^18+xi5^3*xi2^4+xi5^2*xi4*xi3^4+xi5^2*xi2*xi1^16+xi5*xi4^4*xi3^2+xi5*xi2^16*xi1^2+xi4^7+xi4^4*xi1^17+xi4^2*xi2^17+xi4*xi1^34+xi3^4*xi2^16*xi1+xi3^2*xi2*xi1^32+xi2^4*xi1^33",
    "L6_2": "xi6*xi4^2*xi1^8+xi6*xi3^2*xi2^8+xi6*xi2^2*xi1^16+xi5^3*xi1^8+xi5^2*xi4*xi2^8+xi5^2*xi3*xi1^16+xi5*xi3^10+xi5*xi2^18+xi4^3*xi3^8+xi4^2*xi3*xi2^16+xi4*xi2^2*xi1^32+xi3^8*xi1^17+xi3^3*xi1^32+xi2^24*xi1+xi1^41",
    "L6_1": "xi6*xi3^4*xi1^8+xi6*xi2^12+xi6*xi1^20+xi5*xi4^4*xi1^8+xi5*xi3^8*xi2^4+xi5*xi2^16*xi1^4+xi4^5*xi2^8+xi4^4*xi3*xi1^16+xi4*xi3^12+xi4*xi1^36+xi3^8*xi2*xi1^16+xi3^5*xi2^16+xi3*xi2^4*xi1^32+xi2^25+xi2*xi1^40",
}


def _render(p: Polynomial) -> str:
    return p.to_string() + "\n"


def _names(table):
    return {name: Polynomial.variable(table, name) for name in table.names}


def A(text, n):
    return poly_parse(text, inv.abstract_table(n))


def _lambda_path(key):
    return f"lambda/{key}.txt" if "_" not in key else f"lambda_i/{key}.txt"


def test_reference_lambdas_cover_every_lambda_golden():
    on_disk = {p for p in G.golden_paths() if p.startswith("lambda")}
    assert on_disk == {_lambda_path(k) for k in REFERENCE_LAMBDAS}
    assert len(REFERENCE_LAMBDAS) == 14


@pytest.mark.parametrize("key", sorted(REFERENCE_LAMBDAS))
def test_lambda_goldens_match_reference(key):
    n = int(key[1]) // 2
    assert _render(A(REFERENCE_LAMBDAS[key], n)) == G.read_golden(_lambda_path(key))


def test_reference_l6_has_fifteen_terms():
    # (2n)! / (2^n n!) terms for n = 3
    assert len(A(REFERENCE_LAMBDAS["L6"], 3)) == 15


def _lam(key, n=2):
    return A(REFERENCE_LAMBDAS[key], n)


def test_omega2_goldens():
    assert _render(A("xi1^2*X^4+xi2^2*X^2+xi1^4*X+xi1^3*xi2", 1)) == G.read_golden("omega/omega2.txt")
    assert _render(A("xi1*X^3+xi2*X^2+xi1^3", 1)) == G.read_golden("omega/omega2_plus.txt")
    assert _render(A("xi1*X+xi2", 1)) == G.read_golden("omega/omega2_minus.txt")


def _omega4_parts():
    v = _names(inv.abstract_table(2))
    xi1, xi2, xi3, X = v["xi1"], v["xi2"], v["xi3"], v["X"]
    L4, L43, L42, L41 = _lam("L4"), _lam("L4_3"), _lam("L4_2"), _lam("L4_1")
    plus_const = xi1**4 * L43 + (xi2**4 + xi2 * xi1**5) * L4
    minus_const = L42 + xi1 * xi3 * L4
    plus = (L4 * X**10 + xi1**2 * L4 * X**7 + (L43 + xi1 * xi2 * L4) * X**6 + xi2**2 * L4 * X**5
            + (L42 + (xi1 * xi3 + xi1**4) * L4) * X**4 + xi2**2 * xi1**2 * L4 * X**2
            + xi1**6 * L4 * X + plus_const)
    minus = (L4 * X**6 + xi1**2 * L4 * X**3 + (L43 + xi1 * xi2 * L4) * X**2 + xi2**2 * L4 * X
             + minus_const)
    whole = (L4**2 * X**16 + L43**2 * X**8 + L42**2 * X**4 + L41**2 * X**2 + L4**4 * X
             + plus_const * minus_const)
    return whole, plus, minus


def test_omega4_goldens():
    whole, plus, minus = _omega4_parts()
    assert _render(whole) == G.read_golden("omega/omega4.txt")
    assert _render(plus) == G.read_golden("omega/omega4_plus.txt")
    assert _render(minus) == G.read_golden("omega/omega4_minus.txt")
    assert whole == plus * minus


ALPHAS = {
    "alpha0_plus": "X",
    "alpha1_plus": "X^3+xi1^2",
    "alpha2_plus": "X^10+xi1^2*X^7+xi2*xi1*X^6+xi2^2*X^5+xi3*xi1*X^4+xi1^4*X^4+xi2^2*xi1^2*X^2"
                   "+xi1^6*X+xi2^4+xi2*xi1^5",
    "alpha0_minus": "1",
    "alpha1_minus": "X",
    "alpha2_minus": "X^6+xi1^2*X^3+xi2*xi1*X^2+xi2^2*X+xi3*xi1",
}


@pytest.mark.parametrize("name", sorted(ALPHAS))
def test_alpha_goldens(name):
    assert _render(A(ALPHAS[name], 2)) == G.read_golden(f"alpha/{name}.txt")


def test_chern_goldens_n1():
    sp, orth = G.sp_table(1), G.orthogonal_table(1)
    assert _render(poly_parse("X^3+c1*X^2+xi1^2", sp)) == G.read_golden("chern/n1_Q_plus.txt")
    assert _render(poly_parse("X+c1", sp)) == G.read_golden("chern/n1_Q_minus.txt")
    assert _render(poly_parse("t^3+d1*t^2+xi0*t+xi0*d1+xi1", orth)) == G.read_golden("chern/n1_P_plus.txt")
    assert _render(poly_parse("t+d1", orth)) == G.read_golden("chern/n1_P_minus.txt")


def test_chern_goldens_n2():
    sp, orth = G.sp_table(2), G.orthogonal_table(2)
    q_plus = ("X^10+xi1^2*X^7+c3*X^6+xi1*xi2*X^6+xi2^2*X^5+c2*X^4+xi1*xi3*X^4+xi1^4*X^4"
              "+xi1^2*xi2^2*X^2+xi1^6*X+xi1^4*c3+xi1^5*xi2+xi2^4")
    q_minus = "X^6+xi1^2*X^3+c3*X^2+xi1*xi2*X^2+xi2^2*X+c2+xi1*xi3"
    p_minus = "t^6+xi0*t^4+xi1*t^3+d3*t^2+xi2*t+xi1*xi0*t+d2"
    p_plus = ("t^10+xi0*t^8+xi1*t^7+d3*t^6+xi0^2*t^6+xi2*t^5+xi1*xi0*t^5+d2*t^4+xi1^2*t^4+xi0^3*t^4"
              "+xi1*xi0^2*t^3+xi0^2*d3*t^2+xi2*xi1*t^2+xi2*xi0^2*t+xi1*xi0^3*t+xi1^3*t"
              "+xi0^2*d2+xi1^2*d3+xi2^2+xi2*xi1*xi0")
    assert _render(poly_parse(q_plus, sp)) == G.read_golden("chern/n2_Q_plus.txt")
    assert _render(poly_parse(q_minus, sp)) == G.read_golden("chern/n2_Q_minus.txt")
    assert _render(poly_parse(p_plus, orth)) == G.read_golden("chern/n2_P_plus.txt")
    assert _render(poly_parse(p_minus, orth)) == G.read_golden("chern/n2_P_minus.txt")


def test_relation_goldens_n1():
    S = s_table(1)
    assert _render(poly_parse("x1^2+x1*x2+x2^2", S)) == G.read_golden("relations/n1_c1.txt")
    assert _render(poly_parse("x0+x1+x2", S)) == G.read_golden("relations/n1_d1.txt")
    assert _render(poly_parse("x0^2+x1*x2", S)) == G.read_golden("relations/n1_xi0.txt")
    assert _render(poly_parse("xi1", G.sp_table(1))) == G.read_golden("relations/n1_c0.txt")


def test_symplectic_relation_goldens_n2():
    sp = G.sp_table(2)
    relation = "xi1^2*c2+xi2^2*c3+xi1^3*xi3+xi1*xi2^3+xi3^2+xi1^6"
    assert _render(poly_parse(relation, sp)) == G.read_golden("relations/n2_sp_relation.txt")
    assert _render(poly_parse("xi1^2*c3+xi3*xi2+xi2*xi1^3", sp)) == G.read_golden("relations/n2_c1.txt")
    assert _render(poly_parse(REFERENCE_LAMBDAS["L4"], sp)) == G.read_golden("relations/n2_c0.txt")
    xi4 = "xi3*c3+xi1^3*c3+xi2*c2+xi3*xi2*xi1+xi2*xi1^4"
    assert _render(poly_parse(xi4, sp)) == G.read_golden("relations/n2_xi4.txt")


def test_orthogonal_relation_goldens_n2():
    orth = G.orthogonal_table(2)
    xi3 = poly_parse("xi1*d2+xi2*d3+xi1*xi0*d3+xi2*xi0^2+xi1^3", orth)
    assert _render(xi3) == G.read_golden("relations/n2_xi3.txt")
    assert _render(poly_parse("d3^2+xi2*xi1+xi1^2*xi0+xi0^4", orth)) == G.read_golden("relations/n2_c3.txt")
    # this form of c2 still mentions xi3; eliminate it with the line above
    c2 = A("d2^2+xi0^2*d3^2+xi3*xi1+xi2^2*xi0", 2).substitute({"xi3": xi3}, orth)
    assert _render(c2) == G.read_golden("relations/n2_c2.txt")


def test_shipped_goldens_check_clean():
    assert G.check() == G.golden_paths()


def test_corrupted_golden_is_named(tmp_path):
    shutil.copytree(G.GOLDEN_DIR, tmp_path / "g")
    target = tmp_path / "g" / "lambda" / "L6.txt"
    data = bytearray(target.read_bytes())
    data[0] ^= 1
    target.write_bytes(bytes(data))
    with pytest.raises(G.GoldenMismatch) as info:
        G.check(tmp_path / "g")
    assert info.value.files == ["lambda/L6.txt"]


def test_missing_golden_is_reported(tmp_path):
    shutil.copytree(G.GOLDEN_DIR, tmp_path / "g")
    (tmp_path / "g" / "alpha" / "alpha2_plus.txt").unlink()
    with pytest.raises(G.GoldenMismatch) as info:
        G.check(tmp_path / "g")
    assert info.value.files == ["alpha/alpha2_plus.txt"]


def test_regenerate_is_idempotent(tmp_path):
    first = G.regenerate(tmp_path)
    assert set(first.values()) == {"created"}
    assert G.check(tmp_path) == G.golden_paths()
    assert set(G.regenerate(tmp_path).values()) == {"unchanged"}
    for path in G.golden_paths():
        assert (tmp_path / path).read_bytes() == (G.GOLDEN_DIR / path).read_bytes()
