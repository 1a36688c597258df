import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invforge import invariants as inv
from invforge.polyring import (
    CoefficientOutOfRange, NotASquare, NotDivisible, OddSize, PolyMatrix, PolySyntaxError, Polynomial,
    Ring, SizeLimitExceeded, UnknownVariable, VariableTable, determinant, divide_exact, partial_derivative,
    pfaffian, poly_arith, poly_parse, poly_to_string, sqrt_exact, substitute,
)
from invforge.quadforms import s_table

from strategies import SMALL, polynomials

LAWS = settings(max_examples=1000)


def A(n=2):
    return inv.abstract_table(n)


def parse(text, table=None, ring=Ring.F2):
    return poly_parse(text, table or A(), ring)


# parsing and printing


def test_parse_lambda4_has_three_terms():
    p = parse("xi1^5+xi2^3+xi1^2*xi3")
    assert len(p) == 3
    assert poly_to_string(p) == "xi1^5+xi2^3+xi1^2*xi3"


def test_zero_parses_to_empty():
    p = parse("0")
    assert p.is_zero() and len(p) == 0
    assert poly_to_string(p) == "0"


def test_xi1_in_coordinates_at_n1():
    S = s_table(1)
    assert poly_parse("x1^2*x2+x1*x2^2", S) == inv.xi_sequence(1).xi[1]


def test_printing_sorts_by_weighted_degree_then_grevlex():
    p = parse("xi1^2*xi3+xi2^3+xi1^5")
    assert p.to_string() == "xi1^5+xi2^3+xi1^2*xi3"


def test_z4_coefficients_print_without_star():
    p = poly_parse("2X+3xi1+1", A(1), Ring.Z4)
    assert p.to_string() == "3xi1+2X+1"
    assert poly_parse(p.to_string(), A(1), Ring.Z4) == p


@pytest.mark.parametrize("text, error", [
    ("xi1+", PolySyntaxError),
    ("xi1^", PolySyntaxError),
    ("xi1 xi2", PolySyntaxError),
    ("y7", UnknownVariable),
    ("2xi1", CoefficientOutOfRange),
])
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse(text)


def test_syntax_error_reports_position():
    with pytest.raises(PolySyntaxError) as info:
        parse("xi1+*xi2")
    assert info.value.position == 4


# arithmetic


def test_add_is_symmetric_difference():
    x1 = parse("x1", SMALL)
    assert (x1 + x1).is_zero()


def test_omega_minus_times_omega_plus_is_omega2():
    T = A(1)
    product = poly_arith("mul", parse("xi1*X+xi2", T), parse("xi1*X^3+xi2*X^2+xi1^3", T))
    assert product == parse("xi1^2*X^4+xi2^2*X^2+xi1^4*X+xi1^3*xi2", T)


def test_frobenius_is_additive():
    assert poly_arith("pow", parse("x1+x2", SMALL), 2) == parse("x1^2+x2^2", SMALL)


def test_mixing_tables_is_rejected():
    with pytest.raises(Exception):
        parse("xi1", A(1)) + parse("xi1", A(2))


@LAWS
@given(polynomials(), polynomials(), polynomials())
def test_f2_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Polynomial.zero(SMALL) == a
    assert a * Polynomial.one(SMALL) == a
    assert (a + b).square() == a.square() + b.square()


@LAWS
@given(polynomials(ring=Ring.Z4), polynomials(ring=Ring.Z4), polynomials(ring=Ring.Z4))
def test_z4_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Polynomial.zero(SMALL, Ring.Z4)
    assert (a + a + a + a).is_zero()


@LAWS
@given(polynomials(max_terms=8))
def test_round_trip_f2(p):
    assert poly_parse(poly_to_string(p), SMALL) == p


@LAWS
@given(polynomials(ring=Ring.Z4, max_terms=8))
def test_round_trip_z4(p):
    assert poly_parse(poly_to_string(p), SMALL, Ring.Z4) == p


@LAWS
@given(polynomials(max_terms=8))
def test_sqrt_of_square_is_identity(p):
    assert sqrt_exact(p.square()) == p


@settings(max_examples=300)
@given(polynomials(), polynomials().filter(bool))
def test_divide_exact_recovers_factor(a, b):
    assert divide_exact(a * b, b) == a


@settings(max_examples=300)
@given(polynomials(), polynomials(), polynomials(), polynomials())
def test_substitution_is_a_ring_homomorphism(a, b, u, v):
    binding = {"x1": u, "x2": v}
    assert substitute(a * b, binding) == substitute(a, binding) * substitute(b, binding)
    assert substitute(a + b, binding) == substitute(a, binding) + substitute(b, binding)


def test_substitute_identity_bindings():
    p = parse("xi1^5+xi2^3+xi1^2*xi3")
    assert substitute(p, {"xi1": parse("xi1")}) == p


def test_omega2_vanishes_at_xi0_plus_x0_squared():
    n = 1
    S = s_table(n)
    ctx = inv.xi_sequence(n)
    binding = {f"xi{i}": ctx.xi[i] for i in range(3)}
    binding["X"] = ctx.xi[0] + Polynomial.variable(S, "x0").square()
    assert substitute(inv.omega(1), binding, S).is_zero()


def test_lambda4_maps_to_c0():
    assert inv.to_s(parse("xi1^5+xi2^3+xi1^2*xi3"), 2) == inv.dickson(2).c[0]


# calculus, roots and division


def test_partial_derivatives():
    S = s_table(1)
    assert partial_derivative(poly_parse("x1^2", S), "x1").is_zero()
    assert partial_derivative(poly_parse("x1*x2", S), "x1") == poly_parse("x2", S)
    assert partial_derivative(inv.xi_sequence(1).xi[1], "x1") == poly_parse("x2^2", S)


def test_sqrt_examples():
    assert sqrt_exact(parse("x1^2*x2^4", SMALL)) == parse("x1*x2^2", SMALL)
    lam = parse("xi1^5+xi2^3+xi1^2*xi3")
    assert len(lam.square()) == 3
    assert sqrt_exact(lam.square()) == lam
    with pytest.raises(NotASquare):
        sqrt_exact(parse("x1*x2", SMALL))


def test_divide_examples():
    T = A(1)
    assert divide_exact(parse("xi1*X+xi1*xi2", T), parse("xi1", T)) == parse("X+xi2", T)
    omega2 = parse("xi1^2*X^4+xi2^2*X^2+xi1^4*X+xi1^3*xi2", T)
    assert divide_exact(omega2, parse("xi1*X+xi2", T)) == parse("xi1*X^3+xi2*X^2+xi1^3", T)
    with pytest.raises(NotDivisible):
        divide_exact(parse("x1", SMALL), parse("x2", SMALL))


def test_halve_rejects_odd_coefficients():
    with pytest.raises(ValueError):
        poly_parse("2xi1+X", A(1), Ring.Z4).halve()
    assert poly_parse("2xi1+2X", A(1), Ring.Z4).halve() == parse("xi1+X", A(1))


# determinants and Pfaffians


def test_vandermonde_type_determinant_is_c0():
    S = s_table(1)
    m = PolyMatrix.from_rows([[poly_parse("x1", S), poly_parse("x2", S)],
                              [poly_parse("x1^2", S), poly_parse("x2^2", S)]])
    assert determinant(m) == poly_parse("x1*x2^2+x1^2*x2", S) == inv.dickson(1).c[0]


def test_identity_determinant():
    assert determinant(PolyMatrix.identity(5, SMALL)) == Polynomial.one(SMALL)


def test_h2_determinant_over_z4():
    det = determinant(inv.omega_matrix(1))
    expected = poly_parse("2xi1^2*X^4+2xi2^2*X^2+2xi1^4*X+2xi1^3*xi2", A(1), Ring.Z4)
    assert det == expected


def test_pfaffian_examples():
    a = parse("x1", SMALL)
    zero = Polynomial.zero(SMALL)
    assert pfaffian(PolyMatrix.from_rows([[zero, a], [a, zero]])) == a
    assert pfaffian(inv.xi_matrix(2, 4)) == parse("xi1^5+xi2^3+xi1^2*xi3")
    assert len(pfaffian(inv.xi_matrix(4, 8))) == 105


def test_size_limits():
    with pytest.raises(SizeLimitExceeded):
        determinant(PolyMatrix.identity(11, SMALL))
    with pytest.raises(OddSize):
        pfaffian(PolyMatrix.identity(3, SMALL).map(lambda p: Polynomial.zero(SMALL)))


@pytest.mark.parametrize("size", [2, 4, 6, 8])
def test_pfaffian_squared_is_determinant_for_xi_matrices(size):
    m = inv.xi_matrix(4, size)
    assert pfaffian(m).square() == determinant(m)


@settings(max_examples=60)
@given(st.lists(polynomials(max_terms=3), min_size=6, max_size=6))
def test_pfaffian_squared_is_determinant_random_4x4(entries):
    zero = Polynomial.zero(SMALL)
    rows = [[zero] * 4 for _ in range(4)]
    k = 0
    for i in range(4):
        for j in range(i + 1, 4):
            rows[i][j] = rows[j][i] = entries[k]
            k += 1
    m = PolyMatrix.from_rows(rows, SMALL, Ring.F2)
    assert pfaffian(m).square() == determinant(m)


def test_variable_table_rejects_duplicates():
    with pytest.raises(ValueError):
        VariableTable([("x", 1), ("x", 1)])
