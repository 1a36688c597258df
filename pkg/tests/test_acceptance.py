"""Acceptance criteria 1-8, one test each.

Every test prints a single ``PASS criterion k: ...`` or ``FAIL criterion k: ...``
line straight to the terminal, with the wall time it took.
"""

import time
from contextlib import contextmanager
from math import factorial

import pytest

import test_goldens as golden_cases
import test_polyring as polyring_props
import test_steenrod as steenrod_props
from invforge import goldens
from invforge import groupenum as ge
from invforge import hilbert
from invforge import invariants as inv
from invforge.polyring import determinant, poly_parse
from invforge.quadforms import SpaceKind, enumerate_families, standard_space

TITLES = {
    1: "golden files equal the reference polynomials byte for byte",
    2: "term counts of Lambda and sizes of A+-",
    3: "identity catalogue for n <= 2, gated identities at n = 3",
    4: "relation systems at n = 2",
    5: "group orders and transvection counts",
    6: "Hilbert series against fixed-space dimensions",
    7: "randomised property suites",
    8: "Omega6+- consistency under allow_slow",
}
KINDS = ("sp", "o-odd", "o-plus", "o-minus")


@contextmanager
def criterion(k, capsys, budget=None):
    start = time.perf_counter()
    line = f"FAIL criterion {k}: {TITLES[k]}"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
        line = f"PASS criterion {k}: {TITLES[k]}"
    finally:
        with capsys.disabled():
            print(f"\n{line} ({time.perf_counter() - start:.1f}s)")


def test_criterion_1_goldens(capsys):
    with criterion(1, capsys, budget=30):
        assert goldens.check() == goldens.golden_paths()
        golden_cases.test_reference_lambdas_cover_every_lambda_golden()
        for key in golden_cases.REFERENCE_LAMBDAS:
            golden_cases.test_lambda_goldens_match_reference(key)
        golden_cases.test_reference_l6_has_fifteen_terms()
        golden_cases.test_omega2_goldens()
        golden_cases.test_omega4_goldens()
        for name in golden_cases.ALPHAS:
            golden_cases.test_alpha_goldens(name)
        golden_cases.test_chern_goldens_n1()
        golden_cases.test_chern_goldens_n2()
        golden_cases.test_relation_goldens_n1()
        golden_cases.test_symplectic_relation_goldens_n2()
        golden_cases.test_orthogonal_relation_goldens_n2()


def test_criterion_2_counting(capsys):
    with criterion(2, capsys):
        assert len(inv.lambda_(4)) == 105
        for n in range(1, 5):
            by_matchings = inv.lambda_(n, "matchings")
            assert len(by_matchings) == factorial(2 * n) // (2 ** n * factorial(n))
            assert by_matchings == inv.lambda_(n, "pfaffian")
        for n in range(1, 4):
            fam = enumerate_families(standard_space(n, SpaceKind.ODD_NONSINGULAR))
            assert len(fam.a_minus) == 2 ** (2 * n - 1) - 2 ** (n - 1)
            assert len(fam.a_plus) == 2 ** (2 * n - 1) + 2 ** (n - 1)


CATALOGUE = ("omega-cube", "p-squared", "nice-formulae", "caroline", "carolinex", "omega-vanishing",
             "lambda-sq-in-S", "omega-c0sq-Q", "mis1-restriction", "middle-of-omega", "squarexi", "wu-dickson")


def test_criterion_3_identities(capsys):
    with criterion(3, capsys):
        assert set(CATALOGUE) <= set(inv.identity_names())
        start = time.perf_counter()
        failed = []
        for name in inv.identity_names():
            for n in range(inv.IDENTITIES[name].low, 3):
                report = inv.verify_identity(name, n)
                assert report.checks > 0, (name, n)
                if not report.passed:
                    failed.append(report.summary())
        assert time.perf_counter() - start < 180
        for name in inv.identity_names():
            if inv.IDENTITIES[name].slow >= 3:
                report = inv.verify_identity(name, 3, allow_slow=True)
                if not report.passed:
                    failed.append(report.summary())
        assert failed == []


def test_criterion_4_relation_systems(capsys):
    with criterion(4, capsys):
        A = inv.abstract_table(2)
        xi0 = poly_parse("xi0", A)
        dets = {}
        for kind in KINDS:
            system = inv.relation_system(2, kind)
            for label, claim in system.claimed_dets.items():
                assert determinant(system.matrices[label]) == claim, (kind, label)
            space = {"sp": "odd", "o-odd": "odd", "o-plus": "even_plus", "o-minus": "even_minus"}[kind]
            for relator in system.relators:
                assert inv.to_s(relator, 2, space).is_zero(), kind
            if system.defining is not None:
                assert inv.to_s(system.defining, 2, space).is_zero(), kind
            dets[kind] = system.claimed_dets
        assert dets["sp"]["LK+R"] == inv.lambda_(2)
        assert dets["o-odd"]["S"] == inv.lambda_(1).embed(A)
        omega2 = {s: inv.omega_pm(1, s).omega.embed(A) for s in "+-"}
        assert dets["o-odd"]["T"] == omega2["-"].substitute({"X": xi0}, A)
        assert dets["o-plus"]["M"] == omega2["+"].substitute({"X": xi0}, A)
        f = inv.plus_constant_term(2)
        assert f[0] == poly_parse("xi0^2", A)
        assert f[1].set_zero(["xi0"]) == poly_parse("xi1^2", A)
        (relator,) = inv.relation_system(2, "sp").relators
        assert relator == poly_parse("xi1^2*c2+xi2^2*c3+xi1^3*xi3+xi1*xi2^3+xi3^2+xi1^6", A)
        defining = inv.relation_system(2, "o-odd").defining
        assert defining == poly_parse("xi3+xi1*d2+xi2*d3+xi1*xi0*d3+xi2*xi0^2+xi1^3", A)


ORDERS = {1: (6, 6, 2, 6), 2: (720, 720, 72, 120)}
TRANSVECTIONS = {1: (3, 3, 1, 3), 2: (15, 15, 6, 10)}


def test_criterion_5_group_statistics(capsys):
    with criterion(5, capsys, budget=60):
        for n in (1, 2):
            for kind, order, count in zip(KINDS, ORDERS[n], TRANSVECTIONS[n]):
                group = ge.standard_group(n, kind)
                total, _ = ge.count_transvections(group)
                assert group.order == ge.order_formula(kind, n) == order
                assert total == ge.transvection_formula(kind, n) == count
                assert hilbert.laurent_leading(hilbert.series_for_group(n, kind)) == (order, count)


def test_criterion_6_hilbert_oracle(capsys):
    with criterion(6, capsys, budget=300):
        for n in (1, 2):
            for kind in KINDS:
                expected = ge.invariant_dimensions(ge.standard_group(n, kind), 12)
                assert hilbert.expand_coeffs(hilbert.series_for_group(n, kind), 12) == expected, (n, kind)


def test_criterion_7_properties(capsys):
    with criterion(7, capsys, budget=120):
        polyring_props.test_f2_ring_laws()
        polyring_props.test_z4_ring_laws()
        polyring_props.test_round_trip_f2()
        polyring_props.test_round_trip_z4()
        polyring_props.test_sqrt_of_square_is_identity()
        steenrod_props.test_cartan_formula()
        steenrod_props.test_wu_formula_on_subsets_of_dual_space()
        for size in (2, 4, 6, 8):
            polyring_props.test_pfaffian_squared_is_determinant_for_xi_matrices(size)
        polyring_props.test_pfaffian_squared_is_determinant_random_4x4()


def test_criterion_8_omega6(capsys, monkeypatch):
    with criterion(8, capsys):
        assert not any("omega6" in path or "L8" in path for path in goldens.golden_paths())
        monkeypatch.delenv("INVFORGE_ALLOW_SLOW", raising=False)
        with pytest.raises(inv.SlowPathRequired):
            inv.omega_pm(3, "+")
        plus = inv.omega_pm(3, "+", allow_slow=True).omega
        minus = inv.omega_pm(3, "-", allow_slow=True).omega
        assert (plus.degree(), minus.degree()) == (135, 119)
        assert plus * minus == inv.omega(3, allow_slow=True)
        report = inv.verify_identity("omega-leading-terms", 3, allow_slow=True)
        assert report.passed, report.failures
