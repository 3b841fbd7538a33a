from fractions import Fraction

import pytest

from twistbench.cyclotomic import RootOfUnity, cyc
from twistbench.classify import (
    DiscriminantWindow,
    coprime_twist_check,
    gauss_geometry_solve,
    hull_min_qform,
    metric_with_exact_twists,
    n5_candidate_dimensions,
    solve_three_twists,
    solve_two_twists,
    two_cos,
    two_twist_discriminant_window,
    witt_pointed_scan,
    zero_trace_obstruction,
)
from twistbench.fixtures import fibonacci, rank22_double_c2c2c2, fixtures
from twistbench.metricgroups import cyclic_group, enumerate_forms, metric_modular_data
from twistbench.moddata import product, validate
from twistbench.quadfield import quad

r = RootOfUnity
R1 = r(0, 1)
RM1 = r(1, 2)
RI = r(1, 4)
RMI = r(3, 4)


import math


def disc_float(N, x):
    """Floating-point oracle for the discriminant, regression only."""
    k = 2 * math.cos(2 * math.pi / N)
    return (k * x - 1) ** 2 - 4 * x * (x - 1)


class TestWindows:
    def test_window_n12_regression(self):
        w = two_twist_discriminant_window(12)
        # printed approximation 1.304 reproduced to three decimals
        assert Fraction(1303, 1000) < w.hi < Fraction(1304, 1000)
        assert w.integer_points == (1,)

    def test_window_n8_below_seven(self):
        w = two_twist_discriminant_window(8)
        assert w.hi < 7

    def test_window_n5_regression(self):
        w = two_twist_discriminant_window(5)
        assert Fraction(103, 100) < w.hi < Fraction(105, 100)

    def test_integral_windows(self):
        assert two_twist_discriminant_window(3).integer_points == (1, 2)
        assert two_twist_discriminant_window(4).integer_points == (1,)
        assert two_twist_discriminant_window(6).integer_points == (1,)

    def test_exact_membership_matches_float_oracle(self):
        for N in (3, 4, 5, 6, 8, 12, 16, 120):
            w = two_twist_discriminant_window(N)
            for x in (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(3)):
                exact = w.contains_exactly(x)
                approx = disc_float(N, float(x))
                if abs(approx) > 1e-9:
                    assert exact == (approx >= 0), (N, x)

    def test_outer_bound_is_outer(self):
        for N in (5, 8, 12, 120):
            w = two_twist_discriminant_window(N)
            # the true boundary is inside [0, hi]: just beyond hi must fail
            assert not w.contains_exactly(w.hi + Fraction(1, 100))

    def test_unsupported_n(self):
        with pytest.raises(ValueError):
            two_twist_discriminant_window(7)


@pytest.fixture(scope="module")
def two_twist_report():
    return solve_two_twists()


@pytest.fixture(scope="module")
def three_twist_report():
    return solve_three_twists()


class TestTwoTwists:
    @pytest.fixture
    def report(self, two_twist_report):
        return two_twist_report

    def test_rows(self, report):
        rows = [(x.family, x.count, x.N, x.fpdim) for x in report.rows]
        assert ("pointed_c2", 2, 4, "2") in rows
        assert ("pointed_c3", 2, 3, "3") in rows
        assert ("fibonacci", 4, 5, "(5+sqrt(5))/2") in rows
        assert len(rows) == 3

    def test_family_marker(self, report):
        assert [f.N for f in report.families] == [2]
        assert "2^(2m)" in report.families[0].description

    def test_emptiness_certificates(self, report):
        assert sorted(report.empties) == \
            [6, 8, 10, 12, 15, 16, 20, 24, 30, 40, 48, 60, 80, 120]
        for N, cert in report.empties.items():
            assert cert.recheck(), N

    def test_kappa_certificate_rejects_small_n(self):
        from twistbench.classify import UnitClassBelowOneCert

        assert not UnitClassBelowOneCert(5).recheck()
        assert not UnitClassBelowOneCert(6).recheck()
        assert UnitClassBelowOneCert(8).recheck()


class TestCoprime:
    def test_fibonacci_matches_two_twist_row(self):
        md = fibonacci(r(3, 10))
        tag = coprime_twist_check(md)
        assert tag.status == "two-twist"

    def test_rank22_not_applicable(self):
        tag = coprime_twist_check(rank22_double_c2c2c2())
        assert tag.status == "not-applicable"

    def test_product_not_applicable(self):
        c2 = metric_modular_data(enumerate_forms(cyclic_group(2))[0])
        c3 = metric_modular_data(enumerate_forms(cyclic_group(3))[0])
        tag = coprime_twist_check(product(c2, c3))
        assert tag.status == "not-applicable"

    def test_trivial(self):
        from twistbench.moddata import ModularData

        tag = coprime_twist_check(ModularData([[1]], [R1]))
        assert tag.status == "trivial"

    def test_never_three_coprime_on_fixtures(self):
        for name, md in fixtures().items():
            assert coprime_twist_check(md).status != "violation", name


class TestGeometry:
    def test_trivial_case(self):
        g = gauss_geometry_solve([R1], R1)
        assert g.consistent
        # single class: u[1] = a (i.e. D_1 = sqrt D, so D = 1)
        assert any("u[1] = 1*a" in rel or "u[1] = a" in rel for rel in g.relations)

    def test_four_torsion_xi_z8(self):
        g = gauss_geometry_solve([R1, RI, RMI], r(1, 8))
        assert g.consistent
        # D_1 = sqrt(D)/sqrt(2): u and v parts of the unit class tie to b, a/2
        assert "u[1] = 1*b" in g.relations
        assert "v[1] = 1/2*a" in g.relations

    def test_eight_torsion_xi_z8cubed(self):
        g = gauss_geometry_solve([R1, RM1, r(1, 8)], r(3, 8))
        # D_eta = sqrt(D) appears as u[z8] = a, v[z8] = b
        assert "u[z8] = 1*a" in g.relations
        assert "v[z8] = 1*b" in g.relations

    def test_inconsistent_geometry(self):
        # twists {1} with xi = zeta_4: tau_1 = D_1 real positive, never
        # purely imaginary: every class size is forced to zero
        g = gauss_geometry_solve([R1], RI)
        assert not g.consistent


class TestN5Machinery:
    def test_hull_min_pattern_a(self):
        z5 = r(1, 5)
        m = hull_min_qform({R1, z5, z5 ** 4})
        assert m == quad(5, Fraction(3, 8), Fraction(-1, 8))

    def test_candidates_pattern_a(self):
        z5 = r(1, 5)
        cands = n5_candidate_dimensions({R1, z5, z5 ** 4})
        vals = {str(c) for c in cands}
        assert "5" in vals
        assert "15/2 - 5/2*sqrt(5)" in vals      # golden product dimension
        assert "5/2 - 1/2*sqrt(5)" in vals       # two-twist dimension, later
        assert "15/2 + 5/2*sqrt(5)" not in vals  # above the hull bound


class TestN6Machinery:
    def test_no_vanishing_combo(self):
        z6 = r(1, 6)
        verdict, _ = zero_trace_obstruction([R1, z6, z6 ** 5])
        assert verdict == "no-vanishing-combo"

    def test_squared_trace_kill(self):
        verdict, _ = zero_trace_obstruction([R1, r(1, 3), r(5, 6)])
        assert verdict == "squared-trace"

    def test_open_for_four_torsion(self):
        verdict, _ = zero_trace_obstruction([R1, RI, RMI])
        assert verdict == "open"

    def test_witt_scan_shapes(self):
        z6 = r(1, 6)
        assert witt_pointed_scan({R1, RM1, z6}, RI) == []
        hits = witt_pointed_scan({R1, r(1, 3), z6}, RI)
        assert all(f2 is None for f2, _, _ in hits)


class TestThreeTwists:
    @pytest.fixture
    def report(self, three_twist_report):
        return three_twist_report

    def test_row_counts_in_order(self, report):
        assert [x.count for x in report.rows] == [1, 6, 8, 2, 2, 6, 1, 1]

    def test_per_n_counts(self, report):
        assert report.per_n_counts() == {4: 5, 5: 4, 6: 0, 7: 6, 8: 4, 16: 8}

    def test_family_marker_n3(self, report):
        assert [f.N for f in report.families] == [3]

    def test_n6_branches_empty(self, report):
        n6 = [b for b in report.branches if b.label.startswith("N=6")]
        assert len(n6) == 4
        assert all(b.outcome == "empty" for b in n6)

    def test_row_members_are_fixture_names(self, report):
        row = report.row("ising")
        assert len(row.members) == 8
        assert all(m.startswith("ising_") for m in row.members)

    def test_evidence_kinds_tagged(self, report):
        kinds = {e.kind for b in report.branches for e in b.evidence}
        assert kinds <= {"exact", "cited", "scan"}
        assert "exact" in kinds and "cited" in kinds


class TestScans:
    def test_metric_exact_twist_scan_n8(self):
        hits = metric_with_exact_twists({R1, RM1, r(1, 8)})
        assert {str(G) for G, _ in hits} == {"C4"}

    def test_no_order8_pointed_with_four_torsion_triple(self):
        # supports the N=4 xi=zeta_8 exclusion at desk scale: no pointed
        # datum of dimension 8 carries exactly the twists {1, i, -i}
        hits = metric_with_exact_twists({R1, RI, RMI})
        assert all(G.order in (4, 16) for G, _ in hits)


class TestCompleteness:
    def test_solved_spectrum_matches_constructor(self):
        # the two-twist solution at the golden-ratio dimension: D_1 = 1,
        # D_theta = (3-sqrt5)/2, realized by the generator with theta = z5
        from twistbench.moddata import twist_spectrum
        from twistbench.quadfield import quad_from_cyc

        md = fibonacci(r(3, 10))
        spec = twist_spectrum(md)
        assert spec[R1] == cyc(1)
        dtheta = quad_from_cyc(spec[r(1, 5)], 5)
        assert dtheta == quad(5, Fraction(3, 2), Fraction(-1, 2))

    def test_every_small_twist_fixture_appears_in_classifier(
            self, two_twist_report, three_twist_report):
        from twistbench.moddata import fs_exponent as N_of
        from twistbench.moddata import twist_set

        two = two_twist_report
        three = three_twist_report
        covered = set()
        for x in two.rows:
            covered.add((x.N, 2))
        for x in three.rows:
            for N, _ in x.per_n():
                covered.add((N, 3))
        for f in two.families:
            covered.add((f.N, 2))
        for f in three.families:
            covered.add((f.N, 3))
        for name, md in fixtures().items():
            distinct = len(twist_set(md))
            if distinct > 3 or distinct < 2:
                continue
            key = (N_of(md), distinct)
            assert key in covered, (name, key)
