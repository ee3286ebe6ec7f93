import math
import time

import numpy as np
import pytest

from abeta import DomainError, LimitError, radii
from abeta.extremal import ftilde_at_minus1_series
from abeta.radii import (
    TABLE1_REFERENCE,
    TABLE1_TOL,
    bohr_radius,
    distance_lower,
    radius_curve,
    rogosinski_radius,
)

from oracles import brentq_radius, mp_ftilde, mp_ftilde_at_minus1


def beta0_bohr_equation(r: float) -> float:
    # m = 1, β = 0 closed form: -r - 2 ln(1-r) + 1 - 2 ln 2
    return -r - 2 * math.log(1 - r) + 1 - 2 * math.log(2)


class TestDistanceLower:
    def test_beta0_closed_form(self):
        assert distance_lower(0.0) == pytest.approx(2 * math.log(2) - 1, abs=1e-12)

    def test_degenerates_toward_one(self):
        assert distance_lower(0.999) < 5e-3
        with pytest.raises(DomainError):
            distance_lower(1.0)

    def test_half_two_evaluators(self):
        got = distance_lower(0.5)
        assert got > 0
        assert got == pytest.approx(-ftilde_at_minus1_series(0.5, tol=1e-10), abs=1e-10)


class TestBohrRadius:
    def test_reference_rows(self):
        for beta, expected in ((0.1, 0.267139), (0.5, 0.178366)):
            got = bohr_radius(beta, 1).radius
            assert got == pytest.approx(expected, abs=1e-4)

    def test_beta0_against_independent_solver(self):
        got = bohr_radius(0.0, 1)
        want = brentq_radius(beta0_bohr_equation)
        assert got.radius == pytest.approx(want, abs=1e-9)
        assert got.radius == pytest.approx(0.2851940876372222, abs=1e-9)

    def test_result_invariants(self):
        for beta in (0.0, 0.4, 0.9):
            for m in (1, 2, 5):
                res = bohr_radius(beta, m)
                assert 0.0 < res.radius < 1.0
                assert abs(res.residual) <= 1e-10
                assert res.bracket[0] < res.radius < res.bracket[1]
                assert res.iterations <= 200
                assert res.equation_id == f"BOHR(m={m})"

    def test_increasing_in_m(self):
        for beta in (0.0, 0.3, 0.7):
            vals = [bohr_radius(beta, m).radius for m in (1, 2, 3, 5, 8)]
            assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain_guards(self):
        with pytest.raises(DomainError):
            bohr_radius(1.0, 1)
        with pytest.raises(DomainError):
            bohr_radius(0.5, 0)

    def test_bohr_sum_of_extremal_hits_distance(self):
        # sharpness re-enactment: at r* the majorant series of the principal
        # extremal plus the r^m term equals the boundary distance
        for beta, m in ((0.0, 1), (0.3, 1), (0.6, 2)):
            r_star = bohr_radius(beta, m).radius
            majorant = float(mp_ftilde(beta, r_star).real) - r_star
            assert r_star**m + majorant == pytest.approx(distance_lower(beta), abs=1e-8)


class TestRogosinskiRadius:
    def test_beta0_n1_oracle(self):
        # equation: 2 f̃(r) + f̃(-1) = 0 at β = 0
        got = rogosinski_radius(0.0, 1, 1)
        want = brentq_radius(lambda r: -2 * r - 4 * math.log(1 - r) + 1 - 2 * math.log(2))
        assert got.radius == pytest.approx(want, abs=1e-9)
        assert got.radius == pytest.approx(0.16320489849045786, abs=1e-9)

    def test_beta0_n2_oracle(self):
        got = rogosinski_radius(0.0, 1, 2)
        want = brentq_radius(lambda r: -3 * r - 4 * math.log(1 - r) + 1 - 2 * math.log(2))
        assert got.radius == pytest.approx(want, abs=1e-9)
        assert got.radius == pytest.approx(0.24375492845082762, abs=1e-9)
        assert got.radius > rogosinski_radius(0.0, 1, 1).radius

    def test_nondecreasing_in_n(self):
        for beta in (0.0, 0.3, 0.6):
            vals = [rogosinski_radius(beta, 1, N).radius for N in (1, 2, 3, 5, 8, 16)]
            assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_large_n_approaches_bohr_m1_limit(self):
        # as N grows the equation tends to f̃(r^m) + f̃(-1) = 0; for m = 1
        # that is the m = 1 Bohr equation without the r^m - r term
        limit = brentq_radius(lambda r: float(mp_ftilde(0.2, r).real) + mp_ftilde_at_minus1(0.2))
        seq = [rogosinski_radius(0.2, 1, N).radius for N in (8, 16, 32, 64)]
        assert all(r <= limit + 1e-12 for r in seq)
        assert seq[-1] == pytest.approx(limit, abs=1e-3)

    def test_residual_and_bracket(self):
        res = rogosinski_radius(0.5, 2, 3)
        assert abs(res.residual) <= 1e-10
        assert res.bracket[0] < res.radius < res.bracket[1]
        assert res.equation_id == "ROGOSINSKI(m=2,N=3)"

    def test_guards(self):
        with pytest.raises(DomainError):
            rogosinski_radius(1.0, 1, 1)
        with pytest.raises(LimitError):
            rogosinski_radius(0.5, 1, 65)
        with pytest.raises(DomainError):
            rogosinski_radius(0.5, 1, 0)


class TestTable1:
    def test_all_rows_within_tolerance(self):
        t0 = time.perf_counter()
        for beta, expected in TABLE1_REFERENCE:
            got = bohr_radius(beta, 1).radius
            assert abs(got - expected) <= TABLE1_TOL, f"beta={beta}: {got} vs {expected}"
        assert time.perf_counter() - t0 < 1.0


class TestRadiusCurve:
    def test_matches_pointwise_solves(self):
        rows = radius_curve(1, None, [b for b, _ in TABLE1_REFERENCE])
        for (beta, radius), (beta_ref, expected) in zip(rows, TABLE1_REFERENCE):
            assert beta == beta_ref
            assert radius == pytest.approx(expected, abs=TABLE1_TOL)

    def test_singleton(self):
        rows = radius_curve(1, None, [0.1])
        assert len(rows) == 1
        assert rows[0][0] == 0.1

    def test_dense_grid_monotone(self):
        grid = np.linspace(0.0, 0.9, 91)
        rows = radius_curve(1, None, grid)
        rads = [r for _, r in rows]
        assert all(b < a for a, b in zip(rads, rads[1:]))

    def test_rogosinski_curve(self):
        rows = radius_curve(1, 2, [0.1, 0.3, 0.5])
        assert len(rows) == 3
        assert rows[0][1] > rows[1][1] > rows[2][1]

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            radius_curve(1, None, [])
        with pytest.raises(DomainError):
            radius_curve(1, None, [0.5, 1.0])
