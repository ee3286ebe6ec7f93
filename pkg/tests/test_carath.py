import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abeta import (
    BetaParam,
    DomainError,
    HerglotzMeasure,
    LiberaTriple,
    carath_coeffs,
    coeff_denominator,
    eval_f,
    libera_expand,
    psd_check,
    sample_measure,
    to_abeta_coeffs,
)
from abeta.carath import _atom_pcoeffs, _sample_atoms

from oracles import principal_minors_nonnegative, quad_measure_eval


def kernel_at(theta: float) -> HerglotzMeasure:
    return HerglotzMeasure(((theta, 1.0),))


class TestTypes:
    def test_beta_param_range(self):
        assert BetaParam(0.0).beta == 0.0
        assert BetaParam(1.0).beta == 1.0
        for bad in (-0.1, 1.0001, float("nan"), float("inf")):
            with pytest.raises(DomainError):
                BetaParam(bad)

    def test_measure_weight_sum(self):
        with pytest.raises(DomainError):
            HerglotzMeasure(((0.0, 0.4), (1.0, 0.4)))
        with pytest.raises(DomainError):
            HerglotzMeasure(((0.0, 1.5), (1.0, -0.5)))
        with pytest.raises(DomainError):
            HerglotzMeasure(())

    def test_measure_angle_wrap(self):
        mu = HerglotzMeasure(((-np.pi, 0.5), (3 * np.pi, 0.5)))
        assert all(0.0 <= t < 2 * np.pi for t in mu.thetas)

    def test_libera_triple_validation(self):
        LiberaTriple(2.0, 1.0, -1.0)
        with pytest.raises(DomainError):
            LiberaTriple(2.5, 0.0, 0.0)
        with pytest.raises(DomainError):
            LiberaTriple(0.0, 1.2, 0.0)
        with pytest.raises(DomainError):
            LiberaTriple(0.0, 0.0, 1.0 + 1e-6j * 1e6)

    def test_coeff_denominator(self):
        assert coeff_denominator(0.0, 5) == 5.0
        assert coeff_denominator(1.0, 5) == 1.0
        assert coeff_denominator(0.5, 3) == 2.0


class TestCarathCoeffs:
    def test_single_atom_kernel(self):
        assert carath_coeffs(kernel_at(0.0), 3) == pytest.approx([2, 2, 2])

    def test_two_atom_cancellation(self):
        got = carath_coeffs(HerglotzMeasure(((0.0, 0.5), (np.pi, 0.5))), 2)
        assert got == pytest.approx([0, 2], abs=1e-15)

    def test_rotated_kernel(self):
        got = carath_coeffs(kernel_at(np.pi / 2), 3)
        assert got == pytest.approx([2j, -2, -2j], abs=1e-14)

    def test_order_validation(self):
        with pytest.raises(DomainError):
            carath_coeffs(kernel_at(0.0), 0)


class TestLibera:
    def test_kernel_forcing(self):
        # 4 - p1^2 = 0 pins everything to the kernel coefficients
        for x, z in ((0.3 + 0.1j, -0.5), (0.0, 1.0), (1.0, 0.0)):
            assert libera_expand(LiberaTriple(2.0, x, z)) == pytest.approx((2, 2))

    def test_pure_x(self):
        assert libera_expand(LiberaTriple(0.0, 1.0, 0.0)) == pytest.approx((2, 0))

    def test_pure_z(self):
        assert libera_expand(LiberaTriple(0.0, 0.0, 1.0)) == pytest.approx((0, 2))

    def test_seeded_triples_stay_in_class(self):
        # real p1 is the rotation-normalized case the expansion presumes
        rng = np.random.Generator(np.random.PCG64(2024))
        for _ in range(1000):
            p1 = rng.uniform(-2.0, 2.0)
            x = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            z = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            p2, p3 = libera_expand(LiberaTriple(p1, x, z))
            assert abs(p2) <= 2 + 1e-12
            assert abs(p3) <= 2 + 1e-12
            assert psd_check([p1, p2, p3])


class TestPsdCheck:
    def test_kernel_true(self):
        assert psd_check([2, 2, 2]) is True

    def test_oversized_p1_false(self):
        assert psd_check([3]) is False

    def test_two_atom_true(self):
        # atoms at 0 and pi, weight 1/2 each, give (0, 2, 0)
        assert psd_check([0, 2, 0]) is True
        first_row = np.array([2, 0, 2, 0], dtype=complex)
        mat = np.array([[first_row[abs(i - j)] for j in range(4)] for i in range(4)])
        assert principal_minors_nonnegative(mat)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            psd_check([])


class TestToAbeta:
    def test_beta_zero(self):
        seq = to_abeta_coeffs(0.0, [2, 2])
        assert seq.a(2) == pytest.approx(1.0)
        assert seq.a(3) == pytest.approx(2 / 3)

    def test_beta_one(self):
        seq = to_abeta_coeffs(1.0, [2, 2])
        assert seq.a(2) == seq.a(3) == pytest.approx(2.0)

    def test_beta_half_complex(self):
        seq = to_abeta_coeffs(0.5, [2j, -2])
        assert seq.a(2) == pytest.approx(4j / 3)
        assert seq.a(3) == pytest.approx(-1.0)

    def test_rejects_out_of_class(self):
        with pytest.raises(DomainError):
            to_abeta_coeffs(0.0, [2.5])

    def test_round_trip_recovers_p(self):
        rng = np.random.Generator(np.random.PCG64(5))
        for _ in range(200):
            k = int(rng.integers(1, 5))
            thetas, weights = _sample_atoms(rng, 1, k)
            p = _atom_pcoeffs(thetas, weights, 6)[0]
            beta = float(rng.uniform(0, 1))
            seq = to_abeta_coeffs(beta, p)
            for n in range(2, 8):
                back = seq.a(n) * coeff_denominator(beta, n)
                assert abs(back - p[n - 2]) <= 4e-16 * max(1.0, abs(p[n - 2]))


atoms_strategy = st.lists(
    st.tuples(
        st.floats(min_value=0.0, max_value=2 * np.pi, exclude_max=True),
        st.floats(min_value=1e-3, max_value=1.0),
    ),
    min_size=1,
    max_size=6,
)


class TestSampledInvariants:
    @given(atoms_strategy)
    @settings(max_examples=150, deadline=None)
    def test_coeffs_bounded_and_psd(self, raw_atoms):
        total = sum(w for _, w in raw_atoms)
        mu = HerglotzMeasure(tuple((t, w / total) for t, w in raw_atoms))
        p = carath_coeffs(mu, 8)
        assert all(abs(pn) <= 2 + 1e-12 for pn in p)
        assert psd_check(p)

    @pytest.mark.parametrize("seed", range(8))
    def test_sampler_measures_pass_psd(self, seed):
        for k in (1, 2, 4):
            mu = sample_measure(seed, k)
            assert psd_check(carath_coeffs(mu, 8))


class TestSampler:
    def test_unconstrained_normalized(self):
        mu = sample_measure(42, 1)
        assert mu.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert len(mu.atoms) == 1

    def test_target_two_concentrates_at_zero(self):
        for seed in (0, 1, 99):
            mu = sample_measure(seed, 2, target_p1=2.0)
            live = [(t, w) for t, w in mu.atoms if w > 1e-12]
            assert all(min(t, 2 * np.pi - t) < 1e-9 for t, _ in live)
            p1 = carath_coeffs(mu, 1)[0]
            assert p1 == pytest.approx(2.0, abs=1e-9)

    def test_real_p1_constraint(self):
        mu = sample_measure(7, 3, target_p1=0.5)
        p1 = carath_coeffs(mu, 1)[0]
        assert abs(p1.imag) <= 1e-9
        assert p1.real == pytest.approx(0.5, abs=1e-9)

    @pytest.mark.parametrize("target", [-2.0, -1.3, -0.5, 0.0, 0.7, 1.9, 2.0])
    def test_constraint_across_targets(self, target):
        for seed in range(5):
            mu = sample_measure(seed, 3, target_p1=target)
            p1 = carath_coeffs(mu, 1)[0]
            assert abs(p1.imag) <= 1e-9
            assert p1.real == pytest.approx(target, abs=1e-9)
            assert psd_check(carath_coeffs(mu, 6))

    def test_target_validation(self):
        with pytest.raises(DomainError):
            sample_measure(1, 2, target_p1=2.5)
        with pytest.raises(DomainError):
            sample_measure(1, 0)

    def test_seed_determinism(self):
        assert sample_measure(11, 3).atoms == sample_measure(11, 3).atoms
        a = sample_measure(11, 3, target_p1=0.25).atoms
        b = sample_measure(11, 3, target_p1=0.25).atoms
        assert a == b


class TestEvalF:
    def test_single_atom_matches_extremal(self):
        from abeta import ftilde_eval

        for r in (0.1, 0.5, 0.85):
            got = eval_f(0.3, kernel_at(0.0), r)
            assert got == pytest.approx(ftilde_eval(0.3, r).value, abs=1e-12)

    def test_zero_maps_to_zero(self):
        mu = sample_measure(3, 3)
        assert eval_f(0.5, mu, 0.0) == 0.0

    def test_two_atom_closed_form(self):
        mu = HerglotzMeasure(((0.0, 0.5), (np.pi, 0.5)))
        got = eval_f(0.0, mu, 0.5)
        ft = lambda r: -r - 2 * np.log(1 - r)
        assert got == pytest.approx(0.5 * ft(0.5) - 0.5 * ft(-0.5), abs=1e-11)
        direct = quad_measure_eval(0.0, mu.thetas, mu.weights, 0.5)
        assert got == pytest.approx(direct, abs=1e-9)

    def test_domain_error_outside_disk(self):
        mu = kernel_at(0.0)
        with pytest.raises(DomainError):
            eval_f(0.0, mu, 1.0)
        with pytest.raises(DomainError):
            eval_f(0.0, mu, 1.2j)

    def test_beta_one_is_z_times_p(self):
        mu = HerglotzMeasure(((1.0, 0.25), (4.0, 0.75)))
        z = 0.3 + 0.2j
        kernels = (1 + np.exp(1j * mu.thetas) * z) / (1 - np.exp(1j * mu.thetas) * z)
        assert eval_f(1.0, mu, z) == pytest.approx(z * (mu.weights * kernels).sum())

    def test_agreement_with_quadrature(self):
        # atomic closed form vs direct quadrature of the kernel integral
        rng = np.random.Generator(np.random.PCG64(17))
        for _ in range(100):
            k = int(rng.integers(1, 4))
            mu = sample_measure(int(rng.integers(0, 2**31)), k)
            beta = float(rng.uniform(0.0, 0.9))
            z = rng.uniform(0.05, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            got = eval_f(beta, mu, z)
            want = quad_measure_eval(beta, mu.thetas, mu.weights, z)
            assert abs(got - want) <= 1e-9
