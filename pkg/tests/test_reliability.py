"""Growth laws, predicted reliable counts, and error accounting."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hst

import spectra_trust as st
from spectra_trust.ordering import OrderingStrategy
from spectra_trust.reliability import Pairing, TheoremParams

PI = math.pi


class TestGrowthLaws:
    def test_interval_weyl_is_exact(self):
        dom = st.DomainSpec(1)
        for n in (1, 2, 17, 1000):
            assert st.weyl_law(n, dom) == pytest.approx(PI**2 * n**2, rel=1e-15)

    def test_square_weyl(self):
        dom = st.DomainSpec(2)
        assert st.weyl_law(7, dom) == pytest.approx(4.0 * PI * 7, rel=1e-15)

    def test_cube_weyl(self):
        dom = st.DomainSpec(3)
        want = 4.0 * PI**2 * (5.0 / (4.0 * PI / 3.0)) ** (2.0 / 3.0)
        assert st.weyl_law(5, dom) == pytest.approx(want, rel=1e-15)

    def test_extent_scaling(self):
        # doubling the interval length quarters every eigenvalue
        a = st.weyl_law(9, st.DomainSpec(1, 1.0))
        b = st.weyl_law(9, st.DomainSpec(1, 2.0))
        assert a == pytest.approx(4.0 * b, rel=1e-15)

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_pleijel_is_weyl_squared(self, dim):
        dom = st.DomainSpec(dim)
        for n in (1, 10, 12345):
            assert st.pleijel_law(n, dom) == st.weyl_law(n, dom) ** 2

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_bound_family_ratios(self, dim):
        dom = st.DomainSpec(dim)
        w = st.weyl_law(40, dom)
        assert st.polya_bound(40, dom) == w
        assert st.li_yau_individual_bound(40, dom) == pytest.approx(
            dim / (dim + 2.0) * w, rel=1e-15
        )
        assert st.li_yau_sum_bound(40, dom) == pytest.approx(
            dim * 40 / (dim + 2.0) * w, rel=1e-15
        )

    def test_index_floor(self):
        with pytest.raises(ValueError):
            st.weyl_law(0, st.DomainSpec(1))


class TestPredictedCount:
    @pytest.mark.parametrize(
        "m,k,d,alpha,N",
        [
            (1, 2, 1, 1.0, 1024),
            (1, 3, 2, 0.5, 4096),
            (2, 4, 3, 2.0, 2**20),
            (1, 2, 2, 0.25, 10),
        ],
    )
    def test_matches_direct_formula(self, m, k, d, alpha, N):
        rho = (k - m - alpha / 2.0) / (k - m)
        want = N**rho * (k - 1) ** (-d * rho)
        got = st.predicted_jn(TheoremParams(m, k, d, alpha), N)
        assert got == pytest.approx(want, rel=1e-12)

    def test_linear_elements_give_square_root_growth(self):
        # m=1, k=2, alpha=1: rho = 1/2, constant (k-1)^(-d/2) = 1 in 1D
        assert st.predicted_jn(TheoremParams(1, 2, 1, 1.0), 1024) == 32.0

    @given(
        hst.integers(min_value=1, max_value=3),
        hst.integers(min_value=1, max_value=3),
        hst.floats(min_value=0.05, max_value=1.0),
        hst.floats(min_value=0.05, max_value=1.0),
    )
    def test_decreasing_in_tolerance_exponent(self, m, d, a_lo, gap):
        # tighter tolerance (larger alpha) can only shrink the count when
        # N exceeds the lattice constant (k-1)^d
        k = m + 2
        hi = 2.0 * (k - m)
        alpha1 = a_lo * hi / 2.0
        alpha2 = min(hi, alpha1 + gap)
        N = 2**20
        p1 = st.predicted_jn(TheoremParams(m, k, d, alpha1), N)
        p2 = st.predicted_jn(TheoremParams(m, k, d, alpha2), N)
        assert p2 <= p1 + 1e-9

    @given(
        hst.integers(min_value=1, max_value=4),
        hst.integers(min_value=1, max_value=3),
        hst.integers(min_value=1, max_value=3),
        hst.floats(min_value=1.0, max_value=1e8),
    )
    def test_endpoint_alpha_predicts_one(self, m, gap, d, N):
        k = m + gap
        params = TheoremParams(m, k, d, 2.0 * (k - m))
        assert st.predicted_jn(params, N) == 1.0

    def test_rejects_nonpositive_dof(self):
        with pytest.raises(ValueError):
            st.predicted_jn(TheoremParams(1, 2, 1, 1.0), 0)

    @pytest.mark.parametrize(
        "m,k,d,alpha",
        [
            (0, 2, 1, 1.0),
            (2, 2, 1, 1.0),
            (3, 2, 1, 1.0),
            (1, 2, 0, 1.0),
            (1, 2, 1, 0.0),
            (1, 2, 1, -0.5),
            (1, 2, 1, 2.5),
            (1, 3, 2, 4.5),
        ],
    )
    def test_parameter_validation(self, m, k, d, alpha):
        with pytest.raises(ValueError):
            TheoremParams(m, k, d, alpha)

    def test_boundary_alpha_accepted(self):
        assert TheoremParams(1, 3, 2, 4.0).alpha == 4.0


class TestRelativeErrors:
    def test_consistent_linear_midpoint(self):
        spec = st.linear_fem_1d(st.UniformMesh(64))
        errors = st.relative_errors(spec)
        assert errors[31] == pytest.approx(12.0 / PI**2 - 1.0, rel=1e-13)

    def test_extrapolated_midpoint(self):
        spec = st.extrapolated_1d(st.UniformMesh(64))
        errors = st.relative_errors(spec)
        assert errors[31] == pytest.approx(10.0 / PI**2 - 1.0, rel=1e-12)

    def test_lumped_errors_respect_extent(self):
        mesh = st.UniformMesh(8, extent=2.0)
        spec = st.lumped_fd_1d(mesh)
        errors = st.relative_errors(spec)
        lam1 = 4.0 * math.sin(PI / 16.0) ** 2 / mesh.h**2
        exact1 = (PI / 2.0) ** 2
        assert errors[0] == pytest.approx(abs(lam1 - exact1) / exact1, rel=1e-13)

    def test_rank_pairing_requires_magnitude_order(self):
        spec = st.tensorize(
            st.lumped_fd_1d(st.UniformMesh(8)), OrderingStrategy.SQUARE
        )
        with pytest.raises(ValueError):
            st.relative_errors(spec, pairing=Pairing.BY_RANK)

    def test_mode_pairing_on_level_order(self):
        spec = st.tensorize(
            st.lumped_fd_1d(st.UniformMesh(8)), OrderingStrategy.SQUARE
        )
        errors = st.relative_errors(spec, pairing=Pairing.BY_MODE_INDEX)
        j, k = spec.labels[:, 0].astype(float), spec.labels[:, 1].astype(float)
        exact = PI**2 * (j**2 + k**2)
        assert np.allclose(errors, np.abs(spec.values - exact) / exact, rtol=1e-13)

    def test_explicit_exact_matches_label_derivation(self):
        spec = st.five_point_lumped_2d(st.UniformMesh(8))
        derived = st.relative_errors(spec, pairing=Pairing.BY_MODE_INDEX)
        explicit = st.relative_errors(
            spec, exact=st.exact_modes_2d(8), pairing=Pairing.BY_MODE_INDEX
        )
        assert np.allclose(derived, explicit, rtol=1e-14, atol=0.0)

    def test_short_exact_spectrum_rejected_for_rank_pairing(self):
        spec = st.five_point_lumped_2d(st.UniformMesh(8))
        short = st.exact_spectrum(st.DomainSpec(2), 10)
        with pytest.raises(ValueError):
            st.relative_errors(spec, exact=short, pairing=Pairing.BY_RANK)


class TestCountReliable:
    def test_handmade_sequence(self):
        errors = np.array([0.001, 0.02, 0.0005, 0.5])
        total, prefix, fraction = st.count_reliable(errors, 0.01)
        assert (total, prefix, fraction) == (2, 1, 0.5)

    def test_unbroken_run(self):
        total, prefix, fraction = st.count_reliable(np.array([0.1, 0.2]), 0.3)
        assert (total, prefix, fraction) == (2, 2, 1.0)

    def test_boundary_is_inclusive(self):
        total, prefix, _ = st.count_reliable(np.array([0.01]), 0.01)
        assert (total, prefix) == (1, 1)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            st.count_reliable(np.array([0.1]), 0.0)
        with pytest.raises(ValueError):
            st.count_reliable(np.array([]), 0.1)


class TestAssess:
    def test_default_tau_and_report_fields(self):
        spec = st.five_point_lumped_2d(st.UniformMesh(8))
        report = st.assess(spec)
        assert report.method == "fivepoint2d"
        assert report.n == 8
        assert report.dof == 49
        assert report.tau == 0.125
        assert report.pairing == "rank"
        assert report.reliable_count >= report.reliable_prefix >= 1
        assert report.fraction == report.reliable_count / 49

    def test_linear_count_tracks_square_root_of_dof(self):
        spec = st.linear_fem_1d(st.UniformMesh(8192))
        report = st.assess(spec)
        assert report.reliable_count == 99
        ratio = report.reliable_count / math.sqrt(8191)
        assert 0.9 <= ratio <= 1.3

    def test_spectral_count_tracks_two_over_pi(self):
        order = 1024
        vals = st.solve_banded(st.assemble_legendre_1d(order, extent=2.0))
        spec = st.DiscreteSpectrum(
            st.Method.LEGENDRE_SPECTRAL_1D,
            order + 1,
            2.0,
            np.arange(1, order + 1, dtype=np.int64),
            vals,
        )
        report = st.assess(spec, tau=1.0 / order)
        assert report.reliable_count == 652
        assert abs(report.fraction - 2.0 / PI) < 0.005

    def test_extrapolation_multiplies_reliable_count(self):
        for n in (1024, 4096):
            mesh = st.UniformMesh(n)
            base = st.assess(st.linear_fem_1d(mesh)).reliable_count
            extra = st.assess(st.extrapolated_1d(mesh)).reliable_count
            assert extra >= 5 * base

    def test_reliable_fraction_decays_with_resolution(self):
        fractions = [
            st.assess(st.linear_fem_1d(st.UniformMesh(n))).fraction
            for n in (512, 1024, 2048, 4096, 8192)
        ]
        assert all(a > b for a, b in zip(fractions, fractions[1:]))


class TestGrowthFit:
    def test_recovers_exact_power_law(self):
        ns = np.array([64, 128, 256, 512, 1024])
        counts = 4.0 * ns**0.75
        slope, r2 = st.fit_growth_exponent(ns, counts)
        assert slope == pytest.approx(0.75, abs=1e-12)
        assert r2 == pytest.approx(1.0, abs=1e-12)

    def test_linear_method_count_exponent(self):
        ns = [512, 1024, 2048, 4096, 8192]
        counts = [
            st.assess(st.linear_fem_1d(st.UniformMesh(n))).reliable_count
            for n in ns
        ]
        assert counts == [24, 35, 49, 70, 99]
        slope, r2 = st.fit_growth_exponent(ns, counts)
        assert 0.45 <= slope <= 0.55
        assert r2 > 0.999

    def test_rejects_degenerate_fits(self):
        with pytest.raises(ValueError):
            st.fit_growth_exponent([64], [10])
        with pytest.raises(ValueError):
            st.fit_growth_exponent([64, 128], [10, 0])
        with pytest.raises(ValueError):
            st.fit_growth_exponent([64, 128, 256], [10, 20])
