import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import poisson

from squeezelab.errors import InvalidParameter, TruncationError
from squeezelab.fock import FockState, ToleranceConfig, annihilation, expectation, fidelity, quadratures, variance
from squeezelab.states import (
    CoherentParams,
    MinUncertaintyCondition,
    SqueezeParams,
    bogoliubov_residual,
    check_envelope,
    coherent_closed_form,
    coherent_via_displacement,
    displaced_squeezed,
    displacement_split,
    from_min_uncertainty,
    ladder_residual,
    min_uncertainty_residual,
    squeezed_vacuum_factored,
    squeezed_vacuum_via_exponential,
    tail_mass,
)

alphas = st.builds(
    lambda rad, ang: rad * cmath.exp(1j * ang),
    st.floats(0.0, 3.0),
    st.floats(0.0, 2 * math.pi),
)
phases = st.floats(0.0, 2 * math.pi, exclude_max=True)


def test_params_accessors():
    p = CoherentParams.from_phase_space(1.5, -0.7)
    assert p.x0 == pytest.approx(1.5) and p.p0 == pytest.approx(-0.7)
    z = SqueezeParams(0.5, -math.pi / 2)
    assert z.phi == pytest.approx(1.5 * math.pi)
    assert z.s == pytest.approx(math.exp(0.5))


@pytest.mark.parametrize("bad", [dict(r=-0.1), dict(r=2.5), dict(r=float("nan"))])
def test_squeeze_params_envelope(bad):
    with pytest.raises(InvalidParameter):
        SqueezeParams(**bad)


def test_alpha_envelope():
    with pytest.raises(InvalidParameter):
        CoherentParams(6.5)


def test_envelope_guard():
    check_envelope(CoherentParams(3.0), None, 64)
    with pytest.raises(TruncationError):
        check_envelope(CoherentParams(3.0), None, 20)


def test_tail_guard_for_heavy_squeezing():
    with pytest.raises(TruncationError):
        displaced_squeezed(CoherentParams(0j), SqueezeParams(2.0, 0.0), 128)


class TestCoherentClosedForm:
    def test_vacuum(self):
        np.testing.assert_array_equal(coherent_closed_form(CoherentParams(0j), 8).amplitudes, FockState.vacuum(8).amplitudes)

    def test_alpha_one_amplitudes(self):
        c = coherent_closed_form(CoherentParams(1.0), 32).amplitudes
        assert c[0].real == pytest.approx(0.6065306597126334, abs=1e-15)
        assert c[1] == pytest.approx(c[0], abs=1e-15)
        assert c[2].real == pytest.approx(0.4288819424803534, abs=1e-15)

    def test_phase_space_centroid(self):
        psi = coherent_closed_form(CoherentParams.from_phase_space(1.5, -0.7), 64)
        x, p = quadratures(64)
        assert expectation(x, psi).real == pytest.approx(1.5, abs=1e-10)
        assert expectation(p, psi).real == pytest.approx(-0.7, abs=1e-10)

    @given(alphas)
    def test_poisson_statistics(self, alpha):
        psi = coherent_closed_form(CoherentParams(alpha), 64)
        expected = poisson.pmf(np.arange(64), abs(alpha) ** 2)
        assert np.max(np.abs(psi.probabilities() - expected)) < 1e-12


class TestDisplacement:
    def test_vacuum(self):
        psi = coherent_via_displacement(CoherentParams(0j), 16)
        np.testing.assert_array_equal(psi.amplitudes, FockState.vacuum(16).amplitudes)

    def test_alpha_two(self):
        p = CoherentParams(2.0)
        assert fidelity(coherent_via_displacement(p, 64), coherent_closed_form(p, 64)) >= 1 - 1e-10

    def test_split_form(self):
        p = CoherentParams(1 + 0.5j)
        split = displacement_split(p, 64) @ FockState.vacuum(64)
        unitary = coherent_via_displacement(p, 64)
        np.testing.assert_allclose(split.amplitudes, unitary.amplitudes, atol=1e-10)

    @given(alphas)
    def test_three_way_coherent_equivalence(self, alpha):
        p = CoherentParams(alpha)
        closed = coherent_closed_form(p, 64)
        assert fidelity(closed, coherent_via_displacement(p, 64)) >= 1 - 1e-10
        assert ladder_residual(closed, p) < 1e-9


class TestLadder:
    def test_coherent(self):
        assert ladder_residual(coherent_closed_form(CoherentParams(1.0), 64), CoherentParams(1.0)) < 1e-10

    def test_first_excited(self):
        assert ladder_residual(FockState.basis(1, 8), CoherentParams(0j)) == 1.0

    def test_vacuum(self):
        assert ladder_residual(FockState.vacuum(8), CoherentParams(0j)) == 0.0


class TestSqueezedVacuum:
    def test_r_zero_is_vacuum(self):
        np.testing.assert_array_equal(squeezed_vacuum_factored(SqueezeParams(0.0), 16).amplitudes, FockState.vacuum(16).amplitudes)

    def test_amplitudes_against_scipy_expm(self):
        # frozen from scipy.linalg.expm of (r/2)(a^dag^2 - a^2), r = 0.5, dim = 64
        c = squeezed_vacuum_factored(SqueezeParams(0.5, 0.0), 64).amplitudes
        assert c[0].real == pytest.approx(0.9417106158316754, abs=1e-12)
        assert c[2].real == pytest.approx(0.30771917645837044, abs=1e-12)
        assert np.all(c[1::2] == 0)

    def test_scipy_oracle_live(self):
        # expm in a doubled basis so its edge distortion stays out of the compared block
        dim, z = 64, SqueezeParams(0.7, 1.1)
        a = annihilation(2 * dim).entries
        gen = 0.5 * z.z * a.T @ a.T - 0.5 * np.conj(z.z) * a @ a
        ref = scipy.linalg.expm(gen)[:dim, 0]
        np.testing.assert_allclose(squeezed_vacuum_factored(z, dim).amplitudes, ref / np.linalg.norm(ref), atol=1e-12)

    def test_phase_flip(self):
        c0 = squeezed_vacuum_factored(SqueezeParams(0.5, 0.0), 64).amplitudes
        cpi = squeezed_vacuum_factored(SqueezeParams(0.5, math.pi), 64).amplitudes
        assert cpi[2] == pytest.approx(-c0[2], abs=1e-15)

    @given(st.floats(0.0, 1.0), phases)
    def test_factored_matches_exponential(self, r, phi):
        z = SqueezeParams(r, phi)
        f = squeezed_vacuum_factored(z, 128)
        assert fidelity(f, squeezed_vacuum_via_exponential(z, 128)) >= 1 - 1e-8
        assert np.all(f.amplitudes[1::2] == 0)

    def test_factored_satisfies_bogoliubov(self):
        z = SqueezeParams(0.3, math.pi / 2)
        assert bogoliubov_residual(squeezed_vacuum_factored(z, 64), CoherentParams(0j), z) < 1e-8


class TestDisplacedSqueezed:
    def test_trivial(self):
        psi = displaced_squeezed(CoherentParams(0j), SqueezeParams(), 16)
        np.testing.assert_array_equal(psi.amplitudes, FockState.vacuum(16).amplitudes)

    def test_reduces_to_coherent(self):
        p = CoherentParams(1.2 - 0.4j)
        np.testing.assert_allclose(
            displaced_squeezed(p, SqueezeParams(), 64).amplitudes,
            coherent_closed_form(p, 64).amplitudes,
            atol=1e-10,
        )

    def test_centroid_independent_of_squeeze(self):
        psi = displaced_squeezed(CoherentParams(1.0), SqueezeParams(0.5, 0.0), 96)
        x, _ = quadratures(96)
        assert expectation(x, psi).real == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_bogoliubov_example(self):
        p, z = CoherentParams(1.0), SqueezeParams(0.5, 0.0)
        assert bogoliubov_residual(displaced_squeezed(p, z, 128), p, z) < 1e-8

    def test_bogoliubov_reduces_to_ladder(self):
        p = CoherentParams(0.8 + 0.3j)
        psi = coherent_closed_form(p, 64)
        assert bogoliubov_residual(psi, p, SqueezeParams()) == ladder_residual(psi, p)

    @pytest.mark.parametrize("phi", np.linspace(0, 2 * math.pi, 6, endpoint=False))
    def test_worst_case_corner(self, phi):
        # largest alpha and r of the squeeze-equivalence envelope
        for theta in np.linspace(0, 2 * math.pi, 6, endpoint=False):
            p, z = CoherentParams(2 * cmath.exp(1j * theta)), SqueezeParams(1.0, phi)
            psi = displaced_squeezed(p, z, 128)
            assert bogoliubov_residual(psi, p, z) < 1e-8
            assert tail_mass(psi) < ToleranceConfig().tail_tol

    @given(st.floats(0.0, 2.0), st.floats(0, 2 * math.pi), st.floats(0.0, 1.0), phases)
    def test_norm_is_one(self, rad, ang, r, phi):
        psi = displaced_squeezed(CoherentParams(rad * cmath.exp(1j * ang)), SqueezeParams(r, phi), 128)
        assert abs(psi.norm() - 1.0) < 1e-12


class TestMinUncertainty:
    def test_rejects_nonpositive_b(self):
        with pytest.raises(InvalidParameter):
            MinUncertaintyCondition(0.0, 1.0)
        with pytest.raises(InvalidParameter):
            MinUncertaintyCondition(-2.0)

    def test_b_one_is_coherent(self):
        x0, p0 = 0.9, -1.3
        psi = from_min_uncertainty(MinUncertaintyCondition(1.0, complex(x0, p0)), 64)
        assert fidelity(psi, coherent_closed_form(CoherentParams.from_phase_space(x0, p0), 64)) >= 1 - 1e-9

    def test_squeezed_vacuum_width(self):
        r = 0.6
        psi = from_min_uncertainty(MinUncertaintyCondition(math.exp(2 * r), 0j), 128)
        x, _ = quadratures(128)
        assert variance(x, psi) == pytest.approx(math.exp(2 * r) / 2, abs=1e-9)

    def test_b_one_c_zero_is_vacuum(self):
        psi = from_min_uncertainty(MinUncertaintyCondition(1.0, 0j), 16)
        assert fidelity(psi, FockState.vacuum(16)) == 1.0

    @given(st.floats(math.exp(-2), math.exp(2)), st.floats(-2, 2), st.floats(-2, 2))
    def test_operator_identity_and_equivalence(self, B, mx, mp):
        cond = MinUncertaintyCondition(B, complex(mx, B * mp))
        psi = from_min_uncertainty(cond, 128)
        assert min_uncertainty_residual(psi, cond) < 1e-8
        x, p = quadratures(128)
        assert variance(x, psi) == pytest.approx(B / 2, abs=1e-9)
        assert variance(x, psi) * variance(p, psi) == pytest.approx(0.25, abs=1e-9)
        phi = 0.0 if B >= 1 else math.pi
        direct = displaced_squeezed(
            CoherentParams.from_phase_space(mx, mp), SqueezeParams(abs(math.log(B)) / 2, phi), 128
        )
        assert fidelity(psi, direct) >= 1 - 1e-8
