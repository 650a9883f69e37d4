import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from squeezelab.dynamics import evolve, kennard_product
from squeezelab.fock import FockState
from squeezelab.states import CoherentParams, SqueezeParams, coherent_closed_form, displaced_squeezed, squeezed_vacuum_factored
from squeezelab.uncertainty import heisenberg_check, schrodinger_check


def test_vacuum_saturates():
    rep = heisenberg_check(FockState.vacuum(16))
    assert rep.lhs == pytest.approx(0.25, abs=1e-15)
    assert rep.heisenberg_bound == 0.25
    assert rep.saturates_heisenberg


@pytest.mark.parametrize("n,expected", [(1, 9 / 4), (2, 25 / 4)])
def test_number_states(n, expected):
    # brute force: Var x = Var p = n + 1/2, cov = 0
    rep = schrodinger_check(FockState.basis(n, 16))
    assert rep.lhs == pytest.approx(expected, abs=1e-9)
    assert rep.cov_xp == pytest.approx(0.0, abs=1e-15)
    assert not rep.saturates_heisenberg
    assert not rep.saturates_schrodinger


def test_coherent_saturates():
    rep = heisenberg_check(coherent_closed_form(CoherentParams(1.3 - 0.2j), 64))
    assert rep.lhs == pytest.approx(0.25, abs=1e-9)
    assert rep.saturates_heisenberg


def test_squeezed_vacuum_at_extremal_phase():
    rep = schrodinger_check(squeezed_vacuum_factored(SqueezeParams(0.5, 0.0), 128))
    assert rep.cov_xp == pytest.approx(0.0, abs=1e-12)
    assert rep.saturates_schrodinger and rep.saturates_heisenberg


def test_squeezed_vacuum_quarter_turn_saturates_only_schrodinger():
    psi = evolve(squeezed_vacuum_factored(SqueezeParams(0.5, 0.0), 128), math.pi / 4)
    rep = schrodinger_check(psi)
    assert rep.lhs == pytest.approx(2.3810978455418157 / 4, abs=1e-9)
    assert rep.saturates_schrodinger
    assert not rep.saturates_heisenberg


@given(
    st.floats(0, 2), st.floats(0, 2 * math.pi), st.floats(0, 1),
    st.floats(0, 2 * math.pi, exclude_max=True), st.floats(0, 2 * math.pi),
)
def test_gaussians_saturate_centered_schrodinger(rad, ang, r, phi, t):
    z = SqueezeParams(r, phi)
    psi = evolve(displaced_squeezed(CoherentParams(rad * np.exp(1j * ang)), z, 128), t)
    rep = schrodinger_check(psi)
    assert abs(rep.lhs - rep.schrodinger_bound) < 1e-8
    assert rep.lhs >= rep.schrodinger_bound - 1e-9 >= rep.heisenberg_bound - 1e-9
    assert 4 * rep.schrodinger_bound == pytest.approx(float(kennard_product(z, t)), abs=1e-8)
    excess = float(kennard_product(z, t)) - 1
    if excess > 1e-7:
        assert not rep.saturates_heisenberg
    elif excess < 1e-12:
        assert rep.saturates_heisenberg
