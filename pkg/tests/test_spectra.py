from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qaxiom.errors import (
    InvalidParam, NonHermitian, NonHermitianObservable, TruncationTooSmall, UnnormalizedState,
)
from qaxiom.represent import grid_representation, landau_representation
from qaxiom.spectra import (
    kinetic_hamiltonian, landau_level_check, limit_scan, spectrum, uncertainty,
)
from qaxiom.symalg import Coefficient, NCPolynomial, gen

Q1, Q2, P1, P2 = (NCPolynomial.generator(gen(x)) for x in ("Q1", "Q2", "P1", "P2"))


@pytest.fixture(scope="module")
def landau256():
    return landau_representation(256)


def test_landau_levels(landau256):
    r = spectrum(landau256)
    expected = np.arange(5) + 0.5
    assert np.all(np.abs(np.array(r.eigenvalues) - expected) / expected < 1e-10)
    assert list(r.eigenvalues) == sorted(r.eigenvalues)


def test_doubling_b_doubles_spacing():
    r = spectrum(landau_representation(256, {"B": 2.0}))
    assert np.allclose(np.diff(r.eigenvalues), 2.0, atol=1e-10)


def test_level_check_standard(landau256):
    c = landau_level_check(spectrum(landau256))
    assert c.ok and abs(c.spacing_ratio - 1) < 1e-9


def test_level_check_paper_convention():
    r = spectrum(landau_representation(256, convention="paper"))
    c = landau_level_check(r)
    assert not c.ok
    assert abs(c.spacing_ratio - 2.0) < 1e-9


def test_level_check_empty(landau256):
    c = landau_level_check(spectrum(landau256, nlevels=0))
    assert c.ok and c.levels == ()


def test_levels_stable_under_truncation():
    a = spectrum(landau_representation(128)).eigenvalues
    b = spectrum(landau_representation(256)).eigenvalues
    assert np.max(np.abs(np.subtract(a, b))) < 1e-9


def test_too_many_levels():
    with pytest.raises(TruncationTooSmall):
        spectrum(landau_representation(16), nlevels=5)


def test_truncation_drift_detected():
    # a steep quartic potential needs far more rungs than 64
    h = kinetic_hamiltonian() + (Q1 * Q1 * Q1 * Q1).scale(Coefficient.scalar(50))
    with pytest.raises(TruncationTooSmall):
        spectrum(landau_representation(64), h, nlevels=5)


def test_non_hermitian_hamiltonian(landau256):
    with pytest.raises(NonHermitian):
        spectrum(landau256, P1 * Q1, nlevels=2)


def test_grid_free_particle_zero_mode():
    rep = grid_representation(16, 10.0, "none", {"B": 0.0})
    r = spectrum(rep, nlevels=3)
    assert abs(r.eigenvalues[0]) < 1e-12


def test_lll_uncertainty(landau256):
    u = uncertainty(landau256, "ground", Q1, Q2)
    assert abs(u.product - 0.5) < 1e-9
    assert abs(u.saturation - 1) < 1e-9
    assert u.paper_bound == pytest.approx(1.0)


def test_lll_uncertainty_scales_with_field():
    rep = landau_representation(128, {"B": 4.0, "hbar": 2.0})
    u = uncertainty(rep, "ground", Q1, Q2)
    assert abs(u.product - 2.0 / (2 * 4.0)) < 1e-9


def test_oscillator_ground_qp(landau256):
    # in the ladder realisation Q1 and P1 form a canonical pair up to scale
    u = uncertainty(landau256, "ground", Q1, P1)
    assert abs(u.product - 0.5) < 1e-9


def test_random_states_respect_robertson(landau256):
    for seed in range(100):
        u = uncertainty(landau256, f"random:{seed}", Q1, Q2)
        assert u.product >= u.robertson_bound - 1e-10


def test_state_validation(landau256):
    psi = np.zeros(256, dtype=complex)
    psi[0] = 2.0
    with pytest.raises(UnnormalizedState):
        uncertainty(landau256, psi, Q1, Q2)
    with pytest.raises(InvalidParam):
        uncertainty(landau256, "basis:999", Q1, Q2)
    with pytest.raises(InvalidParam):
        uncertainty(landau256, "thermal", Q1, Q2)
    with pytest.raises(NonHermitianObservable):
        uncertainty(landau256, "ground", P1 * Q1, Q2)


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.integers(-5, 5))
def test_shift_invariance(seed, shift):
    rep = landau_representation(24)
    a = uncertainty(rep, f"random:{seed}", Q1, P2)
    b = uncertainty(rep, f"random:{seed}", Q1 + NCPolynomial.constant(Coefficient.scalar(shift)), P2)
    assert abs(a.delta_a - b.delta_a) < 1e-12


def test_scan_commutator_scale():
    t = limit_scan("commutatorScale", "B", [1, 0.1, 0.01])
    assert t.column("QQ") == [1, 10, 100]
    assert t.column("PP") == [1, Fraction(1, 10), Fraction(1, 100)]
    qq = t.column("QQ")
    assert qq[0] / qq[1] == t.column("B")[1] / t.column("B")[0]


def test_scan_magnetic_length():
    t = limit_scan("magneticLength", "B", ["4", "1/4"])
    assert t.column("length") == pytest.approx([0.5, 2.0])


def test_scan_uncertainty_product():
    t = limit_scan("uncertaintyProduct", "B", [1, 0.1, 0.01])
    assert np.allclose(t.column("product"), [0.5, 5, 50], atol=1e-6, rtol=0)


def test_scan_order_independent():
    a = limit_scan("uncertaintyProduct", "B", [0.5, 2])
    b = limit_scan("uncertaintyProduct", "B", [2, 0.5])
    assert a.rows == tuple(reversed(b.rows))


@pytest.mark.parametrize("bad", [[0], [-1], [float("inf")], ["x"]])
def test_scan_rejects_bad_values(bad):
    with pytest.raises(InvalidParam):
        limit_scan("commutatorScale", "B", bad)
