import gc

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qaxiom.errors import InvalidGrid, InvalidTruncation, MissingParam, UnknownGenerator
from qaxiom.represent import (
    commutator_residual, compile, grid_representation, landau_representation, projected_norm,
    representation_audit,
)
from qaxiom.symalg import (
    HBAR, I, Coefficient, NCPolynomial, gen, heisenberg, magnetic2, momentum_from_field,
    normal_order, substitute,
)

P1, P2, Q1, Q2 = (gen(x) for x in ("P1", "P2", "Q1", "Q2"))
EB = Coefficient.const("e") * Coefficient.const("B")


def poly(g):
    return NCPolynomial.generator(g)


@pytest.fixture(scope="module")
def landau256():
    return landau_representation(256)


# landau


def test_landau_cyclotron_commutator(landau256):
    assert commutator_residual(P1, P2, I * HBAR * EB, landau256) < 1e-12
    # eB [Q1,Q2] + i hbar eps12 = 0 with eps12 = -1
    assert commutator_residual(Q1, Q2, I * HBAR * EB.inverse(), landau256) < 1e-12


def test_landau_two_by_two():
    rep = landau_representation(2)
    assert rep.dimension == 2 and rep.projector_rank == 1
    assert commutator_residual(P1, P2, I * HBAR * EB, rep) < 1e-15


def test_landau_invalid():
    with pytest.raises(InvalidTruncation):
        landau_representation(1)
    with pytest.raises(InvalidTruncation):
        landau_representation(8, {"B": -1.0})


def test_landau_hermitian(landau256):
    for g in (P1, P2, Q1, Q2):
        m = landau256.matrix(g)
        assert np.max(np.abs(m - m.conj().T)) < 1e-12


def test_audit_heisenberg_fails_on_pp(landau256):
    r = representation_audit(landau256, heisenberg(2))
    assert not r.ok
    assert abs(r.residual("P1", "P2").norm - 1.0) < 1e-10
    assert r.residual("P1", "Q1").passed and r.residual("P2", "Q2").passed


def test_audit_magnetic_single_ladder(landau256):
    # one ladder cannot carry all of magnetic2: with eps12 = -1 only [P1,P2] misses
    r = representation_audit(landau256, magnetic2(-1))
    failing = [x.pair for x in r.residuals if not x.passed]
    assert failing == [(P1, P2)]
    assert abs(r.residual("P1", "P2").norm - 2.0) < 1e-10


def test_compile_basics(landau256):
    assert np.allclose(compile(NCPolynomial.constant(Coefficient.scalar(1)), landau256), np.eye(256))
    m = compile(NCPolynomial.constant(-I * HBAR), landau256)
    assert np.allclose(m, -1j * np.eye(256))
    p = poly(P1) * poly(Q1)
    assert projected_norm(normal_order(p, heisenberg(2)) - p, landau256) < 1e-10


def test_compile_errors(landau256):
    with pytest.raises(UnknownGenerator):
        compile(poly(gen("P3")), landau256)
    with pytest.raises(MissingParam):
        compile(NCPolynomial.constant(Coefficient.const("zeta")), landau256)


def _random_poly(rng, degree=2):
    gens = [P1, P2, Q1, Q2]
    p = NCPolynomial()
    for _ in range(3):
        d = int(rng.integers(0, degree + 1))
        w = NCPolynomial.constant(Coefficient.scalar(int(rng.integers(-3, 4)), int(rng.integers(-3, 4))))
        for _ in range(d):
            w = w * poly(gens[int(rng.integers(4))])
        p = p + w
    return p


def test_homomorphism_random_pairs():
    rep = landau_representation(128)
    V = rep.subspace
    rng = np.random.default_rng(7)
    for _ in range(50):
        p, q = _random_poly(rng), _random_poly(rng)
        diff = compile(p * q, rep) - compile(p, rep) @ compile(q, rep)
        assert np.linalg.norm(V.conj().T @ diff @ V, 2) < 1e-9


def test_unitary_invariance():
    rep = landau_representation(24)
    rng = np.random.default_rng(3)
    Z = rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24))
    U, _ = np.linalg.qr(Z)
    a = magnetic2()
    before = representation_audit(rep, a)
    after = representation_audit(rep.conjugated(U), a)
    for x, y in zip(before.residuals, after.residuals):
        assert abs(x.norm - y.norm) < 1e-9


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2)), min_size=1,
                max_size=4))
def test_position_polynomials_hermitian(terms):
    rep = landau_representation(12)
    p = NCPolynomial()
    for c, n1, n2 in terms:
        p = p + (poly(Q1) ** n1 * poly(Q2) ** n2 + poly(Q2) ** n2 * poly(Q1) ** n1).scale(
            Coefficient.scalar(c))
    m = compile(p, rep)
    assert np.max(np.abs(m - m.conj().T)) < 1e-12


def _matrix_substitution(p, s, rep):
    images = {g: compile(s.image(g), rep) for g in (P1, P2, Q1, Q2)}
    out = np.zeros((rep.dimension, rep.dimension), dtype=complex)
    for word, coef in p.items():
        m = np.eye(rep.dimension, dtype=complex)
        for g in word:
            m = m @ images[g]
        out += coef.evaluate(rep.params) * m
    return out


@pytest.mark.parametrize("p_text", ["P1*Q1", "P1*P2 + Q2*P1", "P2*P2*Q1"])
def test_substitution_commutes_with_compilation(p_text):
    terms = {"P1*Q1": poly(P1) * poly(Q1),
             "P1*P2 + Q2*P1": poly(P1) * poly(P2) + poly(Q2) * poly(P1),
             "P2*P2*Q1": poly(P2) * poly(P2) * poly(Q1)}
    p = terms[p_text]
    s = momentum_from_field(-1)
    # landau: the substituted normal form only uses [Q1,Q2], which the ladder realises
    rep = landau_representation(64)
    low = rep.subspace[:, :32]  # keep clear of the damaged top rungs for degree-3 words
    d = compile(substitute(p, s, magnetic2(-1)), rep) - _matrix_substitution(p, s, rep)
    assert np.linalg.norm(low.conj().T @ d @ low, 2) < 1e-10
    # grid: positions commute exactly, so heisenberg2 is the matching algebra
    g = grid_representation(16, 10.0, params={"B": 1.0})
    d = compile(substitute(p, s, heisenberg(2)), g) - _matrix_substitution(p, s, g)
    assert np.linalg.norm(g.subspace.conj().T @ d @ g.subspace, 2) < 1e-10


# grid


def test_grid_validation():
    for n in (8, 24, 15.0):
        with pytest.raises(InvalidGrid):
            grid_representation(n, 10.0)
    with pytest.raises(InvalidGrid):
        grid_representation(16, 0.0)
    with pytest.raises(InvalidGrid):
        grid_representation(16, 10.0, gauge="coulomb")


@pytest.mark.parametrize("params", [{"B": 0.0}, {"B": 3.0, "hbar": 0.5}])
def test_grid_canonical_momenta_commute(params):
    rep = grid_representation(32, 7.0, "symmetric", params)
    a, b = rep.extras["canonical_P1"], rep.extras["canonical_P2"]
    assert np.linalg.norm(a @ b - b @ a, 2) < 1e-13


def test_grid_projector_rank():
    rep = grid_representation(16, 10.0)
    assert rep.projector_rank == 64
    V = rep.subspace
    assert np.allclose(V.conj().T @ V, np.eye(64), atol=1e-12)


@pytest.mark.slow
def test_grid64_none_heisenberg():
    rep = grid_representation(64, 20.0, "none", {"B": 0.0})
    r = representation_audit(rep, heisenberg(2))
    del rep
    gc.collect()
    assert r.ok
    for pair in [("P1", "Q1"), ("P2", "Q2")]:
        assert r.residual(*pair).norm < 1e-6
    for pair in [("P1", "P2"), ("Q1", "Q2"), ("P1", "Q2"), ("P2", "Q1")]:
        assert r.residual(*pair).norm < 1e-12


@pytest.mark.slow
@pytest.mark.parametrize("gauge,curl", [("paper", 2), ("symmetric", 1)])
def test_grid64_kinetic_commutator_matches_curl(gauge, curl):
    rep = grid_representation(64, 20.0, gauge, {"B": 1.0})
    assert rep.params["curl"] == curl
    res = commutator_residual(P1, P2, I * HBAR * Coefficient.const("e") * curl, rep)
    del rep
    gc.collect()
    assert res < 1e-6
