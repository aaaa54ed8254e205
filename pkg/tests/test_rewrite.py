import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import bubble_normal_form
from qaxiom.errors import UnknownGenerator
from qaxiom.symalg import (
    HBAR, I, Coefficient, NCPolynomial, commutator, gen, heisenberg, is_normal_ordered, magnetic2,
    normal_order,
)

H = heisenberg(2)
MAG = magnetic2()
P1, P2, Q1, Q2 = (NCPolynomial.generator(gen(x)) for x in ("P1", "P2", "Q1", "Q2"))
hbar = NCPolynomial.constant(HBAR)
i = NCPolynomial.constant(I)


@st.composite
def polynomials(draw, max_degree=5, max_terms=4):
    gens = [P1, P2, Q1, Q2]
    consts = [Coefficient.scalar(1), Coefficient.scalar(-2), Coefficient.scalar(0, 1), HBAR,
              Coefficient.const("B", -1), Coefficient.const("e") * Coefficient.scalar(1, 3)]
    p = NCPolynomial()
    for _ in range(draw(st.integers(1, max_terms))):
        word = NCPolynomial.constant(draw(st.sampled_from(consts)))
        for _ in range(draw(st.integers(0, max_degree))):
            word = word * draw(st.sampled_from(gens))
        p = p + word
    return p


algebras = st.sampled_from([H, MAG, magnetic2(+1), heisenberg(2, +1)])


def test_pq_under_heisenberg():
    assert normal_order(P1 * Q1, H) == Q1 * P1 - i * hbar


def test_ordered_word_unchanged():
    assert normal_order(Q1 * Q2, H) == Q1 * Q2


def test_ppq_under_heisenberg():
    assert normal_order(P1 * P1 * Q1, H) == Q1 * P1 * P1 - 2 * i * hbar * P1


def test_commutator_examples():
    assert commutator(P1, Q1, H) == -i * hbar
    assert commutator(Q1, Q1, MAG).is_zero()
    assert commutator(P1 * P2, Q1, H) == -i * hbar * P2


def test_magnetic_brackets():
    eB = NCPolynomial.constant(Coefficient.const("e") * Coefficient.const("B"))
    assert commutator(P1, P2, MAG) == -i * hbar * eB
    assert commutator(Q1, Q2, magnetic2(+1)) == -i * hbar * NCPolynomial.constant(
        (Coefficient.const("e") * Coefficient.const("B")).inverse())


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        normal_order(NCPolynomial.generator(gen("P3")), H)


@pytest.mark.parametrize("a", [H, MAG], ids=["heisenberg2", "magnetic2"])
def test_bubble_oracle_all_words_up_to_six(a):
    for n in range(7):
        for w in itertools.product(a.generators, repeat=n):
            assert normal_order(NCPolynomial.word(w), a) == bubble_normal_form(w, a)


def test_custom_order_changes_normal_form_not_value():
    swapped = H.with_order([gen("P1"), gen("P2"), gen("Q1"), gen("Q2")])
    nf = normal_order(Q1 * P1, swapped)
    assert nf == P1 * Q1 + i * hbar
    assert all(is_normal_ordered(w, swapped) for w, _ in nf.items())
    # both normal forms describe the same element
    assert normal_order(nf, H) == normal_order(Q1 * P1, H)


@given(polynomials(), algebras)
def test_idempotent(p, a):
    n = normal_order(p, a)
    assert normal_order(n, a) == n
    assert all(is_normal_ordered(w, a) for w, _ in n.items())


@given(polynomials(3, 3), polynomials(3, 3), algebras)
def test_antisymmetric(p, q, a):
    assert commutator(p, q, a) == -commutator(q, p, a)


@given(polynomials(2, 3), polynomials(2, 3), polynomials(2, 3), algebras)
def test_bilinear(p, q, r, a):
    alpha = NCPolynomial.constant(Coefficient.scalar(3, -1) * HBAR)
    assert commutator(alpha * p + r, q, a) == alpha * commutator(p, q, a) + commutator(r, q, a)


@given(polynomials(3, 2), polynomials(3, 2), polynomials(3, 2), algebras)
def test_leibniz(p, q, r, a):
    lhs = commutator(p * q, r, a)
    rhs = normal_order(p * commutator(q, r, a) + commutator(p, r, a) * q, a)
    assert lhs == rhs
