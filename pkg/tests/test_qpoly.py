"""Polynomial arithmetic, q-analogs, and the canonical rendering."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dycktilings.errors import DivisibilityError, DomainError
from dycktilings.qpoly import (
    PQPoly,
    QPoly,
    chu_vandermonde_check,
    chu_vandermonde_sides,
    eval_at_one,
    exact_div,
    pq_int,
    pq_swap,
    q_odd_double_fact,
    qbinom,
    qfact,
    qint,
    qmultinom,
    render_pqpoly,
    render_qpoly,
    subst_p_q,
    subst_q_power,
    touchard_riordan_rhs,
)

qpolys = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
).map(QPoly)

pqpolys = st.dictionaries(
    st.tuples(st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5)),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
).map(PQPoly)


class TestRingLaws:
    @settings(max_examples=250, deadline=None, derandomize=True)
    @given(qpolys, qpolys, qpolys)
    def test_addition_group(self, f, g, h):
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f + QPoly() == f
        assert f - f == QPoly()

    @settings(max_examples=250, deadline=None, derandomize=True)
    @given(qpolys, qpolys, qpolys)
    def test_multiplication(self, f, g, h):
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * QPoly.from_int(1) == f

    @settings(max_examples=250, deadline=None, derandomize=True)
    @given(qpolys, qpolys, qpolys)
    def test_distributivity(self, f, g, h):
        assert f * (g + h) == f * g + f * h
        assert (-f) * g == -(f * g)

    @settings(max_examples=250, deadline=None, derandomize=True)
    @given(qpolys, qpolys)
    def test_exact_division_inverts_multiplication(self, f, g):
        if not g.terms:
            with pytest.raises(DivisibilityError):
                exact_div(f, g)
        else:
            assert exact_div(f * g, g) == f

    @settings(max_examples=150, deadline=None, derandomize=True)
    @given(pqpolys, pqpolys, pqpolys)
    def test_bivariate_ring(self, f, g, h):
        assert f + g == g + f
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h

    @settings(max_examples=150, deadline=None, derandomize=True)
    @given(pqpolys)
    def test_swap_is_an_involution(self, f):
        assert pq_swap(pq_swap(f)) == f
        assert eval_at_one(pq_swap(f)) == eval_at_one(f)


class TestQAnalogs:
    def test_qint(self):
        assert qint(0).render() == "0"
        assert qint(1).render() == "1"
        assert qint(3).render() == "1 + q + q^2"
        with pytest.raises(DomainError):
            qint(-1)

    def test_qfact(self):
        assert qfact(0).render() == "1"
        assert qfact(3).render() == "1 + 2*q + 2*q^2 + q^3"
        assert eval_at_one(qfact(5)) == 120

    def test_qbinom(self):
        assert qbinom(4, 2).render() == "1 + q + 2*q^2 + q^3 + q^4"
        assert qbinom(5, 0).render() == "1"
        assert qbinom(3, 5) == QPoly()
        assert qbinom(3, -1) == QPoly()
        for n in range(7):
            for k in range(n + 1):
                assert eval_at_one(qbinom(n, k)) == _binom(n, k)
                assert qbinom(n, k) == qbinom(n, n - k)

    def test_qbinom_pascal(self):
        for n in range(1, 7):
            for k in range(n + 1):
                recurrence = qbinom(n - 1, k - 1) + QPoly.monomial(2 * k) * qbinom(n - 1, k)
                assert qbinom(n, k) == recurrence

    def test_qmultinom(self):
        assert qmultinom([2, 1]).render() == "1 + q + q^2"
        assert qmultinom([1, 1, 1]) == qfact(3)
        assert qmultinom([3]) == QPoly.from_int(1)

    def test_q_odd_double_fact(self):
        assert q_odd_double_fact(0).render() == "1"
        assert q_odd_double_fact(2).render() == "1 + q + q^2"
        assert q_odd_double_fact(3) == qint(1) * qint(3) * qint(5)
        assert eval_at_one(q_odd_double_fact(5)) == 945

    def test_pq_int(self):
        assert pq_int(1).render() == "1"
        assert pq_int(2).render() == "p + q"
        assert pq_int(3).render() == "p^2 + p*q + q^2"
        assert subst_p_q(pq_int(4), QPoly.from_int(1), QPoly.monomial(2)) == qint(4)


class TestDivisionAndSubstitution:
    def test_exact_div_literal(self):
        assert exact_div(qfact(3), qint(2)) == qmultinom([2, 1])

    def test_exact_div_rejects_remainder(self):
        with pytest.raises(DivisibilityError):
            exact_div(qint(2), QPoly.monomial(2) - QPoly.from_int(1))

    def test_exact_div_rejects_zero_divisor(self):
        with pytest.raises(DivisibilityError):
            exact_div(qint(2), QPoly())

    def test_subst_q_power(self):
        assert subst_q_power(qint(2), Fraction(2)).render() == "1 + q^2"
        assert subst_q_power(qint(2), Fraction(1, 2)).render() == "1 + q^(1/2)"
        half = QPoly.monomial(1)
        with pytest.raises(DomainError):
            subst_q_power(half, Fraction(1, 2))

    def test_subst_p_q(self):
        joint = PQPoly.monomial(1, 1) + PQPoly.monomial(2, 0)
        at_q = subst_p_q(joint, QPoly.monomial(2), QPoly.monomial(2))
        assert at_q.render() == "2*q^2"


class TestFormulas:
    def test_touchard_riordan(self):
        assert touchard_riordan_rhs(0).render() == "1"
        assert touchard_riordan_rhs(1).render() == "1"
        assert touchard_riordan_rhs(2).render() == "2 + q"
        assert touchard_riordan_rhs(3).render() == "5 + 6*q + 3*q^2 + q^3"
        for n in range(9):
            assert eval_at_one(touchard_riordan_rhs(n)) == _odd_double_factorial(n)

    def test_chu_vandermonde(self):
        for m in range(5):
            for n in range(5):
                for k in range(5):
                    assert chu_vandermonde_check(m, n, k), (m, n, k)

    def test_chu_vandermonde_negative_exponent_case(self):
        # k > m forces a q-power below zero inside the sum
        lhs, rhs = chu_vandermonde_sides(1, 3, 3)
        assert lhs == rhs


class TestRendering:
    def test_canonical_q_rendering(self):
        assert QPoly().render() == "0"
        assert QPoly.from_int(-3).render() == "-3"
        assert (-QPoly.monomial(2)).render() == "-q"
        assert QPoly({-2: 1, 0: -2, 1: 3}).render() == "q^(-1) - 2 + 3*q^(1/2)"
        assert QPoly({-1: 2, 2: 3}).render() == "2*q^(-1/2) + 3*q"
        assert render_qpoly(-qint(2)) == "-1 - q"

    def test_canonical_pq_rendering(self):
        assert PQPoly().render() == "0"
        assert PQPoly.monomial(2, 1).render() == "p^2*q"
        assert render_pqpoly(pq_int(2)) == "p + q"
        assert (PQPoly.from_int(1) + PQPoly.monomial(1, 0) + PQPoly.monomial(0, 1)).render() == "1 + p + q"

    def test_rendering_is_injective_on_values(self):
        seen = {}
        for n in range(6):
            for k in range(n + 1):
                text = qbinom(n, k).render()
                if text in seen:
                    assert seen[text] == qbinom(n, k)
                seen[text] = qbinom(n, k)


def _binom(n, k):
    from math import comb

    return comb(n, k)


def _odd_double_factorial(n):
    from math import prod

    return prod(range(1, 2 * n, 2))
