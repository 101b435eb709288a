from fractions import Fraction
from itertools import product as iproduct

import numpy as np
import pytest

from clusterdilog import torus
from clusterdilog.errors import IncompatibleContexts, NonInvertible, NonTruncating
from clusterdilog.exchange import ExchangeMatrix
from clusterdilog.ratfunc import QCoefficient, RationalPointField
from clusterdilog.torus import (
    TorusElement,
    add,
    deviation_from,
    invert,
    monomial,
    multiply,
    pairing,
    power,
    psi_series,
    unit,
    zero_element,
)

A2 = ExchangeMatrix(np.array([[0, -1], [1, 0]]))
N = 6


def Y(alpha, order=N):
    return monomial(alpha, A2, order)


def one(order=N):
    return unit(A2, order)


def qp(elem, j):
    return elem.scale_q_power(j)


def random_sparse(rng, B, order, nterms=3):
    n = B.n
    base = tuple(int(b) for b in rng.integers(-2, 3, size=n))
    terms = {}
    for _ in range(nterms):
        d = tuple(int(x) for x in rng.integers(0, order // 2 + 1, size=n))
        if sum(d) > order:
            continue
        coeff = QCoefficient.from_poly(
            [int(c) for c in rng.integers(-3, 4, size=3)]).mul_q_power(int(rng.integers(-2, 3)))
        terms[d] = coeff
    terms.setdefault((0,) * n, QCoefficient.from_int(int(rng.integers(-2, 3))))
    return TorusElement(B, order, base, terms)


def reference_multiply(a, b):
    """Slow first-principles product: move every generator monomial past
    the other via q^<a,b> Y^a Y^b = Y^(a+b), term by term."""
    B, order = a.matrix, a.order
    n = B.n
    out = {}
    for (d1, c1), (d2, c2) in iproduct(a.terms.items(), b.terms.items()):
        if c1.is_zero() or c2.is_zero():
            continue
        # each normal-form term is c * Y^base Y^d = c q^(-<base,d>) Y^(base+d)
        m1 = tuple(x + y for x, y in zip(a.base, d1))
        m2 = tuple(x + y for x, y in zip(b.base, d2))
        expo = -pairing(a.base, d1, B) - pairing(b.base, d2, B)
        # Y^m1 Y^m2 = q^(-<m1,m2>) Y^(m1+m2)
        expo -= pairing(m1, m2, B)
        tot = tuple(x + y for x, y in zip(m1, m2))
        # back to normal form: Y^tot = q^<gbase,shift> Y^gbase Y^shift
        gbase = tuple(x + y for x, y in zip(a.base, b.base))
        shift = tuple(x - y for x, y in zip(tot, gbase))
        if sum(shift) > order:
            continue
        assert all(s >= 0 for s in shift)
        expo += pairing(gbase, shift, B)
        coeff = (c1 * c2).mul_q_power(expo)
        prev = out.get(shift)
        out[shift] = coeff if prev is None else prev + coeff
    return TorusElement(B, order, tuple(x + y for x, y in zip(a.base, b.base)), out)


class TestPairing:
    def test_a2_values(self):
        assert pairing((1, 0), (0, 1), A2) == -1
        assert pairing((0, 1), (1, 0), A2) == 1

    def test_explicit_sum_oracle(self):
        rng = np.random.default_rng(0)
        B = ExchangeMatrix(np.array([[0, 2, -1], [-2, 0, 3], [1, -3, 0]]))
        for _ in range(20):
            a = [int(x) for x in rng.integers(-4, 5, size=3)]
            b = [int(x) for x in rng.integers(-4, 5, size=3)]
            brute = sum(a[i] * B.entries[i, j] * b[j] for i in range(3) for j in range(3))
            assert pairing(a, b, B) == brute
            assert pairing(a, b, B) == -pairing(b, a, B)
        assert pairing((1, 2, 3), (1, 2, 3), B) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            pairing((1,), (0, 1), A2)


class TestMonomialAndMultiply:
    def test_zero_exponent_is_identity(self):
        e = Y((0, 0))
        assert multiply(e, Y((1, 1))) == Y((1, 1))

    def test_monomial_product_rule(self):
        a, b = (1, 0), (0, 1)
        lhs = multiply(Y(a), Y(b))
        rhs = Y((1, 1)).scale_q_power(-pairing(a, b, A2))
        assert lhs == rhs

    def test_a2_weyl_normalisation(self):
        # Y^(e1+e2) = q^-1 Y1 Y2
        assert Y((1, 1)) == qp(multiply(Y((1, 0)), Y((0, 1))), -1)

    def test_commutation_factor(self):
        lhs = multiply(Y((1, 0)), Y((0, 1)))
        rhs = qp(multiply(Y((0, 1)), Y((1, 0))), 2)
        assert lhs == rhs

    def test_multiply_by_one(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            a = random_sparse(rng, A2, N)
            assert multiply(a, one()) == a
            assert multiply(one(), a) == a

    def test_associativity_against_reference(self):
        rng = np.random.default_rng(2)
        for _ in range(15):
            a, b, c = (random_sparse(rng, A2, 4) for _ in range(3))
            ab_c = multiply(multiply(a, b), c)
            a_bc = multiply(a, multiply(b, c))
            assert ab_c == a_bc
            assert multiply(a, b) == reference_multiply(a, b)

    def test_distributivity(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            a, b, c = (random_sparse(rng, A2, 4) for _ in range(3))
            assert multiply(a, add(b, c)) == add(multiply(a, b), multiply(a, c))

    def test_context_mixing_is_an_error(self):
        other = ExchangeMatrix(np.array([[0, 1], [-1, 0]]))
        with pytest.raises(IncompatibleContexts):
            multiply(Y((1, 0)), monomial((1, 0), other, N))
        with pytest.raises(IncompatibleContexts):
            multiply(Y((1, 0)), monomial((1, 0), A2, N + 1))
        with pytest.raises(IncompatibleContexts):
            ring = RationalPointField(Fraction(1, 3))
            multiply(Y((1, 0)), monomial((1, 0), A2, N, ring))


class TestInvert:
    def test_monomial_inverse(self):
        assert invert(Y((1, 1))) == Y((-1, -1))
        assert invert(Y((-2, 1))) == Y((2, -1))

    def test_two_sided_inverse_of_series(self):
        e = add(one(), Y((1, 0)))
        assert multiply(e, invert(e)) == one()
        assert multiply(invert(e), e) == one()

    def test_geometric_series_coefficients(self):
        inv = invert(add(one(), Y((1, 0))))
        for m in range(N + 1):
            got = inv.terms[(m, 0)]
            assert got == QCoefficient.from_int((-1) ** m), m

    def test_involution_up_to_truncation(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            a = random_sparse(rng, A2, 4)
            if a.constant_coefficient().is_zero():
                continue
            assert invert(invert(a)) == a

    def test_noninvertible(self):
        with pytest.raises(NonInvertible):
            invert(Y((1, 0)) - Y((1, 0)))
        with pytest.raises(NonInvertible):
            invert(TorusElement(A2, N, (0, 0), {(1, 0): QCoefficient.from_int(1)}))


class TestPsiSeries:
    def test_constant_term_and_low_coefficients(self):
        P = psi_series(Y((1, 0), 8))
        assert P.terms[(0, 0)].is_one()
        assert P.terms[(1, 0)] == QCoefficient.from_poly([0, -1]) * \
            QCoefficient.qpochhammer_inverse(1)
        assert P.terms[(2, 0)] == QCoefficient.from_poly([0, 0, 1]) * \
            QCoefficient.qpochhammer_inverse(2)

    def test_of_zero_is_one(self):
        assert psi_series(zero_element(A2, N)) == one()

    def test_recursion_at_every_truncation_order(self):
        for order in (2, 4, 6, 8):
            for arg in (Y((1, 0), order), Y((1, 1), order),
                        multiply(Y((1, 0), order), Y((0, 1), order))):
                lhs = psi_series(qp(arg, 2))
                rhs = multiply(add(unit(A2, order), qp(arg, 1)), psi_series(arg))
                assert lhs == rhs

    def test_nontruncating_rejected(self):
        with pytest.raises(NonTruncating):
            psi_series(Y((-1, 0)))
        with pytest.raises(NonTruncating):
            psi_series(add(one(), Y((1, 0))))  # nonzero degree-0 part

    def test_nonnegative_base_with_series_tail_accepted(self):
        arg = multiply(Y((0, 1)), add(one(), qp(Y((1, 0)), 1)))
        P = psi_series(arg)
        assert P.terms[(0, 0)].is_one()


class TestEvaluation:
    def test_commutative_evaluation_with_laurent_base(self):
        e = qp(multiply(Y((-1, 0)), add(one(), Y((0, 1)))), 3)
        y = (0.7, 0.4)
        # q = 1: e -> y1^-1 (1 + y2)
        assert e.evaluate_commutative(y, 1) == pytest.approx((1 + y[1]) / y[0])

    def test_rational_point_pentagon(self):
        ring = RationalPointField(Fraction(2, 7))
        u = unit(A2, 8, ring)
        y1 = monomial((1, 0), A2, 8, ring)
        y2 = monomial((0, 1), A2, 8, ring)
        y12 = monomial((1, 1), A2, 8, ring)
        P = u
        for f in (psi_series(y1), psi_series(y2), invert(psi_series(y1)),
                  invert(psi_series(y12)), invert(psi_series(y2))):
            P = multiply(P, f)
        assert deviation_from(P, u) == []
