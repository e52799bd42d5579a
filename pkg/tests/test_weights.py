import math

import pytest

import qsympoly as qp
from conftest import oracle_qpoch_inf, rel

CTX = qp.QContext(0.5)
Q = 0.5
ULTRA = qp.make_ultraspherical(0.4, 0.7, CTX)
HERM = qp.make_hermite(0.3, CTX)
HERM0 = qp.make_hermite(0.0, CTX)


class TestPearsonRatio:
    def test_at_zero(self):
        V = ULTRA.V
        want = (V.b + V.d * (Q - 1)) / (Q * Q * V.b)
        assert rel(qp.pearson_ratio(V, CTX, 0.0), want) < 1e-15

    def test_hermite_display(self):
        # (-p q^2 + p + 1) / (q^2 + (q^2 - 1) q^4 x^2)
        p = 0.3
        for x in (0.2, 0.8, 1.1):
            want = (-p * Q * Q + p + 1) / (Q * Q + (Q * Q - 1) * Q**4 * x * x)
            assert rel(qp.pearson_ratio(HERM.V, CTX, x), want) < 1e-14

    def test_ultraspherical_display(self):
        # (q(q^2-1)(x^2(alpha+beta+1) - alpha) + x^2 - 1) / (q^2(q^2 x^2 - 1))
        al, be = 0.4, 0.7
        for x in (0.2, 0.5, 0.9):
            want = (Q * (Q * Q - 1) * (x * x * (al + be + 1) - al) + x * x - 1) / (
                Q * Q * (Q * Q * x * x - 1)
            )
            assert rel(qp.pearson_ratio(ULTRA.V, CTX, x), want) < 1e-14

    def test_pole(self):
        V = qp.CharVector(1.0, -0.25, 0.3, 0.1)  # a q^2 x^2 = -b at x = 1
        with pytest.raises(qp.ZeroDenominatorError):
            qp.pearson_ratio(V, CTX, 1.0)


class TestWeightGeneral:
    def test_pearson_consistency(self):
        for fam in (ULTRA, HERM, HERM0, qp.make_chebyshev5(CTX)):
            spec = fam.weight_spec()
            for j in range(1, 21):
                x = fam.support * Q**j
                assert rel(spec.pearson_lhs(x), spec.pearson_rhs(x)) < 1e-11

    def test_evenness_exact(self):
        for x in (0.2, 0.7, 0.99):
            assert qp.weight_general(ULTRA.V, CTX, x) == qp.weight_general(
                ULTRA.V, CTX, -x
            )

    def test_rejects_x_zero(self):
        with pytest.raises(ValueError):
            qp.weight_general(ULTRA.V, CTX, 0.0)

    def test_invalid_power_base(self):
        V = qp.CharVector(1.0, 1.0, 0.0, 3.0)  # 1 + d(q-1)/b = -0.5
        with pytest.raises(qp.InvalidBaseError):
            qp.weight_general(V, CTX, 0.5)

    def test_hermite_collapse_is_exact(self):
        # a computed as (1+q)(1-q) makes a + c(q-1) cancel exactly, so the
        # denominator product of the general solution is exactly 1
        for q in (0.3, 0.5, 0.77, 0.9):
            fam = qp.make_hermite(0.25, qp.QContext(q))
            assert fam.V.a + fam.V.c * (q - 1) == 0.0


class TestWeightStar:
    def test_hermite_general_display(self):
        # W2* = (p(1-q^2)+1)^(log x^2 / (2 log q)) (q^2 (1-q^2) x^2; q^2)_inf
        p = 0.3
        for x in (0.3, 0.8, 1.1):
            P = p * (1 - Q * Q) + 1
            power = math.exp(math.log(P) * math.log(x * x) / (2 * math.log(Q)))
            want = power * oracle_qpoch_inf(Q * Q * (1 - Q * Q) * x * x, Q * Q)
            assert rel(qp.weight_star(HERM.V, CTX, x), want) < 1e-12

    def test_ultraspherical_display(self):
        # W1* = (B^2)^(log x^2/(2 log q)) (q^2 x^2;q^2)_inf / (-A^2 x^2/B^2;q^2)_inf
        al, be = 0.4, 0.7
        Asq = (Q - Q**3) * (al + be + 1) - 1
        Bsq = al * (Q**3 - Q) + 1
        for x in (0.3, 0.8, 0.99):
            power = math.exp(math.log(Bsq) * math.log(x * x) / (2 * math.log(Q)))
            want = (
                power
                * oracle_qpoch_inf(Q * Q * x * x, Q * Q)
                / oracle_qpoch_inf(-Asq * x * x / Bsq, Q * Q)
            )
            assert rel(qp.weight_star(ULTRA.V, CTX, x), want) < 1e-12

    def test_chebyshev_displays(self):
        # weight arguments (q^4-q+1)/(q^3-q+1) and (q^6-q+1)/(q^3-q+1)
        for fam, topnum in ((qp.make_chebyshev5(CTX), Q**4 - Q + 1),
                            (qp.make_chebyshev6(CTX), Q**6 - Q + 1)):
            Bsq = Q**3 - Q + 1
            for x in (0.4, 0.9):
                power = math.exp(math.log(Bsq) * math.log(x * x) / (2 * math.log(Q)))
                want = (
                    power
                    * oracle_qpoch_inf(Q * Q * x * x, Q * Q)
                    / oracle_qpoch_inf(topnum / Bsq * x * x, Q * Q)
                )
                assert rel(qp.weight_star(fam.V, CTX, x), want) < 1e-12

    def test_continuous_extension_at_zero(self):
        assert qp.weight_star(HERM0.V, CTX, 0.0) == 1.0
        assert qp.weight_star(HERM.V, CTX, 0.0) == float("inf")
        assert qp.weight_star(ULTRA.V, CTX, 0.0) == 0.0

    def test_positive_even_grid(self):
        for fam in (ULTRA, HERM, HERM0, qp.make_chebyshev5(CTX), qp.make_chebyshev6(CTX)):
            report = qp.weight_grid_report(fam.weight_spec(), n_terms=256)
            assert report.positive and report.even_exact
            assert report.min_value > 0


class TestBoundary:
    def test_ultraspherical_endpoint(self):
        rep = qp.boundary_vanishing_check(ULTRA.weight_spec(), CTX, tol=1e-12)
        assert rep.ok
        assert rep.ratio <= 1e-12

    def test_hermite_endpoint(self):
        rep = qp.boundary_vanishing_check(HERM.weight_spec(), CTX, tol=1e-12)
        assert rep.ok

    def test_perturbed_support_fails(self):
        bad = qp.WeightSpec(ULTRA.V, 0.9, CTX)
        rep = qp.boundary_vanishing_check(bad, CTX, tol=1e-12)
        assert not rep.ok
        assert rep.ratio > 1e-3
