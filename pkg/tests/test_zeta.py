import math
from fractions import Fraction

import numpy as np
import pytest

from supersdet import series as cs
from supersdet import zeta as zs
from supersdet.grassmann import GrassmannElement, even, odd, scalar
from supersdet.zeta import BoundaryCondition as BC


# ---------------------------------------------------------------------------
# regularized free products
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_regularized_product_power(n):
    power = zs.regularized_product_power(n)
    assert power.coefficient == 1
    assert power.r_exponent == Fraction(n, 2)


def test_regularized_product_additivity():
    # the same sequence squared doubles the exponent
    assert zs.regularized_product_power(4).r_exponent \
        == 2 * zs.regularized_product_power(2).r_exponent


# ---------------------------------------------------------------------------
# inverse-power traces: exact values and convergent mode sums
# ---------------------------------------------------------------------------

def test_trace_values_exact():
    per = zs.trace_inv_power(BC.PERIODIC, 2)
    assert per.coefficient == Fraction(-1, 12) and per.r_exponent == 2
    anti = zs.trace_inv_power(BC.ANTIPERIODIC, 2)
    assert anti.coefficient == Fraction(-1, 4)
    for k in range(1, 5):
        value = zs.trace_inv_power(BC.PERIODIC, 2 * k).coefficient
        assert value == -cs.bernoulli(2 * k) / math.factorial(2 * k)
        assert value.denominator > 0  # real rational
        anti_k = zs.trace_inv_power(BC.ANTIPERIODIC, 2 * k).coefficient
        assert anti_k == (Fraction(2) ** (2 * k) - 1) * value


def _mode_sum_periodic(two_k: int, modes: int) -> float:
    """Direct sum over the nonzero integer modes at r = 1, with the
    Euler-Maclaurin tail of the convergent series appended:
    sum_{l>N} l^{-s} = N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12 - O(N^{-s-3})."""
    s = two_k
    l = np.arange(modes, 0, -1, dtype=np.float64)  # ascending magnitudes
    partial = float(np.sum(l ** (-s)))
    N = float(modes)
    tail = N ** (1 - s) / (s - 1) - N ** (-s) / 2 + s * N ** (-s - 1) / 12
    # Tr = 2 sum (1/(2 pi i l))^{2k} = 2 (-1)^k (2 pi)^{-2k} sum l^{-2k}
    return 2.0 * (-1.0) ** (s // 2) * (2 * math.pi) ** (-s) * (partial + tail)


def _mode_sum_antiperiodic(two_k: int, modes: int) -> float:
    s = two_k
    l = np.arange(modes, 0, -1, dtype=np.float64)
    half = l - 0.5
    partial = float(np.sum(half ** (-s)))
    edge = float(modes) + 0.5
    tail = edge ** (1 - s) / (s - 1) + edge ** (-s) / 2 + s * edge ** (-s - 1) / 12
    return 2.0 * (-1.0) ** (s // 2) * (2 * math.pi) ** (-s) * (partial + tail)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_trace_matches_mode_sums(k):
    modes = 10 ** 5
    per = zs.trace_inv_power(BC.PERIODIC, 2 * k)
    assert abs(float(per.coefficient) - _mode_sum_periodic(2 * k, modes)) < 1e-8
    anti = zs.trace_inv_power(BC.ANTIPERIODIC, 2 * k)
    assert abs(float(anti.coefficient) - _mode_sum_antiperiodic(2 * k, modes)) < 1e-8


def test_trace_argument_validation():
    with pytest.raises(ValueError):
        zs.trace_inv_power(BC.PERIODIC, 3)
    with pytest.raises(ValueError):
        zs.regularized_product_power(0)


# ---------------------------------------------------------------------------
# Fredholm factors
# ---------------------------------------------------------------------------

def test_fredholm_pf_is_half_det():
    curvature = zs.FormalCurvature(3)
    for bc in (BC.PERIODIC, BC.ANTIPERIODIC):
        det = zs.fredholm_log_det(curvature, bc)
        pf = zs.fredholm_log_pf(curvature, bc)
        assert pf * Fraction(2) == det


def test_fredholm_zero_curvature():
    matrix = zs.CurvatureMatrix([[scalar(0), scalar(0)], [scalar(0), scalar(0)]])
    assert zs.fredholm_log_det(matrix, BC.PERIODIC).is_zero()
    assert zs.fredholm_log_pf(matrix, BC.ANTIPERIODIC).is_zero()


def test_formal_log_det_exponent():
    # -sum_k Tr((iR)^{2k}) Tr((d/dt)^{-2k}) / (2k) with the formal dictionary:
    # coefficient of ph_k is -(2/k) 4^k (2k)! zeta_over_2pii(2k)
    K = 3
    log_det = zs.fredholm_log_det(zs.FormalCurvature(K), BC.PERIODIC)
    for k in range(1, K + 1):
        coeff = -Fraction(2, k) * Fraction(4) ** k * math.factorial(2 * k) \
            * cs.zeta_over_2pii(2 * k)
        expected = coeff * cs.GradedPolynomial.generator(k, K, "ph")
        assert log_det.weight_component(k) == expected


# ---------------------------------------------------------------------------
# operator-level values
# ---------------------------------------------------------------------------

def test_zeta_pf_free_values():
    d_a, d_eta1, d_eta2 = zs.pa_kinetic_operators(4, None)
    assert zs.zeta_pf(d_eta1).r_exponent == Fraction(4, 2)
    assert zs.zeta_pf(d_eta2).r_exponent == Fraction(4, 2)
    assert zs.zeta_det(d_a).r_exponent == Fraction(8)
    with pytest.raises(ValueError):
        zs.zeta_det(d_eta1)
    with pytest.raises(ValueError):
        zs.zeta_pf(d_a)


def test_sdet_flat_case_is_one():
    result = zs.sdet(zs.pa_kinetic_operators(5, None))
    assert result.r_exponent == 0
    assert (result.value - scalar(1)).is_zero()


@pytest.mark.parametrize("n", [1, 2, 4, 8])
@pytest.mark.parametrize("K", [1, 2, 3, 4])
def test_sdet_equals_signature_class(n, K):
    assert zs.sdet_matches_l_class(n, K)


def test_sdet_degree_parts_in_p():
    converted = cs.powersums_to_pontryagin(2)(zs.sdet_formal(4, 2))
    p1 = cs.GradedPolynomial.generator(1, 2, "p")
    p2 = cs.GradedPolynomial.generator(2, 2, "p")
    assert converted.weight_component(1) == Fraction(1, 3) * p1
    assert converted.weight_component(2) == Fraction(1, 45) * (7 * p2 - p1 * p1)


@pytest.mark.parametrize("K", [1, 2, 3, 4])
def test_pp_sector_is_one(K):
    assert zs.sdet_formal(4, K, pp=True) == cs.GradedPolynomial.one(K, "ph")


def test_r_powers_cancel_for_all_dimensions():
    for n in range(1, 9):
        result = zs.sdet(zs.pa_kinetic_operators(n, zs.FormalCurvature(2)))
        assert result.r_exponent == 0


# ---------------------------------------------------------------------------
# the concrete Grassmann instance
# ---------------------------------------------------------------------------

def test_demo_curvature_is_wellformed():
    matrix = zs.demo_curvature()
    assert matrix.n == 4
    matrix.assert_odd_traces_vanish(7)
    tr2 = matrix.matrix_power_trace(2)
    assert not tr2.is_zero()
    # top Grassmann degree: four generators, so Tr(R^4) and beyond vanish
    assert matrix.matrix_power_trace(4).is_zero()


def test_curvature_matrix_validation():
    with pytest.raises(ValueError):
        zs.CurvatureMatrix([[scalar(0), scalar(1)], [scalar(-1), scalar(0)]])  # body
    with pytest.raises(ValueError):
        zs.CurvatureMatrix([[scalar(0), odd("p") * odd("q")],
                            [odd("p") * odd("q"), scalar(0)]])  # not antisymmetric
    with pytest.raises(ValueError):
        zs.CurvatureMatrix([[scalar(0), odd("p")], [-odd("p"), scalar(0)]])  # odd entry


def test_concrete_equals_formal_under_substitution():
    matrix = zs.demo_curvature()
    concrete = zs.sdet_concrete(matrix)
    phs = [zs.curvature_to_ph(matrix, k) for k in (1, 2)]
    formal = zs.substitute_ph(zs.sdet_formal(4, 2), phs)
    assert (concrete - formal).is_zero()
    assert not (concrete - scalar(1)).is_zero()


def test_concrete_pp_sector():
    matrix = zs.demo_curvature()
    assert (zs.sdet_concrete(matrix, pp=True) - scalar(1)).is_zero()


def test_curvature_to_ph_values():
    matrix = zs.demo_curvature()
    assert zs.curvature_to_ph(matrix, 2).is_zero()  # trace terminates
    ph1 = zs.curvature_to_ph(matrix, 1)
    # (i r / 2)^2 (1/2) Tr(R^2) / 2! carries r^2 and the top monomial
    expected = Fraction(-1, 16) * even("r", 2) * matrix.matrix_power_trace(2)
    assert (ph1 - expected).is_zero()


def test_sdet_report_shapes():
    report = zs.sdet_report(4, 2, "formal")
    assert report["equal"] is True
    assert report["sector"] == "PA"
    assert isinstance(report["sdet"], list)
    report_c = zs.sdet_report(4, 2, "concrete")
    assert report_c["equal"] is True
    with pytest.raises(ValueError):
        zs.sdet_report(5, 2, "concrete")
    with pytest.raises(ValueError):
        zs.sdet_report(4, 2, "nonsense")


def test_formal_log_pf_antiperiodic_exponent():
    # the Pfaffian exponent over half-integer modes: coefficient of ph_k is
    # -(1/k) 4^k (2k)! lambda_over_2pii(2k)
    K = 3
    log_pf = zs.fredholm_log_pf(zs.FormalCurvature(K), BC.ANTIPERIODIC)
    for k in range(1, K + 1):
        coeff = -Fraction(1, k) * Fraction(4) ** k * math.factorial(2 * k) \
            * cs.lambda_over_2pii(2 * k)
        expected = coeff * cs.GradedPolynomial.generator(k, K, "ph")
        assert log_pf.weight_component(k) == expected
