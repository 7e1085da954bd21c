import pytest

from supersdet.gaussian import I
from supersdet.grassmann import even, odd, scalar
from supersdet import linearization as lin
from supersdet.zeta import BoundaryCondition as BC, pa_kinetic_operators


def test_berezin_normalization_and_linearity():
    th1, th2 = odd("theta1"), odd("theta2")
    assert lin.berezin_integrate(th1 * th2) == scalar(1)
    assert lin.berezin_integrate(scalar(4) + th1 * odd("w")).is_zero()
    f = 2 * th1 * th2 + even("t") * th1 * th2 + th1
    assert (lin.berezin_integrate(f) - (scalar(2) + even("t"))).is_zero()
    g = odd("w") * th1 * th2
    assert (lin.berezin_integrate(g) - odd("w")).is_zero()


def test_time_derivative_bumps_orders():
    a0 = lin.component("a", 1, 0)
    assert (lin.time_derivative(a0) - lin.component("a", 1, 1)).is_zero()
    prod = lin.component("eta1", 1, 0) * lin.component("eta1", 2, 0)
    dprod = lin.time_derivative(prod)
    expected = lin.component("eta1", 1, 1) * lin.component("eta1", 2, 0) \
        + lin.component("eta1", 1, 0) * lin.component("eta1", 2, 1)
    assert (dprod - expected).is_zero()
    # curvature entries are constant in time
    assert lin.time_derivative(lin.curvature_entry(1, 2)).is_zero()


def test_normal_form_integration_by_parts():
    # |a'|^2 == -<a, a''> modulo total derivatives
    sq = lin.component("a", 1, 1) * lin.component("a", 1, 1)
    target = -1 * lin.component("a", 1, 0) * lin.component("a", 1, 2)
    assert (lin.normal_form_dt(sq) - lin.normal_form_dt(target)).is_zero()
    # <eta', eta> == -<eta, eta'> for odd components
    lhs = lin.component("eta2", 1, 1) * lin.component("eta2", 1, 0)
    rhs = -1 * lin.component("eta2", 1, 0) * lin.component("eta2", 1, 1)
    assert (lin.normal_form_dt(lhs) - lin.normal_form_dt(rhs)).is_zero()
    # a total derivative reduces to zero... d/dt(a a') = a'a' + a a''
    total = lin.component("a", 1, 1) * lin.component("a", 1, 1) \
        + lin.component("a", 1, 0) * lin.component("a", 1, 2)
    assert lin.normal_form_dt(total).is_zero()


def test_curvature_entry_antisymmetry():
    assert (lin.curvature_entry(1, 2) + lin.curvature_entry(2, 1)).is_zero()
    assert lin.curvature_entry(3, 3).is_zero()


def test_boundary_conditions_from_the_holonomy():
    bcs = lin.derive_boundary_conditions()
    assert bcs == {
        "a": BC.PERIODIC,
        "eta1": BC.PERIODIC,
        "eta2": BC.ANTIPERIODIC,
        "G": BC.ANTIPERIODIC,
    }


@pytest.mark.parametrize("n", [1, 2, 3])
def test_flat_expansion_matches_free_lagrangian(n):
    out = lin.expand_linearized_action(n, with_curvature=False)
    display = lin.normal_form_dt(lin.displayed_lagrangian(n, with_curvature=False))
    assert (out.lagrangian - display).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_curved_expansion_matches_displayed_lagrangian(n):
    out = lin.expand_linearized_action(n, with_curvature=True)
    display = lin.normal_form_dt(lin.displayed_lagrangian(n, with_curvature=True))
    assert (out.lagrangian - display).is_zero()
    assert out.realized_couplings["D_a"] == -I


def test_emitted_operators_and_boundary_conditions():
    out = lin.expand_linearized_action(2, with_curvature=True)
    kinds = [op.kind for op in out.operators]
    assert kinds == ["D_a", "D_eta1", "D_eta2"]
    assert out.operators[0].bc == BC.PERIODIC
    assert out.operators[1].bc == BC.PERIODIC
    assert out.operators[2].bc == BC.ANTIPERIODIC
    assert out.operators[0].coupling == -1
    assert out.operators[2].coupling == +1
    reference = pa_kinetic_operators(2)
    for ours, ref in zip(out.operators, reference):
        assert (ours.kind, ours.dim, ours.bc, ours.coupling) == \
            (ref.kind, ref.dim, ref.bc, ref.coupling)


def test_lagrangian_is_quadratic_normal_form():
    out = lin.expand_linearized_action(2, with_curvature=True)
    # every term carries exactly two component symbols, the first without
    # derivatives; reapplying the normal form is idempotent
    again = lin.normal_form_dt(out.lagrangian)
    assert (again - out.lagrangian).is_zero()
