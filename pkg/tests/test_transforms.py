import numpy as np
import pytest

from schrostep import InitialCondition, PiecewisePotential, free_term, hat_transform, whole_line_hat
from schrostep.oracle import free_gaussian

STEP = PiecewisePotential([1.0, 2.0], [0.0])


def test_gaussian_hat_reference_value():
    """Left half-line transform of exp(-y^2) at k = 1 - 0.5i.

    Frozen with mpmath quadrature in tools/make_reference_values.py.  Checked
    through the ungated kernel because the public entry point only admits the
    half plane where arbitrary data stay integrable.
    """
    from schrostep.transforms import _gauss_hat_piece
    got = _gauss_hat_piece(1.0, 0.0, 1.0, 0.0, np.array([1.0 - 0.5j]),
                           -np.inf, 0.0, 0.0)[0]
    want = 0.85802348410093029 + 0.65228518359757822j
    assert abs(got - want) < 1e-14
    ic = InitialCondition.gaussian()
    legal = hat_transform(ic, STEP, 1, 1.0 + 0.5j)
    mirror = _gauss_hat_piece(1.0, 0.0, 1.0, 0.0, np.array([1.0 + 0.5j]),
                              -np.inf, 0.0, 0.0)[0]
    assert abs(legal - mirror) < 1e-14


def test_hat_origin_shift_is_exact_phase():
    pot = PiecewisePotential([0.0, 3.0, 0.0], [0.0, 1.2])
    ic = InitialCondition.gaussian(center=0.4, width=0.7, momentum=1.1)
    k = 2.0 - 1.3j
    a = hat_transform(ic, pot, 2, k, origin=1.2)
    b = np.exp(1j * k * 1.2) * hat_transform(ic, pot, 2, k, origin=0.0)
    assert abs(a - b) < 1e-13 * max(1.0, abs(a))


def test_interior_transform_reference_value():
    # int_0^1 exp(-2iy) dy, frozen in tools/make_reference_values.py
    pot = PiecewisePotential([0.0, 1.0, 0.0], [0.0, 1.0])
    xs = np.linspace(-0.5, 1.5, 401)
    ic = InitialCondition.tabulated(xs, np.ones_like(xs, dtype=complex))
    got = hat_transform(ic, pot, 2, 2.0)
    want = 0.45464871341284085 - 0.70807341827357119j
    assert abs(got - want) < 1e-12


def test_half_line_gates():
    ic = InitialCondition.gaussian()
    hat_transform(ic, STEP, 1, 1.0 + 0.2j)
    with pytest.raises(ValueError):
        hat_transform(ic, STEP, 1, 1.0 - 0.2j)   # grows on the left half line
    with pytest.raises(ValueError):
        hat_transform(ic, STEP, 2, 1.0 + 0.2j)   # grows on the right half line
    hat_transform(ic, STEP, 2, 1.0 - 0.2j)


def test_whole_line_hat_splits():
    ic = InitialCondition.gaussian(center=-0.3, momentum=0.6)
    k = 1.7
    whole = whole_line_hat(ic, k)
    parts = hat_transform(ic, STEP, 1, k) + hat_transform(ic, STEP, 2, k)
    assert abs(whole - parts) < 1e-14


def test_free_term_matches_free_gaussian():
    # with alpha = 0 on both sides the two half-line heat pieces sum to the
    # exact free evolution
    pot = PiecewisePotential([0.0, 0.0], [0.0])
    ic = InitialCondition.gaussian(center=-1.0, width=0.8, momentum=0.5)
    for x in (-1.5, 0.0, 2.0):
        want = free_gaussian(np.array([x]), 0.6, -1.0, 0.8, 0.5, 1.0)[0]
        got = free_term(ic, pot, 1, x, 0.6) + free_term(ic, pot, 2, x, 0.6)
        assert abs(got - want) < 1e-12


def test_free_term_alpha_phase():
    pot0 = PiecewisePotential([0.0, 0.0], [0.0])
    pot2 = PiecewisePotential([2.0, 2.0], [0.0])
    ic = InitialCondition.gaussian()
    a = free_term(ic, pot0, 1, -0.7, 0.4)
    b = free_term(ic, pot2, 1, -0.7, 0.4)
    assert abs(b - a * np.exp(-2j * 0.4)) < 1e-13


def test_free_term_derivative_consistency():
    pot = PiecewisePotential([1.0, 2.0], [0.0])
    ic = InitialCondition.gaussian(center=-1.0)
    x, t, h = -0.9, 0.5, 1e-6
    F, dF = free_term(ic, pot, 1, x, t, derivative=True)
    fd = (free_term(ic, pot, 1, x + h, t) - free_term(ic, pot, 1, x - h, t)) / (2 * h)
    assert abs(dF - fd) < 1e-8


def test_tabulated_matches_gaussian_when_sampled():
    xs = np.linspace(-7.0, 7.0, 1400)
    gauss = InitialCondition.gaussian(center=0.2, width=0.9)
    tab = InitialCondition.tabulated(xs, gauss.evaluate(xs))
    k = 1.4 + 0.8j
    a = hat_transform(gauss, STEP, 1, k)
    b = hat_transform(tab, STEP, 1, k)
    assert abs(a - b) < 5e-9
    xq = np.array([-0.37, 0.81])
    assert np.max(np.abs(gauss.evaluate(xq) - tab.evaluate(xq))) < 5e-9
    assert np.max(np.abs(gauss.derivative(xq) - tab.derivative(xq))) < 1e-6


def test_tabulated_validation():
    with pytest.raises(ValueError):
        InitialCondition.tabulated([0.0, 1.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        InitialCondition.gaussian(width=0.0)
