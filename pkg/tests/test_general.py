"""Interface-system solver: factorization identity, determinants, n = 1 cross-check."""

import numpy as np
import pytest

from schrostep import (
    GeneralSolver,
    InitialCondition,
    PiecewisePotential,
    StepSolver,
    interface_system,
    nu,
    reduced_system,
    solve_unknowns,
    trig_denominator,
)


def q4_nodes(count, rmin, rmax, seed=11):
    rng = np.random.default_rng(seed)
    r = rng.uniform(rmin, rmax, count)
    th = rng.uniform(-np.pi / 2 + 0.05, -0.05, count)
    return r * np.exp(1j * th)


def test_reduced_factorization_matches_raw_matrix():
    pot = PiecewisePotential([0.5, -1.5, 3.0, 0.7], [0.0, 0.8, 2.1])
    kap = q4_nodes(40, 3.2, 9.0)
    raw = interface_system(pot, kap)
    ldiag, AM = reduced_system(pot, kap)
    recon = ldiag[:, :, None] * AM
    scale = np.abs(raw).max(axis=(1, 2), keepdims=True)
    assert (np.abs(raw - recon) / scale).max() < 1e-12


def test_single_jump_determinant_is_nu_sum():
    pot = PiecewisePotential([1.0, 2.0], [0.0])
    kap = q4_nodes(25, 2.5, 8.0, seed=3)
    _, AM = reduced_system(pot, kap)
    det = np.linalg.det(AM)
    want = nu(1.0, kap) + nu(2.0, kap)
    assert np.abs(det - want).max() / np.abs(want).max() < 1e-13


@pytest.mark.parametrize("alpha", [-4.0, 4.0, 2.5])
def test_two_jump_determinant_proportional_to_trig_form(alpha):
    x2 = 1.0
    pot = PiecewisePotential([0.0, alpha, 0.0], [0.0, x2])
    kap = q4_nodes(30, 3.5, 9.0, seed=5)
    _, AM = reduced_system(pot, kap)
    det = np.linalg.det(AM)
    ratio = det * np.exp(kap * x2) / trig_denominator(alpha, x2, kap)
    assert np.abs(ratio - 2j).max() < 1e-12


def test_unknowns_satisfy_raw_system():
    pot = PiecewisePotential([0.0, 4.0, 0.0], [0.0, 1.0])
    ic = InitialCondition.gaussian(center=-3.0)
    kap = q4_nodes(12, 3.5, 7.0, seed=9)
    X = solve_unknowns(pot, ic, kap)
    ldiag, AM = reduced_system(pot, kap)
    lhs = np.einsum("kij,kj->ki", AM, X)
    from schrostep.general import rhs_reduced
    rhs = rhs_reduced(pot, ic, kap)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_single_jump_matches_step_solver():
    pot = PiecewisePotential([1.0, 2.0], [0.0])
    ic = InitialCondition.gaussian(center=-1.0, momentum=0.7)
    g = GeneralSolver(pot, ic)
    s = StepSolver(pot, ic)
    for x in (-1.5, 0.0, 1.2):
        a = g.evaluate(x, 0.5)
        b = s.evaluate(x, 0.5)
        assert abs(a.value - b.value) < 1e-10


def test_three_jump_interface_continuity():
    pot = PiecewisePotential([0.0, 2.0, -1.0, 0.5], [0.0, 0.7, 1.5])
    ic = InitialCondition.gaussian(center=-2.0, width=0.8, momentum=1.0)
    g = GeneralSolver(pot, ic)
    for ell, xl in enumerate(pot.interfaces, start=1):
        a = g.evaluate(xl, 0.4, region=ell, derivative=True)
        b = g.evaluate(xl, 0.4, region=ell + 1, derivative=True)
        assert abs(a.value - b.value) < 1e-6
        assert abs(a.psi_x - b.psi_x) < 1e-5


def test_time_zero_and_negative_time():
    pot = PiecewisePotential([0.0, 4.0, 0.0], [0.0, 1.0])
    ic = InitialCondition.gaussian(center=-3.0)
    g = GeneralSolver(pot, ic)
    got = g.evaluate(0.3, 0.0)
    assert abs(got.value - ic.evaluate(np.array([0.3]))[0]) < 1e-14
    with pytest.raises(ValueError):
        g.evaluate(0.3, -1.0)
