import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

import fracdual as fd
from fracdual.dual import DualPoint

from conftest import make_reference


def P(mu, vs, sg):
    return DualPoint(mu, vs, sg)


class TestCurvature:
    def test_reduces_to_quad_matrix_at_origin(self):
        prog = make_reference()
        fac = fd.curvature_matrix(prog, P(1.0, 0.0, 0.0))
        assert fac.pd
        assert_allclose(fac.matrix, [[2.0]])

    def test_shift_terms(self):
        prog = make_reference()
        fac = fd.curvature_matrix(prog, P(1.0, 0.0, 1.0))
        assert_allclose(fac.matrix, [[4.0]])
        fac = fd.curvature_matrix(prog, P(1.0, -1.0, 0.0))
        assert_allclose(fac.matrix, [[1.0]])

    def test_indefinite_quad_detected(self):
        prog = fd.validate(
            Q=np.array([[-2.0]]), f_vec=np.array([0.0]), B=np.array([[1.0]]),
            lam=1.0, H=np.array([[-2.0]]), b_vec=np.array([-2.0]), delta=0.5,
        )
        fac = fd.curvature_matrix(prog, P(1.0, 0.0, 0.0))
        assert not fac.pd
        assert fac.min_pivot < 0


class TestConeMembership:
    def test_origin_inside(self):
        prog = make_reference()
        assert fd.in_dual_cone(prog, P(1.0, 0.0, 0.0))

    def test_lower_box_edge_inside_while_pd(self):
        prog = make_reference()
        assert fd.in_dual_cone(prog, P(1.0, -1.0, 0.0))

    def test_below_box_excluded(self):
        prog = make_reference()
        assert not fd.in_dual_cone(prog, P(1.0, -2.0, 0.0))

    def test_negative_sigma_excluded(self):
        prog = make_reference()
        assert not fd.in_dual_cone(prog, P(1.0, 0.0, -0.5))


def test_frozen_dual_values(reference):
    assert fd.dual_value(reference, P(1.0, 0.0, 0.0)) == pytest.approx(0.0, abs=1e-15)
    assert fd.dual_value(reference, P(1.0, 0.0, 1.0)) == pytest.approx(0.5, abs=1e-13)
    assert fd.dual_value(reference, P(1.0, 1.0, 0.0)) == pytest.approx(-1.5, abs=1e-13)


def test_recover_primal(reference):
    assert_allclose(fd.recover_primal(reference, P(1.0, 0.0, 0.0)), [0.0])
    assert_allclose(fd.recover_primal(reference, P(1.0, 0.0, 1.0)), [0.5])
    assert_allclose(fd.recover_primal(reference, P(1.0, -1.0, 0.0)), [0.0])


def test_frozen_gradient(reference):
    ev = fd.evaluate_dual(reference, P(1.0, 0.0, 1.0))
    assert ev.grad_varsigma == pytest.approx(-0.875, abs=1e-12)
    assert ev.grad_sigma == pytest.approx(0.25, abs=1e-12)
    ev0 = fd.evaluate_dual(reference, P(1.0, 0.0, 0.0))
    assert ev0.grad_varsigma == pytest.approx(-1.0, abs=1e-15)
    assert ev0.grad_sigma == pytest.approx(1.0, abs=1e-15)


def test_frozen_hessians(reference):
    ev0 = fd.evaluate_dual(reference, P(1.0, 0.0, 0.0))
    assert_allclose(ev0.hessian, [[-1.0, 0.0], [0.0, -2.0]], atol=1e-12)
    ev1 = fd.evaluate_dual(reference, P(1.0, 0.0, 1.0))
    assert_allclose(ev1.hessian, [[-1.0625, 0.125], [0.125, -0.25]], atol=1e-12)


def test_non_pd_point_raises(reference):
    prog = fd.validate(
        Q=np.array([[-2.0]]), f_vec=np.array([0.0]), B=np.array([[1.0]]),
        lam=1.0, H=np.array([[-2.0]]), b_vec=np.array([-2.0]), delta=0.5,
    )
    with pytest.raises(fd.NotPDError):
        fd.evaluate_dual(prog, P(1.0, 0.0, 0.0))


def test_outside_box_raises(reference):
    with pytest.raises(ValueError):
        fd.evaluate_dual(reference, P(1.0, -2.0, 0.0))


def test_total_complementary_frozen(reference):
    assert fd.total_complementary(reference, np.zeros(1), P(1.0, 0.0, 0.0)) == pytest.approx(0.0)
    at_min = fd.total_complementary(reference, np.array([0.5]), P(1.0, 0.0, 1.0))
    assert at_min == pytest.approx(0.5, abs=1e-13)
    away = fd.total_complementary(reference, np.array([1.0]), P(1.0, 0.0, 1.0))
    assert away == pytest.approx(1.0, abs=1e-13)
    assert away >= at_min


def test_canonical_measure_floor(reference):
    assert fd.canonical_measure(reference, np.zeros(1)) == pytest.approx(-1.0)


def test_legendre_conjugate(reference):
    assert fd.legendre_conjugate(reference, 2.0) == pytest.approx(2.0)
    assert fd.legendre_conjugate(reference, 0.0) == 0.0
    with pytest.raises(ValueError):
        fd.legendre_conjugate(reference, -1.5)


def _pd_dual_point(prog, mu, rng):
    # sigma >= sigma_scale keeps the curvature matrix positive definite
    # whenever varsigma >= 0, so sampled points always land in the cone
    vs = float(rng.uniform(0.0, 3.0))
    sg = float(prog.sigma_scale * rng.uniform(1.0, 4.0))
    return P(mu, vs, sg)


def _feasible_point(prog, mu, rng):
    d = rng.normal(size=prog.n)
    nrm = np.linalg.norm(d)
    if nrm == 0:
        d = np.ones(prog.n)
        nrm = np.sqrt(prog.n)
    d /= nrm
    radius2 = 2.0 * (prog.mu0_inv - 1.0 / mu)
    t = float(rng.uniform(0.0, 1.0)) * np.sqrt(
        max(radius2, 0.0) / float(d @ (-prog.H) @ d)
    )
    return prog.x_center + t * d


@given(st.integers(0, 500))
def test_weak_duality_random_pairs(seed):
    prog = fd.generate_program(1 + seed % 4, seed % 3, seed=seed)
    rng = np.random.default_rng(seed)
    mu = prog.mu0 if prog.mu_interval.degenerate else float(
        rng.uniform(prog.mu0, prog.mu_max))
    d = _pd_dual_point(prog, mu, rng)
    x = _feasible_point(prog, mu, rng)
    lower = fd.dual_value(prog, d)
    upper = fd.eval_subproblem(prog, mu, x)
    assert lower <= upper + 1e-9 * (1.0 + abs(upper))


@given(st.integers(0, 500))
def test_recovered_point_minimizes_total_complementary(seed):
    prog = fd.generate_program(1 + seed % 4, seed % 3, seed=seed)
    rng = np.random.default_rng(seed)
    mu = prog.mu0 if prog.mu_interval.degenerate else float(
        rng.uniform(prog.mu0, prog.mu_max))
    d = _pd_dual_point(prog, mu, rng)
    xd = fd.recover_primal(prog, d)
    base = fd.total_complementary(prog, xd, d)
    assert_allclose(base, fd.dual_value(prog, d), rtol=1e-8, atol=1e-10)
    for _ in range(4):
        other = xd + rng.normal(size=prog.n)
        assert fd.total_complementary(prog, other, d) >= base - 1e-9 * (1.0 + abs(base))


@given(st.integers(0, 500))
def test_gradient_matches_finite_differences(seed):
    prog = fd.generate_program(1 + seed % 4, seed % 3, seed=seed)
    rng = np.random.default_rng(seed)
    mu = prog.mu0 if prog.mu_interval.degenerate else float(
        rng.uniform(prog.mu0, prog.mu_max))
    d = _pd_dual_point(prog, mu, rng)
    ev = fd.evaluate_dual(prog, d)
    h = 1e-6
    fd_vs = (
        fd.dual_value(prog, P(mu, d.varsigma + h, d.sigma))
        - fd.dual_value(prog, P(mu, d.varsigma - h, d.sigma))
    ) / (2 * h)
    fd_sg = (
        fd.dual_value(prog, P(mu, d.varsigma, d.sigma + h))
        - fd.dual_value(prog, P(mu, d.varsigma, d.sigma - h))
    ) / (2 * h)
    scale = 1.0 + max(abs(ev.grad_varsigma), abs(ev.grad_sigma))
    assert abs(fd_vs - ev.grad_varsigma) <= 1e-5 * scale
    assert abs(fd_sg - ev.grad_sigma) <= 1e-5 * scale


@given(st.integers(0, 500))
def test_hessian_negative_semidefinite(seed):
    prog = fd.generate_program(1 + seed % 4, seed % 3, seed=seed)
    rng = np.random.default_rng(seed)
    mu = prog.mu0 if prog.mu_interval.degenerate else float(
        rng.uniform(prog.mu0, prog.mu_max))
    ev = fd.evaluate_dual(prog, _pd_dual_point(prog, mu, rng))
    eigs = np.linalg.eigvalsh(ev.hessian)
    scale = 1.0 + float(np.abs(ev.hessian).max())
    assert eigs.max() <= 1e-8 * scale


@given(st.integers(0, 500))
def test_midpoint_concavity(seed):
    prog = fd.generate_program(1 + seed % 4, seed % 3, seed=seed)
    rng = np.random.default_rng(seed)
    mu = prog.mu0 if prog.mu_interval.degenerate else float(
        rng.uniform(prog.mu0, prog.mu_max))
    d1 = _pd_dual_point(prog, mu, rng)
    d2 = _pd_dual_point(prog, mu, rng)
    mid = P(mu, 0.5 * (d1.varsigma + d2.varsigma), 0.5 * (d1.sigma + d2.sigma))
    v1, v2, vm = (fd.dual_value(prog, q) for q in (d1, d2, mid))
    scale = 1.0 + max(abs(v1), abs(v2), abs(vm))
    assert vm >= 0.5 * (v1 + v2) - 1e-9 * scale


@given(st.integers(0, 500))
def test_gap_identity(seed):
    # penalized primal minus dual equals the two nonnegative mismatch terms
    prog = fd.generate_program(1 + seed % 4, seed % 3, seed=seed)
    rng = np.random.default_rng(seed)
    mu = prog.mu0 if prog.mu_interval.degenerate else float(
        rng.uniform(prog.mu0, prog.mu_max))
    d = _pd_dual_point(prog, mu, rng)
    ev = fd.evaluate_dual(prog, d)
    primal = fd.eval_subproblem(prog, mu, ev.x_candidate)
    gap = primal - ev.value
    predicted = 0.5 * mu * (ev.xi - d.varsigma) ** 2 + d.sigma * (ev.h_at_x - 1.0 / mu)
    assert_allclose(gap, predicted, rtol=1e-7, atol=1e-9)
