"""Two-parameter concave dual of the penalized subproblem.

For a sweep value mu, a dual pair d = (varsigma, sigma) with varsigma >= -lam
and sigma >= 0 assembles the curvature matrix

    G(d) = Q + mu * varsigma * B'B - sigma * H.

On the cone where G is positive definite the dual function

    value(d) = -0.5 c'G^{-1}c - mu*lam*varsigma - 0.5*mu*varsigma^2 + sigma/mu,
    c = f - sigma*b,

is concave, bounds the subproblem from below, and recovers the primal
candidate x(d) = G^{-1}c.  Interior critical points close the gap exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from .errors import NotPDError
from .problem import FractionalProgram, pivot_floor

# min_pivot at or below ILL_CONDITIONED_RTOL*(1+max|diag G|) is treated as
# numerically untrustworthy even though the factorization succeeded.
ILL_CONDITIONED_RTOL = 1e-4
BOX_TOL = 1e-12


@dataclass(frozen=True)
class DualPoint:
    mu: float
    varsigma: float
    sigma: float

    def as_array(self) -> np.ndarray:
        return np.array([self.varsigma, self.sigma])


@dataclass(frozen=True)
class CurvatureFactor:
    """Assembled curvature matrix with its Cholesky factor when definite."""

    matrix: np.ndarray
    chol: np.ndarray | None
    pd: bool
    min_pivot: float
    diag_scale: float

    @property
    def ill_conditioned(self) -> bool:
        return self.min_pivot <= ILL_CONDITIONED_RTOL * (1.0 + self.diag_scale)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve((self.chol, True), rhs)

    def half_solve(self, rhs: np.ndarray) -> np.ndarray:
        """L^{-1} rhs, so that |half_solve(c)|^2 = c'G^{-1}c."""
        return solve_triangular(self.chol, rhs, lower=True)


@dataclass(frozen=True)
class DualEvaluation:
    point: DualPoint
    value: float
    grad_varsigma: float
    grad_sigma: float
    x_candidate: np.ndarray
    xi: float
    h_at_x: float
    hessian: np.ndarray
    residual: float
    min_pivot: float
    ill_conditioned: bool


def curvature_matrix(prog: FractionalProgram, point: DualPoint) -> CurvatureFactor:
    """Assemble G at the dual point and attempt a Cholesky factorization."""
    G = prog.Q + (point.mu * point.varsigma) * prog.BtB - point.sigma * prog.H
    diag = np.diag(G)
    diag_scale = float(np.abs(diag).max())
    floor = pivot_floor(diag_scale)
    try:
        chol = np.linalg.cholesky(G)
    except np.linalg.LinAlgError:
        return CurvatureFactor(
            matrix=G,
            chol=None,
            pd=False,
            min_pivot=float(np.linalg.eigvalsh(G)[0]),
            diag_scale=diag_scale,
        )
    min_pivot = float((np.diag(chol) ** 2).min())
    if min_pivot <= floor:
        return CurvatureFactor(G, None, False, min_pivot, diag_scale)
    return CurvatureFactor(G, chol, True, min_pivot, diag_scale)


def _in_box(prog: FractionalProgram, point: DualPoint) -> bool:
    tol = BOX_TOL * (1.0 + abs(prog.lam))
    return point.varsigma >= -prog.lam - tol and point.sigma >= -tol


def in_dual_cone(prog: FractionalProgram, point: DualPoint) -> bool:
    """True when the point satisfies the box bounds and G is positive definite."""
    return _in_box(prog, point) and curvature_matrix(prog, point).pd


def evaluate_dual(
    prog: FractionalProgram,
    point: DualPoint,
    fac: CurvatureFactor | None = None,
) -> DualEvaluation:
    """Value, gradient, Hessian and primal candidate from one factorization."""
    if not _in_box(prog, point):
        raise ValueError(
            f"dual point (varsigma={point.varsigma}, sigma={point.sigma}) "
            f"violates the box bounds (>= -lam, >= 0)"
        )
    if fac is None:
        fac = curvature_matrix(prog, point)
    if not fac.pd:
        raise NotPDError(
            f"curvature matrix not positive definite at {point}",
            min_pivot=fac.min_pivot,
        )
    mu, vs, sg = point.mu, point.varsigma, point.sigma
    c = prog.f_vec - sg * prog.b_vec

    x = fac.solve(c)
    x = x + fac.solve(c - fac.matrix @ x)  # one step of iterative refinement
    residual = float(np.linalg.norm(c - fac.matrix @ x))

    z = fac.half_solve(c)
    value = float(-0.5 * (z @ z) - mu * prog.lam * vs - 0.5 * mu * vs**2 + sg / mu)

    if prog.m:
        bx = prog.B @ x
        xi = float(0.5 * (bx @ bx) - prog.lam)
    else:
        xi = -prog.lam
    h_at_x = float(0.5 * x @ prog.H @ x - prog.b_vec @ x)

    grad_vs = mu * (xi - vs)
    grad_sg = 1.0 / mu - h_at_x

    u = prog.BtB @ x
    v = prog.H @ x - prog.b_vec
    zu = fac.half_solve(u)
    zv = fac.half_solve(v)
    h_vv = -(mu**2) * (zu @ zu) - mu
    h_vs = mu * (zu @ zv)
    h_ss = -(zv @ zv)
    hessian = np.array([[h_vv, h_vs], [h_vs, h_ss]])

    return DualEvaluation(
        point=point,
        value=value,
        grad_varsigma=float(grad_vs),
        grad_sigma=float(grad_sg),
        x_candidate=x,
        xi=xi,
        h_at_x=h_at_x,
        hessian=hessian,
        residual=residual,
        min_pivot=fac.min_pivot,
        ill_conditioned=fac.ill_conditioned,
    )


def dual_value(prog: FractionalProgram, point: DualPoint) -> float:
    return evaluate_dual(prog, point).value


def dual_gradient(prog: FractionalProgram, point: DualPoint) -> tuple[float, float]:
    ev = evaluate_dual(prog, point)
    return ev.grad_varsigma, ev.grad_sigma


def dual_hessian(prog: FractionalProgram, point: DualPoint) -> np.ndarray:
    return evaluate_dual(prog, point).hessian


def recover_primal(prog: FractionalProgram, point: DualPoint) -> np.ndarray:
    """Primal candidate x(d) = G^{-1}(f - sigma*b)."""
    return evaluate_dual(prog, point).x_candidate


def canonical_measure(prog: FractionalProgram, x) -> float:
    """Scalar image 0.5|Bx|^2 - lam of a primal point."""
    xa = np.asarray(x, dtype=float)
    if prog.m:
        bx = prog.B @ xa
        return float(0.5 * (bx @ bx) - prog.lam)
    return -prog.lam


def legendre_conjugate(prog: FractionalProgram, varsigma: float) -> float:
    """Conjugate 0.5*varsigma^2 of the quadratic well on its admissible domain."""
    if varsigma < -prog.lam - BOX_TOL * (1.0 + abs(prog.lam)):
        raise ValueError(f"varsigma={varsigma} below the conjugate domain bound {-prog.lam}")
    return 0.5 * float(varsigma) ** 2


def total_complementary(prog: FractionalProgram, x, point: DualPoint) -> float:
    """Mixed primal-dual function whose x-minimum equals the dual value on the cone."""
    xa = np.asarray(x, dtype=float)
    mu, vs, sg = point.mu, point.varsigma, point.sigma
    G = prog.Q + (mu * vs) * prog.BtB - sg * prog.H
    c = prog.f_vec - sg * prog.b_vec
    return float(
        0.5 * xa @ G @ xa - c @ xa - mu * prog.lam * vs - 0.5 * mu * vs**2 + sg / mu
    )
