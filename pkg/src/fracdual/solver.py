"""Dual ascent per sweep value and the outer parameter sweep.

Each subproblem is solved by projected Newton ascent on the two dual
variables (Levenberg damping, backtracking that keeps iterates inside the
positive definite cone, monotone in the dual value).  A converged point is
turned into a certificate by recomputing the primal-dual gap, the
stationarity of the canonical measure, and boundary complementarity.  The
outer solve scans a uniform grid over [mu0, 1/delta], golden-section refines
around the incumbent, and returns the best feasible candidate.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dual import (
    DualEvaluation,
    DualPoint,
    canonical_measure,
    curvature_matrix,
    evaluate_dual,
)
from .errors import AllSubproblemsFailedError, NoStartingPointError
from .problem import (
    FractionalProgram,
    check_mu,
    eval_objective,
    eval_subproblem,
    eval_terms,
    is_feasible,
)


class AscentStatus(Enum):
    INTERIOR_CRITICAL = "InteriorCritical"
    BOUNDARY_SIGMA_ZERO = "BoundarySigmaZero"
    BOX_BOUNDARY_VARSIGMA = "BoxBoundaryVarsigma"
    NEAR_PD_BOUNDARY = "NearPDBoundary"
    MAX_ITERATIONS = "MaxIterations"


class CertificateKind(Enum):
    PERFECT = "Perfect"
    WEAK_ONLY = "WeakOnly"
    NONE = "None"


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for the dual ascent and the parameter sweep."""

    grid: int = 64
    max_iter: int = 500
    tol_grad: float = 1e-8
    tol_gap: float = 1e-6
    refine_rounds: int = 3
    seed: int = 0
    threads: int | None = None


@dataclass(frozen=True)
class DualSolution:
    point: DualPoint
    value: float
    grad_norm: float
    status: AscentStatus
    n_iter: int
    min_pivot: float
    value_trace: tuple[float, ...]


@dataclass(frozen=True)
class Certificate:
    primal_value: float
    dual_value: float
    gap: float
    stationarity_xi: float
    feasibility_residual: float
    kind: CertificateKind
    x: np.ndarray


@dataclass(frozen=True)
class MuSample:
    """One evaluated sweep value: dual solution, certificate, and candidate."""

    mu: float
    solution: DualSolution | None
    certificate: Certificate | None
    x: np.ndarray | None
    p0: float | None
    note: str = ""

    @property
    def status_label(self) -> str:
        if self.solution is not None:
            return self.solution.status.value
        return self.note or "Failed"


@dataclass(frozen=True)
class SolveResult:
    x_star: np.ndarray
    mu_star: float
    d_star: DualPoint
    P0_value: float
    best_dual_value: float
    certificate: Certificate
    mu_profile: tuple[MuSample, ...]
    cone_coverage: float
    options: SolverOptions
    timings: dict


_BOUND_RTOL = 1e-12
_AT_BOUND_RTOL = 1e-9
_SIGMA_POSITIVE = 1e-9
_COMP_TOL = 1e-6
_XI_TOL = 1e-6


def _bounds(prog: FractionalProgram) -> np.ndarray:
    return np.array([-prog.lam, 0.0])


def find_start(prog: FractionalProgram, mu: float) -> DualPoint:
    """Scan a coarse (varsigma, sigma) ladder for a definite starting point."""
    mu = check_mu(prog, mu)
    for s_mult in (0.0, 1.0, 10.0, 100.0):
        sigma = s_mult * prog.sigma_scale
        for v_mult in (0.0, 1.0, 10.0):
            point = DualPoint(mu, v_mult, sigma)
            if curvature_matrix(prog, point).pd:
                return point
    raise NoStartingPointError(f"no definite dual point found at mu={mu:.6g}")


def _ascent_direction(hessian: np.ndarray, grad: np.ndarray, free: np.ndarray) -> np.ndarray:
    """Damped Newton step on the free coordinates; falls back toward gradient."""
    step = np.zeros(2)
    idx = np.flatnonzero(free)
    if idx.size == 0:
        return step
    neg_h = -hessian[np.ix_(idx, idx)]
    g = grad[idx]
    nu = 0.0
    base = 1e-12 * (1.0 + float(np.trace(neg_h)))
    for _ in range(40):
        try:
            s = np.linalg.solve(neg_h + nu * np.eye(idx.size), g)
        except np.linalg.LinAlgError:
            s = None
        if s is not None and np.all(np.isfinite(s)) and g @ s > 0.0:
            step[idx] = s
            return step
        nu = max(base, 10.0 * nu) if nu else max(base, 1e-8)
    step[idx] = g  # heavily damped fallback: plain gradient
    return step


def _try_step(
    prog: FractionalProgram,
    mu: float,
    d: np.ndarray,
    step: np.ndarray,
    grad: np.ndarray,
    value: float,
    lo: np.ndarray,
):
    alpha = 1.0
    for _ in range(60):
        trial = np.maximum(d + alpha * step, lo)
        move = trial - d
        if not np.any(move):
            return None
        point = DualPoint(mu, float(trial[0]), float(trial[1]))
        fac = curvature_matrix(prog, point)
        if fac.pd:
            ev = evaluate_dual(prog, point, fac=fac)
            if ev.value > value and ev.value >= value + 1e-4 * (grad @ move):
                return trial, ev
        alpha *= 0.5
    return None


def _classify(ev: DualEvaluation, d: np.ndarray, lo: np.ndarray, lam: float) -> AscentStatus:
    if ev.ill_conditioned:
        return AscentStatus.NEAR_PD_BOUNDARY
    if d[1] <= lo[1] + _AT_BOUND_RTOL:
        return AscentStatus.BOUNDARY_SIGMA_ZERO
    if d[0] <= lo[0] + _AT_BOUND_RTOL * (1.0 + abs(lam)):
        return AscentStatus.BOX_BOUNDARY_VARSIGMA
    return AscentStatus.INTERIOR_CRITICAL


def maximize_dual(
    prog: FractionalProgram, mu: float, opts: SolverOptions | None = None
) -> DualSolution:
    """Projected Newton ascent of the dual over the cone at fixed mu."""
    opts = opts or SolverOptions()
    mu = check_mu(prog, mu)
    lo = _bounds(prog)
    start = find_start(prog, mu)
    d = start.as_array()
    ev = evaluate_dual(prog, start)
    trace = [ev.value]
    status = AscentStatus.MAX_ITERATIONS
    pg_norm = np.inf
    n_iter = 0
    for n_iter in range(1, opts.max_iter + 1):
        grad = np.array([ev.grad_varsigma, ev.grad_sigma])
        at_lo = d <= lo + _BOUND_RTOL * (1.0 + np.abs(lo))
        clamped = at_lo & (grad < 0.0)
        pg = np.where(clamped, 0.0, grad)
        pg_norm = float(np.linalg.norm(pg))
        if pg_norm <= opts.tol_grad * (1.0 + abs(ev.value)):
            status = _classify(ev, d, lo, prog.lam)
            break
        step = _ascent_direction(ev.hessian, pg, ~clamped)
        moved = _try_step(prog, mu, d, step, grad, ev.value, lo)
        if moved is None and np.any(step != pg):
            moved = _try_step(prog, mu, d, pg, grad, ev.value, lo)
        if moved is None:
            status = (
                AscentStatus.NEAR_PD_BOUNDARY
                if ev.ill_conditioned
                else AscentStatus.MAX_ITERATIONS
            )
            break
        d, ev = moved
        trace.append(ev.value)
    else:
        status = (
            AscentStatus.NEAR_PD_BOUNDARY if ev.ill_conditioned else AscentStatus.MAX_ITERATIONS
        )
    return DualSolution(
        point=DualPoint(mu, float(d[0]), float(d[1])),
        value=ev.value,
        grad_norm=pg_norm,
        status=status,
        n_iter=n_iter,
        min_pivot=ev.min_pivot,
        value_trace=tuple(trace),
    )


def certify(
    prog: FractionalProgram,
    mu: float,
    sol: DualSolution,
    opts: SolverOptions | None = None,
) -> Certificate:
    """Recompute the gap, stationarity, and complementarity at a dual solution.

    Perfect requires a trusted factorization (not near the definiteness
    boundary), gap within tol_gap*(1+|primal|), |xi - varsigma| <= 1e-6 scale,
    and the boundary/interior complementarity branch for sigma.
    """
    opts = opts or SolverOptions()
    mu = check_mu(prog, mu)
    ev = evaluate_dual(prog, sol.point)
    x = ev.x_candidate
    primal = eval_subproblem(prog, mu, x)
    gap = primal - ev.value
    stat_xi = abs(ev.xi - sol.point.varsigma)
    inv_mu = 1.0 / mu
    feas_res = ev.h_at_x - inv_mu

    trusted = sol.status is not AscentStatus.NEAR_PD_BOUNDARY and not ev.ill_conditioned
    gap_ok = abs(gap) <= opts.tol_gap * (1.0 + abs(primal))
    xi_ok = stat_xi <= _XI_TOL * (1.0 + abs(sol.point.varsigma))
    if sol.point.sigma > _SIGMA_POSITIVE:
        comp_ok = abs(feas_res) <= _COMP_TOL
    else:
        comp_ok = feas_res >= -_COMP_TOL

    if trusted and gap_ok and xi_ok and comp_ok:
        kind = CertificateKind.PERFECT
    elif trusted and feas_res >= -_COMP_TOL * (1.0 + inv_mu):
        kind = CertificateKind.WEAK_ONLY
    else:
        kind = CertificateKind.NONE
    return Certificate(
        primal_value=float(primal),
        dual_value=float(ev.value),
        gap=float(gap),
        stationarity_xi=float(stat_xi),
        feasibility_residual=float(feas_res),
        kind=kind,
        x=x,
    )


def _snap_to_margin(prog: FractionalProgram, x: np.ndarray, bound: float) -> np.ndarray:
    """Scale x toward the margin peak until margin(x) >= bound (exact boundary)."""
    y = x - prog.x_center
    q = float(y @ (-prog.H) @ y)
    target = 2.0 * (prog.mu0_inv - bound)
    if q <= target or q <= 0.0:
        return x
    return prog.x_center + y * np.sqrt(max(target, 0.0) / q)


def _solve_at_mu(prog: FractionalProgram, mu: float, opts: SolverOptions) -> MuSample:
    try:
        sol = maximize_dual(prog, mu, opts)
    except NoStartingPointError:
        return MuSample(mu=mu, solution=None, certificate=None, x=None, p0=None,
                        note="NoStartingPoint")
    cert = certify(prog, mu, sol, opts)
    x = cert.x
    _, _, margin = eval_terms(prog, x)
    if margin < 1.0 / mu:
        x = _snap_to_margin(prog, x, 1.0 / mu)
    if is_feasible(prog, x):
        p0 = eval_objective(prog, x)
    else:
        x, p0 = None, None
    return MuSample(mu=mu, solution=sol, certificate=cert, x=x, p0=p0)


def _select(samples: list[MuSample]) -> MuSample | None:
    cands = [s for s in samples if s.p0 is not None]
    if not cands:
        return None
    best_p0 = min(s.p0 for s in cands)
    tol = 1e-9 * (1.0 + abs(best_p0))
    bucket = [s for s in cands if s.p0 <= best_p0 + tol]
    bucket.sort(
        key=lambda s: (
            s.certificate is None or s.certificate.kind is not CertificateKind.PERFECT,
            s.mu,
        )
    )
    return bucket[0]


def _resolve_threads(opts: SolverOptions) -> int:
    if opts.threads is not None:
        return max(1, int(opts.threads))
    env = os.environ.get("THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _singleton_result(prog: FractionalProgram, opts: SolverOptions, t0: float) -> SolveResult:
    # Degenerate interval: the feasible set of the only subproblem is the
    # margin peak itself, so the answer is direct evaluation there.
    x = np.array(prog.x_center)
    p0 = eval_objective(prog, x)
    primal = eval_subproblem(prog, prog.mu0, x)
    _, _, margin = eval_terms(prog, x)
    d_star = DualPoint(prog.mu0, canonical_measure(prog, x), 0.0)
    cert = Certificate(
        primal_value=primal,
        dual_value=primal,
        gap=0.0,
        stationarity_xi=0.0,
        feasibility_residual=margin - prog.mu0_inv,
        kind=CertificateKind.PERFECT,
        x=x,
    )
    sample = MuSample(mu=prog.mu0, solution=None, certificate=cert, x=x, p0=p0,
                      note="DirectSingleton")
    return SolveResult(
        x_star=x,
        mu_star=prog.mu0,
        d_star=d_star,
        P0_value=p0,
        best_dual_value=primal,
        certificate=cert,
        mu_profile=(sample,),
        cone_coverage=1.0,
        options=opts,
        timings={"total_s": time.perf_counter() - t0, "grid_s": 0.0, "refine_s": 0.0},
    )


def _objective_gradient(prog: FractionalProgram, x: np.ndarray) -> np.ndarray:
    quad_grad = prog.Q @ x - prog.f_vec
    margin_grad = prog.H @ x - prog.b_vec
    _, well, margin = eval_terms(prog, x)
    if prog.m:
        xi = canonical_measure(prog, x)
        well_grad = xi * (prog.BtB @ x)
    else:
        well_grad = np.zeros(prog.n)
    return quad_grad + (well_grad * margin - well * margin_grad) / (margin * margin)


def _descend(prog: FractionalProgram, x0: np.ndarray, max_iter: int = 250):
    """Projected gradient descent of the ratio objective over the region.

    Projection is the radial snap onto the margin-delta shell, so iterates
    stay feasible; plain backtracking with strict decrease."""
    x = _snap_to_margin(prog, np.asarray(x0, dtype=float), prog.delta)
    val = eval_objective(prog, x)
    t = 1.0
    for _ in range(max_iter):
        g = _objective_gradient(prog, x)
        gnorm = float(np.linalg.norm(g))
        if gnorm == 0.0:
            break
        step = t / (1.0 + gnorm)
        moved = False
        for _ in range(25):
            y = _snap_to_margin(prog, x - step * g, prog.delta)
            vy = eval_objective(prog, y)
            if vy < val - 1e-14 * (1.0 + abs(val)):
                x, val, moved = y, vy, True
                t = min(t * 2.0, 1e6)
                break
            step *= 0.5
        if not moved:
            break
    return x, val


def _polish(prog: FractionalProgram, opts: SolverOptions, samples: list[MuSample]) -> None:
    """Local descent of the original objective from the sweep candidates.

    Dual recovery can stop short of the subproblem optimum when the ascent
    ends near the definiteness boundary; descending the ratio objective
    directly from those points (plus jittered copies to break symmetry
    traps) recovers the lost accuracy.  The improved point is re-certified
    on its own level slice so the reported certificate stays truthful.
    """
    cands = sorted(
        ((s.p0, s.x) for s in samples if s.p0 is not None), key=lambda c: c[0]
    )
    if not cands:
        return
    starts = []
    seen = set()
    for _, x in cands:
        key = tuple(np.round(np.asarray(x), 9))
        if key not in seen:
            seen.add(key)
            starts.append(np.asarray(x, dtype=float))
        if len(starts) >= 6:
            break
    starts.append(np.array(prog.x_center))
    rng = np.random.default_rng(opts.seed)
    radius = np.sqrt(2.0 * max(prog.mu0_inv - prog.delta, 0.0))
    jitter = 0.15 * radius / np.sqrt(prog.neg_h_min_eig)
    for x in list(starts[:3]):
        for _ in range(2):
            starts.append(x + jitter * rng.normal(size=prog.n))

    best_x = None
    best_val = np.inf
    for x0 in starts:
        x, val = _descend(prog, x0)
        if val < best_val:
            best_x, best_val = x, val

    incumbent = cands[0][0]
    if best_x is None or best_val >= incumbent - 1e-12 * (1.0 + abs(incumbent)):
        return
    _, _, margin = eval_terms(prog, best_x)
    mu_hat = check_mu(prog, 1.0 / margin)
    slice_sample = _solve_at_mu(prog, mu_hat, opts)
    if slice_sample.p0 is not None and slice_sample.p0 < best_val:
        samples.append(slice_sample)
        return
    cert = slice_sample.certificate
    if cert is None:
        cert = Certificate(
            primal_value=eval_subproblem(prog, mu_hat, best_x),
            dual_value=-np.inf,
            gap=np.inf,
            stationarity_xi=np.inf,
            feasibility_residual=0.0,
            kind=CertificateKind.NONE,
            x=best_x,
        )
    samples.append(
        MuSample(
            mu=mu_hat,
            solution=slice_sample.solution,
            certificate=cert,
            x=best_x,
            p0=best_val,
            note="Polished",
        )
    )


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _refine(
    prog: FractionalProgram,
    opts: SolverOptions,
    samples: list[MuSample],
    mus: np.ndarray,
) -> None:
    """Golden-section refinement of the sweep around the incumbent."""
    best = _select(samples)
    if best is None:
        return
    order = np.searchsorted(mus, best.mu)
    lo = mus[max(order - 1, 0)] if len(mus) > 1 else prog.mu0
    hi = mus[min(order + 1, len(mus) - 1)] if len(mus) > 1 else prog.mu_max
    if hi <= lo:
        lo, hi = prog.mu0, prog.mu_max
    target = max(1e-4 * (prog.mu_max - prog.mu0), 1e-8)

    def key_of(mu: float) -> float:
        sample = _solve_at_mu(prog, float(mu), opts)
        samples.append(sample)
        return sample.p0 if sample.p0 is not None else np.inf

    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = key_of(c), key_of(d)
    for _ in range(12 * max(opts.refine_rounds, 0)):
        if b - a <= target:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = key_of(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = key_of(d)


def solve(prog: FractionalProgram, opts: SolverOptions | None = None) -> SolveResult:
    """Sweep the parameter interval and return the best certified candidate."""
    opts = opts or SolverOptions()
    t0 = time.perf_counter()
    if prog.mu_interval.degenerate:
        return _singleton_result(prog, opts, t0)

    n_grid = max(2, opts.grid) if opts.grid > 1 else 1
    if n_grid == 1:
        mus = np.array([prog.mu0])
    else:
        mus = np.linspace(prog.mu0, prog.mu_max, n_grid)

    workers = _resolve_threads(opts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(lambda m: _solve_at_mu(prog, float(m), opts), mus))
    else:
        samples = [_solve_at_mu(prog, float(m), opts) for m in mus]
    t_grid = time.perf_counter()

    solved = sum(1 for s in samples if s.solution is not None)
    coverage = solved / len(samples)
    if solved == 0:
        raise AllSubproblemsFailedError(
            f"no subproblem produced a dual solution over {len(samples)} grid points"
        )

    if opts.refine_rounds > 0:
        _refine(prog, opts, samples, mus)
    t_refine = time.perf_counter()

    _polish(prog, opts, samples)
    t_polish = time.perf_counter()

    best = _select(samples)
    if best is None:
        # Dual recovery never landed inside the feasible set; the margin peak
        # is always feasible, so report it as an uncertified incumbent.
        x = np.array(prog.x_center)
        best = MuSample(
            mu=prog.mu0,
            solution=None,
            certificate=Certificate(
                primal_value=eval_subproblem(prog, prog.mu0, x),
                dual_value=-np.inf,
                gap=np.inf,
                stationarity_xi=np.inf,
                feasibility_residual=0.0,
                kind=CertificateKind.NONE,
                x=x,
            ),
            x=x,
            p0=eval_objective(prog, x),
            note="FallbackCenter",
        )
        samples.append(best)

    cert = best.certificate
    dual_best = best.solution.value if best.solution is not None else cert.dual_value
    result = SolveResult(
        x_star=np.array(best.x),
        mu_star=best.mu,
        d_star=best.solution.point if best.solution is not None else DualPoint(best.mu, 0.0, 0.0),
        P0_value=float(best.p0),
        best_dual_value=float(dual_best),
        certificate=cert,
        mu_profile=tuple(sorted(samples, key=lambda s: s.mu)),
        cone_coverage=coverage,
        options=opts,
        timings={
            "total_s": time.perf_counter() - t0,
            "grid_s": t_grid - t0,
            "refine_s": t_refine - t_grid,
            "polish_s": t_polish - t_refine,
        },
    )
    _weak_duality_floor(prog, result)
    return result


def _weak_duality_floor(prog: FractionalProgram, result: SolveResult) -> None:
    # Lower-bound sanity: a feasible candidate of the mu* subproblem can never
    # fall below its own dual value.
    if not np.isfinite(result.best_dual_value):
        return
    if not is_feasible(prog, result.x_star, mu=result.mu_star):
        return
    primal = eval_subproblem(prog, result.mu_star, result.x_star)
    slack = 1e-6 * (1.0 + abs(result.best_dual_value))
    if primal < result.best_dual_value - slack:
        raise RuntimeError(
            f"weak duality violated: subproblem value {primal:.12g} below "
            f"dual bound {result.best_dual_value:.12g}"
        )


@dataclass(frozen=True)
class RayProbe:
    ts: tuple[float, ...]
    values: tuple[float, ...]
    slope: float
    theory_slope: float
    coercive: bool


@dataclass(frozen=True)
class BoundaryProbe:
    found: bool
    boundary_point: DualPoint | None = None
    approach_values: tuple[float, ...] = ()
    last_drop: float = 0.0
    diverging: bool | None = None


@dataclass(frozen=True)
class ExistenceProbe:
    mu: float
    varsigma_ray: RayProbe
    sigma_ray: RayProbe
    boundary: BoundaryProbe


def _ray_values(prog, mu, base, direction, scales):
    pts, vals = [], []
    for t in scales:
        d = base + t * direction
        point = DualPoint(mu, float(d[0]), float(d[1]))
        fac = curvature_matrix(prog, point)
        if not fac.pd:
            continue
        pts.append(float(t))
        vals.append(evaluate_dual(prog, point, fac=fac).value)
    return pts, vals


def existence_probe(prog: FractionalProgram, mu: float, n_samples: int = 10) -> ExistenceProbe:
    """Sample rays to infinity and toward the definiteness boundary.

    Advisory diagnostics: trends indicate whether the dual is coercive on the
    cone (a maximizer exists inside) or flat/bounded along some escape ray.
    """
    mu = check_mu(prog, mu)
    start = find_start(prog, mu)
    base = start.as_array()

    scales = [(1.0 + abs(base[0])) * 4.0**k for k in range(max(3, n_samples))]
    ts, vals = _ray_values(prog, mu, base, np.array([1.0, 0.0]), scales)
    vs_t = [base[0] + t for t in ts]
    slope = (vals[-1] - vals[-2]) / (vs_t[-1] ** 2 - vs_t[-2] ** 2)
    vs_ray = RayProbe(
        ts=tuple(vs_t),
        values=tuple(vals),
        slope=float(slope),
        theory_slope=-mu / 2.0,
        coercive=bool(slope < 0.0 and vals[-1] < vals[0]),
    )

    scales = [prog.sigma_scale * 4.0**k for k in range(max(3, n_samples))]
    ts, vals = _ray_values(prog, mu, base, np.array([0.0, 1.0]), scales)
    sg_t = [base[1] + t for t in ts]
    slope = (vals[-1] - vals[-2]) / (sg_t[-1] - sg_t[-2])
    sg_ray = RayProbe(
        ts=tuple(sg_t),
        values=tuple(vals),
        slope=float(slope),
        theory_slope=1.0 / mu - prog.mu0_inv,
        coercive=bool(slope < -1e-8 * (1.0 + abs(vals[-1]))),
    )

    boundary = _probe_boundary(prog, mu, base)
    return ExistenceProbe(mu=mu, varsigma_ray=vs_ray, sigma_ray=sg_ray, boundary=boundary)


def _probe_boundary(prog: FractionalProgram, mu: float, base: np.ndarray) -> BoundaryProbe:
    lo = _bounds(prog)
    reach = 10.0 * (1.0 + np.linalg.norm(base) + prog.sigma_scale)
    for direction in ((-1.0, 0.0), (0.0, -1.0), (-1.0, -1.0), (-1.0, -0.25), (-0.25, -1.0)):
        target = np.maximum(base + reach * np.array(direction), lo)
        if not np.any(target != base):
            continue
        if curvature_matrix(prog, DualPoint(mu, *map(float, target))).pd:
            continue
        inner, outer = base.copy(), target
        for _ in range(60):
            mid = 0.5 * (inner + outer)
            if curvature_matrix(prog, DualPoint(mu, *map(float, mid))).pd:
                inner = mid
            else:
                outer = mid
        vals = []
        for k in range(1, 13):
            d = outer + (base - outer) * 2.0**-k
            point = DualPoint(mu, float(d[0]), float(d[1]))
            fac = curvature_matrix(prog, point)
            if fac.pd:
                vals.append(evaluate_dual(prog, point, fac=fac).value)
        if len(vals) < 2:
            continue
        drop = vals[-1] - vals[-2]  # value change over the last halving
        return BoundaryProbe(
            found=True,
            boundary_point=DualPoint(mu, float(outer[0]), float(outer[1])),
            approach_values=tuple(vals),
            last_drop=float(drop),
            diverging=bool(drop < -max(1.0, abs(vals[0]))),
        )
    return BoundaryProbe(found=False)
