"""Computable forms of the global gradient estimate, the Harnack inequality,
and the heat-kernel and volume-growth bounds, each with a verifier producing
per-site BoundReports.

Everything here is an inequality that holds exactly in real arithmetic, so a
failure beyond the floating-point tolerance budget indicates a bug, not a
counterexample.
"""

from __future__ import annotations

import math

import numpy as np

from .calculus import gamma, laplacian, require_positive
from .graph import GraphConstants, GraphFormatError, WeightedGraph, generate
from .reports import DEFAULT_ABS_TOL, DEFAULT_REL_TOL, BoundReport
from .semigroup import evolve, evolve_many, heat_kernel

_EXP_OVERFLOW = 709.0  # log of the largest finite double


class HypothesisError(ValueError):
    """A verifier's structural hypothesis (mu = deg, symmetric weights) is
    violated by the supplied graph."""


def _require_symmetric(g: WeightedGraph, what: str) -> None:
    if not g.weights_symmetric:
        raise HypothesisError(f"{what} requires symmetric edge weights")


def _require_mu_deg(g: WeightedGraph, what: str) -> None:
    if not np.allclose(g.mu, g.degrees, rtol=1e-12, atol=0.0):
        raise HypothesisError(f"{what} requires mu(x) = deg(x) for all x")


# -- gradient estimates ------------------------------------------------------

def gradient_lhs(g: WeightedGraph, u) -> np.ndarray:
    """Gamma(sqrt u)(x)/u(x) - (Lu)(x)/(2 u(x)) per vertex.

    Scale-invariant: replacing u by c*u leaves the value unchanged.
    """
    u = require_positive(g, u)
    return gamma(g, np.sqrt(u)) / u - laplacian(g, u) / (2.0 * u)


def gradient_estimate(g: WeightedGraph, u, abs_tol=DEFAULT_ABS_TOL,
                      rel_tol=DEFAULT_REL_TOL):
    """Per-vertex check of the global gradient estimate against d_mu.

    Unconditional: passes for every positive u on every graph.
    """
    lhs = gradient_lhs(g, u)
    d_mu = g.constants().d_mu
    return [
        BoundReport("gradient_estimate", g.ids[i], float(lhs[i]), d_mu,
                    abs_tol=abs_tol, rel_tol=rel_tol)
        for i in range(g.n)
    ]


def heat_gradient_estimate(g: WeightedGraph, u0, times, tol=1e-16,
                           fd_step=3e-6, fd_rel=1e-6,
                           abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL):
    """Gradient estimate along a heat-equation solution started at u0.

    The time derivative of sqrt(u) is evaluated by the exact substitution
    (Lu)/(2 sqrt u) (valid since d/dt u = Lu); each site also gets a
    cross-check report comparing it with a centered finite difference in t,
    to fd_rel relative accuracy with an absolute floor at the difference
    quotient's own rounding noise.
    """
    u0 = require_positive(g, u0)
    d_mu = g.constants().d_mu
    reports = []
    for t in times:
        if t < 0:
            raise ValueError("times must be nonnegative")
        do_fd = t >= fd_step
        if do_fd:
            # step t-h -> t -> t+h along one semigroup chain, so the series
            # rounding of the long evolution is common to all three states
            # and cancels in the difference quotient
            minus = evolve(g, u0, t - fd_step, tol=tol)
            ut = evolve(g, minus, fd_step, tol=tol)
            plus = evolve(g, ut, fd_step, tol=tol)
        else:
            ut = evolve(g, u0, t, tol=tol)
        st = np.sqrt(ut)
        dt_sqrt = laplacian(g, ut) / (2.0 * st)
        lhs = gamma(g, st) / ut - dt_sqrt / st
        for i in range(g.n):
            reports.append(BoundReport("heat_gradient_estimate",
                                       [g.ids[i], t], float(lhs[i]), d_mu,
                                       abs_tol=abs_tol, rel_tol=rel_tol))
        if do_fd:
            fd = (np.sqrt(plus) - np.sqrt(minus)) / (2.0 * fd_step)
            floor = 1e-9 * float(np.max(st))
            for i in range(g.n):
                reports.append(BoundReport(
                    "heat_gradient_fd", [g.ids[i], t],
                    float(abs(fd[i] - dt_sqrt[i])),
                    fd_rel * float(abs(dt_sqrt[i])) + floor,
                    abs_tol=0.0, rel_tol=0.0))
    return reports


def prior_gradient_estimate(g: WeightedGraph, u, abs_tol=DEFAULT_ABS_TOL,
                            rel_tol=DEFAULT_REL_TOL):
    """Per-vertex check of sqrt(2 Gamma(u))/u <= sqrt(d) Lu/u + sqrt(d) d_mu
    + sqrt(d_mu).

    Each report records which of the two gradient estimates (this one or
    gradient_estimate) has the smaller relative slack at the vertex; the two
    are independent, so a broad sweep finds winners in both directions.
    """
    u = require_positive(g, u)
    c = g.constants()
    lhs = np.sqrt(2.0 * gamma(g, u)) / u
    rhs = (math.sqrt(c.d) * laplacian(g, u) / u
           + math.sqrt(c.d) * c.d_mu + math.sqrt(c.d_mu))
    cur_lhs = gradient_lhs(g, u)
    reports = []
    for i in range(g.n):
        rel_prior = (rhs[i] - lhs[i]) / max(abs(rhs[i]), 1e-300)
        rel_cur = (c.d_mu - cur_lhs[i]) / max(abs(c.d_mu), 1e-300)
        reports.append(BoundReport(
            "prior_gradient_estimate", g.ids[i], float(lhs[i]), float(rhs[i]),
            abs_tol=abs_tol, rel_tol=rel_tol,
            extra={"tighter": "current" if rel_cur < rel_prior else "prior",
                   "rel_slack_current": float(rel_cur),
                   "rel_slack_prior": float(rel_prior)}))
    return reports


def sample_positive_function(g: WeightedGraph, rng, lo=1e-6, hi=1e6) -> np.ndarray:
    """Log-uniform positive function, stressing sites where sqrt(u)
    differences are extreme."""
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=g.n))


def independence_sweep(n_sites=10_000, seed=0, n_min=4, n_max=12):
    """Random sweep comparing relative slacks of the two gradient estimates.

    Returns a dict with the tallies per direction and one witness site for
    each, drawn from random graphs with unit, degree, and log-uniform
    explicit measures.
    """
    rng = np.random.default_rng(seed)
    tally = {"current": 0, "prior": 0}
    witnesses = {}
    sites = 0
    draw = 0
    while sites < n_sites:
        draw += 1
        n = int(rng.integers(n_min, n_max + 1))
        gseed = int(rng.integers(2**32))
        mode = ("unit", "degree", "explicit")[draw % 3]
        mu = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=n)) \
            if mode == "explicit" else None
        try:
            g = generate("random", n=n, p=0.5, w_lo=0.5, w_hi=2.0,
                         measure_mode=mode, mu=mu, seed=gseed)
        except GraphFormatError:
            continue  # degree measure rejects isolated vertices
        if g.num_edges == 0:
            continue
        u = sample_positive_function(g, rng)
        for rep in prior_gradient_estimate(g, u):
            which = rep.extra["tighter"]
            tally[which] += 1
            if which not in witnesses:
                witnesses[which] = {"graph_seed": gseed, "n": n,
                                    "measure_mode": mode, "vertex": rep.site,
                                    **rep.extra}
            sites += 1
    return {"sites": sites, "tally": tally, "witnesses": witnesses}


# -- curvature-assisted minimum bound -----------------------------------------

def min_form_bound(d_mu: float, n: float, K: float, alpha: float,
                   t: float, R: float, d_w: float) -> float:
    """Right-hand side min{d_mu, n/((1-a)2t) + n(2+d_w)d_mu/((1-a)R) + Kn/(2a)}.

    The curvature-dimension hypothesis behind the second branch is asserted
    by the caller, never verified here.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if R <= 1:
        raise ValueError("R must exceed 1")
    if t <= 0 or K <= 0:
        raise ValueError("t and K must be positive")
    second = (n / ((1.0 - alpha) * 2.0 * t)
              + n * (2.0 + d_w) * d_mu / ((1.0 - alpha) * R)
              + K * n / (2.0 * alpha))
    return min(d_mu, second)


# -- Harnack inequality --------------------------------------------------------

def harnack_exponent(c: GraphConstants, hop_dist: float, gap: float) -> float:
    return 2.0 * c.d_mu * gap + (4.0 * c.mu_max / c.w_min) * hop_dist**2 / gap


def harnack_factor(g: WeightedGraph, x, y, t1: float, t2: float) -> float:
    """exp{2 d_mu (t2-t1) + (4 mu_max/w_min) dist(x,y)^2/(t2-t1)}; always >= 1.

    Returns math.inf explicitly when the exponent overflows a double (the
    bound degenerates as t2 - t1 -> 0+ at positive distance).
    """
    if t1 >= t2:
        raise ValueError("requires t1 < t2")
    expo = harnack_exponent(g.constants(), g.dist(x, y), t2 - t1)
    return math.inf if expo > _EXP_OVERFLOW else math.exp(expo)


def verify_harnack(g: WeightedGraph, u0, time_grid, pairs=None,
                   max_pairs=1000, seed=0, abs_tol=DEFAULT_ABS_TOL,
                   rel_tol=DEFAULT_REL_TOL, tol=1e-12):
    """Check u(x, t1) <= u(y, t2) * harnack_factor over sampled sites.

    pairs defaults to all ordered vertex pairs when the graph has at most 30
    vertices and a seeded uniform sample of max_pairs otherwise.
    """
    u0 = require_positive(g, u0)
    times = sorted(set(float(t) for t in time_grid))
    if len(times) < 2:
        raise ValueError("need at least two distinct times")
    c = g.constants()
    D = g.distance_matrix()
    snapshots = {t: evolve(g, u0, t, tol=tol) for t in times}
    if pairs is None:
        if g.n <= 30:
            pairs = [(i, j) for i in range(g.n) for j in range(g.n)]
        else:
            rng = np.random.default_rng(seed)
            pairs = [(int(rng.integers(g.n)), int(rng.integers(g.n)))
                     for _ in range(max_pairs)]
    else:
        pairs = [(g._resolve(x), g._resolve(y)) for x, y in pairs]
    reports = []
    for a, t1 in enumerate(times):
        for t2 in times[a + 1:]:
            for i, j in pairs:
                if not np.isfinite(D[i, j]):
                    continue
                expo = harnack_exponent(c, D[i, j], t2 - t1)
                factor = math.inf if expo > _EXP_OVERFLOW else math.exp(expo)
                reports.append(BoundReport(
                    "harnack", [g.ids[i], t1, g.ids[j], t2],
                    float(snapshots[t1][i]),
                    float(snapshots[t2][j] * factor),
                    abs_tol=abs_tol, rel_tol=rel_tol))
    return reports


def harnack_sweep(g: WeightedGraph, u0s, time_grid, tol=1e-12):
    """Vectorized all-pairs Harnack check over many initial functions.

    u0s is (n, m), one positive initial condition per column. Returns
    (n_checks, n_fail_at_rel_1e-9, max_ratio) where ratio is
    u(x,t1) / (u(y,t2) * factor).
    """
    U0 = np.asarray(u0s, dtype=float)
    times = sorted(set(float(t) for t in time_grid))
    c = g.constants()
    D = g.distance_matrix()
    if not np.all(np.isfinite(D)):
        raise ValueError("harnack_sweep requires a connected graph")
    U = {t: evolve_many(g, U0, t, tol=tol) for t in times}
    n_checks = 0
    n_fail = 0
    max_ratio = 0.0
    for a, t1 in enumerate(times):
        for t2 in times[a + 1:]:
            expo = (2.0 * c.d_mu * (t2 - t1)
                    + (4.0 * c.mu_max / c.w_min) * D**2 / (t2 - t1))
            with np.errstate(over="ignore"):
                F = np.exp(np.minimum(expo, _EXP_OVERFLOW))
                # ratio[x, y, k] = u(x, t1, k) / (F[x, y] * u(y, t2, k))
                ratio = U[t1][:, None, :] / (F[:, :, None] * U[t2][None, :, :])
            n_checks += ratio.size
            n_fail += int(np.count_nonzero(ratio > 1.0 + 1e-9))
            max_ratio = max(max_ratio, float(ratio.max()))
    return n_checks, n_fail, max_ratio


# -- heat kernel bounds ---------------------------------------------------------

def optimal_time_gap(d_mu: float, mu_max: float, w_min: float, t: float):
    """Minimizer and infimum of s -> 2 d_mu s + (4 mu_max/w_min) t / s over
    s > 0: gap = sqrt(2 mu_max t / (d_mu w_min)), value = 4 sqrt(2 d_mu
    mu_max t / w_min)."""
    if min(d_mu, mu_max, w_min, t) <= 0:
        raise ValueError("all inputs must be positive")
    gap = math.sqrt(2.0 * mu_max * t / (d_mu * w_min))
    value = 4.0 * math.sqrt(2.0 * d_mu * mu_max * t / w_min)
    return gap, value


def heat_kernel_upper_bound(g: WeightedGraph, t: float, x) -> float:
    """(1 / Vol(B(x, sqrt t))) * exp{4 sqrt(2 d_mu mu_max t / w_min)};
    dominates p(t, x, y) for every y."""
    if t <= 0:
        raise ValueError("t must be positive")
    c = g.constants()
    _, value = optimal_time_gap(c.d_mu, c.mu_max, c.w_min, t)
    return math.exp(value) / g.ball_volume(x, math.sqrt(t))


def verify_kernel_upper(g: WeightedGraph, t: float, kernel=None,
                        abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL):
    _require_symmetric(g, "heat kernel upper bound")
    if kernel is None:
        kernel = heat_kernel(g, t)
    reports = []
    for i, x in enumerate(g.ids):
        bound = heat_kernel_upper_bound(g, t, x)
        for j, y in enumerate(g.ids):
            reports.append(BoundReport(
                "kernel_upper", [x, y, t], float(kernel.matrix[i, j]), bound,
                abs_tol=abs_tol, rel_tol=rel_tol))
    return reports


def heat_kernel_lower_bound(g: WeightedGraph, t: float, x, y) -> float:
    """(1/deg(y)) * exp{-2t - (4 mu_max/w_min) dist(x,y)^2 / t}; requires
    mu = deg and symmetric weights."""
    if t <= 0:
        raise ValueError("t must be positive")
    _require_symmetric(g, "heat kernel lower bound")
    _require_mu_deg(g, "heat kernel lower bound")
    c = g.constants()
    expo = -2.0 * t - (4.0 * c.mu_max / c.w_min) * g.dist(x, y)**2 / t
    return math.exp(expo) / g.degree(y)


def verify_kernel_lower(g: WeightedGraph, t: float, kernel=None,
                        abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL):
    _require_symmetric(g, "heat kernel lower bound")
    _require_mu_deg(g, "heat kernel lower bound")
    if kernel is None:
        kernel = heat_kernel(g, t)
    c = g.constants()
    D = g.distance_matrix()
    reports = []
    for i, x in enumerate(g.ids):
        for j, y in enumerate(g.ids):
            if not np.isfinite(D[i, j]):
                continue
            expo = -2.0 * t - (4.0 * c.mu_max / c.w_min) * D[i, j]**2 / t
            reports.append(BoundReport(
                "kernel_lower", [x, y, t],
                math.exp(expo) / g.degree(y), float(kernel.matrix[i, j]),
                abs_tol=abs_tol, rel_tol=rel_tol))
    return reports


def verify_diagonal_lower(g: WeightedGraph, t: float, kernel=None,
                          abs_tol=DEFAULT_ABS_TOL, rel_tol=DEFAULT_REL_TOL):
    """p(t, y, y) >= e^{-t}/deg(y) on mu = deg graphs."""
    _require_mu_deg(g, "diagonal lower bound")
    if kernel is None:
        kernel = heat_kernel(g, t)
    return [
        BoundReport("diagonal_lower", [y, t],
                    math.exp(-t) / g.degree(y), float(kernel.matrix[j, j]),
                    abs_tol=abs_tol, rel_tol=rel_tol)
        for j, y in enumerate(g.ids)
    ]


def volume_growth_bound(g: WeightedGraph, y, t: float) -> float:
    """Vol(B(y, 1)) * exp{t + 4 sqrt(2 mu_max t / w_min)}; dominates
    Vol(B(y, sqrt t)) under mu = deg with symmetric weights."""
    if t <= 0:
        raise ValueError("t must be positive")
    _require_symmetric(g, "volume growth bound")
    _require_mu_deg(g, "volume growth bound")
    c = g.constants()
    return g.ball_volume(y, 1.0) * math.exp(
        t + 4.0 * math.sqrt(2.0 * c.mu_max * t / c.w_min))


def verify_volume_growth(g: WeightedGraph, times, abs_tol=DEFAULT_ABS_TOL,
                         rel_tol=DEFAULT_REL_TOL):
    """Check Vol(B(y, sqrt t)) against volume_growth_bound at every vertex.

    Each report also notes (in extra) whether the stronger variant with
    deg(y) in place of Vol(B(y, 1)) holds; the two differ because
    Vol(B(y, 1)) includes the measure of the neighbors.
    """
    _require_symmetric(g, "volume growth bound")
    _require_mu_deg(g, "volume growth bound")
    c = g.constants()
    reports = []
    for t in times:
        if t <= 0:
            raise ValueError("times must be positive")
        factor = math.exp(t + 4.0 * math.sqrt(2.0 * c.mu_max * t / c.w_min))
        for y in g.ids:
            lhs = g.ball_volume(y, math.sqrt(t))
            rhs = g.ball_volume(y, 1.0) * factor
            strong = lhs <= g.degree(y) * factor * (1.0 + rel_tol) + abs_tol
            reports.append(BoundReport(
                "volume_growth", [y, t], lhs, rhs,
                abs_tol=abs_tol, rel_tol=rel_tol,
                extra={"degree_variant_holds": bool(strong)}))
    return reports
