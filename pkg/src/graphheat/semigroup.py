"""Heat kernel and semigroup evolution on a weighted graph.

The kernel p(t, x, y) is the fundamental solution of d/dt u = Lu paired with
the vertex measure, u(t, x) = sum_y mu(y) p(t, x, y) u0(y). It is computed by
uniformization: with lam >= max_x deg(x)/mu(x), Q = I + L/lam is entrywise
nonnegative with unit row sums and

    exp(tL) = exp(-lam t) * sum_k (lam t)^k / k! * Q^k,

truncated once the Poisson(lam t) tail drops below the requested tolerance.
When mu = deg and lam = 1 this is exactly the lazy-walk series p_k/deg. A
dense spectral oracle provides an independent second route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import WeightedGraph, as_vertex_function

DEFAULT_TOL = 1e-10
DENSE_ORACLE_CAP = 200


@dataclass(frozen=True)
class HeatKernel:
    """p(t, x, y) as a dense matrix in the graph's vertex order."""

    t: float
    matrix: np.ndarray
    graph: WeightedGraph

    def value(self, x, y) -> float:
        g = self.graph
        return float(self.matrix[g._resolve(x), g._resolve(y)])

    def mass(self) -> np.ndarray:
        """sum_y mu(y) p(t, x, y) per row; 1 on finite graphs."""
        return self.matrix @ self.graph.mu


def jump_matrix(g: WeightedGraph) -> np.ndarray:
    """One-step walk matrix p(x, y) = w_xy / deg(x); zero rows at isolated
    vertices."""
    P = np.zeros((g.n, g.n))
    nz = g.degrees > 0
    P[nz] = g.W[nz] / g.degrees[nz, None]
    return P


def generator(g: WeightedGraph) -> np.ndarray:
    """Matrix of the mu-Laplacian: L[x, y] = w_xy/mu(x), L[x, x] = -deg(x)/mu(x)."""
    L = g.W / g.mu[:, None]
    np.fill_diagonal(L, L.diagonal() - g.degrees / g.mu)
    return L


def _uniformized_apply(g: WeightedGraph, t: float, tol: float, operand: np.ndarray) -> np.ndarray:
    """exp(tL) @ operand via the truncated Poisson series.

    Coefficients are evaluated in log space, so large lam*t neither overflows
    t^k/k! nor underflows the whole series.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    rates = g.degrees / g.mu
    lam = float(rates.max(initial=0.0))
    if t == 0 or lam == 0:
        return operand.astype(float).copy()
    L = generator(g)
    Q = np.eye(g.n) + L / lam
    lt = lam * t
    log_lt = math.log(lt)

    cur = operand.astype(float).copy()
    log_coef = -lt  # log of e^{-lt} (lt)^k / k! at k = 0
    acc = math.exp(log_coef) * cur
    k = 0
    while True:
        if k + 1 > lt:
            # discarded mass <= coef_{k+1} / (1 - lt/(k+2)), geometric tail
            log_next = log_coef + log_lt - math.log(k + 1)
            tail_bound = math.exp(log_next) / (1.0 - lt / (k + 2))
            if tail_bound <= tol:
                break
        k += 1
        cur = Q @ cur
        log_coef += log_lt - math.log(k)
        coef = math.exp(log_coef)
        if coef > 0.0:
            acc += coef * cur
    return acc


def heat_kernel(g: WeightedGraph, t: float, tol: float = DEFAULT_TOL) -> HeatKernel:
    """Heat kernel at time t with series truncation error <= tol in max norm."""
    E = _uniformized_apply(g, t, tol, np.eye(g.n))
    return HeatKernel(float(t), E / g.mu[None, :], g)


def evolve(g: WeightedGraph, u0, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Solve the heat equation: u(t) = sum_y mu(y) p(t, ., y) u0(y).

    Applies the series to the vector directly, never forming the kernel.
    """
    u0 = as_vertex_function(g, u0)
    return _uniformized_apply(g, t, tol, u0)


def evolve_many(g: WeightedGraph, U0, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Evolve several initial conditions at once; U0 has one column per
    initial function."""
    U0 = np.asarray(U0, dtype=float)
    if U0.shape[0] != g.n:
        raise ValueError("initial-condition rows must match the vertex count")
    return _uniformized_apply(g, t, tol, U0)


def dense_oracle(g: WeightedGraph, t: float, cap: int = DENSE_ORACLE_CAP) -> HeatKernel:
    """Independent kernel via full spectral decomposition of the generator.

    For symmetric weights the generator is symmetrized in the mu-inner
    product and diagonalized exactly; otherwise a dense matrix exponential
    is used.
    """
    if g.n > cap:
        raise ValueError(f"graph too large for dense oracle ({g.n} > {cap})")
    if t < 0:
        raise ValueError("time must be nonnegative")
    L = generator(g)
    if g.weights_symmetric:
        root = np.sqrt(g.mu)
        S = (root[:, None] * L) / root[None, :]
        evals, V = np.linalg.eigh(S)
        E = (V * np.exp(t * evals)) @ V.T
        E = E / root[:, None] * root[None, :]
    else:
        E = scipy.linalg.expm(t * L)
    return HeatKernel(float(t), E / g.mu[None, :], g)


def compose(a: HeatKernel, b: HeatKernel) -> np.ndarray:
    """Chapman-Kolmogorov product: sum_z mu(z) p(s, x, z) p(t, z, y)."""
    if a.graph is not b.graph:
        raise ValueError("kernels must live on the same graph")
    return (a.matrix * a.graph.mu[None, :]) @ b.matrix


def kernel_rows_csv(kernel: HeatKernel):
    """Yield (t, x, y, p) rows in deterministic vertex insertion order."""
    g = kernel.graph
    for i, x in enumerate(g.ids):
        for j, y in enumerate(g.ids):
            yield kernel.t, x, y, float(kernel.matrix[i, j])
