"""Finite weighted graphs with a positive vertex measure.

Provides the graph container, the derived sup/inf constants, hop-count
distances and metric balls, standard graph generators, and the JSON file
format used by the command-line tools.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

MEASURE_MODES = ("unit", "degree", "explicit")

FAMILIES = ("path", "cycle", "grid", "complete", "star", "random")


class GraphFormatError(ValueError):
    """A graph construction or file violates an invariant (weights, measure,
    self-loops, duplicate edges, symmetry)."""


class UnreachableError(ValueError):
    """A distance was requested between vertices in different components."""


@dataclass(frozen=True)
class GraphConstants:
    """Global sup/inf quantities of a weighted graph with measure.

    d_mu    = max_x deg(x)/mu(x)
    mu_max  = max_x mu(x)
    w_min   = min over adjacent pairs of w_xy
    d       = max over adjacent pairs of mu(x)/w_xy
    d_w     = max over adjacent pairs of deg(x)/w_xy
    """

    d_mu: float
    mu_max: float
    w_min: float
    d: float
    d_w: float


class WeightedGraph:
    """A finite graph with positive edge weights and a positive vertex measure.

    Vertices are opaque string ids; internally they are mapped to contiguous
    integer indices in insertion order. The weight matrix W has
    W[i, j] = w_ij when j is adjacent to i and 0 otherwise. Graphs are
    immutable after construction.
    """

    def __init__(self, vertex_ids, edges, mu=None, weights_symmetric=True,
                 measure_mode="explicit"):
        """Build a graph.

        Parameters
        ----------
        vertex_ids : iterable of str
            Vertex identifiers, order defines internal indices.
        edges : iterable of (u, v, w)
            If weights_symmetric, each undirected edge is listed once and
            expanded; otherwise each entry sets the weight in direction u->v.
        mu : array-like, dict, or None
            Vertex measure. Required for measure_mode="explicit"; ignored
            otherwise ("unit" sets mu=1, "degree" sets mu=deg).
        """
        self.ids = [str(v) for v in vertex_ids]
        if len(set(self.ids)) != len(self.ids):
            raise GraphFormatError("duplicate vertex ids")
        self.index = {v: i for i, v in enumerate(self.ids)}
        n = len(self.ids)
        self.n = n
        self.weights_symmetric = bool(weights_symmetric)
        if measure_mode not in MEASURE_MODES:
            raise GraphFormatError(f"unknown measure_mode {measure_mode!r}")
        self.measure_mode = measure_mode

        W = np.zeros((n, n))
        for u, v, w in edges:
            i, j = self._resolve(u), self._resolve(v)
            if i == j:
                raise GraphFormatError(f"self-loop at vertex {u!r}")
            w = float(w)
            if w <= 0:
                raise GraphFormatError(f"nonpositive weight {w} on edge ({u},{v})")
            if W[i, j] != 0 or (self.weights_symmetric and W[j, i] != 0):
                raise GraphFormatError(f"duplicate edge ({u},{v})")
            W[i, j] = w
            if self.weights_symmetric:
                W[j, i] = w
        self.W = W
        self.W.setflags(write=False)
        self.degrees = W.sum(axis=1)
        self.degrees.setflags(write=False)

        if measure_mode == "unit":
            mu_arr = np.ones(n)
        elif measure_mode == "degree":
            if np.any(self.degrees <= 0):
                raise GraphFormatError("measure_mode='degree' requires no isolated vertices")
            mu_arr = self.degrees.copy()
        else:
            if mu is None:
                raise GraphFormatError("explicit measure_mode requires mu")
            if isinstance(mu, dict):
                missing = [v for v in self.ids if v not in mu]
                if missing:
                    raise GraphFormatError(f"mu missing for vertices {missing}")
                mu_arr = np.array([float(mu[v]) for v in self.ids])
            else:
                mu_arr = np.asarray(mu, dtype=float)
                if mu_arr.shape != (n,):
                    raise GraphFormatError("mu must have one value per vertex")
        if np.any(mu_arr <= 0):
            raise GraphFormatError("vertex measure must be strictly positive")
        self.mu = mu_arr
        self.mu.setflags(write=False)

    # -- basic queries ----------------------------------------------------

    def _resolve(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.n:
                raise GraphFormatError(f"vertex index {x} out of range")
            return int(x)
        try:
            return self.index[str(x)]
        except KeyError:
            raise GraphFormatError(f"unknown vertex id {x!r}") from None

    def degree(self, x) -> float:
        """Sum of weights of edges leaving x; 0 if x is isolated."""
        return float(self.degrees[self._resolve(x)])

    @property
    def num_edges(self) -> int:
        """Number of adjacent ordered pairs, halved when symmetric."""
        m = int(np.count_nonzero(self.W))
        return m // 2 if self.weights_symmetric else m

    @property
    def total_volume(self) -> float:
        return float(self.mu.sum())

    def constants(self) -> GraphConstants:
        """Exact max/min constants over the finite vertex and edge sets."""
        mask = self.W > 0
        if not mask.any():
            raise GraphFormatError("constants undefined on an edgeless graph")
        w_adj = self.W[mask]
        mu_rows = np.broadcast_to(self.mu[:, None], self.W.shape)[mask]
        deg_rows = np.broadcast_to(self.degrees[:, None], self.W.shape)[mask]
        return GraphConstants(
            d_mu=float(np.max(self.degrees / self.mu)),
            mu_max=float(np.max(self.mu)),
            w_min=float(np.min(w_adj)),
            d=float(np.max(mu_rows / w_adj)),
            d_w=float(np.max(deg_rows / w_adj)),
        )

    # -- metric structure --------------------------------------------------

    def _bfs_from(self, i: int) -> np.ndarray:
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[i] = 0
        q = deque([i])
        while q:
            u = q.popleft()
            for v in np.nonzero(self.W[u])[0]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(int(v))
        return dist

    def dist(self, x, y) -> int:
        """Hop-count distance (minimum number of edges on a path x -> y)."""
        i, j = self._resolve(x), self._resolve(y)
        if i == j:
            return 0
        d = self._bfs_from(i)[j]
        if d < 0:
            raise UnreachableError(f"no path from {x!r} to {y!r}")
        return int(d)

    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances; unreachable pairs are +inf."""
        out = np.empty((self.n, self.n))
        for i in range(self.n):
            d = self._bfs_from(i)
            out[i] = np.where(d < 0, np.inf, d)
        return out

    def ball(self, x, r: float) -> np.ndarray:
        """Indices of the closed ball {z : dist(x, z) <= r}."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        d = self._bfs_from(self._resolve(x))
        return np.nonzero((d >= 0) & (d <= r))[0]

    def ball_volume(self, x, r: float) -> float:
        """mu-measure of the closed hop-distance ball around x."""
        return float(self.mu[self.ball(x, r)].sum())


# -- vertex functions ------------------------------------------------------

def as_vertex_function(g: WeightedGraph, f) -> np.ndarray:
    """Coerce f (array-like or id->value dict) to an array over g's vertices."""
    if isinstance(f, dict):
        missing = [v for v in g.ids if v not in f]
        if missing:
            raise GraphFormatError(f"function missing values for {missing}")
        if len(f) != g.n:
            extra = [k for k in f if k not in g.index]
            raise GraphFormatError(f"function has unknown vertices {extra}")
        return np.array([float(f[v]) for v in g.ids])
    arr = np.asarray(f, dtype=float)
    if arr.shape != (g.n,):
        raise GraphFormatError(
            f"function domain mismatch: expected {g.n} values, got shape {arr.shape}")
    return arr


def load_vertex_function(path, g: WeightedGraph) -> np.ndarray:
    """Read {"values": {"<id>": number}} JSON into an array over g."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    return as_vertex_function(g, obj["values"])


def save_vertex_function(path, g: WeightedGraph, f) -> None:
    f = as_vertex_function(g, f)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"values": {v: f[i] for i, v in enumerate(g.ids)}}, fh, indent=1)
        fh.write("\n")


# -- file format -------------------------------------------------------------

def graph_to_dict(g: WeightedGraph) -> dict:
    verts = []
    for i, v in enumerate(g.ids):
        entry = {"id": v}
        if g.measure_mode == "explicit":
            entry["mu"] = g.mu[i]
        verts.append(entry)
    edges = []
    seen = set()
    for i in range(g.n):
        for j in np.nonzero(g.W[i])[0]:
            if g.weights_symmetric:
                if (j, i) in seen:
                    continue
                seen.add((i, int(j)))
            edges.append({"u": g.ids[i], "v": g.ids[int(j)], "w": g.W[i, j]})
    return {
        "weights_symmetric": g.weights_symmetric,
        "measure_mode": g.measure_mode,
        "vertices": verts,
        "edges": edges,
    }


def graph_from_dict(obj: dict) -> WeightedGraph:
    try:
        symmetric = bool(obj["weights_symmetric"])
        mode = obj["measure_mode"]
        verts = obj["vertices"]
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"malformed graph object: {exc}") from exc
    ids = []
    mu = {}
    for entry in verts:
        ids.append(entry["id"])
        if "mu" in entry:
            if mode != "explicit":
                raise GraphFormatError(
                    "mu entries are only allowed with measure_mode='explicit'")
            mu[entry["id"]] = entry["mu"]
    edge_list = [(e["u"], e["v"], e["w"]) for e in edges]
    return WeightedGraph(ids, edge_list, mu=mu if mode == "explicit" else None,
                         weights_symmetric=symmetric, measure_mode=mode)


def load_graph(path) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON in {path}: {exc}") from exc
    return graph_from_dict(obj)


def save_graph(path, g: WeightedGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(g), fh, indent=1)
        fh.write("\n")


# -- generators ---------------------------------------------------------------

def _grid_edges(rows: int, cols: int):
    def vid(r, c):
        return f"v{r * cols + c}"
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                yield (vid(r, c), vid(r, c + 1), 1.0)
            if r + 1 < rows:
                yield (vid(r, c), vid(r + 1, c), 1.0)


def generate(family: str, *, n=None, rows=None, cols=None, p=None,
             w_lo=1.0, w_hi=1.0, measure_mode="unit", mu=None,
             seed=None) -> WeightedGraph:
    """Build a graph from a standard family; deterministic for a fixed seed.

    Families: path, cycle, grid (rows x cols), complete, star (n = number of
    leaves + 1), random (Erdos-Renyi with edge probability p and weights
    uniform in [w_lo, w_hi]).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "grid":
        if rows is None or cols is None or rows < 1 or cols < 1:
            raise ValueError("grid requires rows >= 1 and cols >= 1")
        ids = [f"v{i}" for i in range(rows * cols)]
        edges = list(_grid_edges(rows, cols))
    else:
        if n is None or n < 1:
            raise ValueError("family requires n >= 1")
        ids = [f"v{i}" for i in range(n)]
        if family == "path":
            edges = [(f"v{i}", f"v{i+1}", 1.0) for i in range(n - 1)]
        elif family == "cycle":
            if n < 3:
                raise ValueError("cycle requires n >= 3")
            edges = [(f"v{i}", f"v{(i+1) % n}", 1.0) for i in range(n)]
        elif family == "complete":
            edges = [(f"v{i}", f"v{j}", 1.0)
                     for i in range(n) for j in range(i + 1, n)]
        elif family == "star":
            if n < 2:
                raise ValueError("star requires n >= 2")
            edges = [("v0", f"v{i}", 1.0) for i in range(1, n)]
        else:  # random
            if p is None or not 0 < p <= 1:
                raise ValueError("random family requires edge probability p in (0,1]")
            if not 0 < w_lo <= w_hi:
                raise ValueError("weight range must satisfy 0 < w_lo <= w_hi")
            rng = np.random.default_rng(seed)
            edges = []
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < p:
                        edges.append((f"v{i}", f"v{j}",
                                      float(rng.uniform(w_lo, w_hi))))
    return WeightedGraph(ids, edges, mu=mu, weights_symmetric=True,
                         measure_mode=measure_mode)
