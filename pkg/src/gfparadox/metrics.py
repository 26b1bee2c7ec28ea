"""Generalized friendship paradox statistics.

Per-node test
    node ``i`` is *paradoxical* for characteristic ``x`` when
    ``x_i < sum(x_j for j in N(i)) / k_i`` (strict).  ``H`` is the fraction
    of evaluable nodes that are paradoxical, and ``h(k, x)`` is the same
    fraction restricted to a (degree, characteristic) bin.

Network-level test
    ``<x>_nn = sum(k_i x_i) / sum(k_i)`` is the characteristic of a node
    reached by following a random edge end.  The paradox holds for the
    network when ``<x> < <x>_nn``.  With population moments the gap obeys
    ``<x>_nn - <x> = rho_kx * sigma_k * sigma_x / <k>``.

Node sets
    * moments (``<x>``, ``sigma_x``, ``<k>``, ``rho_kx``, ``<x>_nn``) use every
      node with a non-missing ``x``, isolated nodes included;
    * the per-node test uses nodes with ``k >= 1``, a non-missing ``x`` and
      no missing neighbour value;
    * assortativity uses every edge whose two endpoints have a value.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, GFPError
from .graph import AttributeTable, Graph, validate

__all__ = [
    "NodeEvaluation",
    "ParadoxGrid",
    "ParadoxReport",
    "evaluate_nodes",
    "paradox_holds",
    "paradox_probability_grid",
    "average_paradox_probability",
    "pearson_degree_correlation",
    "characteristic_assortativity",
    "neighbor_average",
    "gfp_report",
    "bin_edges",
]

# Relative scale below which a spread is treated as exactly zero.
_ZERO_SPREAD = 1e-14


@dataclass(frozen=True, eq=False)
class NodeEvaluation:
    """Vectorised per-node paradox test.

    ``evaluable`` marks nodes the test is defined for; ``holds`` is only
    meaningful where ``evaluable`` is true.
    """

    evaluable: np.ndarray
    holds: np.ndarray
    neighbor_mean: np.ndarray
    n_neighbor_missing: int

    @property
    def n_evaluated(self) -> int:
        return int(np.count_nonzero(self.evaluable))

    @property
    def n_holds(self) -> int:
        return int(np.count_nonzero(self.holds & self.evaluable))


def _neighbor_sums(graph: Graph, values: np.ndarray, lo: int, hi: int):
    start, stop = graph.indptr[lo], graph.indptr[hi]
    row = graph.row[start:stop] - lo
    nbr = graph.indices[start:stop]
    sums = np.bincount(row, weights=values[nbr], minlength=hi - lo)
    return sums


def evaluate_nodes(graph: Graph, x: AttributeTable, threads: int = 1) -> NodeEvaluation:
    """Run the per-node paradox test on every node at once.

    Work is split into contiguous node ranges when ``threads > 1``; each
    node's neighbour sum is computed entirely within one range, so the
    result does not depend on the number of workers.
    """
    validate(graph, x)
    n = graph.node_count
    k = graph.degrees
    filled = np.where(x.missing, 0.0, x.values)
    miss = x.missing.astype(np.float64)

    bounds = np.linspace(0, n, max(1, min(threads, n)) + 1).astype(int)
    ranges = list(zip(bounds[:-1], bounds[1:]))

    def work(r):
        lo, hi = r
        return _neighbor_sums(graph, filled, lo, hi), _neighbor_sums(graph, miss, lo, hi)

    if len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            parts = list(pool.map(work, ranges))
    else:
        parts = [work(ranges[0])]
    sums = np.concatenate([p[0] for p in parts])
    nbr_missing = np.concatenate([p[1] for p in parts])

    base = (k >= 1) & x.present
    evaluable = base & (nbr_missing == 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        nbr_mean = np.where(evaluable, sums / np.maximum(k, 1), np.nan)
        holds = evaluable & (x.values < nbr_mean)
    return NodeEvaluation(evaluable, holds, nbr_mean,
                          int(np.count_nonzero(base & (nbr_missing > 0))))


def paradox_holds(graph: Graph, x: AttributeTable, node: int) -> bool:
    """Whether ``x[node]`` is strictly below the mean of its neighbours.

    ``node`` is a compacted index.  Raises :class:`DomainError` for an
    isolated node or a missing value on the node or any neighbour.
    """
    validate(graph, x)
    if graph.degrees[node] == 0:
        raise DomainError(f"paradox undefined for k=0 (node {graph.node_ids[node]})")
    if x.missing[node]:
        raise DomainError(f"{x.name} missing for node {graph.node_ids[node]}")
    nbrs = graph.neighbors(node)
    bad = nbrs[x.missing[nbrs]]
    if len(bad):
        raise DomainError(f"{x.name} missing for neighbour {graph.node_ids[bad[0]]} "
                          f"of node {graph.node_ids[node]}")
    total = 0.0
    for v in x.values[nbrs].tolist():
        total += v
    return bool(x.values[node] < total / len(nbrs))


def average_paradox_probability(graph: Graph, x: AttributeTable,
                                evaluation: NodeEvaluation | None = None) -> float:
    """Fraction ``H`` of evaluable nodes for which the paradox holds."""
    ev = evaluation if evaluation is not None else evaluate_nodes(graph, x)
    if ev.n_evaluated == 0:
        raise DomainError("no evaluable nodes (need k >= 1 and non-missing values)")
    return ev.n_holds / ev.n_evaluated


def _moment_arrays(graph: Graph, x: AttributeTable):
    validate(graph, x)
    present = x.present
    return graph.degrees[present].astype(np.float64), x.values[present]


def _is_flat(std: float, values: np.ndarray) -> bool:
    scale = float(np.max(np.abs(values))) if len(values) else 0.0
    return std <= _ZERO_SPREAD * max(scale, 1e-300)


def _moments(graph: Graph, x: AttributeTable):
    k, v = _moment_arrays(graph, x)
    if len(v) == 0:
        raise DomainError(f"{x.name}: no non-missing values")
    mk, mx = k.mean(), v.mean()
    dk, dx = k - mk, v - mx
    sk = math.sqrt(np.mean(dk * dk))
    sx = math.sqrt(np.mean(dx * dx))
    return k, v, mk, mx, sk, sx, float(np.mean(dk * dx))


def pearson_degree_correlation(graph: Graph, x: AttributeTable) -> float:
    """Pearson correlation between degree and ``x`` with 1/N moments."""
    k, v, _, _, sk, sx, cov = _moments(graph, x)
    if _is_flat(sk, k) or _is_flat(sx, v):
        raise DomainError("correlation undefined: zero variance")
    return float(np.clip(cov / (sk * sx), -1.0, 1.0))


def characteristic_assortativity(graph: Graph, x: AttributeTable) -> float:
    """Edge-level correlation of ``x`` across link endpoints.

    Each undirected link contributes one ``(x_l, x'_l)`` pair.  The
    expression is evaluated on values centred at the edge-end mean, which
    is algebraically identical to the raw-sum form and avoids cancellation.
    """
    validate(graph, x)
    e = graph.edges()
    ok = x.present[e[:, 0]] & x.present[e[:, 1]]
    a, b = x.values[e[ok, 0]], x.values[e[ok, 1]]
    if len(a) == 0:
        raise DomainError("assortativity undefined: no links")
    mu = 0.5 * (a.mean() + b.mean())
    ca, cb = a - mu, b - mu
    num = np.mean(ca * cb)
    den = np.mean(0.5 * (ca * ca + cb * cb))
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    if den <= (_ZERO_SPREAD * scale) ** 2:
        raise DomainError("assortativity undefined: all endpoint values equal")
    return float(np.clip(num / den, -1.0, 1.0))


def neighbor_average(graph: Graph, x: AttributeTable) -> float:
    """Degree-weighted mean ``sum(k_i x_i) / sum(k_i)``."""
    k, v = _moment_arrays(graph, x)
    total = k.sum()
    if total == 0:
        raise DomainError("neighbour average undefined: no links")
    return float(np.dot(k, v) / total)


@dataclass
class ParadoxReport:
    characteristic_name: str
    n_nodes: int
    n_evaluated: int
    n_isolated: int
    n_missing: int
    n_neighbor_missing: int
    mean_x: float | None
    std_x: float | None
    mean_k: float | None
    std_k: float | None
    rho_kx: float | None
    r_xx: float | None
    H: float | None
    mean_x_nn: float | None
    F: float | None
    F_from_correlation: float | None
    gfp_network_level: bool | None

    def to_dict(self) -> dict:
        return asdict(self)


def gfp_report(graph: Graph, x: AttributeTable, threads: int = 1,
               evaluation: NodeEvaluation | None = None) -> ParadoxReport:
    """All scalar paradox statistics for one characteristic.

    Undefined statistics are reported as ``None`` instead of failing the
    whole report.
    """
    validate(graph, x)
    ev = evaluation if evaluation is not None else evaluate_nodes(graph, x, threads)

    def attempt(fn, *args):
        try:
            return fn(*args)
        except DomainError:
            return None

    mean_x = std_x = mean_k = std_k = None
    if x.n_missing < len(x):
        _, _, mean_k, mean_x, std_k, std_x, _ = _moments(graph, x)
        mean_k, mean_x = float(mean_k), float(mean_x)
    rho = attempt(pearson_degree_correlation, graph, x)
    nn = attempt(neighbor_average, graph, x)
    F = nn - mean_x if nn is not None and mean_x is not None else None
    F_rho = None
    if rho is not None and mean_k:
        F_rho = rho * std_k * std_x / mean_k
    return ParadoxReport(
        characteristic_name=x.name,
        n_nodes=graph.node_count,
        n_evaluated=ev.n_evaluated,
        n_isolated=graph.n_isolated,
        n_missing=x.n_missing,
        n_neighbor_missing=ev.n_neighbor_missing,
        mean_x=mean_x,
        std_x=std_x,
        mean_k=mean_k,
        std_k=std_k,
        rho_kx=rho,
        r_xx=attempt(characteristic_assortativity, graph, x),
        H=attempt(average_paradox_probability, graph, x, ev),
        mean_x_nn=nn,
        F=F,
        F_from_correlation=F_rho,
        gfp_network_level=None if F is None else bool(mean_x < nn),
    )


# -- binned h(k, x) ---------------------------------------------------------

_MAX_CELLS = 10_000_000


def bin_edges(values, policy: str = "log2") -> np.ndarray:
    """Bin edges covering ``values``.

    ``"log2"`` gives powers of two (plus one leading bin from the minimum
    when values are not all positive); ``"unit"`` gives integer-aligned
    bins of width one.
    """
    v = np.asarray(values, dtype=np.float64)
    if len(v) == 0:
        raise GFPError("cannot bin an empty set of values")
    lo, hi = float(v.min()), float(v.max())
    if policy == "unit":
        return np.arange(math.floor(lo), math.floor(hi) + 2, dtype=np.float64)
    if policy != "log2":
        raise GFPError(f"unknown bin policy {policy!r}")
    pos = v[v > 0]
    if len(pos) == 0:
        return bin_edges(v, "unit")
    e_lo = math.floor(math.log2(pos.min()))
    while 2.0 ** e_lo > pos.min():
        e_lo -= 1
    e_hi = math.floor(math.log2(hi)) + 1
    while 2.0 ** e_hi <= hi:
        e_hi += 1
    edges = 2.0 ** np.arange(e_lo, e_hi + 1)
    if lo <= 0:
        edges = np.concatenate([[lo], edges])
    return edges


def _resolve_edges(spec, values) -> np.ndarray:
    if isinstance(spec, str):
        return bin_edges(values, spec)
    edges = np.asarray(spec, dtype=np.float64).ravel()
    if len(edges) < 2 or not np.all(np.diff(edges) > 0):
        raise GFPError("bin edges must be strictly increasing")
    return edges


def _bin_index(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    if len(values) and (values.min() < edges[0] or values.max() > edges[-1]):
        raise GFPError(f"bin edges [{edges[0]}, {edges[-1]}] do not cover observed "
                       f"range [{values.min()}, {values.max()}]")
    idx = np.searchsorted(edges, values, side="right") - 1
    idx[values == edges[-1]] = len(edges) - 2
    return idx


@dataclass(frozen=True, eq=False)
class ParadoxGrid:
    """Binned paradox holding probability ``h(k, x)``.

    ``counts[a, b]`` is the number of evaluable nodes with degree in
    ``k_bin_edges[a:a+2]`` and characteristic in ``x_bin_edges[b:b+2]``;
    ``holds`` counts the paradoxical ones; ``h`` is their ratio, NaN for
    empty cells.  Bins are half-open except the last, which is closed.
    """

    k_bin_edges: np.ndarray
    x_bin_edges: np.ndarray
    counts: np.ndarray
    holds: np.ndarray
    h: np.ndarray

    @property
    def H(self) -> float:
        return float(self.holds.sum() / self.counts.sum())

    def rows(self):
        """Non-empty cells as ``(k_lo, k_hi, x_lo, x_hi, count, holds, h)``."""
        ka, xb = np.nonzero(self.counts)
        for a, b in zip(ka.tolist(), xb.tolist()):
            yield (float(self.k_bin_edges[a]), float(self.k_bin_edges[a + 1]),
                   float(self.x_bin_edges[b]), float(self.x_bin_edges[b + 1]),
                   int(self.counts[a, b]), int(self.holds[a, b]), float(self.h[a, b]))

    def cell_of(self, k: float, x: float) -> tuple[int, int]:
        a = _bin_index(np.array([float(k)]), self.k_bin_edges)[0]
        b = _bin_index(np.array([float(x)]), self.x_bin_edges)[0]
        return int(a), int(b)


def paradox_probability_grid(graph: Graph, x: AttributeTable,
                             k_bins: str | Sequence[float] = "log2",
                             x_bins: str | Sequence[float] = "log2",
                             threads: int = 1,
                             evaluation: NodeEvaluation | None = None) -> ParadoxGrid:
    """Empirical ``h(k, x)`` over a (degree, characteristic) grid.

    ``k_bins`` and ``x_bins`` are either a policy name (``"log2"`` or
    ``"unit"``) or explicit strictly increasing edges.
    """
    ev = evaluation if evaluation is not None else evaluate_nodes(graph, x, threads)
    if ev.n_evaluated == 0:
        raise DomainError("no evaluable nodes (need k >= 1 and non-missing values)")
    sel = ev.evaluable
    k = graph.degrees[sel].astype(np.float64)
    v = x.values[sel]
    ke = _resolve_edges(k_bins, k)
    xe = _resolve_edges(x_bins, v)
    nk, nx = len(ke) - 1, len(xe) - 1
    if nk * nx > _MAX_CELLS:
        raise GFPError(f"grid of {nk}x{nx} cells is too large; use log2 bins")
    flat = _bin_index(k, ke) * nx + _bin_index(v, xe)
    counts = np.bincount(flat, minlength=nk * nx).reshape(nk, nx)
    holds = np.bincount(flat, weights=ev.holds[sel], minlength=nk * nx)
    holds = holds.astype(np.int64).reshape(nk, nx)
    with np.errstate(invalid="ignore", divide="ignore"):
        h = np.where(counts > 0, holds / counts, np.nan)
    return ParadoxGrid(ke, xe, counts, holds, h)
