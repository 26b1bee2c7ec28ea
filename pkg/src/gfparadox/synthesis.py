"""Characteristics with a controlled degree correlation, and random graphs.

``synthesize_correlated`` mixes the degree vector ``k`` with a shuffled
copy ``y`` of itself::

    X_i = rho * k_i + sqrt(1 - rho**2) * y_i

Because ``y`` has the same spread as ``k`` and is (nearly) independent of
it, ``X`` has the same spread too and its correlation with degree is
``rho`` in expectation.  The shuffle is only approximately independent of
``k`` at finite N, so measured correlations scatter around ``rho`` with a
standard deviation of about ``1/sqrt(N)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DomainError, GFPError, GraphError
from .graph import AttributeTable, Graph, build_graph

__all__ = [
    "SynthesisSpec",
    "synthesize_correlated",
    "attribute_name",
    "erdos_renyi_graph",
    "barabasi_albert_graph",
    "configuration_graph",
    "ring_graph",
    "is_graphical",
    "generate_graph",
]


@dataclass(frozen=True)
class SynthesisSpec:
    rho: float
    seed: int
    source: str = "degree"

    def __post_init__(self):
        if not -1.0 <= self.rho <= 1.0:
            raise GFPError(f"rho must lie in [-1, 1], got {self.rho}")


def attribute_name(spec: SynthesisSpec) -> str:
    return f"X_rho_{spec.rho:g}_seed_{spec.seed}"


def synthesize_correlated(graph: Graph, spec: SynthesisSpec,
                          attrs: Mapping[str, AttributeTable] | None = None
                          ) -> AttributeTable:
    """Characteristic whose correlation with degree is ``spec.rho`` on average.

    ``spec.source`` names the base vector mixed with its own shuffle;
    ``"degree"`` uses ``k``, any other name is looked up in ``attrs``.
    """
    if spec.source == "degree":
        base = graph.degrees.astype(np.float64)
    else:
        if attrs is None or spec.source not in attrs:
            raise GFPError(f"unknown synthesis source {spec.source!r}")
        table = attrs[spec.source]
        if table.n_missing:
            raise DomainError(f"synthesis source {spec.source!r} has missing values")
        base = table.values
    if len(base) < 2:
        raise DomainError("synthesis needs at least 2 nodes")
    if np.all(base == base[0]):
        raise DomainError(f"{spec.source} has zero variance (regular graph?)")
    rng = np.random.default_rng(spec.seed)
    y = rng.permutation(base)
    x = spec.rho * base + math.sqrt(1.0 - spec.rho ** 2) * y
    return AttributeTable(attribute_name(spec), x)


# -- graph generators -------------------------------------------------------

def erdos_renyi_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p): every pair linked independently with probability ``p``."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise GFPError("erdos_renyi needs n >= 1 and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    m = int(rng.binomial(pairs, p)) if pairs else 0
    idx = np.sort(rng.choice(pairs, size=m, replace=False)) if m else np.empty(0, np.int64)
    # Row-major upper triangle: row i starts at i*n - i*(i+1)/2.
    i = np.floor(((2 * n - 1) - np.sqrt((2 * n - 1) ** 2 - 8.0 * idx)) / 2).astype(np.int64)
    row_start = i * n - i * (i + 1) // 2
    i = np.where(row_start > idx, i - 1, i)
    row_start = i * n - i * (i + 1) // 2
    nxt = (i + 1) * n - (i + 1) * (i + 2) // 2
    i = np.where(idx >= nxt, i + 1, i)
    row_start = i * n - i * (i + 1) // 2
    j = idx - row_start + i + 1
    return build_graph(np.column_stack([i, j]), nodes=range(n))


def barabasi_albert_graph(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment grown from a clique of ``max(m, 3)`` nodes.

    Every new node links to ``m`` distinct existing nodes chosen with
    probability proportional to degree, so ``L = C(m0, 2) + m (n - m0)``
    with ``m0 = max(m, 3)`` (a triangle seed for ``m <= 3``).
    """
    m0 = max(m, 3)
    if m < 1 or n < m0:
        raise GFPError(f"barabasi_albert needs m >= 1 and n >= {m0}")
    rng = np.random.default_rng(seed)
    n_edges = m0 * (m0 - 1) // 2 + m * (n - m0)
    src = np.empty(n_edges, dtype=np.int64)
    dst = np.empty(n_edges, dtype=np.int64)
    ends = np.empty(2 * n_edges, dtype=np.int64)
    e = 0
    for a in range(m0):
        for b in range(a + 1, m0):
            src[e], dst[e] = a, b
            ends[2 * e], ends[2 * e + 1] = a, b
            e += 1
    for new in range(m0, n):
        filled = 2 * e
        targets = set()
        while len(targets) < m:
            draw = ends[rng.integers(0, filled, size=m - len(targets))]
            targets.update(draw.tolist())
        for t in sorted(targets):
            src[e], dst[e] = new, t
            ends[2 * e], ends[2 * e + 1] = new, t
            e += 1
    return build_graph(np.column_stack([src, dst]), nodes=range(n))


def ring_graph(n: int, k: int = 1) -> Graph:
    """Circulant graph: node ``i`` linked to ``i +- 1 .. i +- k`` (2k-regular)."""
    if n < 2 * k + 1:
        raise GFPError("ring needs n >= 2k + 1")
    i = np.arange(n)
    edges = np.concatenate([np.column_stack([i, (i + d) % n]) for d in range(1, k + 1)])
    return build_graph(edges, nodes=range(n))


def is_graphical(degrees) -> bool:
    """Erdos-Gallai test for a simple-graph degree sequence."""
    d = np.sort(np.asarray(degrees, dtype=np.int64))[::-1]
    if len(d) == 0:
        return True
    if d[-1] < 0 or d.sum() % 2:
        return False
    n = len(d)
    prefix = np.concatenate([[0], np.cumsum(d)])
    r = np.arange(1, n + 1)
    # Number of entries >= r; these lead the descending sequence.
    at_least = np.searchsorted(-d, -r, side="right")
    cut = np.maximum(r, at_least)
    tail = r * np.maximum(at_least - r, 0) + (prefix[-1] - prefix[cut])
    return bool(np.all(prefix[1:] <= r * (r - 1) + tail))


def configuration_graph(degrees, seed: int, max_rounds: int = 200) -> Graph:
    """Random simple graph with the given degree sequence.

    Stubs are paired at random.  Self-loops and repeated edges are then
    repaired by re-pairing their stubs together with an equal number of
    randomly chosen valid edges, for at most ``max_rounds`` rounds.  Any
    violations left after that are dropped and counted on the returned
    graph (``n_self_loops``, ``n_duplicates``).
    """
    deg = np.asarray(degrees, dtype=np.int64)
    if len(deg) == 0 or deg.sum() == 0:
        raise GraphError("empty graph")
    if not is_graphical(deg):
        raise GFPError("degree sequence is not graphical")
    n = len(deg)
    rng = np.random.default_rng(seed)
    stubs = rng.permutation(np.repeat(np.arange(n), deg))
    pairs = stubs.reshape(-1, 2)
    for _ in range(max_rounds):
        bad = _bad_pairs(pairs, n)
        if not bad.any():
            break
        good = np.flatnonzero(~bad)
        extra = rng.choice(good, size=min(len(good), int(bad.sum())), replace=False)
        pick = np.concatenate([np.flatnonzero(bad), extra])
        pool = rng.permutation(pairs[pick].ravel())
        pairs[pick] = pool.reshape(-1, 2)
    return build_graph(pairs, nodes=range(n))


def _bad_pairs(pairs: np.ndarray, n: int) -> np.ndarray:
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    key = lo * n + hi
    order = np.argsort(key, kind="stable")
    dup = np.zeros(len(key), dtype=bool)
    dup[order[1:]] = key[order[1:]] == key[order[:-1]]
    return dup | (lo == hi)


def generate_graph(model: str, params: Mapping, seed: int) -> Graph:
    """Dispatch to a generator by name.

    ``erdos_renyi`` takes ``n``, ``p``; ``barabasi_albert`` takes ``n``,
    ``m``; ``configuration`` takes ``degrees``; ``ring`` takes ``n``, ``k``.
    """
    try:
        if model in ("erdos_renyi", "er"):
            g = erdos_renyi_graph(int(params["n"]), float(params["p"]), seed)
        elif model in ("barabasi_albert", "ba"):
            g = barabasi_albert_graph(int(params["n"]), int(params["m"]), seed)
        elif model in ("configuration", "config"):
            g = configuration_graph(params["degrees"], seed)
        elif model == "ring":
            g = ring_graph(int(params["n"]), int(params.get("k", 1)))
        else:
            raise GFPError(f"unknown graph model {model!r}")
    except KeyError as exc:
        raise GFPError(f"{model}: missing parameter {exc.args[0]!r}") from None
    return g
