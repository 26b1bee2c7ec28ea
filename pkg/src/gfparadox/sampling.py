"""Neighbour-based sampling of high-characteristic nodes, and snowball crawls.

Three parallel groups are drawn from one seed:

* control -- nodes with ``k >= 1`` drawn uniformly without replacement;
* friend  -- one uniformly random neighbour of each control node;
* biased  -- the neighbour of each control node with the highest ``x``
  (ties broken uniformly at random).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GFPError
from .graph import AttributeTable, Graph, validate

__all__ = [
    "SampleGroups",
    "GroupSummary",
    "sample_groups",
    "group_summary",
    "distribution_summary",
    "ccdf",
    "snowball_sample",
]

GROUPS = ("control", "friend", "biased")


@dataclass(frozen=True, eq=False)
class SampleGroups:
    """Compacted node ids of the three groups, aligned by position."""

    control: np.ndarray
    friend: np.ndarray
    biased: np.ndarray
    seed: int
    sample_size: int
    tie_rule: str = "uniform-random"

    def __getitem__(self, group: str) -> np.ndarray:
        if group not in GROUPS:
            raise KeyError(group)
        return getattr(self, group)

    def __eq__(self, other):
        if not isinstance(other, SampleGroups):
            return NotImplemented
        return (self.seed == other.seed and self.sample_size == other.sample_size
                and all(np.array_equal(self[g], other[g]) for g in GROUPS))

    __hash__ = None


def _segments(graph: Graph, nodes: np.ndarray):
    """Flattened CSR positions of the neighbour lists of ``nodes``.

    Returns ``(positions, starts)`` where segment ``s`` occupies
    ``positions[starts[s]:starts[s + 1]]``.
    """
    lens = graph.degrees[nodes]
    starts = np.zeros(len(nodes) + 1, dtype=np.int64)
    np.cumsum(lens, out=starts[1:])
    offsets = np.arange(starts[-1]) - np.repeat(starts[:-1], lens)
    positions = np.repeat(graph.indptr[nodes], lens) + offsets
    return positions, starts


def sample_groups(graph: Graph, x: AttributeTable, size: int, seed: int) -> SampleGroups:
    """Draw control, friend and biased groups of ``size`` nodes each.

    The draw is fully determined by ``seed``.  Raises :class:`GFPError`
    when fewer than ``size`` nodes have a neighbour, and
    :class:`DomainError` when a neighbour needed by the biased group has a
    missing value.
    """
    validate(graph, x)
    if size < 1:
        raise GFPError("sample size must be >= 1")
    candidates = np.flatnonzero(graph.degrees >= 1)
    if len(candidates) < size:
        raise GFPError(f"only {len(candidates)} non-isolated nodes; cannot sample {size}")
    rng = np.random.default_rng(seed)

    control = rng.choice(candidates, size=size, replace=False)
    k = graph.degrees[control]
    friend = graph.indices[graph.indptr[control] + rng.integers(0, k)]

    positions, starts = _segments(graph, control)
    nbrs = graph.indices[positions]
    if np.any(x.missing[nbrs]):
        bad = nbrs[x.missing[nbrs]][0]
        raise DomainError(f"{x.name} missing for neighbour {graph.node_ids[bad]}; "
                          "biased sampling needs every neighbour value")
    vals = x.values[nbrs]
    seg_max = np.maximum.reduceat(vals, starts[:-1])
    at_max = vals == np.repeat(seg_max, k)
    keys = np.where(at_max, rng.random(len(vals)), -1.0)
    key_max = np.maximum.reduceat(keys, starts[:-1])
    seg = np.repeat(np.arange(size), k)
    winner = np.flatnonzero(keys == np.repeat(key_max, k))
    _, first = np.unique(seg[winner], return_index=True)
    biased = nbrs[winner[first]]
    return SampleGroups(control, friend, biased, int(seed), int(size))


def ccdf(values) -> tuple[np.ndarray, np.ndarray]:
    """Empirical survival function ``P(X >= x)`` at each distinct value."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    uniq, first = np.unique(v, return_index=True)
    return uniq, (len(v) - first) / len(v)


@dataclass(frozen=True, eq=False)
class GroupSummary:
    name: str
    n: int
    mean: float
    median: float
    max: float
    std: float
    ccdf_x: np.ndarray
    ccdf_p: np.ndarray


def distribution_summary(name: str, values) -> GroupSummary:
    v = np.asarray(values, dtype=np.float64)
    v = v[~np.isnan(v)]
    if len(v) == 0:
        raise DomainError(f"{name}: no values to summarise")
    xs, ps = ccdf(v)
    return GroupSummary(name, len(v), float(v.mean()), float(np.median(v)),
                        float(v.max()), float(v.std()), xs, ps)


def group_summary(groups: SampleGroups, x: AttributeTable,
                  include_population: bool = False) -> dict[str, GroupSummary]:
    """Mean, median, max and CCDF of ``x`` within each group.

    With ``include_population`` the whole-network distribution is added
    under the key ``"all"`` for comparison.
    """
    n = len(x)
    for g in GROUPS:
        ids = groups[g]
        if len(ids) and (ids.min() < 0 or ids.max() >= n):
            raise GFPError(f"{g} group refers to nodes outside the attribute table")
    out = {g: distribution_summary(g, x.values[groups[g]]) for g in GROUPS}
    if include_population:
        out["all"] = distribution_summary("all", x.values)
    return out


def snowball_sample(graph: Graph, start: int, max_nodes: int, seed: int = 0) -> np.ndarray:
    """Breadth-first crawl from ``start`` capped at ``max_nodes`` nodes.

    Whole BFS layers are admitted while they fit; the first layer that
    does not fit is subsampled uniformly to reach exactly ``max_nodes``.
    Returns the sorted compacted ids of the collected nodes.  A crawl whose
    component is smaller than ``max_nodes`` returns the whole component.
    """
    if max_nodes < 1:
        raise GFPError("max_nodes must be >= 1")
    if not 0 <= start < graph.node_count:
        raise GFPError(f"start node {start} out of range")
    rng = np.random.default_rng(seed)
    seen = np.zeros(graph.node_count, dtype=bool)
    seen[start] = True
    taken = [np.array([start])]
    total = 1
    layer = taken[0]
    while total < max_nodes:
        positions, _ = _segments(graph, layer)
        nxt = np.unique(graph.indices[positions])
        nxt = nxt[~seen[nxt]]
        if len(nxt) == 0:
            break
        room = max_nodes - total
        if len(nxt) > room:
            nxt = np.sort(rng.choice(nxt, size=room, replace=False))
        seen[nxt] = True
        taken.append(nxt)
        total += len(nxt)
        layer = nxt
    if total < max_nodes:
        msg = (f"snowball from node {graph.node_ids[start]} reached only {total} "
               f"of {max_nodes} nodes")
        if graph.degrees[start] == 0:
            msg = f"start node {graph.node_ids[start]} is isolated; " + msg
        warnings.warn(msg, stacklevel=2)
    return np.sort(np.concatenate(taken))
