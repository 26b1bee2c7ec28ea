"""Immutable attributed-graph data model.

A :class:`Graph` is a simple undirected graph stored in compressed sparse
row (CSR) form: ``indices[indptr[i]:indptr[i + 1]]`` is the ascending list
of neighbours of node ``i``.  Node ids are compacted to ``0..N-1``; the
original ids are kept in ``Graph.node_ids`` so every result can be traced
back to the source data.

An :class:`AttributeTable` holds one named real-valued characteristic per
node, in node-id order, with an optional missing-value mask.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import BindingError, GFPError, GraphError, ParseError

__all__ = [
    "Graph",
    "AttributeTable",
    "BindingReport",
    "build_graph",
    "induced_subgraph",
    "degree_table",
    "validate",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph in CSR layout.

    Attributes
    ----------
    indptr : ndarray of int64, shape (N + 1,)
    indices : ndarray of int64, shape (2L,)
        Concatenated neighbour lists, each sorted ascending.
    node_ids : ndarray of int64, shape (N,)
        Original id of every compacted node.
    n_self_loops, n_duplicates : int
        Input edges dropped during canonicalisation.
    """

    indptr: np.ndarray
    indices: np.ndarray
    node_ids: np.ndarray
    n_self_loops: int = 0
    n_duplicates: int = 0

    def __post_init__(self):
        for name in ("indptr", "indices", "node_ids"):
            arr = np.array(getattr(self, name), dtype=np.int64)
            object.__setattr__(self, name, _readonly(arr))
        if len(self.indptr) != len(self.node_ids) + 1:
            raise GraphError("indptr length must be node_count + 1")

    @property
    def node_count(self) -> int:
        return len(self.node_ids)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return _readonly(np.diff(self.indptr))

    @cached_property
    def _id_index(self) -> dict[int, int]:
        return {int(orig): i for i, orig in enumerate(self.node_ids)}

    def index_of(self, original_id: int) -> int:
        """Compacted index of an original node id."""
        try:
            return self._id_index[int(original_id)]
        except KeyError:
            raise GraphError(f"unknown node id {original_id}") from None

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nbrs = self.neighbors(i)
        pos = np.searchsorted(nbrs, j)
        return bool(pos < len(nbrs) and nbrs[pos] == j)

    @cached_property
    def row(self) -> np.ndarray:
        """Source node of every CSR entry (the COO row index)."""
        return _readonly(np.repeat(np.arange(self.node_count), self.degrees))

    def edges(self) -> np.ndarray:
        """Canonical edge array of shape (L, 2), with ``u < v``, sorted."""
        mask = self.row < self.indices
        return np.column_stack([self.row[mask], self.indices[mask]])

    def original_edges(self) -> np.ndarray:
        return self.node_ids[self.edges()]

    @property
    def n_isolated(self) -> int:
        return int(np.count_nonzero(self.degrees == 0))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.node_ids, other.node_ids)
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(N={self.node_count}, L={self.edge_count})"


def build_graph(edges, nodes: Iterable[int] | None = None) -> Graph:
    """Canonicalise an edge list into a simple undirected :class:`Graph`.

    Self-loops and repeated edges (in either orientation) are dropped and
    counted in ``Graph.n_self_loops`` / ``Graph.n_duplicates``.  ``nodes``
    lists extra ids that must be present even without incident edges.
    """
    arr = np.asarray(edges)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=np.int64)
    extra = np.asarray(list(nodes) if nodes is not None else [], dtype=object)
    if arr.size == 0 and extra.size == 0:
        raise GraphError("empty graph")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParseError("edges must be pairs of node ids")
    arr = _as_ids(arr)
    extra = _as_ids(extra) if extra.size else np.empty(0, dtype=np.int64)

    ids = np.unique(np.concatenate([arr.ravel(), extra]))
    n = len(ids)
    u = np.searchsorted(ids, arr[:, 0])
    v = np.searchsorted(ids, arr[:, 1])

    loops = u == v
    n_loops = int(np.count_nonzero(loops))
    u, v = u[~loops], v[~loops]
    key = np.minimum(u, v) * n + np.maximum(u, v)
    uniq = np.unique(key)
    n_dup = len(key) - len(uniq)
    lo, hi = uniq // n, uniq % n

    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(indptr, dst[order], ids, n_loops, n_dup)


def _as_ids(a: np.ndarray) -> np.ndarray:
    if a.dtype.kind in "iu":
        out = a.astype(np.int64)
    else:
        try:
            as_float = a.astype(np.float64)
        except (TypeError, ValueError):
            raise ParseError("node ids must be integers") from None
        if a.dtype.kind == "f" or not np.all(as_float == np.floor(as_float)):
            raise ParseError("node ids must be integers")
        if any(not isinstance(x, (int, np.integer)) for x in a.ravel()):
            raise ParseError("node ids must be integers")
        out = as_float.astype(np.int64)
    if np.any(out < 0):
        raise ParseError("node ids must be non-negative")
    return out


def induced_subgraph(graph: Graph, nodes) -> Graph:
    """Subgraph induced by compacted node indices ``nodes``.

    The result keeps the original ids of the parent graph.
    """
    keep = np.zeros(graph.node_count, dtype=bool)
    keep[np.asarray(nodes, dtype=np.int64)] = True
    e = graph.edges()
    e = e[keep[e[:, 0]] & keep[e[:, 1]]]
    return build_graph(graph.node_ids[e], nodes=graph.node_ids[keep].tolist())


@dataclass(frozen=True, eq=False)
class AttributeTable:
    """A named per-node characteristic ``x``.

    Missing entries are flagged by ``missing``; their ``values`` are NaN.
    NaN in ``values`` is treated as missing even without an explicit mask.
    """

    name: str
    values: np.ndarray
    missing: np.ndarray | None = field(default=None)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).ravel()
        missing = np.isnan(values)
        if self.missing is not None:
            mask = np.asarray(self.missing, dtype=bool).ravel()
            if mask.shape != values.shape:
                raise BindingError(
                    f"{self.name}: missing mask length {len(mask)} != {len(values)}")
            missing |= mask
        values[missing] = np.nan
        if not np.all(np.isfinite(values[~missing])):
            raise GFPError(f"{self.name}: non-missing values must be finite")
        object.__setattr__(self, "values", _readonly(values))
        object.__setattr__(self, "missing", _readonly(missing))

    def __len__(self):
        return len(self.values)

    @property
    def present(self) -> np.ndarray:
        return ~self.missing

    @property
    def n_missing(self) -> int:
        return int(np.count_nonzero(self.missing))

    def mean(self) -> float:
        """Mean over non-missing nodes."""
        return float(np.mean(self.values[self.present]))

    def std(self) -> float:
        """Population (1/N) standard deviation over non-missing nodes."""
        return float(np.std(self.values[self.present]))

    def renamed(self, name: str) -> "AttributeTable":
        return AttributeTable(name, self.values, self.missing)

    def __repr__(self):
        return f"AttributeTable({self.name!r}, n={len(self)}, missing={self.n_missing})"


def degree_table(graph: Graph) -> AttributeTable:
    """The degree itself as a characteristic (``x = k``)."""
    return AttributeTable("degree", graph.degrees)


@dataclass(frozen=True)
class BindingReport:
    name: str
    node_count: int
    n_missing: int
    n_isolated: int

    def summary(self) -> str:
        iso = "node" if self.n_isolated == 1 else "nodes"
        return (f"{self.name}: ok, {self.node_count} nodes, {self.n_missing} missing, "
                f"{self.n_isolated} isolated {iso}")


def validate(graph: Graph, attrs: AttributeTable | Mapping[str, AttributeTable]):
    """Check that ``attrs`` binds to ``graph``.

    Returns a :class:`BindingReport` (or a dict of them for a mapping of
    tables).  Raises :class:`BindingError` on a length mismatch.
    """
    if isinstance(attrs, Mapping):
        return {name: validate(graph, table) for name, table in attrs.items()}
    if len(attrs) != graph.node_count:
        raise BindingError(
            f"{attrs.name}: {len(attrs)} values for a graph of {graph.node_count} nodes")
    return BindingReport(attrs.name, graph.node_count, attrs.n_missing, graph.n_isolated)
