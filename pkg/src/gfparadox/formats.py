"""Text formats: edge lists, attribute tables, and report/CSV outputs.

Edge list
    one edge per line, two whitespace-separated non-negative integer ids;
    blank lines and lines starting with ``#`` are ignored.
Attribute file
    header ``node <name1> <name2> ...`` then one row per node: the integer
    id followed by one value per characteristic; ``NA`` marks a missing
    value.  Nodes of the graph without a row are missing everywhere.

All writers emit node ids in their original (uncompacted) form and format
numbers deterministically, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import BindingError, GraphError, ParseError
from .graph import AttributeTable, Graph
from .metrics import ParadoxGrid, ParadoxReport
from .sampling import GROUPS, GroupSummary, SampleGroups

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_attributes",
    "write_attributes",
    "write_report_json",
    "write_grid_csv",
    "write_groups_csv",
    "write_summary_csv",
    "write_ccdf_csv",
    "format_value",
]

MISSING = "NA"


def _open_text(path):
    try:
        return open(path, encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _parse_id(token: str, where: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{where}: node id {token!r} is not an integer") from None
    if value < 0:
        raise ParseError(f"{where}: node id {value} is negative")
    return value


def read_edge_list(path) -> np.ndarray:
    """Edge array of shape (E, 2) with the ids exactly as written."""
    edges = []
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            where = f"{path}:{lineno}"
            if len(parts) != 2:
                raise ParseError(f"{where}: expected 2 ids, got {len(parts)} fields")
            edges.append((_parse_id(parts[0], where), _parse_id(parts[1], where)))
    return np.array(edges, dtype=np.int64).reshape(-1, 2)


def write_edge_list(path, graph: Graph) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# nodes {graph.node_count} edges {graph.edge_count}\n")
        for u, v in graph.original_edges().tolist():
            fh.write(f"{u} {v}\n")


def read_attributes(path, graph: Graph) -> dict[str, AttributeTable]:
    """Attribute tables bound to ``graph`` through original node ids."""
    with _open_text(path) as fh:
        lines = [(n, ln.strip()) for n, ln in enumerate(fh, 1)]
    lines = [(n, ln) for n, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError(f"{path}: no header line")
    head_no, header = lines[0]
    names = header.split()
    if not names or names[0] != "node" or len(names) < 2:
        raise ParseError(f"{path}:{head_no}: header must be 'node <name> ...'")
    names = names[1:]
    if len(set(names)) != len(names):
        raise ParseError(f"{path}:{head_no}: duplicate characteristic names")

    values = np.full((len(names), graph.node_count), np.nan)
    seen = np.zeros(graph.node_count, dtype=bool)
    for lineno, line in lines[1:]:
        where = f"{path}:{lineno}"
        parts = line.split()
        if len(parts) != len(names) + 1:
            raise ParseError(f"{where}: expected {len(names) + 1} fields, got {len(parts)}")
        node = _parse_id(parts[0], where)
        try:
            idx = graph.index_of(node)
        except GraphError:
            raise BindingError(f"{where}: node {node} is not in the graph") from None
        if seen[idx]:
            raise ParseError(f"{where}: duplicate row for node {node}")
        seen[idx] = True
        for c, token in enumerate(parts[1:]):
            if token == MISSING:
                continue
            try:
                val = float(token)
            except ValueError:
                raise ParseError(f"{where}: value {token!r} is not a number") from None
            if not math.isfinite(val):
                raise ParseError(f"{where}: value {token!r} is not finite")
            values[c, idx] = val
    return {name: AttributeTable(name, values[c]) for c, name in enumerate(names)}


def format_value(v) -> str:
    """Integral values without a fraction, others via ``repr``; NaN as NA."""
    v = float(v)
    if math.isnan(v):
        return MISSING
    if v.is_integer() and abs(v) < 2 ** 53:
        return str(int(v))
    return repr(v)


def write_attributes(path, graph: Graph, tables: Iterable[AttributeTable]) -> None:
    tables = list(tables)
    for t in tables:
        if len(t) != graph.node_count:
            raise BindingError(f"{t.name}: {len(t)} values for {graph.node_count} nodes")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("node " + " ".join(t.name for t in tables) + "\n")
        for i, node in enumerate(graph.node_ids.tolist()):
            row = " ".join(format_value(t.values[i]) for t in tables)
            fh.write(f"{node} {row}\n")


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_report_json(path, report: ParadoxReport | Mapping, **extra) -> None:
    data = report.to_dict() if isinstance(report, ParadoxReport) else dict(report)
    data.update(extra)
    data = {k: _jsonable(v) for k, v in data.items()}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_grid_csv(path, grid: ParadoxGrid) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["k_bin_lo", "k_bin_hi", "x_bin_lo", "x_bin_hi", "count", "holds", "h"])
        for k_lo, k_hi, x_lo, x_hi, count, holds, h in grid.rows():
            w.writerow([format_value(k_lo), format_value(k_hi), format_value(x_lo),
                        format_value(x_hi), count, holds, repr(h)])


def write_groups_csv(path, graph: Graph, groups: SampleGroups, x: AttributeTable) -> None:
    ids = graph.node_ids
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["index", "control_id", "friend_id", "biased_id",
                    "x_control", "x_friend", "x_biased"])
        for i, (c, f, b) in enumerate(zip(groups.control.tolist(), groups.friend.tolist(),
                                          groups.biased.tolist())):
            w.writerow([i, ids[c], ids[f], ids[b], format_value(x.values[c]),
                        format_value(x.values[f]), format_value(x.values[b])])


def write_summary_csv(path, summaries: Mapping[str, GroupSummary]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["group", "n", "mean", "median", "max", "std"])
        for name, s in summaries.items():
            w.writerow([name, s.n, repr(s.mean), format_value(s.median),
                        format_value(s.max), repr(s.std)])


def write_ccdf_csv(path, summaries: Mapping[str, GroupSummary]) -> None:
    """Long-format CCDF table: one row per (group, distinct value)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["group", "x", "ccdf"])
        order = [g for g in ("all", *GROUPS) if g in summaries]
        for name in order:
            s = summaries[name]
            for xv, p in zip(s.ccdf_x.tolist(), s.ccdf_p.tolist()):
                w.writerow([name, format_value(xv), repr(p)])


def ensure_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
