"""Coauthorship networks from publication records.

Every pair of authors appearing together on at least one paper is linked
once, however often they collaborate.  Each paper's citation count is
credited in full to every one of its authors.  Author ids are taken as
already disambiguated.

Record files hold one JSON object per line::

    {"paper_id": "P1", "authors": [3, 17], "citations": 10, "date": "2004-05-01"}
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import date as _date
from itertools import combinations

import numpy as np

from .errors import GFPError, GraphError, ParseError
from .graph import AttributeTable, Graph, build_graph

__all__ = [
    "PublicationRecord",
    "AuthorProfile",
    "CoauthorshipNetwork",
    "CHARACTERISTICS",
    "project_coauthorship",
    "load_records",
]

log = logging.getLogger(__name__)

CHARACTERISTICS = ("n_coauthors", "n_citations", "n_publications",
                   "citations_per_publication")


@dataclass(frozen=True)
class PublicationRecord:
    paper_id: str
    author_ids: tuple[int, ...]
    citations: int
    date: str | None = None

    def __post_init__(self):
        authors = tuple(self.author_ids)
        if any(isinstance(a, bool) or not isinstance(a, (int, np.integer)) or a < 0
               for a in authors):
            raise GFPError(f"{self.paper_id}: author ids must be non-negative integers")
        if len(set(authors)) != len(authors):
            raise GFPError(f"{self.paper_id}: duplicate author id")
        if isinstance(self.citations, bool) or not isinstance(self.citations, (int, np.integer)):
            raise GFPError(f"{self.paper_id}: citations must be an integer")
        if self.citations < 0:
            raise GFPError(f"{self.paper_id}: negative citation count {self.citations}")
        object.__setattr__(self, "author_ids", tuple(int(a) for a in authors))


@dataclass(frozen=True)
class AuthorProfile:
    author_id: int
    n_coauthors: int
    n_citations: int
    n_publications: int
    citations_per_publication: float


@dataclass(frozen=True)
class CoauthorshipNetwork:
    graph: Graph
    attributes: dict[str, AttributeTable]
    n_skipped: int = 0

    def profiles(self) -> list[AuthorProfile]:
        a = self.attributes
        return [
            AuthorProfile(int(node), int(a["n_coauthors"].values[i]),
                          int(a["n_citations"].values[i]),
                          int(a["n_publications"].values[i]),
                          float(a["citations_per_publication"].values[i]))
            for i, node in enumerate(self.graph.node_ids.tolist())
        ]

    def __iter__(self):
        # Allows ``graph, attrs = project_coauthorship(...)``.
        return iter((self.graph, self.attributes))


def project_coauthorship(records) -> CoauthorshipNetwork:
    """Project publication records onto an author-author network.

    Records without authors are skipped and counted in ``n_skipped``.
    """
    records = list(records)
    if not records:
        raise GFPError("no publication records")
    pubs: dict[int, int] = {}
    cites: dict[int, int] = {}
    edges = []
    skipped = 0
    for rec in records:
        if not rec.author_ids:
            skipped += 1
            continue
        for a in rec.author_ids:
            pubs[a] = pubs.get(a, 0) + 1
            cites[a] = cites.get(a, 0) + int(rec.citations)
        edges.extend(combinations(rec.author_ids, 2))
    if skipped:
        log.warning("skipped %d record(s) with an empty author list", skipped)
    if not pubs:
        raise GraphError("empty graph: no record has authors")

    graph = build_graph(np.array(edges, dtype=np.int64).reshape(-1, 2), nodes=pubs.keys())
    ids = graph.node_ids.tolist()
    n_pub = np.array([pubs[a] for a in ids], dtype=np.float64)
    n_cit = np.array([cites[a] for a in ids], dtype=np.float64)
    tables = {
        "n_coauthors": AttributeTable("n_coauthors", graph.degrees),
        "n_citations": AttributeTable("n_citations", n_cit),
        "n_publications": AttributeTable("n_publications", n_pub),
        "citations_per_publication": AttributeTable("citations_per_publication",
                                                    n_cit / n_pub),
    }
    return CoauthorshipNetwork(graph, tables, skipped)


def _parse_record(obj) -> PublicationRecord:
    if not isinstance(obj, dict):
        raise ValueError("record must be a JSON object")
    for key in ("paper_id", "authors", "citations"):
        if key not in obj:
            raise ValueError(f"missing field {key!r}")
    authors = obj["authors"]
    if not isinstance(authors, list) or not authors:
        raise ValueError("authors must be a non-empty list")
    date = obj.get("date")
    if date is not None:
        if not isinstance(date, str):
            raise ValueError("date must be a string")
        _date.fromisoformat(date[:10])
    return PublicationRecord(str(obj["paper_id"]), tuple(authors), obj["citations"], date)


def load_records(path, rejected: list | None = None) -> list[PublicationRecord]:
    """Read a JSON-lines record file.

    Malformed lines are skipped and logged with their line number; pass a
    list as ``rejected`` to also collect ``(lineno, reason)`` pairs.
    Raises :class:`ParseError` when the file cannot be read or holds no
    valid record.
    """
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    records = []
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(_parse_record(json.loads(line)))
            except (ValueError, TypeError) as exc:
                reason = str(exc)
                log.warning("%s:%d: rejected record: %s", path, lineno, reason)
                if rejected is not None:
                    rejected.append((lineno, reason))
    if not records:
        raise ParseError(f"{path}: zero valid records")
    return records
