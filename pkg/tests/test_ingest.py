import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfparadox import (GFPError, ParseError, PublicationRecord, load_records,
                       project_coauthorship)

A, B, C = 1, 2, 3


def test_two_papers():
    net = project_coauthorship([PublicationRecord("P1", (A, B), 10),
                                PublicationRecord("P2", (B, C), 4)])
    g = net.graph
    assert sorted(map(tuple, g.original_edges().tolist())) == [(A, B), (B, C)]
    prof = {p.author_id: p for p in net.profiles()}[B]
    assert (prof.n_publications, prof.n_citations, prof.n_coauthors) == (2, 14, 2)
    assert prof.citations_per_publication == 7.0


def test_single_author_paper():
    net = project_coauthorship([PublicationRecord("P1", (A,), 5)])
    assert (net.graph.node_count, net.graph.edge_count) == (1, 0)
    (prof,) = net.profiles()
    assert prof.n_coauthors == 0
    assert prof.citations_per_publication == 5.0


def test_repeat_collaboration_collapses():
    graph, attrs = project_coauthorship([PublicationRecord("P1", (A, B), 0),
                                         PublicationRecord("P2", (A, B), 0)])
    assert graph.edge_count == 1
    assert attrs["n_publications"].values[graph.index_of(A)] == 2


def test_record_with_m_authors_is_complete_graph():
    graph, _ = project_coauthorship([PublicationRecord("P", tuple(range(6)), 1)])
    assert graph.edge_count == 15
    assert set(graph.degrees.tolist()) == {5}


def test_empty_author_list_skipped():
    net = project_coauthorship([PublicationRecord("P0", (), 3),
                                PublicationRecord("P1", (A, B), 1)])
    assert net.n_skipped == 1
    assert net.graph.node_count == 2


@pytest.mark.parametrize("kwargs", [dict(author_ids=(1, 1), citations=0),
                                    dict(author_ids=(1, 2), citations=-3),
                                    dict(author_ids=(1, -2), citations=0),
                                    dict(author_ids=(1, 2), citations=1.5)])
def test_record_invariants(kwargs):
    with pytest.raises(GFPError):
        PublicationRecord("P", **kwargs)


records = st.lists(
    st.builds(lambda i, authors, c: PublicationRecord(f"P{i}", tuple(authors), c),
              st.integers(0, 999), st.sets(st.integers(0, 29), min_size=1, max_size=6),
              st.integers(0, 500)),
    min_size=1, max_size=50)


@settings(max_examples=100, deadline=None)
@given(records)
def test_projection_properties(recs):
    graph, attrs = project_coauthorship(recs)
    np.testing.assert_array_equal(attrs["n_coauthors"].values, graph.degrees)
    assert attrs["n_publications"].values.sum() == sum(len(r.author_ids) for r in recs)
    np.testing.assert_array_equal(attrs["citations_per_publication"].values,
                                  attrs["n_citations"].values / attrs["n_publications"].values)


def _write(tmp_path, lines):
    p = tmp_path / "records.jsonl"
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return p


def test_load_two_records(tmp_path):
    p = _write(tmp_path, [
        json.dumps({"paper_id": "P1", "authors": [1, 2], "citations": 10, "date": "2001-02-03"}),
        json.dumps({"paper_id": "P2", "authors": [2, 3], "citations": 4}),
    ])
    recs = load_records(p)
    assert [r.paper_id for r in recs] == ["P1", "P2"]
    assert recs[0].date == "2001-02-03"


def test_load_rejects_negative_citations(tmp_path):
    p = _write(tmp_path, [
        json.dumps({"paper_id": "P1", "authors": [1, 2], "citations": -3}),
        json.dumps({"paper_id": "P2", "authors": [2, 3], "citations": 4}),
        "not json",
        json.dumps({"paper_id": "P3", "authors": [], "citations": 4}),
    ])
    rejected = []
    recs = load_records(p, rejected=rejected)
    assert len(recs) == 1
    assert [ln for ln, _ in rejected] == [1, 3, 4]


def test_load_empty_file(tmp_path):
    p = tmp_path / "empty.jsonl"
    p.write_text("")
    with pytest.raises(ParseError, match="zero valid records"):
        load_records(p)


def test_load_unreadable(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_records(tmp_path / "nope.jsonl")
