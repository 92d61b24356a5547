from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from irregular_tr.fixtures import fixture
from irregular_tr.graphs import (
    DecoratedGraph,
    Vertex,
    automorphism_order,
    canonical_form,
    enumerate_graphs,
    graph_sum,
)
from irregular_tr.recursion import TopologicalRecursion


def test_self_loop_has_flip():
    graph = DecoratedGraph((Vertex(0, 1),), (((0, 0), (0, 0)),), ((0, 0),))
    assert automorphism_order(graph) == 2


def test_double_edge_swaps():
    graph = DecoratedGraph(
        (Vertex(0, 1), Vertex(0, 2)), (((0, 0), (1, 0)), ((0, 0), (1, 0))), ((0, 0), (1, 0))
    )
    assert automorphism_order(graph) == 2


def test_dilaton_permutations():
    graph = DecoratedGraph((Vertex(1, 1, (1, 1)),), (), ((0, 0),))
    assert automorphism_order(graph) == 2


SAMPLE = DecoratedGraph(
    (Vertex(0, 1), Vertex(1, 2), Vertex(0, 1)),
    (((0, 0), (1, 1)), ((1, 0), (2, 0)), ((0, 1), (2, 0))),
    ((0, 0), (2, 1)),
)


@given(st.permutations([0, 1, 2]))
def test_canonical_form_ignores_vertex_numbering(perm):
    inv = {old: new for new, old in enumerate(perm)}
    relabelled = DecoratedGraph(
        tuple(SAMPLE.vertices[old] for old in perm),
        tuple(((inv[a[0]], a[1]), (inv[b[0]], b[1])) for a, b in SAMPLE.edges),
        tuple((inv[v], k) for v, k in SAMPLE.leaves),
    )
    assert canonical_form(relabelled) == canonical_form(SAMPLE)
    assert automorphism_order(relabelled) == automorphism_order(SAMPLE)


@pytest.mark.parametrize("name,g,n,count", [("airy", 0, 3, 1), ("bessel", 1, 1, 1)])
def test_census(name, g, n, count):
    assert len(enumerate_graphs(fixture(name).build(), g, n)) == count


@pytest.mark.parametrize("name", ["legendre", "des", "gw-local"])
def test_enumerated_graphs_have_right_genus(name):
    curve = fixture(name).build()
    for graph in enumerate_graphs(curve, 1, 2):
        assert graph.genus == 1 and graph.n == 2 and graph.is_connected()


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1)])
def test_graph_sum_gw_local(g, n):
    curve = fixture("gw-local").build()
    assert graph_sum(curve, g, n) == TopologicalRecursion(curve).correlator(g, n)


def test_unstable_rejected():
    with pytest.raises(ValueError):
        enumerate_graphs(fixture("airy").build(), 0, 2)
