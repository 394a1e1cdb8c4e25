"""
Tests for pattern parsing, induced-subgraph search, class recognizers and
the complexity verdicts.
"""

import pytest
from hypothesis import given, settings

from domain.exceptions import CapExceededError
from domain.graph_ops import build_named
from domain.value_objects import GraphClass, UnipolarPartition
from infrastructure.recognition import (classify_h_free, classify_t_free, contains_induced,
                                        find_2_unipolar_partition, is_bipartite, is_cluster_graph, is_subcubic,
                                        linear_forest_level, max_degree, parse_h_spec, recognize_class,
                                        sp2_freeness_level, verify_2_unipolar)
from tests.helpers import assert_witness, graph_of, graphs


@pytest.mark.parametrize("spec,vertices,edges", [
    ("P1", 1, 0),
    ("2P1+P2+P3", 7, 3),
    ("3P2", 6, 3),
    ("K1,3", 4, 3),
    ("claw", 4, 3),
    ("diamond", 4, 5),
    ("C5", 5, 5),
    ("K4", 4, 6),
    ("P2 + P4", 6, 4),
])
def test_parse_h_spec_sizes(spec, vertices, edges):
    pattern = parse_h_spec(spec)
    assert pattern.size == vertices
    assert pattern.pattern_graph.edge_count == edges


@pytest.mark.parametrize("spec", ["", "P0", "C2", "Q3", "P2++P3", "0P2", "K1,"])
def test_parse_h_spec_rejects(spec):
    with pytest.raises(ValueError):
        parse_h_spec(spec)


def test_contains_induced_respects_non_edges():
    cycle = build_named('cycle', 5)
    assert contains_induced(cycle, parse_h_spec("P5")) is None
    witness = contains_induced(cycle, parse_h_spec("P4"))
    assert witness is not None
    assert_witness(cycle, parse_h_spec("P4").pattern_graph, witness)


def test_contains_induced_small_hosts():
    assert contains_induced(build_named('path', 2), parse_h_spec("P3")) is None
    assert contains_induced(build_named('complete', 5), parse_h_spec("2P1")) is None


def test_contains_induced_cap():
    with pytest.raises(CapExceededError):
        contains_induced(build_named('path', 12), parse_h_spec("11P1"), cap=10)


@given(graph=graphs(max_vertices=7))
@settings(max_examples=40, deadline=None)
def test_witness_is_an_induced_copy(graph):
    pattern = parse_h_spec("P1+P3")
    witness = contains_induced(graph, pattern)
    if witness is not None:
        assert_witness(graph, pattern.pattern_graph, witness)


def test_cluster_graph():
    assert is_cluster_graph(graph_of(6, [(0, 1), (1, 2), (0, 2), (3, 4)]))
    assert not is_cluster_graph(build_named('path', 3))


def test_bipartite_two_colouring():
    left, right = is_bipartite(build_named('cycle', 4))
    assert {left, right} == {0b0101, 0b1010}
    assert is_bipartite(build_named('cycle', 5)) is None
    assert is_bipartite(graph_of(3, [])) is not None


def test_two_unipolar_partition():
    partition = find_2_unipolar_partition(build_named('path', 4))
    assert partition is not None
    assert verify_2_unipolar(build_named('path', 4), partition)
    assert find_2_unipolar_partition(build_named('cycle', 5)) is None

    with pytest.raises(ValueError):
        verify_2_unipolar(build_named('path', 3), UnipolarPartition({0, 1}, {1, 2}))
    with pytest.raises(CapExceededError):
        find_2_unipolar_partition(build_named('path', 17), cap=16)


def test_recognize_class():
    assert recognize_class(build_named('complete', 4), GraphClass.SUBCUBIC)
    assert not recognize_class(build_named('star', 4), GraphClass.SUBCUBIC)
    assert recognize_class(build_named('star', 4), GraphClass.BIPARTITE)
    assert recognize_class(build_named('complete', 3), GraphClass.CLUSTER)
    assert recognize_class(build_named('path', 4), GraphClass.TWO_UNIPOLAR)


@pytest.mark.parametrize("graph,degree", [
    (build_named('star', 4), 4),
    (build_named('cycle', 5), 2),
    (build_named('complete', 4), 3),
    (graph_of(3, []), 0),
    (graph_of(0, []), 0),
])
def test_max_degree_decides_subcubic(graph, degree):
    assert max_degree(graph) == degree
    assert is_subcubic(graph) == (degree <= 3)


def test_sp2_freeness_level():
    three_edges = graph_of(6, [(0, 1), (2, 3), (4, 5)])
    level = sp2_freeness_level(three_edges, 3)
    assert level.level is None
    assert [passed for _, passed in level.evidence] == [False, False, False]
    assert_witness(three_edges, parse_h_spec("3P2").pattern_graph, level.witness)

    assert sp2_freeness_level(three_edges, 4).level == 4
    assert sp2_freeness_level(graph_of(3, []), 2).level == 1


def test_linear_forest_level():
    assert linear_forest_level(build_named('complete', 3), 2).level == 0
    p2_p3 = graph_of(5, [(0, 1), (2, 3), (3, 4)])
    level = linear_forest_level(p2_p3, 2)
    assert level.level == 1
    assert level.evidence == [("P2+P3-free", False), ("1P1+P2+P3-free", True)]
    assert linear_forest_level(p2_p3, 0).level is None


@pytest.mark.parametrize("spec,status,reason,parameter", [
    ("P2+P3", "polynomial", "sP1+P2+P3", 0),
    ("3P1+P2+P3", "polynomial", "sP1+P2+P3", 3),
    ("2P1+2P2", "polynomial", "sP1+P2+P3", 2),
    ("3P2", "polynomial", "sP2", 3),
    ("P1+P4", "polynomial", "sP1+P4", 1),
    ("P5", "open", "rP1+sP2+P5", None),
    ("P6", "open", "rP1+sP2+P6", None),
    ("2P2+P3", "open", "rP1+sP2+P3", None),
    ("P2+P4", "open", "rP1+sP2+P4", None),
    ("2P3", "np-complete", "2P3", None),
    ("P7", "np-complete", "2P3", None),
    ("P3+P4", "np-complete", "2P3", None),
    ("C4", "np-complete", "cycle", None),
    ("diamond", "np-complete", "cycle", None),
    ("claw", "np-complete", "claw", None),
])
def test_classify_h_free(spec, status, reason, parameter):
    verdict = classify_h_free(parse_h_spec(spec))
    assert verdict.status == status
    assert verdict.reason == reason
    assert verdict.parameter == parameter


@pytest.mark.parametrize("spec,status,parameter", [
    ("3P2", "polynomial", 3),
    ("2P1+P2", "polynomial", 3),
    ("P3", "np-complete", None),
    ("K3", "np-complete", None),
])
def test_classify_t_free(spec, status, parameter):
    verdict = classify_t_free(parse_h_spec(spec))
    assert verdict.status == status
    assert verdict.parameter == parameter


def test_verdict_text():
    assert str(classify_h_free(parse_h_spec("P2+P3"))) == "polynomial: sP1+P2+P3 (s=0)"
    assert str(classify_h_free(parse_h_spec("2P3"))) == "np-complete: 2P3"
