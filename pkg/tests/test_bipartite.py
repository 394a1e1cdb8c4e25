"""
Tests for maximum matching and minimum (weight) vertex covers on bipartite views.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from domain.bitset import bits, mask_of
from domain.graph_ops import build_named
from domain.value_objects import BipartiteView, Matching
from infrastructure.bipartite import (cover_bipartite, max_matching, min_vertex_cover_konig,
                                      min_weight_vertex_cover_bipartite)
from tests.helpers import brute_force_view_cover, graph_of


def random_bipartite(seed: int, left_size: int, right_size: int, edge_probability: float):
    rng = random.Random(seed)
    n = left_size + right_size
    edges = [(u, v) for u in range(left_size) for v in range(left_size, n) if rng.random() < edge_probability]
    graph = graph_of(n, edges)
    return BipartiteView(graph, mask_of(range(left_size)), mask_of(range(left_size, n)))


def test_view_validation():
    path = build_named('path', 3)
    with pytest.raises(ValueError):
        BipartiteView(path, 0b011, 0b110)
    with pytest.raises(ValueError):
        BipartiteView(path, 0b011, 0b100)
    with pytest.raises(ValueError):
        Matching(((0, 1), (0, 2)))


def test_even_cycle():
    view = BipartiteView(build_named('cycle', 6), mask_of([0, 2, 4]), mask_of([1, 3, 5]))
    matching = max_matching(view)
    assert matching.size == 3
    assert min_vertex_cover_konig(view).bit_count() == 3


def test_star_cover_is_the_centre():
    view = BipartiteView(build_named('star', 3), 0b0001, 0b1110)
    assert max_matching(view).size == 1
    assert min_vertex_cover_konig(view) == 0b0001


def test_view_ignores_edges_outside_it():
    graph = graph_of(4, [(0, 1), (1, 2), (2, 3)])
    view = BipartiteView(graph, mask_of([0]), mask_of([1, 3]))
    assert max_matching(view).edges == ((0, 1),)
    assert min_vertex_cover_konig(view).bit_count() == 1


def test_weighted_cover_prefers_light_vertices():
    path = build_named('path', 3)
    view = BipartiteView(path, 0b010, 0b101)
    assert min_weight_vertex_cover_bipartite(view, [1, 5, 1]) == 0b101
    assert min_weight_vertex_cover_bipartite(view, [1, Fraction(3, 2), 1]) == 0b010
    assert cover_bipartite(view) == 0b010


def test_edgeless_view_needs_no_cover():
    view = BipartiteView(graph_of(3, []), 0b001, 0b110)
    assert min_vertex_cover_konig(view) == 0
    assert min_weight_vertex_cover_bipartite(view, [1, 1, 1]) == 0


@pytest.mark.property_based
@given(seed=st.integers(min_value=0, max_value=10 ** 6), left_size=st.integers(0, 4),
       right_size=st.integers(0, 4), edge_probability=st.floats(0.0, 1.0))
@settings(max_examples=60, deadline=None)
def test_konig_matches_brute_force(seed, left_size, right_size, edge_probability):
    view = random_bipartite(seed, left_size, right_size, edge_probability)
    cover = min_vertex_cover_konig(view)
    assert cover.bit_count() == max_matching(view).size
    assert cover.bit_count() == brute_force_view_cover(view)


@pytest.mark.property_based
@given(seed=st.integers(min_value=0, max_value=10 ** 6), left_size=st.integers(0, 4),
       right_size=st.integers(0, 4), weights=st.lists(st.fractions(min_value=Fraction(1, 3), max_value=5,
                                                                     max_denominator=6),
                                                        min_size=8, max_size=8))
@settings(max_examples=60, deadline=None)
def test_min_cut_matches_brute_force(seed, left_size, right_size, weights):
    view = random_bipartite(seed, left_size, right_size, 0.5)
    cover = min_weight_vertex_cover_bipartite(view, weights)
    assert sum((Fraction(weights[v]) for v in bits(cover)), Fraction(0)) == brute_force_view_cover(view, weights)
