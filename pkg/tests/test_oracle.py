"""
Tests for the exact branch-and-bound oracle.
"""

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from domain.entities import Graph, Instance
from domain.exceptions import CapExceededError
from domain.graph_ops import add_edges, build_named, is_t_independent, is_t_vertex_cover
from domain.value_objects import SolverOptions
from infrastructure.solvers.oracle_solver import (OracleSolver, min_vertex_cover_exact, solve_exact,
                                                  solve_exact_reduced, solve_exact_weighted)
from tests.helpers import (brute_force_optimum, brute_force_vertex_cover_number, graphs, instance_of, instances,
                           random_test_instance)


@pytest.mark.property_based
@given(instance=instances(max_vertices=9))
@settings(max_examples=60, deadline=None)
def test_oracle_matches_brute_force(instance):
    solution = solve_exact(instance)
    assert is_t_vertex_cover(instance, solution.vertices)
    assert solution.measure == brute_force_optimum(instance)
    assert solve_exact_reduced(instance).measure == solution.measure


@pytest.mark.property_based
@given(instance=instances(max_vertices=8, weighted=True))
@settings(max_examples=60, deadline=None)
def test_weighted_oracle_matches_brute_force(instance):
    solution = solve_exact_weighted(instance)
    assert is_t_vertex_cover(instance, solution.vertices)
    assert solution.measure == brute_force_optimum(instance)
    assert solve_exact_reduced(instance).measure == solution.measure


@pytest.mark.property_based
@given(instance=instances(max_vertices=9))
@settings(max_examples=30, deadline=None)
def test_threads_agree_with_sequential_search(instance):
    assert solve_exact(instance, threads=3).measure == solve_exact(instance).measure


@given(graph=graphs(max_vertices=8))
@settings(max_examples=40, deadline=None)
def test_vertex_cover_number(graph):
    assert min_vertex_cover_exact(graph).measure == brute_force_vertex_cover_number(graph)


def test_known_vertex_cover_numbers():
    assert min_vertex_cover_exact(build_named('cycle', 5)).measure == 3
    petersen = Graph.from_edges(10, nx.petersen_graph().edges())
    assert min_vertex_cover_exact(petersen).measure == 6
    assert min_vertex_cover_exact(Graph.empty(4)).measure == 0


def test_terminal_free_instance_has_empty_optimum():
    instance = instance_of(4, [(0, 1), (2, 3)], [])
    assert solve_exact(instance).vertices == frozenset()


def test_star_optimum_is_the_centre(star):
    assert solve_exact(star).vertices == frozenset({0})


def test_caps():
    big = Instance(graph=Graph.empty(30), t_set=frozenset())
    with pytest.raises(CapExceededError):
        solve_exact(big, cap=26)
    with pytest.raises(CapExceededError):
        min_vertex_cover_exact(Graph.empty(30), cap=26)
    with pytest.raises(CapExceededError):
        OracleSolver(cap=4).solve(instance_of(5, [], []), SolverOptions())
    assert not OracleSolver(cap=4).validate_instance(instance_of(5, [], []), SolverOptions())


def test_weighted_oracle_needs_weights(star):
    with pytest.raises(ValueError):
        solve_exact_weighted(star)


def test_weights_change_the_optimum():
    instance = instance_of(3, [(0, 1), (1, 2)], [0, 2], weights=[1, 5, 1])
    solution = solve_exact(instance)
    assert solution.vertices == frozenset({0, 2})
    assert solution.measure == 2


@pytest.mark.property_based
@given(instance=instances(max_vertices=8, weighted=True), data=st.data())
@settings(max_examples=60, deadline=None)
def test_more_terminals_or_edges_never_lower_the_optimum(instance, data):
    optimum = solve_exact(instance).measure
    n = instance.vertex_count
    if n == 0:
        return

    v = data.draw(st.integers(0, n - 1))
    more_terminals = Instance(graph=instance.graph, t_set=instance.t_set | {v}, weights=instance.weights)
    assert solve_exact(more_terminals).measure >= optimum

    missing = [(a, b) for a in range(n) for b in range(a + 1, n) if not instance.graph.has_edge(a, b)]
    if missing:
        edge = data.draw(st.sampled_from(missing))
        assert solve_exact(instance.with_graph(add_edges(instance.graph, [edge]))).measure >= optimum


@pytest.mark.property_based
@given(instance=instances(max_vertices=8, weighted=True))
@settings(max_examples=60, deadline=None)
def test_cover_complements_a_maximum_t_independent_set(instance):
    solution = solve_exact(instance)
    assert is_t_independent(instance.graph, instance.t_mask, instance.graph.all_mask & ~solution.mask)

    best_independent = max(instance.weight_of(subset) for subset in range(instance.graph.all_mask + 1)
                           if is_t_independent(instance.graph, instance.t_mask, subset))
    assert solution.measure == instance.weight_of(instance.graph.all_mask) - best_independent


@pytest.mark.slow
def test_exact_paths_agree_on_every_small_graph():
    rng = random.Random(2024)
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        graph = Graph.from_edges(n, atlas_graph.edges())
        for _ in range(3):
            instance = Instance(graph=graph, t_set=frozenset(v for v in range(n) if rng.random() < 0.5))
            solution = solve_exact(instance)
            assert is_t_vertex_cover(instance, solution.vertices)
            assert solution.measure == solve_exact_reduced(instance).measure == brute_force_optimum(instance)


@pytest.mark.slow
@pytest.mark.parametrize("block", range(10))
def test_exact_paths_agree_on_random_instances(block):
    for seed in range(block * 100, (block + 1) * 100):
        rng = random.Random(seed)
        instance = random_test_instance(rng, rng.randint(1, 14), rng.uniform(0.1, 0.7),
                                        rng.uniform(0.2, 0.9), weighted=seed % 3 == 0)
        solution = solve_exact(instance)
        assert is_t_vertex_cover(instance, solution.vertices), seed
        assert solution.measure == solve_exact_reduced(instance).measure, seed
