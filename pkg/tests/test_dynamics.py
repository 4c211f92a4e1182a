import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dhci.bitcore import hamming, undeci
from dhci.dynamics import (
    ModeInstance,
    NegationInstance,
    build_iteration_graph,
    component_update,
    is_strongly_connected,
    iterate,
    strongly_connected_components,
)
from dhci.errors import CapacityError, ContractError, RangeError
from dhci.modes import identity_mode, negation_mode
from oracles import closure_strongly_connected, flip_by_definition


def random_mode(n, rng):
    return ModeInstance(n, [rng.randrange(1 << n) for _ in range(1 << n)])


def test_component_update_examples():
    assert component_update(negation_mode(2), 1, (0, 0)) == (1, 0)
    assert component_update(identity_mode(3), 2, (1, 0, 1)) == (1, 0, 1)
    assert component_update(negation_mode(2), 2, (1, 0)) == (1, 1)


def test_component_update_errors():
    with pytest.raises(RangeError):
        component_update(negation_mode(2), 3, (0, 0))
    with pytest.raises(ContractError):
        component_update(negation_mode(2), 1, (0, 0, 0))


def test_component_update_touches_only_bit_i_exhaustive():
    rng = random.Random(0)
    for n in range(1, 5):
        for _ in range(20):
            f = random_mode(n, rng)
            for j in range(1 << n):
                x = undeci(j, n)
                for i in range(1, n + 1):
                    y = component_update(f, i, x)
                    assert all(a == b for k, (a, b) in enumerate(zip(x, y)) if k != i - 1)
                    assert y[i - 1] == (f.image(j) >> (i - 1)) & 1


def test_component_update_randomized_large():
    rng = random.Random(1)
    f = random_mode(16, rng)
    for _ in range(200):
        x = tuple(rng.randrange(2) for _ in range(16))
        i = rng.randrange(1, 17)
        assert hamming(x, component_update(f, i, x)) <= 1


def test_iterate_examples():
    assert iterate(negation_mode(2), itertools.cycle([1, 2]), (0, 1), 0) == (0, 1)
    assert iterate(negation_mode(2), itertools.cycle([1, 2]), (0, 0), 2) == (1, 1)
    assert iterate(negation_mode(2), itertools.repeat(1), (0, 0), 2) == (0, 0)


def test_iterate_consumes_lazily():
    stream = itertools.count(1)  # would be out of range after index 3
    assert iterate(negation_mode(3), stream, (0, 0, 0), 3) == (1, 1, 1)


def test_iterate_rejects_bad_index():
    with pytest.raises(ContractError):
        iterate(negation_mode(2), [1, 3], (0, 0), 2)
    with pytest.raises(ContractError):
        iterate(negation_mode(2), [1], (0, 0), 2)


def test_iterate_matches_stepwise_updates():
    rng = random.Random(2)
    for n in (1, 3, 5):
        f = random_mode(n, rng)
        s = [rng.randrange(1, n + 1) for _ in range(30)]
        x = tuple(rng.randrange(2) for _ in range(n))
        expected = x
        for i in s:
            expected = component_update(f, i, expected)
        assert iterate(f, s, x, len(s)) == expected


def test_iterate_large_negation_uses_parity():
    n = 5000
    rng = random.Random(3)
    s = [rng.randrange(1, n + 1) for _ in range(20000)]
    x0 = tuple(rng.randrange(2) for _ in range(n))
    counts = np.bincount(s, minlength=n + 1)[1:]
    expected = tuple(int(b) ^ int(c % 2) for b, c in zip(x0, counts))
    assert iterate(NegationInstance(n), s, x0, len(s)) == expected


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 6),
    seed=st.integers(0, 2**32),
    a=st.integers(0, 15),
    b=st.integers(0, 15),
)
def test_semigroup(n, seed, a, b):
    rng = random.Random(seed)
    f = random_mode(n, rng)
    s = [rng.randrange(1, n + 1) for _ in range(a + b)]
    x0 = tuple(rng.randrange(2) for _ in range(n))
    assert iterate(f, s, x0, a + b) == iterate(f, s[a:], iterate(f, s, x0, a), b)


def test_graph_negation_n1():
    g = build_iteration_graph(negation_mode(1))
    assert sorted(g.arcs()) == [(0, 1, 1), (1, 1, 0)]


def test_graph_identity_n2_self_loops():
    arcs = list(build_iteration_graph(identity_mode(2)).arcs())
    assert len(arcs) == 8
    assert all(src == dst for src, _, dst in arcs)


def test_graph_negation_n2():
    arcs = list(build_iteration_graph(negation_mode(2)).arcs())
    assert len(arcs) == 8
    assert all(hamming(undeci(s, 2), undeci(t, 2)) == 1 for s, _, t in arcs)


def test_graph_arcs_follow_definition():
    rng = random.Random(4)
    for n in range(1, 6):
        f = random_mode(n, rng)
        g = build_iteration_graph(f)
        arcs = list(g.arcs())
        assert len(arcs) == g.num_arcs == n * 2**n
        table = f.truth_table.tolist()
        for src, k, dst in arcs:
            assert dst == flip_by_definition(table, n, k, src)
            diff = src ^ dst
            assert diff in (0, 1 << (k - 1))


def test_graph_capacity():
    with pytest.raises(CapacityError):
        build_iteration_graph(negation_mode(13))


def test_strong_connectivity_examples():
    assert is_strongly_connected(build_iteration_graph(negation_mode(2)))
    assert not is_strongly_connected(build_iteration_graph(identity_mode(1)))
    assert is_strongly_connected(build_iteration_graph(negation_mode(1)))


def _adjacency_matrix(g):
    a = np.zeros((g.num_vertices, g.num_vertices), dtype=bool)
    for src, _, dst in g.arcs():
        a[src, dst] = True
    return a


def test_strong_connectivity_matches_oracles():
    rng = random.Random(5)
    for n in range(1, 5):
        for _ in range(60):
            # bias towards near-permutation maps so both verdicts occur
            f = random_mode(n, rng) if rng.random() < 0.5 else ModeInstance(
                n, np.arange(1 << n) ^ rng.randrange(1 << n)
            )
            g = build_iteration_graph(f)
            verdict = is_strongly_connected(g)
            assert verdict == closure_strongly_connected(_adjacency_matrix(g))
            nxg = nx.DiGraph(list((s, d) for s, _, d in g.arcs()))
            nxg.add_nodes_from(range(g.num_vertices))
            assert verdict == (nx.number_strongly_connected_components(nxg) == 1)


def test_scc_partition_matches_networkx():
    rng = random.Random(6)
    for _ in range(50):
        size = rng.randrange(1, 40)
        adjacency = [sorted(rng.sample(range(size), rng.randrange(0, min(3, size + 1)))) for _ in range(size)]
        ours = {frozenset(c) for c in strongly_connected_components(adjacency)}
        nxg = nx.DiGraph([(u, v) for u, vs in enumerate(adjacency) for v in vs])
        nxg.add_nodes_from(range(size))
        assert ours == {frozenset(c) for c in nx.strongly_connected_components(nxg)}


def test_scc_is_not_recursive():
    size = 200_000
    chain = [[v + 1] for v in range(size - 1)] + [[0]]
    assert len(strongly_connected_components(chain)) == 1
