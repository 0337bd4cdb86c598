import random

import pytest
from hypothesis import given, settings, strategies as st

from qalt.treecount import (BudgetExceeded, Multigraph, bareiss_det, count_trees,
                            count_trees_oracle)


def random_multigraph(rng, max_vertices=7, max_edges=14):
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    return Multigraph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(m)])


K4 = Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.mark.parametrize("g, expected", [
    (Multigraph(3, [(0, 1), (1, 2), (2, 0)]), 3),
    (Multigraph(2, [(0, 1)] * 3), 3),
    (K4, 16),
    (Multigraph(1, []), 1),
    (Multigraph(2, []), 0),
    (Multigraph(3, [(0, 1), (0, 1), (0, 1), (1, 2)]), 3),     # theta plus pendant edge
])
def test_examples_both_methods(g, expected):
    assert count_trees(g) == expected
    assert count_trees_oracle(g) == expected


def test_family_one_dessin_value():
    # tau(D(A)) of the hatted family I link with a1=2, a2=1, n=3 is 3*(2*2+1)
    from qalt.conway import MontesinosPresentation, word
    from qalt.dessin import dessin_graph
    from qalt.diagram import build_montesinos
    d = build_montesinos(MontesinosPresentation((word(2, 1), word(1), word(-3))))
    assert count_trees(dessin_graph(d, "A")) == 15


def test_matrix_tree_matches_deletion_contraction_seeded():
    rng = random.Random(20240611)
    for _ in range(200):
        g = random_multigraph(rng)
        assert count_trees(g) == count_trees_oracle(g)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10),
    st.integers(0, n - 1))))
def test_loop_invariance(case):
    n, edges, v = case
    g = Multigraph(n, edges)
    looped = Multigraph(n, edges + [(v, v)])
    assert count_trees(looped) == count_trees(g)
    assert count_trees_oracle(looped) == count_trees_oracle(g)


@pytest.mark.parametrize("k", range(1, 8))
def test_parallel_edges(k):
    assert count_trees(Multigraph(2, [(0, 1)] * k)) == k


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        count_trees_oracle(Multigraph(2, [(0, 1)] * 17))
    assert count_trees_oracle(Multigraph(2, [(0, 1)] * 17), budget=17) == 17


def test_big_counts_are_exact():
    # K_n has n^(n-2) trees; K_20 overflows 64 bits
    n = 20
    g = Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    assert count_trees(g) == n ** (n - 2)


def test_bareiss_det():
    assert bareiss_det([[2, 1], [1, 2]]) == 3
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([]) == 1


def test_validation_and_edge_lines():
    with pytest.raises(ValueError):
        Multigraph(2, [(0, 2)])
    with pytest.raises(ValueError):
        count_trees(Multigraph(0, []))
    g = Multigraph.from_edge_lines(["0 1", "# comment", "1 2  # trailing", "", "2 0"])
    assert (g.n, count_trees(g)) == (3, 3)
    with pytest.raises(ValueError):
        Multigraph.from_edge_lines(["0 1 2"])
