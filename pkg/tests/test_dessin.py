import itertools

import pytest

from qalt.conway import MontesinosPresentation, load_table, parse_montesinos, word
from qalt.dessin import SplitDiagramError, dessin_genus, dessin_graph, genus_data, splice
from qalt.diagram import PlanarDiagram, build_montesinos, build_rational, resolve


def test_trefoil_circles():
    d = build_rational(word(3))
    assert splice(d, "A").circles == 3
    assert splice(d, "B").circles == 2
    a, b = dessin_graph(d, "A"), dessin_graph(d, "B")
    assert a.n == 3 and sorted(tuple(sorted(e)) for e in a.edges) == [(0, 1), (0, 2), (1, 2)]
    assert b.n == 2 and all(set(e) == {0, 1} for e in b.edges) and len(b.edges) == 3


def test_unknot():
    u = PlanarDiagram.unknot()
    assert splice(u, "A").circles == splice(u, "B").circles == 1
    assert dessin_genus(u) == 0


def test_kink_dessins():
    d = build_rational(word(1))
    graphs = [dessin_graph(d, s) for s in "AB"]
    assert sorted(g.n for g in graphs) == [1, 2]
    assert all(len(g.edges) == 1 for g in graphs)


def test_split_rejected():
    kink = build_rational(word(1))
    pair = resolve(kink, 0)
    split = pair.zero if pair.zero.free_loops == 2 else pair.infinity
    with pytest.raises(SplitDiagramError):
        splice(split, "A")
    with pytest.raises(ValueError):
        splice(kink, "C")


def test_alternating_rational_genus_zero():
    for n in range(1, 5):
        for entries in itertools.product(range(1, 5), repeat=n):
            g = genus_data(build_rational(word(*entries)))
            assert (g.v_a - g.edges + g.v_b) % 2 == 0
            assert g.genus == 0


def test_hatted_family_one_genus_one():
    d = build_montesinos(MontesinosPresentation((word(2, 1), word(1), word(-3))))
    assert dessin_genus(d) == 1


def test_table1_genus_one():
    for row in load_table("table1.csv"):
        assert dessin_genus(build_montesinos(parse_montesinos(row.conway))) == 1, row.knot


def test_mirror_swaps_circle_counts():
    for text in ("[221;22;2-]", "[41;3;3-]", "[2;3;(-2)]"):
        d = build_montesinos(parse_montesinos(text))
        g, m = genus_data(d), genus_data(d.mirror())
        assert (g.v_a, g.v_b) == (m.v_b, m.v_a)
        assert g.genus == m.genus


def test_edge_count_equals_crossings():
    d = build_montesinos(parse_montesinos("[311;21;21-]"))
    for s in "AB":
        assert len(dessin_graph(d, s).edges) == len(d.crossings)
