import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from qalt.conway import MontesinosPresentation, parse_montesinos, word
from qalt.determinant import det, det_oracle
from qalt.diagram import (DiagramError, PlanarDiagram, build_montesinos, build_montesinos_indexed,
                          build_pretzel, build_rational, build_torus2, canonical_key, connected_sum,
                          is_alternating, is_connected, is_reduced_montesinos, is_split, resolve,
                          same_diagram, split_at_cut, two_edge_cuts)
from qalt.tangle import fraction

small_words = st.lists(st.integers(-3, 3).filter(bool), min_size=1, max_size=4)


def assert_closed(d: PlanarDiagram):
    counts = Counter(a for c in d.crossings for a in c)
    assert all(n == 2 for n in counts.values())
    assert sorted(counts) == list(range(1, 2 * len(d.crossings) + 1))


def arc_components(d):
    comp, k = {}, 0
    for a in sorted(d.arcs):
        if a in comp:
            continue
        stack = [a]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp[x] = k
            for c in d.crossings:
                for s in range(4):
                    if c[s] == x:
                        stack.append(c[(s + 2) % 4])
        k += 1
    return comp


@pytest.mark.parametrize("entries, crossings, components, value", [
    ((3,), 3, 1, 3),
    ((2, 2), 4, 1, 5),
    ((1,), 1, 1, 1),
    ((2,), 2, 2, 2),
])
def test_build_rational(entries, crossings, components, value):
    d = build_rational(word(*entries))
    assert len(d.crossings) == crossings
    assert d.components() == components
    assert det_oracle(d) == value
    assert_closed(d)


def test_build_montesinos_hatted_family_one():
    d = build_montesinos(MontesinosPresentation((word(2, 1), word(1), word(-3))))
    assert len(d.crossings) == 2 + 1 + 1 + 3
    assert det(d) == 12


def test_build_montesinos_frozen_values():
    # bracket-oracle values: P(2,2,2) = 2*2 + 2*2 + 2*2
    assert det_oracle(build_montesinos(MontesinosPresentation((word(2),) * 3))) == 12
    # a single vertical tassel closes to an unknot, unlike the horizontal C(3)
    assert det_oracle(build_montesinos(MontesinosPresentation((word(3),)))) == 1


def test_montesinos_crossing_count_includes_half_twists():
    p = MontesinosPresentation((word(2, 1), word(3), word(-2)), half_twists=2)
    assert len(build_montesinos(p).crossings) == 2 + 3 + 3 + 2


@pytest.mark.parametrize("twists, value", [((2, 2), 4), ((3,), 1), ((2, -2), 0), ((-2, 3, 5), 1)])
def test_build_pretzel(twists, value):
    assert det_oracle(build_pretzel(twists)) == value


def test_build_pretzel_errors():
    with pytest.raises(DiagramError):
        build_pretzel([])
    with pytest.raises(DiagramError):
        build_pretzel([2, 0])


def test_torus2():
    assert det_oracle(build_torus2(-3)) == 3
    assert build_torus2(4).components() == 2


def test_resolve_kink():
    pair = resolve(build_rational(word(1)), 0)
    assert sorted([pair.zero.free_loops, pair.infinity.free_loops]) == [1, 2]
    assert not pair.zero.crossings and not pair.infinity.crossings


def test_resolve_slot_crossing_family_one():
    md = build_montesinos_indexed(MontesinosPresentation((word(2, 1), word(1), word(-3))))
    pair = resolve(md.diagram, md.slot_crossings[1][0])
    assert det(pair.infinity) == 3                     # C(2,-2)
    assert det(pair.zero) == 9                         # T(2,-3) # C(2,1)
    cuts = list(two_edge_cuts(pair.zero))
    assert cuts
    pieces = split_at_cut(pair.zero, *cuts[0][:2])
    assert sorted(det(p) for p in pieces) in ([1, 9], [3, 3])


def test_resolve_index_error():
    with pytest.raises(IndexError):
        resolve(build_rational(word(3)), 3)


@settings(max_examples=60, deadline=None)
@given(small_words, st.data())
def test_resolution_invariants(entries, data):
    d = build_rational(word(*entries))
    i = data.draw(st.integers(0, len(d.crossings) - 1))
    pair = resolve(d, i)
    for child in (pair.zero, pair.infinity):
        assert len(child.crossings) == len(d.crossings) - 1
        if child.crossings:
            assert_closed(child)
    # the smoothing that follows the orientation keeps every other sign, up
    # to reorienting whole components of the result
    child = pair.zero if d.signs[i] == 1 else pair.infinity
    if child.crossings:
        comp = arc_components(child)
        rest = [s for k, s in enumerate(d.signs) if k != i]
        for c, s_old, s_new in zip(child.crossings, rest, child.signs):
            same_component = comp[c[0]] == comp[c[1]]
            assert s_new == s_old or not same_component


def test_connected_sum():
    c22 = build_rational(word(2, 2))
    assert same_diagram(connected_sum(PlanarDiagram.unknot(), c22), c22)
    assert det(connected_sum(c22, c22)) == 25
    s = connected_sum(build_torus2(-3), build_rational(word(2, 1)))
    assert det(s) == 9
    assert_closed(s)


@pytest.mark.parametrize("a, b", list(itertools.product([(2,), (3,), (2, 2), (2, 1, 2)], repeat=2)))
def test_connected_sum_multiplicative(a, b):
    d1, d2 = build_rational(word(*a)), build_rational(word(*b))
    assert det_oracle(connected_sum(d1, d2)) == det_oracle(d1) * det_oracle(d2)


def test_classification_examples():
    assert is_alternating(build_rational(word(2, 2)))
    p = parse_montesinos("[221;22;2-]")
    assert is_reduced_montesinos(p)
    assert not is_alternating(build_montesinos(p))
    assert not is_reduced_montesinos(MontesinosPresentation((word(1), word(2), word(-2))))
    assert is_reduced_montesinos(MontesinosPresentation((word(2), word(2), word(3))))


def test_is_split():
    assert not is_split(build_rational(word(3)))
    unlink = resolve(build_rational(word(1)), 0)
    split = unlink.zero if unlink.zero.free_loops == 2 else unlink.infinity
    assert is_split(split)
    two = connected_sum(build_rational(word(3)), build_rational(word(3)))
    assert is_connected(two) and not is_split(two)


def test_component_parity():
    for n in range(1, 5):
        for entries in itertools.product(range(1, 5), repeat=n):
            d = build_rational(word(*entries))
            even = fraction(word(*entries)).numerator % 2 == 0
            assert d.components() == (2 if even else 1)


@settings(max_examples=40, deadline=None)
@given(small_words)
def test_mirror_invariance(entries):
    d = build_rational(word(*entries))
    m = d.mirror()
    assert det_oracle(m) == det_oracle(d)
    if d.components() == 1:
        assert m.writhe() == -d.writhe()


def test_json_round_trip():
    for text in ("[221;22;2-]", "[32;2;(-3)(-3)]", "[2;2]"):
        d = build_montesinos(parse_montesinos(text))
        assert PlanarDiagram.from_json(d.to_json()) == d
        assert canonical_key(PlanarDiagram.from_json(d.to_json())) == canonical_key(d)


def test_canonical_key_ignores_relabelling():
    d = build_rational(word(2, 3))
    n = 2 * len(d.crossings)
    shifted = PlanarDiagram.from_crossings(
        [tuple((a % n) + 1 for a in c[2:] + c[:2]) for c in reversed(d.crossings)])
    assert same_diagram(d, shifted)
    assert not same_diagram(d, d.mirror())


def test_from_crossings_validation():
    with pytest.raises(DiagramError):
        PlanarDiagram.from_crossings([(1, 2, 3)])
    with pytest.raises(DiagramError):
        PlanarDiagram.from_crossings([(1, 2, 3, 4)])
    with pytest.raises(DiagramError):
        PlanarDiagram.from_crossings([], 0)
