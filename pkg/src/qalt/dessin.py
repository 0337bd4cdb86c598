"""All-A / all-B state circles, dessins and the dessin genus."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import PlanarDiagram, is_connected
from .treecount import Multigraph


class SplitDiagramError(ValueError):
    pass


# slot pairs joined by each smoothing (slot 0 is the incoming under-strand)
SMOOTHING_PAIRS = {"A": ((0, 1), (2, 3)), "B": ((0, 3), (1, 2))}


@dataclass(frozen=True)
class StateSplicing:
    state: str
    circles: int
    incidence: tuple[tuple[int, int], ...]   # per crossing: the two circles its segment joins


def splice(d: PlanarDiagram, state: str) -> StateSplicing:
    if state not in SMOOTHING_PAIRS:
        raise ValueError(f"state must be 'A' or 'B', not {state!r}")
    if not is_connected(d):
        raise SplitDiagramError("dessins are defined for connected diagrams only")
    if not d.crossings:
        return StateSplicing(state, 1, ())
    parent = {a: a for a in d.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = SMOOTHING_PAIRS[state]
    for c in d.crossings:
        for s, t in pairs:
            parent[find(c[s])] = find(c[t])
    roots = sorted({find(a) for a in d.arcs})
    index = {r: i for i, r in enumerate(roots)}
    # the segment at a crossing joins the two local arcs of the smoothing
    (s0, _), (s1, _) = pairs
    incidence = tuple((index[find(c[s0])], index[find(c[s1])]) for c in d.crossings)
    return StateSplicing(state, len(roots), incidence)


def dessin_graph(d: PlanarDiagram, state: str) -> Multigraph:
    sp = splice(d, state)
    return Multigraph(sp.circles, list(sp.incidence))


@dataclass(frozen=True)
class GenusData:
    v_a: int
    edges: int
    v_b: int

    @property
    def genus(self) -> int:
        twice = 2 - (self.v_a - self.edges + self.v_b)
        if twice % 2 or twice < 0:
            raise ArithmeticError(f"non-integral dessin genus from v_A={self.v_a}, e={self.edges}, v_B={self.v_b}")
        return twice // 2


def genus_data(d: PlanarDiagram) -> GenusData:
    return GenusData(splice(d, "A").circles, len(d.crossings), splice(d, "B").circles)


def dessin_genus(d: PlanarDiagram) -> int:
    """Genus of the all-A dessin, using v(D(B)) as its face count."""
    return genus_data(d).genus
