"""Planar diagram codes and the constructions used on them.

A crossing is four arc labels in counterclockwise order starting at the
incoming under-strand (slots 0 and 2 are the under-strand, 1 and 3 the
over-strand).  Crossingless components are kept as a ``free_loops`` count.
Diagrams are normalized on construction: arcs are relabelled 1..2c along an
orientation of each component, and crossing order is preserved.

The generators build rational tangles from twist words by horizontal and
vertical twisting and close them up; the single-crossing tangle ``[1]`` is the
crossing whose over-strand runs SW to NE.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .conway import MontesinosPresentation, RationalTangleWord
from .tangle import crossing_count, is_alternating_word, normalize_word


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...] = ()
    free_loops: int = 0

    @classmethod
    def from_crossings(cls, crossings: Iterable[Sequence[int]], free_loops: int = 0) -> "PlanarDiagram":
        """Normalize raw crossings (ccw, slot 0 on the under-strand)."""
        raw = [tuple(c) for c in crossings]
        if any(len(c) != 4 for c in raw):
            raise DiagramError("every crossing needs four arc labels")
        if not raw:
            if free_loops < 1:
                raise DiagramError("a crossingless diagram needs at least one loop")
            return cls((), (), free_loops)
        counts = defaultdict(int)
        for c in raw:
            for a in c:
                counts[a] += 1
        bad = [a for a, n in counts.items() if n != 2]
        if bad:
            raise DiagramError(f"arcs {sorted(bad)[:5]} do not occur exactly twice")
        crossings_, signs = _orient_and_label(raw)
        return cls(crossings_, signs, free_loops)

    @classmethod
    def unknot(cls) -> "PlanarDiagram":
        return cls((), (), 1)

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> set[int]:
        return {a for c in self.crossings for a in c}

    def writhe(self) -> int:
        return sum(self.signs)

    def darts(self) -> dict[int, list[tuple[int, int]]]:
        """arc label -> its two (crossing, slot) occurrences."""
        where: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for i, c in enumerate(self.crossings):
            for s, a in enumerate(c):
                where[a].append((i, s))
        return where

    def partner(self) -> dict[tuple[int, int], tuple[int, int]]:
        out = {}
        for (x, y) in self.darts().values():
            out[x] = y
            out[y] = x
        return out

    def components(self) -> int:
        """Number of link components."""
        if not self.crossings:
            return self.free_loops
        partner = self.partner()
        seen = set()
        count = 0
        for i in range(len(self.crossings)):
            for s in range(4):
                if (i, s) in seen:
                    continue
                count += 1
                cur = (i, s)
                while cur not in seen:
                    seen.add(cur)
                    out = (cur[0], (cur[1] + 2) % 4)
                    seen.add(out)
                    cur = partner[out]
        return count + self.free_loops

    def mirror(self) -> "PlanarDiagram":
        return PlanarDiagram.from_crossings(
            [(c[1], c[2], c[3], c[0]) for c in self.crossings], self.free_loops)

    def to_json(self) -> dict:
        return {
            "crossings": [{"sign": s, "arcs": list(c)} for c, s in zip(self.crossings, self.signs)],
            "free_loops": self.free_loops,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlanarDiagram":
        """Inverse of :meth:`to_json`.

        The stored signs fix each component's orientation, so labels are kept
        verbatim when they are consistent with it (relabelling could reorient
        a component and break exact comparisons).
        """
        raw = [tuple(int(a) for a in c["arcs"]) for c in data["crossings"]]
        signs = [c.get("sign") for c in data["crossings"]]
        free_loops = data.get("free_loops", 0)
        if raw and all(s in (1, -1) for s in signs) and _consistently_oriented(raw, signs):
            return cls(tuple(raw), tuple(signs), free_loops)
        return cls.from_crossings(raw, free_loops)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _consistently_oriented(raw, signs) -> bool:
    """Each arc enters exactly one crossing slot and leaves exactly one."""
    ins, outs = [], []
    for c, s in zip(raw, signs):
        over_in, over_out = (3, 1) if s == 1 else (1, 3)
        ins += [c[0], c[over_in]]
        outs += [c[2], c[over_out]]
    return len(set(ins)) == len(ins) and sorted(ins) == sorted(outs)


def _orient_and_label(raw):
    where = defaultdict(list)
    for i, c in enumerate(raw):
        for s, a in enumerate(c):
            where[a].append((i, s))
    partner = {}
    for a, (x, y) in where.items():
        partner[x] = y
        partner[y] = x

    incoming: dict[tuple[int, int], int] = {}   # dart -> new label of the arc entering there
    outgoing: dict[tuple[int, int], int] = {}
    label = 0
    for i in range(len(raw)):
        for s in range(4):
            if (i, s) in incoming or (i, s) in outgoing:
                continue
            # traverse the component entering crossing i at slot s
            start = (i, s)
            cur = start
            while True:
                exit_ = (cur[0], (cur[1] + 2) % 4)
                label += 1
                outgoing[exit_] = label
                nxt = partner[exit_]
                incoming[nxt] = label
                cur = nxt
                if cur == start:
                    break
    crossings, signs = [], []
    for i in range(len(raw)):
        rot = 0 if (i, 0) in incoming else 2
        slots = [(rot + k) % 4 for k in range(4)]
        labels = tuple(incoming.get((i, s), outgoing.get((i, s))) for s in slots)
        crossings.append(labels)
        over_in = (i, slots[3]) in incoming
        signs.append(1 if over_in else -1)
    return tuple(crossings), tuple(signs)


# -- tangle geometry ----------------------------------------------------------

@dataclass
class Tangle:
    """Four-ended tangle under construction.

    Points are integers; ``edges`` join points by strands.  Crossing slots are
    points of degree one, everything else is a pass-through point.
    """

    crossings: list[tuple[int, int, int, int]] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)
    ends: dict[str, int] = field(default_factory=dict)
    groups: list[list[int]] = field(default_factory=list)


def _shift(groups, offset):
    return [[k + offset for k in g] for g in groups]


class TangleBuilder:
    def __init__(self):
        self._ids = itertools.count()

    def _point(self) -> int:
        return next(self._ids)

    def zero(self) -> Tangle:
        nw, ne, sw, se = (self._point() for _ in range(4))
        return Tangle([], [(nw, ne), (sw, se)], dict(NW=nw, NE=ne, SW=sw, SE=se))

    def infinity(self) -> Tangle:
        nw, ne, sw, se = (self._point() for _ in range(4))
        return Tangle([], [(nw, sw), (ne, se)], dict(NW=nw, NE=ne, SW=sw, SE=se))

    def crossing(self, sign: int) -> Tangle:
        slots = {k: self._point() for k in ("NW", "NE", "SW", "SE")}
        ends = {k: self._point() for k in ("NW", "NE", "SW", "SE")}
        if sign > 0:   # over-strand SW-NE
            order = ("SE", "NE", "NW", "SW")
        else:          # over-strand NW-SE
            order = ("SW", "SE", "NE", "NW")
        c = tuple(slots[k] for k in order)
        edges = [(slots[k], ends[k]) for k in ends]
        return Tangle([c], edges, ends)

    @staticmethod
    def add(t: Tangle, s: Tangle) -> Tangle:
        """Horizontal sum t + s."""
        return Tangle(
            t.crossings + s.crossings,
            t.edges + s.edges + [(t.ends["NE"], s.ends["NW"]), (t.ends["SE"], s.ends["SW"])],
            dict(NW=t.ends["NW"], SW=t.ends["SW"], NE=s.ends["NE"], SE=s.ends["SE"]),
            t.groups + _shift(s.groups, len(t.crossings)),
        )

    @staticmethod
    def stack(t: Tangle, s: Tangle) -> Tangle:
        """Vertical product: t above s."""
        return Tangle(
            t.crossings + s.crossings,
            t.edges + s.edges + [(t.ends["SW"], s.ends["NW"]), (t.ends["SE"], s.ends["NE"])],
            dict(NW=t.ends["NW"], NE=t.ends["NE"], SW=s.ends["SW"], SE=s.ends["SE"]),
            t.groups + _shift(s.groups, len(t.crossings)),
        )

    def horizontal_twist(self, t: Tangle, a: int) -> Tangle:
        for _ in range(abs(a)):
            t = self.add(t, self.crossing(1 if a > 0 else -1))
        return t

    def vertical_twist(self, t: Tangle, a: int) -> Tangle:
        for _ in range(abs(a)):
            t = self.stack(t, self.crossing(1 if a > 0 else -1))
        return t

    def twist_word(self, entries: Sequence[int], last_vertical: bool) -> Tangle:
        """Alternate twist directions so that the final entry has the given direction.

        With ``last_vertical`` false the tangle fraction is the continued
        fraction of the entries; with it true, its reciprocal.
        """
        n = len(entries)
        vertical = [(last_vertical if (n - 1 - k) % 2 == 0 else not last_vertical) for k in range(n)]
        t = self.infinity() if vertical[0] else self.zero()
        for a, v in zip(entries, vertical):
            t = self.vertical_twist(t, a) if v else self.horizontal_twist(t, a)
        return t

    def slot(self, w: RationalTangleWord) -> Tangle:
        """Tangle occupying a Montesinos slot, tagged as one crossing group."""
        if w.horizontal_tail:
            t = self.twist_word(w.body, last_vertical=True)
            t = self.horizontal_twist(t, w.entries[-1])
        else:
            t = self.twist_word(w.entries, last_vertical=True)
        first = len(t.crossings) - crossing_count(w)
        t.groups = [list(range(first, len(t.crossings)))]
        return t

    @staticmethod
    def close(t: Tangle, kind: str = "N") -> PlanarDiagram:
        if kind == "N":
            extra = [(t.ends["NW"], t.ends["NE"]), (t.ends["SW"], t.ends["SE"])]
        elif kind == "D":
            extra = [(t.ends["NW"], t.ends["SW"]), (t.ends["NE"], t.ends["SE"])]
        else:
            raise ValueError(f"unknown closure {kind!r}")
        return _points_to_diagram(t.crossings, t.edges + extra)


def _points_to_diagram(crossings, edges) -> PlanarDiagram:
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    slot_points = {p for c in crossings for p in c}
    label_of: dict[int, int] = {}
    seen: set[int] = set()
    label = 0
    for p in (p for c in crossings for p in c):
        if p in label_of:
            continue
        label += 1
        prev, cur = p, adj[p][0]
        path = [p]
        while cur not in slot_points:
            seen.add(cur)
            nbrs = adj[cur]
            nxt = nbrs[1] if nbrs[0] == prev else nbrs[0]
            prev, cur = cur, nxt
        label_of[p] = label
        label_of[cur] = label
    loops = 0
    for p in adj:
        if p in slot_points or p in seen:
            continue
        loops += 1
        stack = [p]
        while stack:
            q = stack.pop()
            if q in seen:
                continue
            seen.add(q)
            stack.extend(adj[q])
    raw = [tuple(label_of[p] for p in c) for c in crossings]
    if not raw:
        return PlanarDiagram.from_crossings([], loops)
    return PlanarDiagram.from_crossings(raw, loops)


# -- generators ---------------------------------------------------------------

def build_rational(w: RationalTangleWord) -> PlanarDiagram:
    """Rational link C(a_1, ..., a_n): numerator closure of the word's tangle."""
    b = TangleBuilder()
    return b.close(b.twist_word(w.entries, last_vertical=False), "N")


def build_torus2(n: int) -> PlanarDiagram:
    """T(2, n) as the closure of n horizontal half-twists."""
    if n == 0:
        raise DiagramError("T(2,0) is the split unlink; not a generator input")
    b = TangleBuilder()
    return b.close(b.horizontal_twist(b.zero(), n), "N")


@dataclass(frozen=True)
class MontesinosDiagram:
    diagram: PlanarDiagram
    slot_crossings: tuple[tuple[int, ...], ...]


def montesinos_tangle(b: TangleBuilder, p: MontesinosPresentation) -> Tangle:
    t = None
    for w in p.tangles:
        s = b.slot(w)
        t = s if t is None else b.add(t, s)
    if p.half_twists:
        t = b.horizontal_twist(t, p.half_twists)
    return t


def build_montesinos_indexed(p: MontesinosPresentation) -> MontesinosDiagram:
    b = TangleBuilder()
    t = montesinos_tangle(b, p)
    d = b.close(t, "N")
    return MontesinosDiagram(d, tuple(tuple(g) for g in t.groups))


def build_montesinos(p: MontesinosPresentation) -> PlanarDiagram:
    """Numerator closure of the slot tangles placed left to right, then k half-twists."""
    return build_montesinos_indexed(p).diagram


def build_slot_closure(words: Sequence[RationalTangleWord], kind: str) -> PlanarDiagram:
    """Closure of the sum of the given slot tangles (used for rational leaves)."""
    b = TangleBuilder()
    t = None
    for w in words:
        s = b.slot(w)
        t = s if t is None else b.add(t, s)
    return b.close(t, kind)


def build_pretzel(twists: Sequence[int]) -> PlanarDiagram:
    """Pretzel link P(p_1, ..., p_m): one vertical tassel per entry."""
    if not twists or any(p == 0 for p in twists):
        raise DiagramError("pretzel tassels must be nonzero")
    return build_montesinos(MontesinosPresentation(tuple(RationalTangleWord((p,)) for p in twists)))


# -- operations ---------------------------------------------------------------

@dataclass(frozen=True)
class ResolutionPair:
    zero: PlanarDiagram
    infinity: PlanarDiagram


def smooth(d: PlanarDiagram, index: int, state: str) -> PlanarDiagram:
    """Replace one crossing by its A- or B-smoothing."""
    if not 0 <= index < len(d.crossings):
        raise IndexError(f"crossing index {index} out of range for {len(d.crossings)} crossings")
    a, b, c, e = d.crossings[index]
    pairs = [(a, b), (c, e)] if state == "A" else [(a, e), (b, c)]
    parent = {x: x for x in d.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        parent[find(x)] = find(y)
    rest = [tuple(find(x) for x in cr) for k, cr in enumerate(d.crossings) if k != index]
    used = {x for cr in rest for x in cr}
    new_loops = len({find(x) for x in (a, b, c, e)} - used)
    return PlanarDiagram.from_crossings(rest, d.free_loops + new_loops)


def resolve(d: PlanarDiagram, index: int) -> ResolutionPair:
    """Both smoothings of one crossing: ``zero`` is the A-, ``infinity`` the B-smoothing."""
    return ResolutionPair(smooth(d, index, "A"), smooth(d, index, "B"))


def connected_sum(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    """Join two diagrams along their highest-labelled arcs."""
    if not d1.crossings:
        return d2 if d1.free_loops == 1 else _disjoint(d1, d2)
    if not d2.crossings:
        return d1 if d2.free_loops == 1 else _disjoint(d1, d2)
    offset = max(d1.arcs)
    x = max(d1.arcs)
    y = max(d2.arcs) + offset
    c2 = [[a + offset for a in c] for c in d2.crossings]
    c1 = [list(c) for c in d1.crossings]
    # cut x at its second occurrence and y at its first, then cross-connect
    (i1, s1), (i2, s2) = d1.darts()[x]
    (j1, t1), _ = d2.darts()[y - offset]
    c1[i2][s2] = y
    c2[j1][t1] = x
    return PlanarDiagram.from_crossings(c1 + c2, d1.free_loops + d2.free_loops)


def _disjoint(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    offset = max(d1.arcs, default=0)
    c2 = [[a + offset for a in c] for c in d2.crossings]
    return PlanarDiagram.from_crossings(list(d1.crossings) + c2, d1.free_loops + d2.free_loops)


def crossing_graph_components(d: PlanarDiagram) -> list[list[int]]:
    adj = defaultdict(set)
    for (x, y) in d.darts().values():
        adj[x[0]].add(y[0])
        adj[y[0]].add(x[0])
    seen, comps = set(), []
    for i in range(len(d.crossings)):
        if i in seen:
            continue
        comp, stack = [], [i]
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            comp.append(k)
            stack.extend(adj[k])
        comps.append(sorted(comp))
    return comps


def is_connected(d: PlanarDiagram) -> bool:
    if not d.crossings:
        return d.free_loops == 1
    return d.free_loops == 0 and len(crossing_graph_components(d)) == 1


def is_split(d: PlanarDiagram) -> bool:
    """True when the diagram itself is disconnected."""
    return not is_connected(d)


def is_alternating(d: PlanarDiagram) -> bool:
    """Over and under alternate along every strand."""
    partner = d.partner()
    for (i, s), (j, t) in partner.items():
        # leaving i at slot s (under iff s even) and arriving at j at slot t
        if (s % 2) == (t % 2):
            return False
    return True


def two_edge_cuts(d: PlanarDiagram):
    """Yield ``(x, y, side)`` for arc pairs whose removal disconnects the crossings."""
    darts = d.darts()
    arcs = sorted(darts)
    n = len(d.crossings)
    for x, y in itertools.combinations(arcs, 2):
        adj = defaultdict(set)
        for a in arcs:
            if a in (x, y):
                continue
            (p, _), (q, _) = darts[a]
            adj[p].add(q)
            adj[q].add(p)
        seen, stack = set(), [0]
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(adj[k])
        if len(seen) < n:
            yield x, y, frozenset(seen)


def split_at_cut(d: PlanarDiagram, x: int, y: int) -> tuple[PlanarDiagram, PlanarDiagram]:
    """Split a connected-sum diagram along arcs x and y into its two summands."""
    darts = d.darts()
    if x not in darts or y not in darts:
        raise DiagramError("cut arcs not in diagram")
    # side containing the first occurrence of x
    adj = defaultdict(set)
    for a, ((p, _), (q, _)) in darts.items():
        if a in (x, y):
            continue
        adj[p].add(q)
        adj[q].add(p)
    start = darts[x][0][0]
    side, stack = set(), [start]
    while stack:
        k = stack.pop()
        if k in side:
            continue
        side.add(k)
        stack.extend(adj[k])
    ends_x = [dart[0] in side for dart in darts[x]]
    ends_y = [dart[0] in side for dart in darts[y]]
    if sorted(ends_x) != [False, True] or sorted(ends_y) != [False, True]:
        raise DiagramError(f"arcs {x}, {y} do not form a two-arc cut")
    pieces = []
    for keep in (side, set(range(len(d.crossings))) - side):
        cr = []
        for k in sorted(keep):
            cr.append(tuple(x if a == y else a for a in d.crossings[k]))
        pieces.append(PlanarDiagram.from_crossings(cr, 0))
    return pieces[0], pieces[1]


def canonical_key(d: PlanarDiagram) -> tuple:
    """Isomorphism invariant of the diagram on the oriented sphere.

    Minimizes a breadth-first encoding over every starting crossing and both
    under-strand frames; equal keys mean the diagrams agree up to relabelling,
    crossing order and rotation of crossing records.
    """
    if not d.crossings:
        return ((), d.free_loops)
    partner = d.partner()
    comps = crossing_graph_components(d)
    keys = []
    for comp in comps:
        best = None
        for start in comp:
            for off in (0, 2):
                code = _bfs_code(partner, start, off)
                if best is None or code < best:
                    best = code
        keys.append(best)
    return (tuple(sorted(keys)), d.free_loops)


def _bfs_code(partner, start, offset):
    number = {start: 0}
    offsets = {start: offset}
    order = [start]
    code = []
    k = 0
    while k < len(order):
        i = order[k]
        o = offsets[i]
        for local in range(4):
            j, t = partner[(i, (local + o) % 4)]
            if j not in number:
                number[j] = len(order)
                offsets[j] = t - (t % 2)
                order.append(j)
            code.append((number[j], (t - offsets[j]) % 4))
        k += 1
    return tuple(code)


def same_diagram(d1: PlanarDiagram, d2: PlanarDiagram) -> bool:
    return canonical_key(d1) == canonical_key(d2)


def is_reduced_montesinos(p: MontesinosPresentation) -> bool:
    """Reduced Montesinos check on slot-normalized words.

    Condition (i): the generated diagram is alternating.  Condition (ii): every
    tangle is an alternating rational tangle with at least two crossings and
    there are no extra half-twists.
    """
    norm = MontesinosPresentation(tuple(normalize_word(w) for w in p.tangles), p.half_twists)
    if is_alternating(build_montesinos(norm)):
        return True
    return norm.half_twists == 0 and all(
        is_alternating_word(w) and crossing_count(w) >= 2 for w in norm.tangles)
