"""Link determinants by three routes.

* ``det_rational``: continuant of a tangle word.
* ``det_alternating`` / ``det_genus1``: spanning trees of the all-A and all-B
  dessins.
* ``det_oracle``: Kauffman bracket evaluated at a primitive eighth root of
  unity in exact cyclotomic arithmetic.  At that point the loop value
  ``-A^2 - A^-2`` vanishes, so only single-circle states contribute.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from math import isqrt

from .conway import RationalTangleWord
from .dessin import dessin_genus, dessin_graph
from .diagram import PlanarDiagram, crossing_graph_components, is_connected
from .tangle import continuant
from .treecount import count_trees

DEFAULT_ORACLE_BUDGET = int(os.environ.get("QALT_ORACLE_BUDGET", "20"))


class UnsupportedDiagram(RuntimeError):
    pass


class OracleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CyclotomicInt:
    """Element c0 + c1 z + c2 z^2 + c3 z^3 of Z[z], z = exp(i pi/4), z^4 = -1."""

    c: tuple[int, int, int, int] = (0, 0, 0, 0)

    @classmethod
    def one(cls) -> "CyclotomicInt":
        return cls((1, 0, 0, 0))

    @classmethod
    def zeta_power(cls, k: int) -> "CyclotomicInt":
        k %= 8
        coeffs = [0, 0, 0, 0]
        coeffs[k % 4] = -1 if k >= 4 else 1
        return cls(tuple(coeffs))

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return CyclotomicInt(tuple(a + b for a, b in zip(self.c, other.c)))

    def __mul__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        out = [0] * 8
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return CyclotomicInt(tuple(out[k] - out[k + 4] for k in range(4)))

    def times_zeta(self, k: int) -> "CyclotomicInt":
        c = list(self.c)
        for _ in range(k % 8):
            c = [-c[3], c[0], c[1], c[2]]
        return CyclotomicInt(tuple(c))

    def conj(self) -> "CyclotomicInt":
        # z^-k = -z^(4-k)
        c0, c1, c2, c3 = self.c
        return CyclotomicInt((c0, -c3, -c2, -c1))

    def norm(self) -> int:
        """|x|^2 as an integer; raises if it is not rational."""
        r = self * self.conj()
        r0, r1, r2, r3 = r.c
        if r2 != 0 or r1 != -r3:
            raise OracleError(f"x * conj(x) is not real: {r.c}")
        if r1 != 0:
            raise OracleError(f"|x|^2 = {r0} + {r1}*sqrt(2) is irrational")
        return r0

    def is_zero(self) -> bool:
        return not any(self.c)


_ZERO = CyclotomicInt()


def _crossing_order(d: PlanarDiagram) -> list[int]:
    """Breadth-first crossing order, which keeps the contraction frontier small."""
    partner = d.partner()
    order, seen = [], set()
    for comp in crossing_graph_components(d):
        queue = [comp[0]]
        seen.add(comp[0])
        k = 0
        while k < len(queue):
            i = queue[k]
            k += 1
            for s in range(4):
                j, _ = partner[(i, s)]
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        order.extend(queue)
    return order


def bracket_at_root(d: PlanarDiagram) -> CyclotomicInt:
    """Unnormalized Kauffman bracket at A = exp(i pi/4).

    Sums the same states as :func:`bracket_states`, but contracts crossings one
    at a time, keeping the pairing of open arc ends as the partial state.
    """
    if not d.crossings:
        return CyclotomicInt.one() if d.free_loops == 1 else _ZERO
    if d.free_loops:
        return _ZERO
    order = _crossing_order(d)
    states: dict[tuple, CyclotomicInt] = {(): CyclotomicInt.one()}
    last = len(order) - 1
    for step, i in enumerate(order):
        c = d.crossings[i]
        new_states: dict[tuple, CyclotomicInt] = defaultdict(CyclotomicInt)
        for matching, coeff in states.items():
            for state, power in (("A", 1), ("B", -1)):
                if state == "A":
                    new_pairs = ((c[0], c[1]), (c[2], c[3]))
                else:
                    new_pairs = ((c[0], c[3]), (c[1], c[2]))
                result = _merge(matching, new_pairs)
                if result is None:
                    continue
                key, cycles = result
                if cycles:
                    if step != last or cycles > 1 or key:
                        continue  # a second circle multiplies the term by zero
                new_states[key] = new_states[key] + coeff.times_zeta(power)
        states = {k: v for k, v in new_states.items() if not v.is_zero()}
    return states.get((), _ZERO)


def _merge(matching, new_pairs):
    adj = defaultdict(list)
    edges = list(matching) + list(new_pairs)
    for e, (u, v) in enumerate(edges):
        adj[u].append((v, e))
        adj[v].append((u, e))
    used = set()
    pairs = []
    for node, nbrs in adj.items():
        if len(nbrs) != 1 or any(node in p for p in pairs):
            continue
        prev_edge = None
        cur = node
        while True:
            nxt = [(w, e) for (w, e) in adj[cur] if e != prev_edge and e not in used]
            if not nxt:
                break
            w, e = nxt[0]
            used.add(e)
            prev_edge = e
            cur = w
            if len(adj[cur]) == 1:
                break
        pairs.append((min(node, cur), max(node, cur)))
    # remaining unused edges form cycles
    cycles = 0
    remaining = [e for e in range(len(edges)) if e not in used]
    seen_e = set()
    for e0 in remaining:
        if e0 in seen_e:
            continue
        cycles += 1
        stack = [edges[e0][0]]
        while stack:
            x = stack.pop()
            for w, e in adj[x]:
                if e not in seen_e and e not in used:
                    seen_e.add(e)
                    stack.append(w)
    return tuple(sorted(pairs)), cycles


def bracket_states(d: PlanarDiagram) -> CyclotomicInt:
    """Literal state sum over all 2^c smoothings (for small diagrams)."""
    if not d.crossings:
        return CyclotomicInt.one() if d.free_loops == 1 else _ZERO
    n = len(d.crossings)
    total = _ZERO
    arcs = sorted(d.arcs)
    for mask in range(1 << n):
        parent = {a: a for a in arcs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for i, c in enumerate(d.crossings):
            if mask >> i & 1:
                pairs = ((c[0], c[1]), (c[2], c[3]))
                a_count += 1
            else:
                pairs = ((c[0], c[3]), (c[1], c[2]))
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(a) for a in arcs}) + d.free_loops
        if loops == 1:
            total = total + CyclotomicInt.zeta_power(a_count - (n - a_count))
    return total


def det_oracle(d: PlanarDiagram, budget: int | None = None, *, states: bool = False) -> int:
    """|V(-1)| from the writhe-normalized bracket at a primitive eighth root of unity."""
    budget = DEFAULT_ORACLE_BUDGET if budget is None else budget
    if len(d.crossings) > budget:
        raise UnsupportedDiagram(f"{len(d.crossings)} crossings exceed the oracle budget {budget}")
    value = bracket_states(d) if states else bracket_at_root(d)
    # -A^3 = -z^3 = z^-1, so the writhe factor (-A^3)^(-w) is z^w
    value = value.times_zeta(d.writhe())
    norm = value.norm()
    root = isqrt(norm)
    if root * root != norm:
        raise OracleError(f"bracket norm {norm} is not a perfect square")
    return root


def det_rational(w: RationalTangleWord) -> int:
    return abs(continuant(w.entries)[0])


def det_alternating(d: PlanarDiagram) -> int:
    g = dessin_genus(d)
    if g != 0:
        raise UnsupportedDiagram(f"dessin genus {g}; det_alternating needs genus 0")
    return count_trees(dessin_graph(d, "A"))


def tree_counts(d: PlanarDiagram) -> tuple[int, int]:
    return count_trees(dessin_graph(d, "A")), count_trees(dessin_graph(d, "B"))


def det_genus1(d: PlanarDiagram) -> int:
    g = dessin_genus(d)
    if g != 1:
        raise UnsupportedDiagram(
            f"dessin genus {g}; the tree-difference formula needs genus 1 "
            "(use det_alternating or det_oracle)")
    t_a, t_b = tree_counts(d)
    return abs(t_a - t_b)


def compute_det(d: PlanarDiagram, *, check: bool | None = None,
                budget: int | None = None) -> tuple[int, str]:
    """Determinant and the name of the engine that produced it."""
    if check is None:
        check = os.environ.get("QALT_DEBUG", "") not in ("", "0")
    budget = DEFAULT_ORACLE_BUDGET if budget is None else budget
    if not is_connected(d):
        return det_oracle(d, max(budget, len(d.crossings))), "oracle"
    g = dessin_genus(d)
    if g == 0:
        value, engine = count_trees(dessin_graph(d, "A")), "alternating"
    elif g == 1:
        t_a, t_b = tree_counts(d)
        value, engine = abs(t_a - t_b), "genus1"
    else:
        return det_oracle(d, budget), "oracle"
    if check and len(d.crossings) <= budget:
        expected = det_oracle(d, budget)
        if expected != value:
            raise OracleError(f"{engine} engine gave {value}, oracle gave {expected}")
    return value, engine


def det(d: PlanarDiagram, **kwargs) -> int:
    return compute_det(d, **kwargs)[0]
