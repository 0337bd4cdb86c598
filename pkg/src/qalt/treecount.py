"""Exact spanning-tree counts of multigraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Multigraph:
    """Undirected multigraph on vertices ``0 .. n-1``; loops and parallel edges allowed."""

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.edges = [(int(u), int(v)) for u, v in self.edges]
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} vertices")

    def without_loops(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.edges if u != v]

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    @classmethod
    def from_edge_lines(cls, lines: Iterable[str]) -> "Multigraph":
        """Parse ``u v`` lines; the vertex count is one more than the largest label."""
        edges = []
        for raw in lines:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"expected 'u v', got {raw.strip()!r}")
            edges.append((int(parts[0]), int(parts[1])))
        n = 1 + max((max(e) for e in edges), default=0)
        return cls(n, edges)


def bareiss_det(matrix: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def laplacian(g: Multigraph) -> list[list[int]]:
    lap = [[0] * g.n for _ in range(g.n)]
    for u, v in g.without_loops():
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return lap


def count_trees(g: Multigraph) -> int:
    """Matrix-Tree count: determinant of the Laplacian with row/column 0 removed."""
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if g.n == 1:
        return 1
    lap = laplacian(g)
    minor = [row[1:] for row in lap[1:]]
    return bareiss_det(minor)


def count_trees_oracle(g: Multigraph, budget: int = 16) -> int:
    """Deletion-contraction count, independent of the Laplacian route."""
    if g.n == 0:
        raise ValueError("graph has no vertices")
    edges = g.without_loops()
    if len(edges) > budget:
        raise BudgetExceeded(f"{len(edges)} edges exceed the deletion-contraction budget {budget}")
    return _dc(g.n, edges)


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def _dc(n: int, edges: list[tuple[int, int]]) -> int:
    if n == 1:
        return 1
    if _components(n, edges) > 1:
        return 0
    u, v = edges[0]
    rest = edges[1:]
    contracted = _contract(n, rest, u, v)
    if _components(n, rest) > 1:        # bridge: it lies in every spanning tree
        return _dc(n - 1, contracted)
    return _dc(n, rest) + _dc(n - 1, contracted)


def _contract(n, edges, u, v):
    """Merge v into u and compact labels to 0..n-2, dropping new loops."""
    def relabel(x):
        if x == v:
            x = u
        return x - 1 if x > v else x
    out = []
    for a, b in edges:
        a2, b2 = relabel(a), relabel(b)
        if a2 != b2:
            out.append((a2, b2))
    return out
