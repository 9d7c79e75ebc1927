"""Multigraph with loops: the substrate every other module builds on.

Vertices are dense integers 0..vertex_count-1.  Edges are stored as a map
from normalized unordered pair (u, v) with u <= v to a positive
multiplicity; u == v encodes loops.  Instances are treated as immutable by
callers; search code mutates private copies via add_edge/remove_edge.
"""

from __future__ import annotations


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


class Multigraph:
    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count: int, edges: dict[tuple[int, int], int] | None = None):
        if vertex_count < 0:
            raise ValueError(f"vertex_count must be >= 0, got {vertex_count}")
        self.vertex_count = vertex_count
        self.edges: dict[tuple[int, int], int] = {}
        if edges:
            for (u, v), mult in edges.items():
                if mult:
                    self.add_edge(u, v, mult)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise ValueError(f"vertex {v} out of range [0, {self.vertex_count})")

    def copy(self) -> Multigraph:
        g = Multigraph(self.vertex_count)
        g.edges = dict(self.edges)
        return g

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if count < 0:
            raise ValueError("count must be >= 0")
        if count == 0:
            return
        key = _norm(u, v)
        self.edges[key] = self.edges.get(key, 0) + count

    def remove_edge(self, u: int, v: int, count: int = 1) -> None:
        key = _norm(u, v)
        have = self.edges.get(key, 0)
        if have < count:
            raise ValueError(f"cannot remove {count} copies of {key}: only {have} present")
        if have == count:
            del self.edges[key]
        else:
            self.edges[key] = have - count

    def multiplicity(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        return self.edges.get(_norm(u, v), 0)

    def degree(self, v: int) -> int:
        """Degree of v; loops count twice."""
        self._check_vertex(v)
        total = 0
        for (a, b), mult in self.edges.items():
            if a == v and b == v:
                total += 2 * mult
            elif a == v or b == v:
                total += mult
        return total

    def edge_count(self) -> int:
        """Total number of edges; a loop counts as one edge."""
        return sum(self.edges.values())

    def loop_count(self, v: int) -> int:
        return self.edges.get((v, v), 0)

    def neighbors(self, v: int) -> list[int]:
        """Sorted distinct neighbors of v (loops excluded)."""
        out = set()
        for (a, b) in self.edges:
            if a == v and b != v:
                out.add(b)
            elif b == v and a != v:
                out.add(a)
        return sorted(out)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for (a, b), mult in self.edges.items():
            if a != b and mult > 0:
                adj[a].append(b)
                adj[b].append(a)
        for row in adj:
            row.sort()
        return adj

    def components(self) -> list[tuple[int, ...]]:
        """Maximal connected vertex sets, each sorted, ordered by smallest vertex."""
        adj = self.adjacency()
        seen = [False] * self.vertex_count
        comps: list[tuple[int, ...]] = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            seen[start] = True
            stack = [start]
            comp = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def bridges(self) -> set[tuple[int, int]]:
        """Pairs {u, v} of multiplicity exactly 1 whose removal disconnects
        their component.  Parallel classes of multiplicity >= 2 are never
        bridges; loops are never bridges."""
        adj = self.adjacency()
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        out: set[tuple[int, int]] = set()
        counter = [0]

        def dfs(root: int) -> None:
            # iterative DFS to keep recursion depth independent of n
            stack: list[tuple[int, int, int, bool]] = [(root, -1, 0, False)]
            while stack:
                v, parent, idx, skipped = stack.pop()
                if idx == 0:
                    disc[v] = low[v] = counter[0]
                    counter[0] += 1
                while idx < len(adj[v]):
                    w = adj[v][idx]
                    idx += 1
                    if w == parent and not skipped and self.multiplicity(v, w) == 1:
                        skipped = True
                        continue
                    if w not in disc:
                        stack.append((v, parent, idx, skipped))
                        stack.append((w, v, 0, False))
                        break
                    low[v] = min(low[v], disc[w])
                else:
                    if parent != -1:
                        low[parent] = min(low[parent], low[v])
                        if low[v] > disc[parent] and self.multiplicity(parent, v) == 1:
                            out.add(_norm(parent, v))

        for v in range(self.vertex_count):
            if v not in disc:
                dfs(v)
        return out

    def is_two_edge_connected_spanning(self) -> bool:
        """Connected on all vertices and bridgeless.  A single vertex counts;
        two or more vertices with any isolated vertex does not."""
        if self.vertex_count <= 1:
            return True
        comps = self.components()
        if len(comps) != 1:
            return False
        return not self.bridges()

    def induced(self, vertices: int) -> Multigraph:
        """Induced sub-multigraph on vertices 0..vertices-1."""
        if vertices > self.vertex_count:
            raise ValueError("induced vertex range exceeds graph")
        g = Multigraph(vertices)
        for (a, b), mult in self.edges.items():
            if a < vertices and b < vertices:
                g.edges[(a, b)] = mult
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __repr__(self) -> str:
        pairs = ", ".join(f"{k}x{m}" for k, m in sorted(self.edges.items()))
        return f"Multigraph({self.vertex_count}, {{{pairs}}})"


def complete_multigraph(n: int, lam: int) -> Multigraph:
    """Complete graph on n vertices with every distinct pair joined by lam
    parallel edges; no loops."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    g = Multigraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            g.edges[(u, v)] = lam
    return g


def empty_graph(n: int) -> Multigraph:
    return Multigraph(n)
