"""Amalgamation and detachment: collapse the m-n missing vertices of the
target into one amalgam vertex carrying loops, then split them back out one
at a time.

The amalgamated triad built from an admissible decomposition of mu*K_n with
large-enough classes is "good": every class is 2-edge-connected spanning and
every vertex v has class degree >= 2g(v).  Goodness is exactly the invariant
that survives splitting one vertex off the amalgam, and every good state can
be completed, so the search proceeds split by split, backtracking inside a
split until the reduced state is good again.

In this exact regime the fairness requirements collapse to equalities: each
split vertex takes degree exactly r per color and multiplicity exactly mu to
every other vertex, which become row/column sums of a small assignment
matrix per split.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .conditions import EnclosureParams, check_a_prime
from .decomp import Decomposition
from .errors import (
    BudgetExhaustedError,
    InternalInconsistencyError,
    PreconditionError,
)
from .mgraph import Multigraph, complete_multigraph


@dataclass(frozen=True)
class Triad:
    """A loops-allowed multigraph, per-vertex amalgamation sizes, and a
    decomposition of the graph."""

    graph: Multigraph
    g: tuple[int, ...]
    decomposition: Decomposition

    def __post_init__(self):
        if len(self.g) != self.graph.vertex_count:
            raise ValueError("amalgamation sizes must cover every vertex")
        if any(value < 1 for value in self.g):
            raise ValueError("amalgamation sizes must be positive")
        for v, value in enumerate(self.g):
            if value == 1 and self.graph.loop_count(v) > 0:
                raise ValueError(f"vertex {v} has size 1 but carries a loop")

    def g_pair(self, v: int, w: int) -> int:
        if v != w:
            return self.g[v] * self.g[w]
        return self.g[v] * (self.g[v] - 1) // 2


@dataclass
class DetachStats:
    nodes: int = 0
    restarts: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class DetachmentWitness:
    result: Decomposition
    vertex_map: tuple[int, ...]  # result vertex -> triad vertex
    stats: DetachStats


def build_amalgamated_triad(a: Decomposition, params: EnclosureParams) -> Triad:
    """Amalgamate the m-n future vertices into one vertex x0 = n.

    Per color i the amalgam carries |E(a_i)| - p loops and r - deg_i(x_j)
    edges to each original vertex.  The construction forces four facts that
    are asserted here: per-color degree r at each x_j and r(m-n) at x0,
    multiplicity mu(m-n) on every (x0, x_j) pair, and mu(m-n)(m-n-1)/2
    loops in total.
    """
    if params.m <= params.n:
        raise PreconditionError("nothing to detach: m must exceed n")
    report = check_a_prime(a, params)
    if not report.ok:
        raise PreconditionError(f"condition {report.first_failing()} fails")
    n, m, mu, r = params.n, params.m, params.mu, params.r
    if not params.p_is_integer:
        raise InternalInconsistencyError("p is not an integer despite divisibility")
    p = int(params.p)
    x0 = n
    graph = Multigraph(n + 1)
    classes = []
    for i, cls in enumerate(a.classes):
        tri_cls = Multigraph(n + 1)
        for (u, v), mult in cls.edges.items():
            tri_cls.add_edge(u, v, mult)
            graph.add_edge(u, v, mult)
        loops = cls.edge_count() - p
        if loops < 0:
            raise InternalInconsistencyError(f"class {i} smaller than p")
        if loops:
            tri_cls.add_edge(x0, x0, loops)
            graph.add_edge(x0, x0, loops)
        for j in range(n):
            missing = r - cls.degree(j)
            if missing < 0:
                raise InternalInconsistencyError(f"class {i} exceeds degree {r} at {j}")
            if missing:
                tri_cls.add_edge(x0, j, missing)
                graph.add_edge(x0, j, missing)
        classes.append(tri_cls)

    triad = Triad(
        graph=graph,
        g=tuple([1] * n + [m - n]),
        decomposition=Decomposition(graph, tuple(classes)),
    )

    for i, cls in enumerate(triad.decomposition.classes):
        for j in range(n):
            if cls.degree(j) != r:
                raise InternalInconsistencyError(
                    f"class {i} degree at vertex {j} is {cls.degree(j)}, expected {r}"
                )
        if cls.degree(x0) != r * (m - n):
            raise InternalInconsistencyError(
                f"class {i} degree at amalgam is {cls.degree(x0)}, expected {r * (m - n)}"
            )
    for j in range(n):
        if graph.multiplicity(x0, j) != mu * (m - n):
            raise InternalInconsistencyError(
                f"amalgam multiplicity to {j} is {graph.multiplicity(x0, j)}, "
                f"expected {mu * (m - n)}"
            )
    expected_loops = mu * (m - n) * (m - n - 1) // 2
    if graph.loop_count(x0) != expected_loops:
        raise InternalInconsistencyError(
            f"amalgam carries {graph.loop_count(x0)} loops, expected {expected_loops}"
        )
    return triad


def is_good_triad(t: Triad) -> bool:
    """Every class 2-edge-connected spanning with class degree >= 2g(v)
    everywhere."""
    for cls in t.decomposition.classes:
        if not cls.is_two_edge_connected_spanning():
            return False
        for v in range(cls.vertex_count):
            if cls.degree(v) < 2 * t.g[v]:
                return False
    return True


class _SplitSearch:
    """Split the amalgam one vertex at a time.

    State per color i: stub[i][j] = remaining amalgam-to-j edges for original
    vertices j, back[i][y] = remaining amalgam-to-y edges for already split
    vertices y, loops[i] = remaining amalgam loops.  A split of the next
    vertex y chooses a k x (columns) matrix with row sums r and column sums
    mu (mu * remaining for the amalgam column, where a unit converts one
    loop into a y-to-amalgam edge).  A split is accepted when every reduced
    class stays 2-edge-connected spanning.
    """

    def __init__(self, t: Triad, params: EnclosureParams, seed: int, budget: int):
        self.params = params
        self.n = params.n
        self.m = params.m
        self.k = params.k
        self.r = params.r
        self.mu = params.mu
        self.x0 = self.n
        self.seed = seed
        self.budget = budget
        self.stats = DetachStats()
        self.rng = random.Random(seed) if seed else None

        self.stub = [
            [cls.multiplicity(self.x0, j) for j in range(self.n)]
            for cls in t.decomposition.classes
        ]
        self.loops = [cls.loop_count(self.x0) for cls in t.decomposition.classes]
        self.back: list[dict[int, int]] = [dict() for _ in range(self.k)]
        # result classes live on m vertices and start as the restriction
        self.result = [
            self._restricted(cls) for cls in t.decomposition.classes
        ]

    def _restricted(self, cls: Multigraph) -> Multigraph:
        out = Multigraph(self.m)
        for (u, v), mult in cls.edges.items():
            if u < self.n and v < self.n:
                out.add_edge(u, v, mult)
        return out

    def _columns(self, y: int) -> list[int]:
        # original vertices then split vertices; amalgam handled separately
        return list(range(self.n)) + list(range(self.n, y))

    def _cap(self, i: int, col: int) -> int:
        if col < self.n:
            return self.stub[i][col]
        return self.back[i].get(col, 0)

    def _consume(self, i: int, col: int, amount: int) -> None:
        if col < self.n:
            self.stub[i][col] -= amount
        else:
            self.back[i][col] = self.back[i].get(col, 0) - amount

    def run(self) -> list[Multigraph]:
        if not self._split(0):
            if self.stats.nodes >= self.budget:
                raise BudgetExhaustedError(
                    f"detachment search exceeded {self.budget} nodes"
                )
            raise InternalInconsistencyError(
                "detachment search exhausted without a solution; the good "
                "triad guarantee says one exists"
            )
        return self.result

    def _row_candidates(
        self, i: int, y: int, cols: list[int], remaining_after: int
    ) -> list[tuple[tuple[int, ...], int]]:
        """All ways class i can serve the split vertex: a per-column vector
        plus a count of loops converted into amalgam edges, summing to r,
        filtered so that the class's reduced graph stays 2-edge-connected
        spanning.  Goodness is a per-class property, so filtering here means
        the combination search below never needs a global goodness check."""
        caps = [min(self._cap(i, col), self.mu) for col in cols]
        b_cap = min(self.loops[i], self.mu * remaining_after, self.r)

        # reduced class graph before the split vertex picks its edges:
        # split vertices keep their edges, the amalgam keeps the rest
        amalgam = y + 1
        base = Multigraph(amalgam + 1)
        for (u, v), mult in self.result[i].edges.items():
            base.add_edge(u, v, mult)
        for j in range(self.n):
            if self.stub[i][j]:
                base.add_edge(amalgam, j, self.stub[i][j])
        for w, count in self.back[i].items():
            if count:
                base.add_edge(amalgam, w, count)
        if self.loops[i]:
            base.add_edge(amalgam, amalgam, self.loops[i])

        out: list[tuple[tuple[int, ...], int]] = []
        vec = [0] * len(cols)

        def rec(c: int, left: int):
            if c == len(cols):
                b = left
                if b > b_cap:
                    return
                if remaining_after == 0 and b != 0:
                    return
                candidate = base.copy()
                for cc, x in enumerate(vec):
                    if x:
                        candidate.remove_edge(amalgam, cols[cc], x)
                        candidate.add_edge(y, cols[cc], x)
                if b:
                    candidate.remove_edge(amalgam, amalgam, b)
                    candidate.add_edge(y, amalgam, b)
                if remaining_after == 0:
                    candidate = candidate.induced(amalgam)
                if candidate.is_two_edge_connected_spanning():
                    out.append((tuple(vec), b))
                return
            top = min(caps[c], left)
            for x in range(top, -1, -1):
                vec[c] = x
                rec(c + 1, left - x)
            vec[c] = 0

        rec(0, self.r)
        if self.rng:
            self.rng.shuffle(out)
        return out

    def _split(self, depth: int) -> bool:
        total_new = self.m - self.n
        if depth == total_new:
            return True
        if self.stats.nodes >= self.budget:
            return False
        y = self.n + depth
        remaining_after = total_new - depth - 1
        cols = self._columns(y)

        candidates = []
        for i in range(self.k):
            cand = self._row_candidates(i, y, cols, remaining_after)
            if not cand:
                return False
            candidates.append(cand)

        row_order = sorted(range(self.k), key=lambda i: len(candidates[i]))
        col_left = [self.mu] * len(cols)
        state = {"amalgam_left": self.mu * remaining_after}
        chosen: dict[int, tuple[tuple[int, ...], int]] = {}

        def feasible(pos: int) -> bool:
            # rows not yet placed must be able to finish every column and
            # the amalgam demand
            rest = row_order[pos:]
            for c in range(len(cols)):
                if col_left[c] > sum(
                    min(self._cap(i, cols[c]), self.mu, self.r) for i in rest
                ):
                    return False
            if state["amalgam_left"] > sum(min(self.loops[i], self.r) for i in rest):
                return False
            return True

        def place(pos: int) -> bool:
            if self.stats.nodes >= self.budget:
                return False
            if pos == self.k:
                if any(col_left) or state["amalgam_left"]:
                    return False
                return self._accept_split(y, cols, chosen, depth, remaining_after)
            i = row_order[pos]
            for vec, b in candidates[i]:
                self.stats.nodes += 1
                if self.stats.nodes >= self.budget:
                    return False
                if b > state["amalgam_left"] or any(
                    x > left for x, left in zip(vec, col_left)
                ):
                    continue
                for c, x in enumerate(vec):
                    col_left[c] -= x
                state["amalgam_left"] -= b
                chosen[i] = (vec, b)
                if feasible(pos + 1) and place(pos + 1):
                    return True
                del chosen[i]
                state["amalgam_left"] += b
                for c, x in enumerate(vec):
                    col_left[c] += x
            return False

        return place(0)

    def _accept_split(
        self,
        y: int,
        cols: list[int],
        chosen: dict[int, tuple[tuple[int, ...], int]],
        depth: int,
        remaining_after: int,
    ) -> bool:
        if sum(b for _, b in chosen.values()) != self.mu * remaining_after:
            raise InternalInconsistencyError(
                "degree conservation broke during the split"
            )
        for i, (vec, b) in chosen.items():
            for c, x in enumerate(vec):
                if x:
                    self._consume(i, cols[c], x)
                    self.result[i].add_edge(y, cols[c], x)
            if b:
                self.loops[i] -= b
                self.back[i][y] = self.back[i].get(y, 0) + b

        if self._split(depth + 1):
            return True

        for i, (vec, b) in chosen.items():
            for c, x in enumerate(vec):
                if x:
                    self._consume(i, cols[c], -x)
                    self.result[i].remove_edge(y, cols[c], x)
            if b:
                self.loops[i] += b
                del self.back[i][y]
        return False


def fair_detach(
    t: Triad,
    params: EnclosureParams,
    seed: int = 0,
    budget: int = 10_000_000,
) -> DetachmentWitness:
    """Fully expand the amalgam into m - n concrete vertices so that every
    class is an r-regular 2-edge-connected spanning subgraph and every pair
    has multiplicity exactly mu.  A solution always exists for a good triad;
    running out of budget is reported as such, never as nonexistence."""
    if not is_good_triad(t):
        raise PreconditionError("triad is not good; cannot detach")
    start = time.monotonic()
    search = _SplitSearch(t, params, seed, budget)
    classes = search.run()
    search.stats.wall_time = time.monotonic() - start

    base = complete_multigraph(params.m, params.mu)
    result = Decomposition(base, tuple(cls.copy() for cls in classes))
    result.validate_partition()
    vertex_map = tuple(list(range(params.n)) + [params.n] * (params.m - params.n))
    return DetachmentWitness(result=result, vertex_map=vertex_map, stats=search.stats)


def verify_detachment(
    w: DetachmentWitness, t: Triad, params: EnclosureParams
) -> tuple[bool, list[str]]:
    """Independent re-check of the detachment contract: color-preserving
    edge correspondence, fiber sizes, exact class degrees, exact pair
    multiplicities, and 2-edge-connectivity of every class."""
    problems: list[str] = []
    n, m, mu, r = params.n, params.m, params.mu, params.r
    phi = w.vertex_map
    if len(phi) != m:
        problems.append(f"vertex map covers {len(phi)} vertices, expected {m}")
        return (False, problems)

    fibers: dict[int, int] = {}
    for image in phi:
        fibers[image] = fibers.get(image, 0) + 1
    for v in range(t.graph.vertex_count):
        if fibers.get(v, 0) != t.g[v]:
            problems.append(
                f"fiber of triad vertex {v} has size {fibers.get(v, 0)}, "
                f"expected {t.g[v]}"
            )

    if w.result.k != t.decomposition.k:
        problems.append("class counts differ between witness and triad")
        return (False, problems)

    # color correspondence: per class, pushing result edges through phi must
    # reproduce the triad class exactly
    for i, (res_cls, tri_cls) in enumerate(
        zip(w.result.classes, t.decomposition.classes)
    ):
        pushed: dict[tuple[int, int], int] = {}
        for (u, v), mult in res_cls.edges.items():
            a, b = phi[u], phi[v]
            key = (a, b) if a <= b else (b, a)
            pushed[key] = pushed.get(key, 0) + mult
        if pushed != tri_cls.edges:
            problems.append(f"class {i} does not map onto the triad class")

    for i, cls in enumerate(w.result.classes):
        for v in range(m):
            if cls.degree(v) != r:
                problems.append(
                    f"class {i} degree at {v} is {cls.degree(v)}, expected {r}"
                )
                break
        if not cls.is_two_edge_connected_spanning():
            problems.append(f"class {i} is not 2-edge-connected spanning")

    for u in range(m):
        for v in range(u + 1, m):
            total = sum(cls.multiplicity(u, v) for cls in w.result.classes)
            if total != mu:
                problems.append(
                    f"pair {(u, v)} has multiplicity {total}, expected {mu}"
                )
    return (not problems, problems)
