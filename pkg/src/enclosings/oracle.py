"""Brute-force ground truth, deliberately independent of the constructive
pipeline: an exhaustive enclosure search, a naive transcription of the
admissibility definition, an exhaustive decomposition enumerator, and a
seeded generator of admissible instances.

Only the multigraph substrate is shared with the main modules; the
admissibility logic here is written from scratch so that it can serve as an
oracle for decomp.is_admissible rather than restating it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .conditions import EnclosureParams
from .decomp import AnyDecomposition, Decomposition, Enclosing, admissibility_violation
from .errors import BudgetExhaustedError, CapExceededError
from .mgraph import Multigraph, complete_multigraph

DEFAULT_SLOT_CAP = 40


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class EnclosureSearchResult:
    status: str  # "found" | "none" | "budget"
    witness: Enclosing | None
    stats: SearchStats


def brute_force_admissible(d: AnyDecomposition, r: int) -> bool:
    """Admissibility checked straight from its definition, naively: re-derive
    components from scratch, and for the cutedge condition remove every
    single-multiplicity edge and recompute components."""
    if r < 2:
        raise ValueError("r must be >= 2")

    def components_of(cls: Multigraph) -> list[set[int]]:
        unseen = set(range(cls.vertex_count))
        comps = []
        while unseen:
            start = unseen.pop()
            comp = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for (a, b), mult in cls.edges.items():
                    if mult <= 0 or a == b:
                        continue
                    other = None
                    if a == x:
                        other = b
                    elif b == x:
                        other = a
                    if other is not None and other not in comp:
                        comp.add(other)
                        frontier.append(other)
            unseen -= comp
            comps.append(comp)
        return comps

    for cls in d.classes:
        degs = {v: cls.degree(v) for v in range(cls.vertex_count)}
        if any(deg > r for deg in degs.values()):
            return False
        comps = components_of(cls)
        for comp in comps:
            if any(degs[v] <= r - 2 for v in comp):
                continue
            if sum(1 for v in comp if degs[v] <= r - 1) >= 2:
                continue
            return False
        for (a, b), mult in sorted(cls.edges.items()):
            if a == b or mult != 1:
                continue
            reduced = cls.copy()
            reduced.remove_edge(a, b)
            new_comps = components_of(reduced)
            if len(new_comps) == len(comps):
                continue  # not a cutedge
            for comp in new_comps:
                if a in comp or b in comp:
                    if not any(degs[v] <= r - 1 for v in comp):
                        return False
    return True


def _pair_distributions(
    total: int, lower: list[int], upper: list[int]
) -> Iterator[list[int]]:
    """All vectors c with lower <= c <= upper componentwise and sum(c) = total."""
    k = len(lower)
    vec = [0] * k

    def rec(i: int, left: int):
        if i == k:
            if left == 0:
                yield list(vec)
            return
        remaining_min = sum(lower[i + 1 :])
        remaining_max = sum(upper[i + 1 :])
        low = max(lower[i], left - remaining_max)
        high = min(upper[i], left - remaining_min)
        for x in range(low, high + 1):
            vec[i] = x
            yield from rec(i + 1, left - x)
        vec[i] = 0

    yield from rec(0, total)


def brute_force_enclose(
    g: Decomposition,
    params: EnclosureParams,
    budget: int = 50_000_000,
    slot_cap: int = DEFAULT_SLOT_CAP,
) -> EnclosureSearchResult:
    """Exhaustively assign colors to every edge of mu*K_m, consistent with g
    on the inner pairs, and report the first valid 2-edge-connected
    r-factorization found.

    "none" is only reported after the full space is exhausted; running out
    of budget is a distinct outcome.  Pruning: per-class degree caps, degree
    completion infeasibility at each vertex, frozen (saturated) components
    that cannot span, and 2-edge-connectivity of saturated classes.
    """
    n, m, mu, lam, r, k = params.n, params.m, params.mu, params.lam, params.r, params.k
    slots = mu * m * (m - 1) // 2
    if slots > slot_cap:
        raise CapExceededError(
            f"{slots} colored edge slots exceed the exhaustive cap {slot_cap}"
        )
    if g.k != k:
        raise ValueError(f"decomposition has {g.k} classes, params.k = {k}")

    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    lower = []
    for u, v in pairs:
        if u < n and v < n:
            lower.append([cls.multiplicity(u, v) for cls in g.classes])
        else:
            lower.append([0] * k)

    stats = SearchStats()
    start = time.monotonic()
    classes = [Multigraph(m) for _ in range(k)]
    degrees = [[0] * m for _ in range(k)]
    remaining_pairs_at = [m - 1] * m  # unassigned pairs incident to v

    found: list[Decomposition] = []
    out_of_budget = [False]

    def frozen_component_dead(i: int, v: int) -> bool:
        """v just saturated in class i: its component can no longer grow.  If
        the whole component is saturated it is frozen; a frozen component
        must already span all m vertices and be bridgeless."""
        comp = {v}
        frontier = [v]
        cls = classes[i]
        while frontier:
            x = frontier.pop()
            for w in cls.neighbors(x):
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        if any(degrees[i][w] < r for w in comp):
            return False
        if len(comp) < m:
            return True
        return bool(cls.bridges())

    def completion_infeasible(u: int) -> bool:
        for i in range(k):
            if r - degrees[i][u] > mu * remaining_pairs_at[u]:
                return True
        return False

    def assign(idx: int) -> bool:
        if out_of_budget[0]:
            return False
        if idx == len(pairs):
            candidate = [cls.copy() for cls in classes]
            for cls in candidate:
                if not cls.is_two_edge_connected_spanning():
                    return False
            stats.solutions += 1
            found.append(
                Decomposition(complete_multigraph(m, mu), tuple(candidate))
            )
            return True
        u, v = pairs[idx]
        upper = [
            min(mu, r - degrees[i][u], r - degrees[i][v]) for i in range(k)
        ]
        remaining_pairs_at[u] -= 1
        remaining_pairs_at[v] -= 1
        for dist in _pair_distributions(mu, lower[idx], upper):
            stats.nodes += 1
            if stats.nodes > budget:
                out_of_budget[0] = True
                break
            for i, c in enumerate(dist):
                if c:
                    classes[i].add_edge(u, v, c)
                    degrees[i][u] += c
                    degrees[i][v] += c
            ok = not completion_infeasible(u) and not completion_infeasible(v)
            if ok:
                for i, c in enumerate(dist):
                    if c and (
                        (degrees[i][u] == r and frozen_component_dead(i, u))
                        or (degrees[i][v] == r and frozen_component_dead(i, v))
                    ):
                        ok = False
                        break
            if ok and assign(idx + 1):
                for i, c in enumerate(dist):
                    if c:
                        classes[i].remove_edge(u, v, c)
                        degrees[i][u] -= c
                        degrees[i][v] -= c
                remaining_pairs_at[u] += 1
                remaining_pairs_at[v] += 1
                return True
            for i, c in enumerate(dist):
                if c:
                    classes[i].remove_edge(u, v, c)
                    degrees[i][u] -= c
                    degrees[i][v] -= c
        remaining_pairs_at[u] += 1
        remaining_pairs_at[v] += 1
        return False

    hit = assign(0)
    stats.wall_time = time.monotonic() - start
    if out_of_budget[0]:
        return EnclosureSearchResult("budget", None, stats)
    if not hit:
        return EnclosureSearchResult("none", None, stats)
    return EnclosureSearchResult("found", Enclosing(found[0], n), stats)


def enumerate_decompositions(
    n: int,
    lam: int,
    k: int,
    filter: Callable[[Decomposition], bool] | None = None,
    dedup: bool = False,
    edge_cap: int = 12,
) -> Iterator[Decomposition]:
    """Every way to split the lam*K_n edges into k ordered classes, as
    per-pair count vectors (copies of the same pair are interchangeable, so
    for lam = 1 this is exactly the k^E raw assignments).  With dedup=True,
    decompositions equal up to a color permutation are emitted once, keyed
    by sorting classes by (size, edge list)."""
    total_edges = lam * n * (n - 1) // 2
    if total_edges > edge_cap:
        raise CapExceededError(
            f"{total_edges} edges exceed the enumeration cap {edge_cap}"
        )
    base = complete_multigraph(n, lam)
    pairs = sorted(base.edges)
    seen: set[tuple] = set()

    def rec(idx: int, classes: list[Multigraph]) -> Iterator[Decomposition]:
        if idx == len(pairs):
            d = Decomposition(base, tuple(cls.copy() for cls in classes))
            if dedup:
                key = tuple(
                    sorted(
                        (cls.edge_count(), tuple(sorted(cls.edges.items())))
                        for cls in d.classes
                    )
                )
                if key in seen:
                    return
                seen.add(key)
            if filter is None or filter(d):
                yield d
            return
        u, v = pairs[idx]
        for dist in _pair_distributions(lam, [0] * k, [lam] * k):
            for i, c in enumerate(dist):
                if c:
                    classes[i].add_edge(u, v, c)
            yield from rec(idx + 1, classes)
            for i, c in enumerate(dist):
                if c:
                    classes[i].remove_edge(u, v, c)

    yield from rec(0, [Multigraph(n) for _ in range(k)])


def random_admissible(
    n: int,
    lam: int,
    k: int,
    r: int,
    seed: int = 0,
    max_repairs: int | None = None,
    max_restarts: int = 50,
) -> Decomposition:
    """A seeded random decomposition of lam*K_n into k classes that passes
    the admissibility predicate, produced by random assignment plus a repair
    loop that moves an edge out of the first offending class."""
    rng = random.Random(seed)
    base = complete_multigraph(n, lam)
    copies = [pair for pair, mult in sorted(base.edges.items()) for _ in range(mult)]
    if max_repairs is None:
        max_repairs = 200 * max(1, len(copies))

    for _ in range(max_restarts):
        assignment = [rng.randrange(k) for _ in copies]
        for _ in range(max_repairs):
            classes = [Multigraph(n) for _ in range(k)]
            for pair, cls in zip(copies, assignment):
                classes[cls].add_edge(*pair)
            d = Decomposition(base, tuple(classes))
            violation = admissibility_violation(d, r)
            if violation is None:
                return d
            offending = [
                idx
                for idx, cls in enumerate(assignment)
                if cls == violation.class_index
            ]
            move = rng.choice(offending)
            assignment[move] = rng.randrange(k)
    raise BudgetExhaustedError(
        f"could not repair a random decomposition into an {r}-admissible one"
    )
