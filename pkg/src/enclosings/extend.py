"""Constructive steps that grow a decomposition of lambda*K_n into a full
decomposition of mu*K_n whose classes are admissible and large enough to
detach.

Three routes, chosen by the target regime:
  B-path  (m >= 2n-1): pad every small class up to p edges, then color the
          remaining spare edges one at a time; a greedy color always exists.
  C-path  (m = 2n-2, so p = r): top every class up to r edges through a
          bipartite matching between class slots and spare edges (special
          slots keep a class from ending as r parallel edges), then color
          one edge at a time, occasionally recoloring a non-protected edge
          out of the way.
  T15-path (r >= 3): decompose the whole spare pool into k near-equal
          almost-regular classes; with k large enough the pool classes are
          matchings, and gluing a matching onto an (r-1)-admissible class
          keeps it r-admissible.

Every single mutation re-checks admissibility of the touched classes and
raises InternalInconsistencyError on failure: the constructions guarantee
success, so a failed check is a bug, not an instance property.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .conditions import EnclosureParams, check_b, check_c, check_theorem15
from .decomp import (
    Decomposition,
    PartialDecomposition,
    class_admissibility_violation,
    is_admissible,
)
from .errors import InternalInconsistencyError, PreconditionError
from .mgraph import Multigraph, complete_multigraph


@dataclass(frozen=True)
class TraceAction:
    kind: str  # pad | color | recolor | matching
    edge: tuple[int, int]
    cls: int
    from_cls: int | None = None

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "edge": list(self.edge), "class": self.cls}
        if self.from_cls is not None:
            out["from_class"] = self.from_cls
        return out


@dataclass
class ExtensionTrace:
    actions: list[TraceAction] = field(default_factory=list)

    def record(self, kind: str, edge: tuple[int, int], cls: int, from_cls: int | None = None):
        self.actions.append(TraceAction(kind, edge, cls, from_cls))

    def as_list(self) -> list[dict]:
        return [a.as_dict() for a in self.actions]


def replay_trace(g: Decomposition, params: EnclosureParams, trace: ExtensionTrace) -> PartialDecomposition:
    """Re-apply a trace to the input decomposition; the result must equal the
    pipeline output it was recorded from."""
    classes = [cls.copy() for cls in g.classes]
    pool = spare_pool(params)
    for action in trace.actions:
        u, v = action.edge
        if action.kind in ("pad", "color", "matching"):
            pool.remove_edge(u, v)
            classes[action.cls].add_edge(u, v)
        elif action.kind == "recolor":
            classes[action.from_cls].remove_edge(u, v)
            classes[action.cls].add_edge(u, v)
        else:
            raise ValueError(f"unknown trace action {action.kind}")
    return PartialDecomposition(
        complete_multigraph(params.n, params.mu), tuple(classes), pool
    )


def spare_pool(params: EnclosureParams) -> Multigraph:
    """The edges of mu*K_n not in lambda*K_n, as a multigraph."""
    if params.mu == params.lam:
        return Multigraph(params.n)
    return complete_multigraph(params.n, params.mu - params.lam)


def _pair_order(n: int, seed: int) -> list[tuple[int, int]]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if seed:
        random.Random(seed).shuffle(pairs)
    return pairs


def _take_spare(pool: Multigraph, order: list[tuple[int, int]]) -> tuple[int, int]:
    for pair in order:
        if pool.multiplicity(*pair) > 0:
            return pair
    raise InternalInconsistencyError("spare pool exhausted")


def _assert_class_admissible(cls: Multigraph, r: int, index: int, context: str) -> None:
    violation = class_admissibility_violation(cls, r, index)
    if violation is not None:
        raise InternalInconsistencyError(
            f"{context} broke admissibility: bullet {violation.bullet}, {violation.detail}"
        )


def _start_state(g: Decomposition, params: EnclosureParams) -> tuple[list[Multigraph], Multigraph]:
    return [cls.copy() for cls in g.classes], spare_pool(params)


def pad_to_p(
    g: Decomposition, params: EnclosureParams, seed: int = 0
) -> tuple[PartialDecomposition, ExtensionTrace]:
    """Add spare edges so that every class has at least p edges.

    Any choice of spare edges works here: a class that ends with at most
    p <= r/2 edges cannot violate any admissibility bullet.
    """
    if params.m < 2 * params.n - 1:
        raise PreconditionError(f"pad_to_p needs m >= 2n-1, got m={params.m}")
    report = check_b(g, params)
    for name in ("B2", "B3"):
        if not report.passed(name):
            raise PreconditionError(f"pad_to_p precondition {name} fails")
    classes, pool = _start_state(g, params)
    trace = ExtensionTrace()
    base = complete_multigraph(params.n, params.mu)
    if params.p <= 0:
        return PartialDecomposition(base, tuple(classes), pool), trace
    threshold = math.ceil(params.p)
    order = _pair_order(params.n, seed)
    for i, cls in enumerate(classes):
        while cls.edge_count() < threshold:
            pair = _take_spare(pool, order)
            pool.remove_edge(*pair)
            cls.add_edge(*pair)
            trace.record("pad", pair, i)
            _assert_class_admissible(cls, params.r, i, f"pad of class {i}")
    return PartialDecomposition(base, tuple(classes), pool), trace


def _is_single_pair_class(cls: Multigraph) -> bool:
    return len(cls.edges) == 1


def _max_bipartite_matching(adj: list[list[int]], w_count: int) -> list[int | None]:
    """Augmenting-path matching; adj[v] lists the W indices v may take.
    Returns match_of_v (W index or None per V node)."""
    match_of_w: list[int | None] = [None] * w_count
    match_of_v: list[int | None] = [None] * len(adj)

    def try_augment(v: int, visited: set[int]) -> bool:
        for w in adj[v]:
            if w in visited:
                continue
            visited.add(w)
            if match_of_w[w] is None or try_augment(match_of_w[w], visited):
                match_of_w[w] = v
                match_of_v[v] = w
                return True
        return False

    for v in range(len(adj)):
        try_augment(v, set())
    return match_of_v


def extend_to_r_via_matching(
    g: Decomposition, params: EnclosureParams, seed: int = 0
) -> tuple[PartialDecomposition, ExtensionTrace]:
    """Top every class up to r edges in the m = 2n-2 regime.

    Step 1 gives every empty class one spare edge.  Step 2 builds a bipartite
    graph: one side has r-i slots per class that still has i < r edges, the
    other side has the remaining spare edges.  A class whose i edges all lie
    on one pair {u,v} gets one "special" slot that refuses uv-edges, so no
    class can finish as r parallel edges.  A slot-saturating matching exists
    whenever the pair and deficiency bounds hold; its assignments finish the
    job.
    """
    if params.m != 2 * params.n - 2:
        raise PreconditionError(f"matching extension needs m = 2n-2, got m={params.m}")
    report = check_c(g, params)
    for name in ("C2", "C3", "C4"):
        if not report.passed(name):
            raise PreconditionError(f"matching extension precondition {name} fails")
    r = params.r
    classes, pool = _start_state(g, params)
    trace = ExtensionTrace()
    base = complete_multigraph(params.n, params.mu)
    order = _pair_order(params.n, seed)

    for i, cls in enumerate(classes):
        if cls.edge_count() == 0:
            pair = _take_spare(pool, order)
            pool.remove_edge(*pair)
            cls.add_edge(*pair)
            trace.record("pad", pair, i)
            _assert_class_admissible(cls, r, i, f"seeding empty class {i}")

    # V side: slots per deficient class; W side: remaining spare edges
    slots: list[tuple[int, tuple[int, int] | None]] = []
    for i, cls in enumerate(classes):
        size = cls.edge_count()
        if not 1 <= size <= r - 1:
            continue
        if _is_single_pair_class(cls):
            bad_pair = next(iter(cls.edges))
            slots.extend((i, None) for _ in range(r - size - 1))
            slots.append((i, bad_pair))
        else:
            slots.extend((i, None) for _ in range(r - size))

    spare_edges: list[tuple[int, int]] = []
    for pair in order:
        spare_edges.extend([pair] * pool.multiplicity(*pair))

    adj = [
        [w for w, pair in enumerate(spare_edges) if pair != forbidden]
        for _, forbidden in slots
    ]
    match_of_v = _max_bipartite_matching(adj, len(spare_edges))
    if any(w is None for w in match_of_v):
        raise InternalInconsistencyError(
            "slot matching failed to saturate although the pair and "
            "deficiency bounds hold"
        )
    for (i, _), w in zip(slots, match_of_v):
        pair = spare_edges[w]
        pool.remove_edge(*pair)
        classes[i].add_edge(*pair)
        trace.record("matching", pair, i)
        _assert_class_admissible(classes[i], r, i, f"slot assignment to class {i}")

    for i, cls in enumerate(classes):
        if cls.edge_count() < r:
            raise InternalInconsistencyError(f"class {i} still below {r} edges")
        if cls.edge_count() == r and _is_single_pair_class(cls):
            raise InternalInconsistencyError(
                f"class {i} ended as {r} parallel edges despite its special slot"
            )
    return PartialDecomposition(base, tuple(classes), pool), trace


def _pick_uncolored(gp: PartialDecomposition) -> tuple[int, int]:
    if gp.uncolored.edge_count() == 0:
        raise PreconditionError("no uncolored edge left")
    return min(gp.uncolored.edges)


def _try_direct_color(
    gp: PartialDecomposition, edge: tuple[int, int], r: int
) -> int | None:
    for i, cls in enumerate(gp.classes):
        candidate = cls.copy()
        candidate.add_edge(*edge)
        if class_admissibility_violation(candidate, r, i) is None:
            return i
    return None


def _apply_color(
    gp: PartialDecomposition, edge: tuple[int, int], cls_index: int
) -> PartialDecomposition:
    classes = list(gp.classes)
    updated = classes[cls_index].copy()
    updated.add_edge(*edge)
    classes[cls_index] = updated
    uncolored = gp.uncolored.copy()
    uncolored.remove_edge(*edge)
    return PartialDecomposition(gp.base, tuple(classes), uncolored)


def color_one_edge(
    gp: PartialDecomposition, params: EnclosureParams
) -> tuple[PartialDecomposition, tuple[tuple[int, int], int]]:
    """Color the smallest uncolored edge with the first color that keeps the
    decomposition admissible.  In the m >= 2n-1 regime some color always
    works: otherwise both endpoints would carry too much degree across the
    k classes."""
    if params.m < 2 * params.n - 1:
        raise PreconditionError(f"greedy coloring needs m >= 2n-1, got m={params.m}")
    if params.r * params.k != params.mu * (params.m - 1):
        raise PreconditionError("greedy coloring needs r*k = mu*(m-1)")
    edge = _pick_uncolored(gp)
    chosen = _try_direct_color(gp, edge, params.r)
    if chosen is None:
        raise InternalInconsistencyError(
            f"no admissible color for edge {edge}; this cannot happen when "
            "r*k = mu*(m-1) and m >= 2n-1"
        )
    return _apply_color(gp, edge, chosen), (edge, chosen)


def color_one_edge_with_recolor(
    gp: PartialDecomposition,
    g_protected: Decomposition,
    params: EnclosureParams,
) -> tuple[PartialDecomposition, list[TraceAction]]:
    """Color one more edge in the m = 2n-2 regime.

    Direct coloring can block: then exactly one class j holds r-1 parallel
    copies of the blocked pair {x,y} and every other class is saturated
    around x and y.  Class j has another component with a low-degree vertex
    u; an xu-edge can take color j directly (if uncolored), or a spare
    xu-edge is recolored from its class c to j and the blocked edge takes c.
    Protected edges are never recolored: recoloring only moves a copy where
    the class multiplicity exceeds the protected multiplicity.
    """
    n, r, mu, lam = params.n, params.r, params.mu, params.lam
    if params.m != 2 * n - 2:
        raise PreconditionError(f"recoloring step needs m = 2n-2, got m={params.m}")
    if params.r * params.k != mu * (params.m - 1):
        raise PreconditionError("recoloring step needs r*k = mu*(m-1)")
    if not (2 * (r - 1) >= mu > lam):
        raise PreconditionError("recoloring step needs 2(r-1) >= mu > lambda")

    edge = _pick_uncolored(gp)
    x, y = edge
    chosen = _try_direct_color(gp, edge, r)
    if chosen is not None:
        return _apply_color(gp, edge, chosen), [TraceAction("color", edge, chosen)]

    # blocked: locate the class holding r-1 parallel xy-edges and nothing
    # else at x or y
    j = None
    for i, cls in enumerate(gp.classes):
        if (
            cls.multiplicity(x, y) == r - 1
            and cls.degree(x) == r - 1
            and cls.degree(y) == r - 1
        ):
            j = i
            break
    if j is None:
        raise InternalInconsistencyError(
            f"edge {edge} blocked but no class holds exactly {r - 1} parallel copies"
        )
    cls_j = gp.classes[j]
    components = cls_j.components()
    u = None
    for comp in components:
        if x in comp:
            continue
        degrees = {v: cls_j.degree(v) for v in comp}
        below = [v for v in comp if degrees[v] < r - 1]
        exact = [v for v in comp if degrees[v] == r - 1]
        if below:
            u = below[0]
        elif len(exact) >= 2:
            u = exact[0]
        if u is not None:
            break
    if u is None:
        raise InternalInconsistencyError(
            f"no donor component with a low-degree vertex in class {j}"
        )

    f = (min(x, u), max(x, u))
    actions: list[TraceAction] = []
    if gp.uncolored.multiplicity(*f) > 0:
        result = _apply_color(gp, f, j)
        actions.append(TraceAction("color", f, j))
        _assert_class_admissible(result.classes[j], r, j, f"coloring {f} with {j}")
        return result, actions

    c = None
    for i, cls in enumerate(gp.classes):
        if i == j:
            continue
        if cls.multiplicity(*f) > g_protected.classes[i].multiplicity(*f):
            c = i
            break
    if c is None:
        raise InternalInconsistencyError(
            f"no class holds a spare {f} copy to recolor"
        )

    classes = list(gp.classes)
    donor = classes[c].copy()
    donor.remove_edge(*f)
    receiver = classes[j].copy()
    receiver.add_edge(*f)
    classes[c], classes[j] = donor, receiver
    actions.append(TraceAction("recolor", f, j, from_cls=c))
    _assert_class_admissible(receiver, r, j, f"recoloring {f} into {j}")
    _assert_class_admissible(donor, r, c, f"recoloring {f} out of {c}")

    final_c = classes[c].copy()
    final_c.add_edge(*edge)
    classes[c] = final_c
    uncolored = gp.uncolored.copy()
    uncolored.remove_edge(*edge)
    actions.append(TraceAction("color", edge, c))
    _assert_class_admissible(final_c, r, c, f"coloring {edge} with freed class {c}")
    return PartialDecomposition(gp.base, tuple(classes), uncolored), actions


def almost_regular_degree_bounds(size: int, n: int) -> tuple[int, int]:
    """Vertex degrees of an almost-regular class with `size` edges on n
    vertices are forced into {lo, hi}."""
    lo = (2 * size) // n
    hi = -((-2 * size) // n)
    return lo, hi


def bryant_decompose(
    n: int, lam: int, sizes: list[int], seed: int = 0
) -> Decomposition:
    """Pack edge-disjoint almost-regular classes of the given sizes into
    lambda*K_n, by backtracking over per-pair copy assignments.

    Feasible exactly when sum(sizes) <= lam * C(n, 2); leftover copies stay
    unused.  Degree targets per class are forced (lo/hi from the size), and
    the search prunes on them.
    """
    total = lam * n * (n - 1) // 2
    if sum(sizes) > total:
        raise PreconditionError(
            f"sizes sum to {sum(sizes)} > {total} available edges"
        )
    t = len(sizes)
    bounds = [almost_regular_degree_bounds(s, n) for s in sizes]
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng = random.Random(seed) if seed else None
    if rng:
        rng.shuffle(pairs)

    counts = [0] * t
    degrees = [[0] * n for _ in range(t)]
    assignment: list[list[int]] = []  # per pair: copies per class

    incident_after: list[list[int]] = []  # remaining copies at v strictly after pair idx
    inc = [0] * n
    for pair in reversed(pairs):
        incident_after.insert(0, list(inc))
        inc[pair[0]] += lam
        inc[pair[1]] += lam

    def distributions(idx: int) -> list[list[int]]:
        u, v = pairs[idx]
        room = []
        for i in range(t):
            cap = min(
                lam,
                sizes[i] - counts[i],
                bounds[i][1] - degrees[i][u],
                bounds[i][1] - degrees[i][v],
            )
            room.append(max(0, cap))
        out: list[list[int]] = []

        def rec(i: int, left: int, current: list[int]):
            if i == t:
                out.append(list(current))
                return
            for x in range(min(room[i], left), -1, -1):
                current.append(x)
                rec(i + 1, left - x, current)
                current.pop()

        rec(0, lam, [])

        def score(dist: list[int]) -> tuple:
            gain = 0
            for i, x in enumerate(dist):
                if x == 0:
                    continue
                need_u = max(0, bounds[i][0] - degrees[i][u])
                need_v = max(0, bounds[i][0] - degrees[i][v])
                gain += x * (need_u + need_v) + x
            return (-gain,)

        out.sort(key=score)
        if rng:
            rng.shuffle(out)
            out.sort(key=score)  # stable shuffle only breaks score ties
        return out

    def feasible(idx: int) -> bool:
        remaining_total = lam * (len(pairs) - idx)
        if sum(sizes[i] - counts[i] for i in range(t)) > remaining_total:
            return False
        for i in range(t):
            # every remaining edge of class i fixes at most two unmet
            # lower-bound degree units
            need_i = sum(max(0, bounds[i][0] - degrees[i][v]) for v in range(n))
            if need_i > 2 * (sizes[i] - counts[i]):
                return False
        for v in range(n):
            rem_v = incident_after[idx - 1][v] if idx > 0 else lam * (n - 1)
            need = sum(max(0, bounds[i][0] - degrees[i][v]) for i in range(t))
            if need > rem_v:
                return False
        return True

    def solve(idx: int) -> bool:
        if idx == len(pairs):
            return all(counts[i] == sizes[i] for i in range(t)) and all(
                bounds[i][0] <= degrees[i][v] <= bounds[i][1]
                for i in range(t)
                for v in range(n)
            )
        u, v = pairs[idx]
        for dist in distributions(idx):
            for i, xcount in enumerate(dist):
                counts[i] += xcount
                degrees[i][u] += xcount
                degrees[i][v] += xcount
            if feasible(idx + 1):
                assignment.append(dist)
                if solve(idx + 1):
                    return True
                assignment.pop()
            for i, xcount in enumerate(dist):
                counts[i] -= xcount
                degrees[i][u] -= xcount
                degrees[i][v] -= xcount
        return False

    if not solve(0):
        raise InternalInconsistencyError(
            "no almost-regular packing found although the size bound holds"
        )

    classes = [Multigraph(n) for _ in range(t)]
    for pair, dist in zip(pairs, assignment):
        for i, xcount in enumerate(dist):
            if xcount:
                classes[i].add_edge(*pair, xcount)
    return Decomposition(complete_multigraph(n, lam), tuple(classes))


def proper_padding(
    g: Decomposition, params: EnclosureParams, seed: int = 0
) -> tuple[Decomposition, ExtensionTrace]:
    """Glue a near-equal almost-regular decomposition of the spare pool onto
    g, one pool class per color.  The class-count bound forces every pool
    class to be a matching, so the union of an (r-1)-admissible class and a
    matching stays r-admissible, and every class picks up at least p edges."""
    report = check_theorem15(g, params)
    if not report.ok:
        raise PreconditionError(
            f"proper padding precondition {report.first_failing()} fails"
        )
    n, k, mu, lam, r = params.n, params.k, params.mu, params.lam, params.r
    spare_total = (mu - lam) * n * (n - 1) // 2
    q, rem = divmod(spare_total, k)
    sizes = [q + 1 if i < rem else q for i in range(k)]
    if seed:
        random.Random(seed ^ 0x5EED).shuffle(sizes)
    pool_decomp = bryant_decompose(n, mu - lam, sizes, seed)
    trace = ExtensionTrace()
    classes = []
    for i, (own, extra) in enumerate(zip(g.classes, pool_decomp.classes)):
        if any(extra.degree(v) > 1 for v in range(n)):
            raise InternalInconsistencyError(
                f"pool class {i} is not a matching although k >= (mu-lambda)n"
            )
        merged = own.copy()
        for (a, b), mult in sorted(extra.edges.items()):
            merged.add_edge(a, b, mult)
            for _ in range(mult):
                trace.record("pad", (a, b), i)
        classes.append(merged)
        _assert_class_admissible(merged, r, i, f"gluing pool class {i}")
        if merged.edge_count() < params.p:
            raise InternalInconsistencyError(
                f"class {i} has {merged.edge_count()} < p = {params.p} edges"
            )
    result = Decomposition(complete_multigraph(n, mu), tuple(classes))
    result.validate_partition()
    return result, trace


def enclose_in_mu_kn(
    g: Decomposition, params: EnclosureParams, mode: str, seed: int = 0
) -> tuple[Decomposition, ExtensionTrace]:
    """Run the mode's full first stage: a decomposition of mu*K_n enclosing
    g in which every class is admissible and has at least p edges.  Mode is
    "B", "C", or "T15" (a "-path" suffix is accepted)."""
    from .conditions import check_a_prime

    mode = mode.removesuffix("-path")
    if mode == "B":
        report = check_b(g, params)
        if not report.ok:
            raise PreconditionError(f"condition {report.first_failing()} fails")
        gp, trace = pad_to_p(g, params, seed)
        while not gp.is_complete():
            gp, (edge, cls) = color_one_edge(gp, params)
            trace.record("color", edge, cls)
    elif mode == "C":
        report = check_c(g, params)
        if not report.ok:
            raise PreconditionError(f"condition {report.first_failing()} fails")
        gp, trace = extend_to_r_via_matching(g, params, seed)
        while not gp.is_complete():
            gp, actions = color_one_edge_with_recolor(gp, g, params)
            trace.actions.extend(actions)
    elif mode == "T15":
        result, trace = proper_padding(g, params, seed)
        a_report = check_a_prime(result, params)
        if not a_report.ok:
            raise InternalInconsistencyError(
                f"padding produced a decomposition failing {a_report.first_failing()}"
            )
        return result, trace
    else:
        raise ValueError(f"unknown mode {mode!r}; expected B, C, or T15")

    result = gp.to_decomposition()
    result.validate_partition()
    a_report = check_a_prime(result, params)
    if not a_report.ok:
        raise InternalInconsistencyError(
            f"pipeline produced a decomposition failing {a_report.first_failing()}"
        )
    return result, trace
