"""Decompositions, class statistics, the admissibility predicate, and the
enclosing verifier.

A decomposition splits the edges of a base multigraph into k ordered color
classes, each a spanning subgraph (isolated vertices implicit through the
shared vertex count).  A partial decomposition additionally carries the
multigraph of still-uncolored edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .mgraph import Multigraph, complete_multigraph


@dataclass(frozen=True)
class Decomposition:
    base: Multigraph
    classes: tuple[Multigraph, ...]

    def __post_init__(self):
        for i, cls in enumerate(self.classes):
            if cls.vertex_count != self.base.vertex_count:
                raise ValueError(f"class {i} vertex count differs from base")

    @property
    def k(self) -> int:
        return len(self.classes)

    def validate_partition(self) -> None:
        """Check the classes' per-pair multiplicities sum to the base."""
        total: dict[tuple[int, int], int] = {}
        for cls in self.classes:
            for pair, mult in cls.edges.items():
                total[pair] = total.get(pair, 0) + mult
        if total != self.base.edges:
            raise ValueError("classes do not partition the base edges")

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(cls.edge_count() for cls in self.classes)


@dataclass(frozen=True)
class PartialDecomposition:
    """Classes partition a subgraph of base; `uncolored` holds the rest."""

    base: Multigraph
    classes: tuple[Multigraph, ...]
    uncolored: Multigraph

    @property
    def k(self) -> int:
        return len(self.classes)

    def validate_partition(self) -> None:
        total: dict[tuple[int, int], int] = {}
        for cls in self.classes:
            for pair, mult in cls.edges.items():
                total[pair] = total.get(pair, 0) + mult
        for pair, mult in self.uncolored.edges.items():
            total[pair] = total.get(pair, 0) + mult
        if total != self.base.edges:
            raise ValueError("colored plus uncolored edges do not equal the base")

    def is_complete(self) -> bool:
        return self.uncolored.edge_count() == 0

    def to_decomposition(self) -> Decomposition:
        if not self.is_complete():
            raise ValueError("decomposition is still strict: uncolored edges remain")
        return Decomposition(self.base, self.classes)

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(cls.edge_count() for cls in self.classes)


AnyDecomposition = Union[Decomposition, PartialDecomposition]


@dataclass(frozen=True)
class Enclosing:
    """A decomposition of the outer complete multigraph; outer vertex j with
    j < inner_vertex_count is identified with inner vertex j."""

    outer: Decomposition
    inner_vertex_count: int


def s_count(d: AnyDecomposition, i: int) -> int:
    """Number of classes with exactly i edges."""
    return sum(1 for cls in d.classes if cls.edge_count() == i)


def s_uv_count(d: AnyDecomposition, i: int, u: int, v: int) -> int:
    """Number of classes with exactly i edges, all of them between u and v."""
    if u == v:
        raise ValueError("u and v must be distinct")
    if i < 1:
        raise ValueError("i must be >= 1")
    return sum(
        1
        for cls in d.classes
        if cls.edge_count() == i and cls.multiplicity(u, v) == i
    )


@dataclass(frozen=True)
class AdmissibilityViolation:
    class_index: int
    bullet: int  # 1 degree cap, 2 low-degree vertices, 3 cutedge sides
    detail: str
    component: tuple[int, ...] | None = None
    edge: tuple[int, int] | None = None


def class_admissibility_violation(
    cls: Multigraph, r: int, class_index: int = 0
) -> AdmissibilityViolation | None:
    """First violation of the three admissibility bullets in one class, or
    None.  Deterministic: bullets in order, vertices ascending, components by
    smallest vertex, bridges sorted."""
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")

    degrees = [cls.degree(v) for v in range(cls.vertex_count)]
    for v, deg in enumerate(degrees):
        if deg > r:
            return AdmissibilityViolation(
                class_index, 1, f"vertex {v} has degree {deg} > r={r}"
            )

    components = cls.components()
    for comp in components:
        low = sum(1 for v in comp if degrees[v] <= r - 1)
        has_very_low = any(degrees[v] <= r - 2 for v in comp)
        if not has_very_low and low < 2:
            return AdmissibilityViolation(
                class_index,
                2,
                f"component {comp} has no vertex of degree <= {r - 2} "
                f"and fewer than two of degree <= {r - 1}",
                component=comp,
            )

    comp_of = {}
    for comp in components:
        for v in comp:
            comp_of[v] = comp
    for u, v in sorted(cls.bridges()):
        reduced = cls.copy()
        reduced.remove_edge(u, v)
        sides = {w: side for side in reduced.components() for w in side}
        for endpoint in (u, v):
            side = sides[endpoint]
            # degrees are measured in the class, bridge included
            side_ok = any(degrees[w] <= r - 1 for w in side)
            if not side_ok:
                return AdmissibilityViolation(
                    class_index,
                    3,
                    f"cutedge {(u, v)} of component {comp_of[u]} leaves a side "
                    f"with no vertex of degree <= {r - 1}",
                    component=comp_of[u],
                    edge=(u, v),
                )
    return None


def admissibility_violation(
    d: AnyDecomposition, r: int
) -> AdmissibilityViolation | None:
    for i, cls in enumerate(d.classes):
        violation = class_admissibility_violation(cls, r, i)
        if violation is not None:
            return violation
    return None


def is_admissible(d: AnyDecomposition, r: int) -> bool:
    return admissibility_violation(d, r) is None


def restrict(outer: Enclosing | Decomposition, n: int) -> Decomposition:
    """Classwise induced sub-decomposition on vertices 0..n-1."""
    d = outer.outer if isinstance(outer, Enclosing) else outer
    if n > d.base.vertex_count:
        raise ValueError(f"cannot restrict to {n} vertices: base has fewer")
    return Decomposition(
        d.base.induced(n), tuple(cls.induced(n) for cls in d.classes)
    )


def verify_enclosing(inner: Decomposition, outer: Enclosing, params) -> tuple[bool, list[str]]:
    """Check that `outer` is a 2-edge-connected r-factorization of the
    complete multigraph mu*K_m that classwise contains `inner`.

    Returns (ok, diagnostics); raises on class-count mismatch.
    """
    if inner.k != outer.outer.k:
        raise ValueError(
            f"class counts differ: inner has {inner.k}, outer has {outer.outer.k}"
        )
    problems: list[str] = []
    m, mu, r = params.m, params.mu, params.r
    target = complete_multigraph(m, mu)
    if outer.outer.base != target:
        problems.append(f"outer base is not the complete multigraph on {m} vertices with multiplicity {mu}")
    try:
        outer.outer.validate_partition()
    except ValueError as exc:
        problems.append(str(exc))
    for i, cls in enumerate(outer.outer.classes):
        degs = [cls.degree(v) for v in range(m)]
        if any(deg != r for deg in degs):
            problems.append(f"class {i} is not {r}-regular on all {m} vertices")
        if not cls.is_two_edge_connected_spanning():
            problems.append(f"class {i} is not 2-edge-connected spanning")
    n = outer.inner_vertex_count
    for i, (inner_cls, outer_cls) in enumerate(zip(inner.classes, outer.outer.classes)):
        for (u, v), mult in inner_cls.edges.items():
            if u < n and v < n and outer_cls.multiplicity(u, v) < mult:
                problems.append(
                    f"class {i} is not a superclass: pair {(u, v)} has "
                    f"{outer_cls.multiplicity(u, v)} < {mult}"
                )
    return (not problems, problems)
