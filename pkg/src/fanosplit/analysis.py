"""Per-facet analysis: vertex levels, opposite vertices, and the goodness
partition of a special facet's vertex set.

Terminology used throughout (all relative to a facet frame F of a smooth
Fano polytope):

* level of a vertex x: the value of F's outer normal on x (1 on F itself,
  at most 1 everywhere);
* eta vector: the count of vertices per level;
* opp(F, v): the unique vertex of the neighboring facet across the ridge
  F minus v that is not on F;
* v is good when opp(F, v) lies at level 0;
* phi(v): opp(F, v) + v when that point is again a frame vertex, else 0.

The frame's vertex set splits into A (good, phi != 0), B (good, phi = 0) and
C (not good).  A' keeps the members of A whose negation is also a vertex;
the paired core keeps those whose phi-partner is in A' as well and whose
gamma coordinates (of the vertex sum) vanish on the pair.  Pairs in the core
are exactly the candidates for hexagon splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import InvariantViolationError, NotSpecialFacetError
from .linalg import vec_add
from .polytope import FacetFrame, Polytope, opposite_indices, vertex_deficit, vertex_sum


@dataclass(frozen=True)
class EtaVector:
    """Vertex counts per level for one facet, with the instance scalars."""

    counts: Mapping[int, int]
    d: int
    n: int
    k: int

    def __post_init__(self):
        if any(j > 1 for j in self.counts):
            raise InvariantViolationError("vertex above facet level 1")
        if self.counts.get(1, 0) != self.d:
            raise InvariantViolationError(
                f"level 1 holds {self.counts.get(1, 0)} vertices, expected d = {self.d}"
            )
        if sum(self.counts.values()) != self.n:
            raise InvariantViolationError("level counts do not sum to the vertex count")

    def eta(self, j: int) -> int:
        return self.counts.get(j, 0)

    def at_most(self, j: int) -> int:
        """Number of vertices on level j or below."""
        return sum(c for level, c in self.counts.items() if level <= j)

    def as_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.counts.items(), reverse=True))


def levels_and_eta(p: Polytope, f: FacetFrame) -> tuple[dict[int, int], EtaVector]:
    """Level of every vertex w.r.t. f's outer normal, and the aggregated counts."""
    values = p.products(f.outer_normal)
    levels = {i: v for i, v in enumerate(values)}
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    eta = EtaVector(counts, p.dim, p.n, vertex_deficit(p))
    return levels, eta


def opposites(p: Polytope, f: FacetFrame) -> dict[int, int]:
    """opp(F, v) for every frame vertex v, as a map of vertex indices."""
    opp = opposite_indices(p, f)
    return {v: o for v, o in zip(f.vertex_indices, opp)}


def phi_map(p: Polytope, f: FacetFrame, opp: Mapping[int, int]) -> dict[int, int | None]:
    """phi(v) = opp(F, v) + v when that point is a frame vertex, else None."""
    frame_set = set(f.vertex_indices)
    phi: dict[int, int | None] = {}
    for v in f.vertex_indices:
        w = p.index_of(vec_add(p.vertices[opp[v]], p.vertices[v]))
        phi[v] = w if (w is not None and w in frame_set) else None
    return phi


@dataclass(frozen=True)
class GoodnessPartition:
    """The A/B/C partition of a special facet, with phi, opposites and the
    gamma coordinates of the vertex sum (all vertex references are indices)."""

    frame: FacetFrame
    a: frozenset[int]
    b: frozenset[int]
    c: frozenset[int]
    phi: Mapping[int, int | None]
    opp: Mapping[int, int]
    a_prime: frozenset[int]
    a_bar: frozenset[int]
    gamma: tuple[int, ...]

    @cached_property
    def bar_pairs(self) -> tuple[tuple[int, int], ...]:
        """The paired core as disjoint (v, phi(v)) pairs, each sorted."""
        seen = set()
        pairs = []
        for v in sorted(self.a_bar):
            if v in seen:
                continue
            w = self.phi[v]
            pairs.append((v, w))
            seen.update((v, w))
        return tuple(pairs)

    def gamma_of(self, vertex_index: int) -> int:
        return self.gamma[self.frame.vertex_indices.index(vertex_index)]


def goodness_partition(p: Polytope, f: FacetFrame) -> GoodnessPartition:
    """Partition f's vertex set by goodness and build the paired core.

    Requires f to be special (NotSpecialFacetError otherwise): the gamma
    coordinates of the vertex sum must be nonnegative, which the paired-core
    definition depends on.
    """
    s = vertex_sum(p)
    gamma = f.coordinates(s)
    if any(g < 0 for g in gamma):
        raise NotSpecialFacetError(
            f"facet {f.vertex_indices} has negative gamma coordinates {gamma}"
        )
    levels, _ = levels_and_eta(p, f)
    opp = opposites(p, f)
    phi = phi_map(p, f, opp)
    a, b, c = set(), set(), set()
    for v in f.vertex_indices:
        if levels[opp[v]] == 0:
            (a if phi[v] is not None else b).add(v)
        else:
            c.add(v)
    vertex_set = p._vertex_index
    a_prime = {
        v for v in a
        if tuple(-x for x in p.vertices[v]) in vertex_set
    }
    gamma_of = {v: g for v, g in zip(f.vertex_indices, gamma)}
    a_bar = {
        v for v in a_prime
        if phi[v] in a_prime and gamma_of[v] == 0 and gamma_of[phi[v]] == 0
    }
    for v in a_bar:
        w = phi[v]
        if w not in a_bar or phi[w] != v:
            raise InvariantViolationError(
                f"paired core is not closed under phi at vertex {v}"
            )
    return GoodnessPartition(
        frame=f,
        a=frozenset(a),
        b=frozenset(b),
        c=frozenset(c),
        phi=phi,
        opp=opp,
        a_prime=frozenset(a_prime),
        a_bar=frozenset(a_bar),
        gamma=gamma,
    )
