"""Independent brute-force facet oracle for small instances.

Enumerates every d-subset of vertices, solves for its hyperplane exactly and
keeps the supporting ones.  Completely independent of the package's
gift-wrap/pivot path: only the scaled-dual solver is shared, and that is
property-tested on its own.
"""

from __future__ import annotations

from itertools import combinations

from fanosplit.errors import SingularMatrixError
from fanosplit.linalg import dot, gcd_of, scaled_dual
from fanosplit.polytope import Polytope


def brute_facets(p: Polytope) -> dict[tuple[int, ...], tuple[tuple[int, ...], int]]:
    """Map facet vertex-index tuple -> (primitive outer normal, level)."""
    facets = {}
    for subset in combinations(range(p.n), p.dim):
        rows = [p.vertices[i] for i in subset]
        try:
            dual, delta = scaled_dual(rows)
        except SingularMatrixError:
            continue
        if delta < 0:
            dual = tuple(tuple(-a for a in r) for r in dual)
            delta = -delta
        rowsum = tuple(sum(col) for col in zip(*dual))
        g = gcd_of(list(rowsum) + [delta])
        normal = tuple(a // g for a in rowsum)
        level = delta // g
        values = [dot(normal, v) for v in p.vertices]
        if max(values) > level:
            continue
        on = tuple(i for i, val in enumerate(values) if val == level)
        if on != subset:
            continue  # hyperplane carries more points; not this subset's facet
        facets[subset] = (normal, level)
    return facets


def brute_neighbor(facets: dict, facet: tuple[int, ...], dropped: int) -> tuple[tuple[int, ...], int]:
    """Neighbor across the ridge facet \\ {dropped}, found by ridge matching.

    Returns (neighbor indices, opposite vertex index).
    """
    ridge = set(facet) - {dropped}
    matches = [
        g for g in facets
        if g != facet and ridge.issubset(g)
    ]
    assert len(matches) == 1, f"ridge {sorted(ridge)} lies in {len(matches)} other facets"
    neighbor = matches[0]
    extra = set(neighbor) - ridge
    assert len(extra) == 1
    return neighbor, extra.pop()
