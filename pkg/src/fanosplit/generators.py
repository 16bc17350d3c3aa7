"""Constructors for the named example polytopes and seeded random disguises."""

from __future__ import annotations

import random
from typing import Sequence

from .polytope import Polytope, make_polytope

# entry bound for random unimodular maps; keeps transformed coordinates
# comfortably below 2**31 for readable test output
_MAP_ENTRY_BOUND = 2**12


def hexagon() -> Polytope:
    """The smooth Fano hexagon: maximal vertex count in dimension 2."""
    return make_polytope([(1, 0), (0, 1), (-1, 1), (1, -1), (-1, 0), (0, -1)])


def pentagon() -> Polytope:
    """The hexagon with vertex (1, -1) removed; still smooth Fano."""
    return make_polytope([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)])


def simplex(d: int) -> Polytope:
    """conv(e_1, ..., e_d, -e_1-...-e_d): the d-simplex with interior origin."""
    if d < 1:
        raise ValueError(f"simplex dimension must be positive, got {d}")
    rows = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    rows.append(tuple(-1 for _ in range(d)))
    return make_polytope(rows)


def example4d() -> Polytope:
    """A 4-dimensional smooth Fano polytope with 10 vertices (deficit k = 2)
    in which two pairs of facet vertices share an opposite vertex."""
    return make_polytope([
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (-1, -1, 1, 1),
        (1, 1, -1, -1),
        (-1, 0, 0, 0),
        (0, -1, 0, 0),
        (0, 0, -1, 0),
        (0, 0, 0, -1),
    ])


_HEX_BLOCK = ((1, 0), (0, 1), (-1, 1), (1, -1), (-1, 0), (0, -1))


def bundle_b(dprime: int) -> Polytope:
    """The 3d'-dimensional bundle polytope with 7d'+1 vertices.

    Vertices: the simplex {v, e_1, ..., e_d'} where v is -1 on the first d'
    coordinates and 1 on coordinates d'+2, d'+4, ..., 3d' (1-based), plus a
    hexagon in each coordinate pair (d'+2i-1, d'+2i).  It is smooth Fano and
    does not split into lower-dimensional smooth Fano polytopes.
    """
    if dprime < 1:
        raise ValueError(f"bundleB parameter must be positive, got {dprime}")
    d = 3 * dprime
    rows: list[tuple[int, ...]] = []
    v = [0] * d
    for i in range(dprime):
        v[i] = -1
        v[dprime + 2 * i + 1] = 1
    rows.append(tuple(v))
    for i in range(dprime):
        rows.append(tuple(1 if j == i else 0 for j in range(d)))
    for block in range(dprime):
        base = dprime + 2 * block
        for a, b in _HEX_BLOCK:
            w = [0] * d
            w[base] = a
            w[base + 1] = b
            rows.append(tuple(w))
    return make_polytope(rows)


def random_image(p: Polytope, seed: int) -> Polytope:
    """Image of p under a seeded random unimodular map, vertex order shuffled.

    The map is a product of elementary row operations (shears by -2..2,
    coordinate swaps, sign flips); shears that would push map entries past a
    fixed bound are skipped so coordinates stay small.
    """
    rng = random.Random(seed)
    d = p.dim
    m = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    steps = 3 * d + 4
    for _ in range(steps):
        op = rng.randrange(3)
        if op == 0 and d >= 2:
            i, j = rng.sample(range(d), 2)
            c = rng.choice((-2, -1, 1, 2))
            new_row = [a + c * b for a, b in zip(m[i], m[j])]
            if max(abs(x) for x in new_row) <= _MAP_ENTRY_BOUND:
                m[i] = new_row
        elif op == 1 and d >= 2:
            i, j = rng.sample(range(d), 2)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(d)
            m[i] = [-a for a in m[i]]
    vertices = [tuple(sum(r * x for r, x in zip(row, v)) for row in m) for v in p.vertices]
    rng.shuffle(vertices)
    return Polytope(d, tuple(vertices))


_NO_PARAMS = {"hexagon": hexagon, "pentagon": pentagon, "example4d": example4d}


def generate(name: str, params: Sequence = (), seed: int | None = None) -> Polytope:
    """Build a named polytope.

    Names: hexagon, pentagon, simplex (param: dimension), example4d,
    bundleB (param: d'), random_image (params: base name with its params;
    requires a seed).
    """
    if name in _NO_PARAMS:
        if params:
            raise ValueError(f"{name} takes no parameters")
        return _NO_PARAMS[name]()
    if name == "simplex":
        if len(params) != 1:
            raise ValueError("simplex takes exactly one parameter: the dimension")
        return simplex(int(params[0]))
    if name == "bundleB":
        if len(params) != 1:
            raise ValueError("bundleB takes exactly one parameter: d'")
        return bundle_b(int(params[0]))
    if name == "random_image":
        if not params:
            raise ValueError("random_image needs a base generator name")
        if seed is None:
            raise ValueError("random_image needs a seed")
        base = generate(str(params[0]), tuple(params[1:]))
        return random_image(base, seed)
    raise ValueError(f"unknown generator {name!r}")
