"""Lattice polytopes with exact facet enumeration and ridge pivoting.

The central objects are an immutable vertex list (`Polytope`) and per-facet
frames (`FacetFrame`) holding the dual basis of the facet's vertex basis and
its primitive outer normal.  All geometry is exact:

* an initial facet is found by gift-wrapping -- rotate a supporting
  hyperplane one kernel direction at a time, choosing the entering vertex by
  integer cross-multiplied ratio comparisons;
* the remaining facets come from breadth-first ridge pivoting: dropping a
  frame vertex and selecting, among vertices with negative coordinate along
  the dropped dual direction, the unique minimizer of an exact ratio;
* ties in the ratio rule certify a non-simplicial facet and are a hard
  error, never silently broken.

Validation has two modes.  FULL enumerates every facet and checks each one.
LOCAL checks only the facets it materialises (the gift-wrapped start and
anything reached by pivoting); it exists because facet counts of hexagon
power sums grow exponentially while the splitting pipeline touches only one
pivot path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import (
    DuplicateVertexError,
    InvariantViolationError,
    NoNegativeVertexError,
    NotAVertexError,
    NotFullDimError,
    NotSimplicialError,
    NotSmoothFanoError,
    NotUnimodularError,
    OriginNotInteriorError,
)
from .linalg import IntMatrix, IntKernel, dot, gcd_of

LatticeVector = tuple[int, ...]

# FULL validation is the default up to this dimension; beyond it the CLI and
# the auto mode switch to LOCAL.
FULL_MODE_MAX_DIM = 12

# Safety cap for the special-facet ascent; the walk must terminate long
# before this since its objective strictly increases over a finite facet set.
_MAX_PIVOT_STEPS = 1_000_000


class Mode(enum.Enum):
    FULL = "full"
    LOCAL = "local"


def auto_mode(dim: int) -> Mode:
    return Mode.FULL if dim <= FULL_MODE_MAX_DIM else Mode.LOCAL


@dataclass(frozen=True)
class Polytope:
    """Immutable polytope given by its vertex list (exact integer coordinates)."""

    dim: int
    vertices: tuple[LatticeVector, ...]

    def __post_init__(self):
        for v in self.vertices:
            if len(v) != self.dim:
                raise NotFullDimError(
                    f"vertex {v} has length {len(v)}, expected {self.dim}"
                )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Polytope(d={self.dim}, n={self.n})"

    @cached_property
    def _vertex_index(self) -> dict[LatticeVector, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def index_of(self, v: Sequence[int]) -> int | None:
        return self._vertex_index.get(tuple(v))

    @cached_property
    def _abs_max(self) -> int:
        return max((abs(x) for v in self.vertices for x in v), default=0)

    @cached_property
    def _np64(self) -> np.ndarray | None:
        if self._abs_max < 2**31 and self.n:
            return np.asarray(self.vertices, dtype=np.int64)
        return None

    @cached_property
    def _cert_cache(self) -> dict:
        return {}

    def products(self, u: Sequence[int]) -> list[int]:
        """<x, u> for every vertex x."""
        return linalg.products_with(self._np64, self.vertices, u, self._abs_max)

    def coords_rows(self, dual_rows: Sequence[Sequence[int]]) -> list[LatticeVector]:
        """Coordinate rows of all vertices w.r.t. a dual basis."""
        return linalg.coords_rows(self._np64, self.vertices, dual_rows, self._abs_max)


def make_polytope(rows: Iterable[Sequence[int]]) -> Polytope:
    """Build a polytope from vertex rows.

    Rejects duplicates and point sets that are not full-dimensional.  Rows
    that are not actually vertices of the hull are only detected later,
    during facet enumeration (NotAVertexError).
    """
    vertices = tuple(tuple(int(x) for x in row) for row in rows)
    if not vertices:
        raise NotFullDimError("empty vertex list")
    d = len(vertices[0])
    if d < 1:
        raise NotFullDimError("ambient dimension must be at least 1")
    for v in vertices:
        if len(v) != d:
            raise NotFullDimError(f"vertex {v} has length {len(v)}, expected {d}")
    seen = set()
    for v in vertices:
        if v in seen:
            raise DuplicateVertexError(f"vertex {v} appears more than once")
        seen.add(v)
    # affine full-dimension: the augmented vectors (x, 1) must have rank d+1
    if linalg.int_rank([v + (1,) for v in vertices], d + 1) != d + 1:
        raise NotFullDimError("vertex set is not full-dimensional")
    return Polytope(d, vertices)


def vertex_sum(p: Polytope) -> LatticeVector:
    """Coordinatewise sum of all vertices."""
    acc = [0] * p.dim
    for v in p.vertices:
        for i, x in enumerate(v):
            acc[i] += x
    return tuple(acc)


def vertex_deficit(p: Polytope) -> int:
    """k = 3d - n, the deficit against the maximal vertex count 3d."""
    return 3 * p.dim - p.n


@dataclass(frozen=True)
class FacetFrame:
    """A facet's vertex indices with the dual basis of its vertex basis.

    Row i of `dual_basis` is the functional u_i that is 1 on vertex
    `vertex_indices[i]` and 0 on the other frame vertices.  Their sum is the
    primitive outer normal: 1 on the facet, <= 1 on the whole polytope.
    """

    vertex_indices: tuple[int, ...]
    dual_basis: IntMatrix
    outer_normal: LatticeVector

    @property
    def dim(self) -> int:
        return len(self.vertex_indices)

    def position_of(self, vertex_index: int) -> int:
        return self.vertex_indices.index(vertex_index)

    def coordinates(self, x: Sequence[int]) -> LatticeVector:
        return self.dual_basis.matvec(x)

    def level(self, x: Sequence[int]) -> int:
        return dot(self.outer_normal, x)


@dataclass(frozen=True)
class SmoothFanoCertificate:
    """Outcome of smooth-Fano validation; failures carry a concrete witness."""

    valid: bool
    mode: Mode
    failure_kind: str | None = None
    witness: str | None = None
    facet_count: int | None = None

    def describe(self) -> str:
        if self.valid:
            extra = f" facets={self.facet_count}" if self.facet_count is not None else ""
            return f"valid mode={self.mode.value}{extra}"
        return f"invalid kind={self.failure_kind} witness={self.witness}"


@dataclass(frozen=True)
class _RawFacet:
    """Internal facet record; `dual`/`det` is the exact rational dual basis."""

    indices: tuple[int, ...]
    dual: tuple[LatticeVector, ...]
    det: int  # > 0; facet vertex basis is unimodular iff det == 1
    normal: LatticeVector  # primitive outer normal A
    level: int  # c > 0 with <A, x> = c on the facet, <= c on P


def _primitive_normal(rowsum: Sequence[int], delta: int) -> tuple[LatticeVector, int]:
    g = gcd_of(list(rowsum) + [delta])
    if g == 0:
        raise InvariantViolationError("zero outer normal")
    return tuple(a // g for a in rowsum), delta // g


def _raw_from_rows(p: Polytope, indices: Sequence[int]) -> _RawFacet:
    rows = [p.vertices[i] for i in indices]
    dual, delta = linalg.scaled_dual(rows)
    if delta < 0:
        dual = tuple(linalg.vec_neg(r) for r in dual)
        delta = -delta
    rowsum = tuple(sum(col) for col in zip(*dual))
    normal, level = _primitive_normal(rowsum, delta)
    return _RawFacet(tuple(indices), dual, delta, normal, level)


def _check_facet(p: Polytope, raw: _RawFacet) -> None:
    """Verify the facet hyperplane supports P and carries exactly d vertices."""
    values = p.products(raw.normal)
    on = [i for i, v in enumerate(values) if v == raw.level]
    if max(values) > raw.level:
        raise InvariantViolationError(
            f"hyperplane of facet {raw.indices} does not support the polytope"
        )
    if raw.level <= 0:
        raise OriginNotInteriorError(
            f"facet hyperplane {raw.normal} has non-positive level {raw.level}"
        )
    if len(on) != p.dim:
        raise NotSimplicialError(
            f"hyperplane through facet {raw.indices} contains {len(on)} vertices: {tuple(on)}"
        )


def _initial_raw(p: Polytope) -> _RawFacet:
    """Gift-wrap one facet: rotate a supporting hyperplane onto new vertices
    one kernel direction at a time until it supports a full-rank vertex set."""
    d = p.dim
    first = [v[0] for v in p.vertices]
    c = max(first)
    if c <= 0:
        raise OriginNotInteriorError("all vertices have non-positive first coordinate")
    normal = tuple(1 if j == 0 else 0 for j in range(d))
    values = first
    on = [i for i, v in enumerate(values) if v == c]
    kernel = IntKernel(d)
    for i in on:
        kernel.reduce(p.vertices[i])
    while kernel.remaining > 0:
        if len(on) > d - kernel.remaining:
            raise NotSimplicialError(
                f"supporting hyperplane contains dependent vertex set {tuple(on)}"
            )
        w = kernel.rows()[0]
        wv = p.products(w)
        below = [i for i, v in enumerate(values) if v < c]
        cands = [i for i in below if wv[i] > 0]
        if not cands:
            w = linalg.vec_neg(w)
            wv = [-x for x in wv]
            cands = [i for i in below if wv[i] > 0]
        if not cands:
            raise InvariantViolationError("no rotation direction during gift-wrap")
        best, bn, bd = None, None, None
        for i in cands:
            num = c - values[i]
            den = wv[i]
            if best is None or num * bd < bn * den:
                best, bn, bd = i, num, den
        scale = wv[best]
        shift = c - values[best]
        normal = tuple(scale * a + shift * b for a, b in zip(normal, w))
        c = scale * c
        g = gcd_of(list(normal) + [c])
        if g > 1:
            normal = tuple(a // g for a in normal)
            c = c // g
        values = p.products(normal)
        new_on = [i for i, v in enumerate(values) if v == c]
        previous = set(on)
        for i in new_on:
            if i not in previous:
                kernel.reduce(p.vertices[i])
        on = new_on
    if len(on) != d:
        raise NotSimplicialError(
            f"initial supporting hyperplane contains {len(on)} vertices: {tuple(on)}"
        )
    raw = _raw_from_rows(p, sorted(on))
    _check_facet(p, raw)
    return raw


def _ridge_targets(p: Polytope, raw: _RawFacet, coords: list[LatticeVector],
                   levels: list[int], pos: int) -> list[int]:
    """All minimizers of the pivot ratio across ridge `pos`; >1 means a tie."""
    delta = raw.det
    best: list[int] = []
    bn = bd = None
    for i in range(p.n):
        den = -coords[i][pos]
        if den <= 0:
            continue
        num = delta - levels[i]
        if num == 0:
            raise NotSimplicialError(
                f"vertex {i} lies on the hyperplane of facet {raw.indices}"
            )
        if not best:
            best, bn, bd = [i], num, den
            continue
        lhs = num * bd
        rhs = bn * den
        if lhs < rhs:
            best, bn, bd = [i], num, den
        elif lhs == rhs:
            best.append(i)
    return best


def _neighbor_raw(p: Polytope, raw: _RawFacet, coords: list[LatticeVector],
                  pos: int, target: int) -> _RawFacet:
    """Dual-basis update when frame position `pos` is replaced by `target`."""
    d = p.dim
    delta = raw.det
    ct = coords[target]
    beta = ct[pos]
    base = raw.dual[pos]
    new_rows = []
    for w in range(d):
        if w == pos:
            new_rows.append(base)
        else:
            row = tuple((a * beta - ct[w] * b) // delta for a, b in zip(raw.dual[w], base))
            new_rows.append(row)
    new_det = beta
    if new_det < 0:
        new_det = -new_det
        new_rows = [linalg.vec_neg(r) for r in new_rows]
    paired = sorted(
        ((target if w == pos else raw.indices[w]), new_rows[w]) for w in range(d)
    )
    indices = tuple(i for i, _ in paired)
    dual = tuple(r for _, r in paired)
    rowsum = tuple(sum(col) for col in zip(*dual))
    normal, level = _primitive_normal(rowsum, new_det)
    return _RawFacet(indices, dual, new_det, normal, level)


def _enumerate_raw(p: Polytope) -> list[_RawFacet]:
    """Breadth-first closure of ridge pivots starting from the wrapped facet."""
    from collections import deque

    start = _initial_raw(p)
    visited = {start.indices}
    queue = deque([start])
    out = []
    covered = set()
    while queue:
        raw = queue.popleft()
        out.append(raw)
        covered.update(raw.indices)
        coords = p.coords_rows(raw.dual)
        levels = [sum(row) for row in coords]
        for pos in range(p.dim):
            targets = _ridge_targets(p, raw, coords, levels, pos)
            if not targets:
                raise NoNegativeVertexError(
                    f"no vertex below ridge {pos} of facet {raw.indices}"
                )
            if len(targets) > 1:
                raise NotSimplicialError(
                    f"pivot tie at ridge {pos} of facet {raw.indices}: "
                    f"vertices {tuple(targets)} are coplanar with the ridge"
                )
            key = tuple(sorted(set(raw.indices) - {raw.indices[pos]} | {targets[0]}))
            if key in visited:
                continue
            neighbor = _neighbor_raw(p, raw, coords, pos, targets[0])
            _check_facet(p, neighbor)
            visited.add(neighbor.indices)
            queue.append(neighbor)
    if len(covered) != p.n:
        missing = sorted(set(range(p.n)) - covered)
        raise NotAVertexError(
            f"points at indices {tuple(missing)} are not vertices of the hull"
        )
    return out


def _frame_from_raw(p: Polytope, raw: _RawFacet) -> FacetFrame:
    if raw.det != 1:
        raise NotUnimodularError(
            raw.det, f"facet {raw.indices} has vertex basis with |det| = {raw.det}"
        )
    rowsum = tuple(sum(col) for col in zip(*raw.dual))
    return FacetFrame(raw.indices, IntMatrix(raw.dual), rowsum)


@dataclass
class _FrameState:
    """Mutable pivot walker over unimodular frames; int64-backed when safe."""

    p: Polytope
    indices: list[int]
    rows: list[LatticeVector]

    @staticmethod
    def from_raw(p: Polytope, raw: _RawFacet) -> "_FrameState":
        if raw.det != 1:
            raise NotUnimodularError(raw.det)
        return _FrameState(p, list(raw.indices), [tuple(r) for r in raw.dual])

    @staticmethod
    def from_frame(p: Polytope, frame: FacetFrame) -> "_FrameState":
        return _FrameState(p, list(frame.vertex_indices), list(frame.dual_basis.entries))

    def outer_normal(self) -> LatticeVector:
        return tuple(sum(col) for col in zip(*self.rows))

    def gamma(self, s: Sequence[int]) -> list[int]:
        return [dot(r, s) for r in self.rows]

    def pivot(self, pos: int) -> int:
        """Replace frame position `pos` by its opposite vertex; return its index."""
        p = self.p
        u = self.rows[pos]
        cv = p.products(u)
        levels = p.products(self.outer_normal())
        best, bn, bd = None, None, None
        tie = False
        for i in range(p.n):
            den = -cv[i]
            if den <= 0:
                continue
            num = 1 - levels[i]
            if num == 0:
                raise NotSimplicialError(
                    f"vertex {i} lies on the frame hyperplane {tuple(self.indices)}"
                )
            if best is None:
                best, bn, bd = i, num, den
                continue
            lhs = num * bd
            rhs = bn * den
            if lhs < rhs:
                best, bn, bd = i, num, den
                tie = False
            elif lhs == rhs:
                tie = True
        if best is None:
            raise NoNegativeVertexError(
                f"no vertex with negative coordinate along frame position {pos}"
            )
        if tie:
            raise NotSimplicialError(
                f"pivot tie across ridge {pos} of frame {tuple(self.indices)}"
            )
        if cv[best] != -1:
            raise NotUnimodularError(
                cv[best],
                f"neighbor facet across position {pos} is not unimodular",
            )
        x = p.vertices[best]
        coeff = [dot(r, x) for r in self.rows]
        new_rows = []
        for w in range(len(self.rows)):
            if w == pos:
                new_rows.append(linalg.vec_neg(u))
            else:
                new_rows.append(
                    tuple(a + coeff[w] * b for a, b in zip(self.rows[w], u))
                )
        self.rows = new_rows
        self.indices[pos] = best
        return best

    def to_frame(self) -> FacetFrame:
        paired = sorted(zip(self.indices, self.rows))
        indices = tuple(i for i, _ in paired)
        dual = tuple(r for _, r in paired)
        rowsum = tuple(sum(col) for col in zip(*dual))
        return FacetFrame(indices, IntMatrix(dual), rowsum)


def enumerate_facets(p: Polytope) -> tuple[FacetFrame, ...]:
    """All facets of a simplicial polytope with interior origin, as frames.

    Requires every facet basis to be unimodular (NotUnimodularError
    otherwise); use `is_smooth_fano` for a non-raising validity check.
    """
    raws = _full_raws(p)
    frames = [_frame_from_raw(p, raw) for raw in raws]
    frames.sort(key=lambda f: f.vertex_indices)
    return tuple(frames)


def _full_raws(p: Polytope) -> list[_RawFacet]:
    cache = p._cert_cache
    if "raws" not in cache:
        cache["raws"] = _enumerate_raw(p)
    return cache["raws"]


def _initial_raw_cached(p: Polytope) -> _RawFacet:
    cache = p._cert_cache
    if "initial" not in cache:
        cache["initial"] = _initial_raw(p)
    return cache["initial"]


def is_smooth_fano(p: Polytope, mode: Mode = Mode.FULL) -> SmoothFanoCertificate:
    """Validity certificate: full-dimensional, origin interior, every facet a
    unimodular simplex.

    FULL mode proves this for every facet.  LOCAL mode checks the single
    gift-wrapped facet and trusts the rest by construction; pivots performed
    later keep checking every frame they touch.
    """
    cache = p._cert_cache
    key = ("cert", mode)
    if key in cache:
        return cache[key]
    cert = _compute_certificate(p, mode)
    cache[key] = cert
    return cert


def _compute_certificate(p: Polytope, mode: Mode) -> SmoothFanoCertificate:
    if linalg.int_rank([v + (1,) for v in p.vertices], p.dim + 1) != p.dim + 1:
        return SmoothFanoCertificate(False, mode, "NotFullDim", "vertex set does not span")
    try:
        if mode is Mode.FULL:
            raws = _full_raws(p)
        else:
            raws = [_initial_raw_cached(p)]
    except NotSimplicialError as e:
        return SmoothFanoCertificate(False, mode, "FacetNotSimplex", str(e))
    except (NoNegativeVertexError, OriginNotInteriorError) as e:
        return SmoothFanoCertificate(False, mode, "OriginNotInterior", str(e))
    except NotFullDimError as e:
        return SmoothFanoCertificate(False, mode, "NotFullDim", str(e))
    for raw in raws:
        if raw.det != 1:
            return SmoothFanoCertificate(
                False, mode, "FacetNotUnimodular",
                f"facet {raw.indices} has |det| = {raw.det}",
            )
    count = len(raws) if mode is Mode.FULL else None
    return SmoothFanoCertificate(True, mode, facet_count=count)


def require_smooth_fano(p: Polytope, mode: Mode | None = None) -> Mode:
    """Validate p in the given (or auto-selected) mode; return the mode used."""
    used = mode if mode is not None else auto_mode(p.dim)
    cert = is_smooth_fano(p, used)
    if not cert.valid:
        raise NotSmoothFanoError(cert)
    return used


def pivot(p: Polytope, frame: FacetFrame, vertex_index: int) -> tuple[FacetFrame, LatticeVector]:
    """Cross the ridge of `frame` opposite to `vertex_index`.

    Returns the neighboring frame and the opposite vertex: the unique vertex
    of the neighbor that is not on `frame`, found as the minimizer of the
    exact ratio (1 - level(x)) / (-coordinate of x along the dropped dual
    direction) over vertices with negative such coordinate.
    """
    state = _FrameState.from_frame(p, frame)
    pos = frame.position_of(vertex_index)
    opp = state.pivot(pos)
    return state.to_frame(), p.vertices[opp]


def opposite_indices(p: Polytope, frame: FacetFrame) -> list[int]:
    """Vertex index of opp(F, v) for every frame position, via the pivot rule."""
    coords = p.coords_rows(frame.dual_basis.entries)
    levels = [sum(row) for row in coords]
    out = []
    raw = _RawFacet(frame.vertex_indices, frame.dual_basis.entries, 1,
                    frame.outer_normal, 1)
    for pos in range(p.dim):
        targets = _ridge_targets(p, raw, coords, levels, pos)
        if not targets:
            raise NoNegativeVertexError(
                f"no vertex with negative coordinate along frame position {pos}"
            )
        if len(targets) > 1:
            raise NotSimplicialError(
                f"pivot tie across ridge {pos} of frame {frame.vertex_indices}"
            )
        out.append(targets[0])
    return out


def frame_from_indices(p: Polytope, indices: Sequence[int]) -> FacetFrame:
    """Build and verify the frame on a given vertex index set (must be a facet)."""
    idx = sorted(int(i) for i in indices)
    if len(idx) != p.dim:
        raise NotSimplicialError(f"a facet frame needs exactly {p.dim} vertices")
    raw = _raw_from_rows(p, idx)
    _check_facet(p, raw)
    return _frame_from_raw(p, raw)


def special_facet(p: Polytope, mode: Mode | None = None) -> FacetFrame:
    """A facet whose cone contains the vertex sum (all gamma coordinates >= 0).

    Starts from the gift-wrapped facet and pivots on any frame vertex with a
    negative gamma coordinate; the level of the vertex sum strictly increases
    with each step, so the walk terminates.
    """
    require_smooth_fano(p, mode)
    cache = p._cert_cache
    if "special" in cache:
        return cache["special"]
    s = vertex_sum(p)
    state = _FrameState.from_raw(p, _initial_raw_cached(p))
    for _ in range(_MAX_PIVOT_STEPS):
        gamma = state.gamma(s)
        pos = next((j for j, g in enumerate(gamma) if g < 0), None)
        if pos is None:
            frame = state.to_frame()
            cache["special"] = frame
            return frame
        state.pivot(pos)
    raise InvariantViolationError("special-facet walk did not terminate")


def picard_number(p: Polytope, mode: Mode | None = None) -> int:
    """Vertex count minus dimension (the Picard number of the toric manifold)."""
    require_smooth_fano(p, mode)
    return p.n - p.dim
