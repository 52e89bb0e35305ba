"""Two-dimensional shadows: projection, exact convex hull, certificates.

All predicates are signs of exact rational cross/dot products, so collinear
and duplicate points are decided exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import product
from typing import List, NamedTuple, Sequence, Tuple

from . import limits
from .errors import DependentProjectionError, DimensionError
from .exact_linalg import RatVector, dot, vector
from .polytope import Box


class Point2(NamedTuple):
    y1: Fraction
    y2: Fraction


@dataclass(frozen=True)
class ProjectionPair:
    c: RatVector
    d: RatVector

    def __post_init__(self):
        c, d = vector(self.c), vector(self.d)
        if len(c) != len(d):
            raise DimensionError("c and d must have the same length")
        # rank 2 iff some 2x2 minor is nonzero
        if not any(c[i] * d[j] != c[j] * d[i] for i in range(len(c)) for j in range(i + 1, len(c))):
            raise DependentProjectionError("c and d must be linearly independent")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def dim(self) -> int:
        return len(self.c)

    def combine(self, a: Sequence[Fraction]) -> RatVector:
        """The objective a_1 c + a_2 d."""
        return tuple(a[0] * ci + a[1] * di for ci, di in zip(self.c, self.d))


def project(pp: ProjectionPair, x: Sequence[Fraction]) -> Point2:
    if len(x) != pp.dim:
        raise DimensionError(f"point has {len(x)} coordinates, projection expects {pp.dim}")
    return Point2(dot(pp.c, x), dot(pp.d, x))


def cross(o, a, b) -> Fraction:
    """Twice the signed area of (o, a, b); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ShadowPolygon:
    """Strictly convex polygon, counterclockwise from its lexicographic minimum."""

    vertices: Tuple[Point2, ...]

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self):
        return len(self.vertices)


def hull2d(points: Sequence[Sequence[Fraction]]) -> ShadowPolygon:
    """Andrew's monotone chain with strict turns: edge-interior points are dropped."""
    pts = sorted({Point2(*p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    if len(pts) == 1:
        return ShadowPolygon(tuple(pts))

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return ShadowPolygon(tuple(lower[:-1] + upper[:-1]))


@dataclass(frozen=True)
class Shadow:
    polygon: ShadowPolygon
    points: Tuple[Point2, ...]
    # for each hull vertex, indices of every input vertex projecting onto it
    preimages: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.polygon)


def shadow_of_vertices(pp: ProjectionPair, vertices: Sequence[Sequence[Fraction]]) -> Shadow:
    points = tuple(project(pp, v) for v in vertices)
    polygon = hull2d(points)
    where = {}
    for idx, pt in enumerate(points):
        where.setdefault(pt, []).append(idx)
    return Shadow(polygon, points, tuple(tuple(where[w]) for w in polygon.vertices))


# -- angular arrangements of lines through the origin ----------------------


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    s = u[0] * v[1] - u[1] * v[0]
    return -1 if s > 0 else (1 if s < 0 else 0)


def cell_witnesses(normals) -> List[Tuple[Fraction, Fraction]]:
    """One interior point per 2-dimensional cell of the lines ``{a : a . n = 0}``.

    The bounding rays of the cells are the directions +-rot90(n); they are
    sorted by exact angle, and each cell gets the sum of its two bounding
    rays (or the perpendicular when the two are opposite).
    """
    rays = []
    for n in normals:
        if n[0] or n[1]:
            rays += [(-n[1], n[0]), (n[1], -n[0])]
    if not rays:
        return [(Fraction(1), Fraction(0))]
    rays.sort(key=cmp_to_key(_angle_cmp))
    distinct = [rays[0]]
    for r in rays[1:]:
        if _angle_cmp(distinct[-1], r) != 0:
            distinct.append(r)
    out = []
    for k, r in enumerate(distinct):
        s = distinct[(k + 1) % len(distinct)]
        if r[0] * s[1] - r[1] * s[0] > 0:
            out.append((r[0] + s[0], r[1] + s[1]))
        else:
            out.append((-r[1], r[0]))
    return out


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    target: int
    a: Tuple[Fraction, Fraction]
    e: RatVector
    ok = True


@dataclass(frozen=True)
class Refusal:
    target: int
    witness: int
    reason: str
    ok = False


def certify_shadow_vertex(pp: ProjectionPair, all_vertices, target_index: int):
    """Find a = (a_1, a_2) making the target the unique maximiser of
    (a_1 c + a_2 d)^T x over ``all_vertices``; otherwise return a Refusal.

    The candidate directions are one per cell of the arrangement of lines
    perpendicular to the projected differences, so the search is complete.
    """
    if not 0 <= target_index < len(all_vertices):
        raise IndexError(f"target index {target_index} out of range")
    points = [project(pp, v) for v in all_vertices]
    w = points[target_index]
    others = [k for k in range(len(points)) if k != target_index]
    for k in others:
        if points[k] == w:
            return Refusal(target_index, k, "another vertex has the same projection")
    gaps = [(w[0] - points[k][0], w[1] - points[k][1]) for k in others]
    best = None
    for a in cell_witnesses(gaps):
        losers = [k for k, g in zip(others, gaps) if a[0] * g[0] + a[1] * g[1] <= 0]
        if not losers:
            e = pp.combine(a)
            target_val = dot(e, all_vertices[target_index])
            # re-check in the original space
            assert all(dot(e, all_vertices[k]) < target_val for k in others)
            return Certificate(target_index, a, e)
        if best is None or len(losers) < len(best):
            best = losers
    return Refusal(target_index, best[0], "projection is not a vertex of the shadow")


# -- boxes ------------------------------------------------------------------


@dataclass(frozen=True)
class SignPattern:
    coords: Tuple[int, ...]  # 0-based coordinates with (c_i, d_i) != 0
    signs: Tuple[int, ...]
    witness: Tuple[Fraction, Fraction]


def box_sign_patterns(pp: ProjectionPair) -> List[SignPattern]:
    """Sign vectors of a_1 c + a_2 d over the full-dimensional cells.

    Coordinates with c_i = d_i = 0 are dropped first; at most 2d' patterns.
    """
    coords = tuple(i for i in range(pp.dim) if pp.c[i] or pp.d[i])
    normals = [(pp.c[i], pp.d[i]) for i in coords]
    patterns = []
    for a in cell_witnesses(normals):
        signs = []
        for n in normals:
            s = a[0] * n[0] + a[1] * n[1]
            assert s != 0
            signs.append(1 if s > 0 else -1)
        patterns.append(SignPattern(coords, tuple(signs), a))
    return patterns


def pattern_corner(pattern: SignPattern, d: int) -> Tuple[int, ...]:
    """Corner bits induced by a pattern: upper bound where e_i > 0; lower
    bound where e_i < 0 or where the coordinate was dropped."""
    bits = [0] * d
    for i, s in zip(pattern.coords, pattern.signs):
        bits[i] = 1 if s > 0 else 0
    return tuple(bits)


@dataclass(frozen=True)
class BoxShadowReport:
    dim: int
    reduced_dim: int
    hull_size: int
    pattern_count: int
    corners_cover_hull: bool

    @property
    def bound(self) -> int:
        return 2 * self.dim

    @property
    def ok(self) -> bool:
        return (
            self.hull_size <= self.bound
            and self.pattern_count <= 2 * self.reduced_dim
            and self.corners_cover_hull
        )


def box_corners(box: Box):
    limits.check(2**box.dim, limits.MAX_BOX_CORNERS, "box corner listing")
    return [(bits, box.corner(bits)) for bits in product((0, 1), repeat=box.dim)]


def box_shadow_report(box: Box, pp: ProjectionPair) -> BoxShadowReport:
    if box.dim != pp.dim:
        raise DimensionError("box and projection dimensions differ")
    corners = box_corners(box)
    shadow = shadow_of_vertices(pp, [x for _, x in corners])
    patterns = box_sign_patterns(pp)
    induced = {pattern_corner(p, box.dim) for p in patterns}
    covered = all(
        any(corners[idx][0] in induced for idx in pre) for pre in shadow.preimages
    )
    reduced = len(patterns[0].coords) if patterns else 0
    return BoxShadowReport(box.dim, reduced, shadow.size, len(patterns), covered)


def random_rational(rng, lo: int = -9, hi: int = 9, max_den: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_box(rng, d: int) -> Box:
    lowers = [random_rational(rng) for _ in range(d)]
    uppers = [lo + Fraction(rng.randint(1, 9), rng.randint(1, 9)) for lo in lowers]
    return Box(lowers, uppers)


def random_projection(rng, d: int) -> ProjectionPair:
    while True:
        c = [random_rational(rng) for _ in range(d)]
        e = [random_rational(rng) for _ in range(d)]
        try:
            return ProjectionPair(c, e)
        except DependentProjectionError:
            continue

