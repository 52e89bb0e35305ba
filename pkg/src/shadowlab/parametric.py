"""Parametric-objective simplex sweep over ``max (c + lam d)^T x``.

Reduced costs are handled geometrically: at a basis B, the edge leaving
row i of B has direction z_i with A_i z_i = -1 and A_j z_i = 0 for the other
rows of B, and the reduced cost along it is c.z_i + lam d.z_i. The edge
directions are carried from pivot to pivot with a rank-one update, so a
pivot costs O(n d) instead of a fresh d x d solve.
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    BadStartError,
    DegeneracyError,
    DimensionError,
    GenericityError,
    NonBasisError,
    SingularSystemError,
    UnboundedError,
)
from .exact_linalg import RatVector, dot, inverse_columns
from .km_cube import VertexCode, basis_to_code
from .polytope import Basis, HPolytope, as_basis, enumerate_vertices, tight_rows, vertex_of


class Infinity(Enum):
    NEG = "-inf"
    POS = "+inf"

    def __str__(self):
        return self.value


Breakpoint = Union[Fraction, Infinity]


@dataclass(frozen=True)
class PivotEvent:
    leaving_row: int
    entering_row: int
    lam: Fraction
    edge_direction: RatVector


@dataclass(frozen=True)
class ParametricPath:
    bases: Tuple[Basis, ...]
    vertices: Tuple[RatVector, ...]
    breakpoints: Tuple[Fraction, ...]
    events: Tuple[PivotEvent, ...] = ()
    codes: Optional[Tuple[VertexCode, ...]] = None

    @property
    def M(self) -> int:
        return len(self.vertices)

    def interval(self, k: int) -> Tuple[Breakpoint, Breakpoint]:
        """Closed parameter interval on which vertex k is optimal."""
        lo = self.breakpoints[k - 1] if k > 0 else Infinity.NEG
        hi = self.breakpoints[k] if k < len(self.breakpoints) else Infinity.POS
        return lo, hi

    def lambdas(self) -> Tuple[Breakpoint, ...]:
        return (Infinity.NEG,) + self.breakpoints + (Infinity.POS,)

    def index_at(self, lam: Fraction) -> int:
        """Index of the vertex whose interval contains ``lam`` (the later one at a breakpoint)."""
        return sum(1 for b in self.breakpoints if b <= lam)

    def representative(self, k: int) -> Fraction:
        """A rational strictly inside interval k."""
        lo, hi = self.interval(k)
        if lo is Infinity.NEG and hi is Infinity.POS:
            return Fraction(0)
        if lo is Infinity.NEG:
            return hi - 1
        if hi is Infinity.POS:
            return lo + 1
        return (lo + hi) / 2


class _Sweep:
    """Basis state: row order, vertex, slacks and edge directions."""

    def __init__(self, P: HPolytope, start):
        self.P = P
        B = as_basis(start)
        self.x = vertex_of(P, B)
        tight = tight_rows(P, self.x)
        if len(tight) > P.dim:
            raise DegeneracyError(f"vertex {tuple(map(str, self.x))} has {len(tight)} tight rows")
        self.rows = list(B)
        try:
            cols = inverse_columns([P.A[i] for i in B])
        except SingularSystemError as exc:
            raise NonBasisError(f"rows {B} are linearly dependent") from exc
        self.dirs = [tuple(-v for v in col) for col in cols]
        self.slack = [bj - dot(row, self.x) for row, bj in zip(P.A, P.b)]

    @property
    def basis(self) -> Basis:
        return as_basis(self.rows)

    def pivot(self, k: int) -> Tuple[int, int]:
        """Walk along edge k to the blocking row; returns (leaving, entering)."""
        P, z = self.P, self.dirs[k]
        in_basis = set(self.rows)
        rates = [dot(row, z) for row in P.A]
        best, blockers = None, []
        for j, r in enumerate(rates):
            if j in in_basis or r <= 0:
                continue
            t = self.slack[j] / r
            if best is None or t < best:
                best, blockers = t, [j]
            elif t == best:
                blockers.append(j)
        if best is None:
            raise UnboundedError(f"edge leaving row {self.rows[k]} has no blocking constraint")
        if len(blockers) > 1:
            raise DegeneracyError(f"rows {blockers} block simultaneously: degenerate vertex")
        j = blockers[0]
        leaving = self.rows[k]
        self.x = tuple(xi + best * zi for xi, zi in zip(self.x, z))
        self.slack = [s - best * r for s, r in zip(self.slack, rates)]
        a_zk = rates[j]
        new_dirs = []
        for m, zm in enumerate(self.dirs):
            if m == k:
                new_dirs.append(tuple(-v / a_zk for v in z))
            else:
                r = dot(P.A[j], zm)
                if r:
                    f = r / a_zk
                    zm = tuple(u - f * v for u, v in zip(zm, z))
                new_dirs.append(zm)
        self.dirs = new_dirs
        self.rows[k] = j
        return leaving, j


def edge_directions(P: HPolytope, B) -> List[Tuple[int, RatVector]]:
    """(relaxed row, direction) for each row of B at a nondegenerate vertex."""
    s = _Sweep(P, B)
    return sorted(zip(s.rows, s.dirs))


def _check_objectives(P, c, d):
    if len(c) != P.dim or len(d) != P.dim:
        raise DimensionError("objective vectors must match the polytope dimension")


def gass_saaty_path(
    P: HPolytope,
    c: Sequence[Fraction],
    d: Sequence[Fraction],
    start,
    stop_at: Optional[Fraction] = None,
    max_steps: Optional[int] = None,
) -> ParametricPath:
    """Sweep lam from -inf to +inf, pivoting at every breakpoint.

    ``start`` must be the optimal basis for lam -> -inf (maximises -d^T x,
    with c breaking ties). With ``stop_at`` the sweep ends at the first
    vertex whose interval contains that value.
    """
    c, d = tuple(c), tuple(d)
    _check_objectives(P, c, d)
    sweep = _Sweep(P, start)
    if max_steps is None:
        max_steps = comb(P.n_rows, P.dim)
    bases, vertices, breakpoints, events = [sweep.basis], [sweep.x], [], []
    seen = {sweep.basis}
    lam = None
    while True:
        cz = [dot(c, z) for z in sweep.dirs]
        dz = [dot(d, z) for z in sweep.dirs]
        flat = [sweep.rows[k] for k in range(P.dim) if cz[k] == 0 and dz[k] == 0]
        if flat:
            raise GenericityError(
                f"objectives are constant on the edge(s) leaving rows {flat} at basis {sweep.basis}",
                witnesses=flat,
            )
        if lam is None:
            bad = [sweep.rows[k] for k in range(P.dim) if dz[k] < 0 or (dz[k] == 0 and cz[k] > 0)]
            if bad:
                raise BadStartError(
                    f"basis {sweep.basis} is not optimal as lam -> -inf (edges leaving rows {bad} improve)"
                )
        else:
            assert all(cz[k] + lam * dz[k] <= 0 for k in range(P.dim)), "lost optimality"
        candidates = [(-cz[k] / dz[k], k) for k in range(P.dim) if dz[k] > 0]
        if not candidates:
            break
        nxt = min(t for t, _ in candidates)
        if stop_at is not None and nxt > stop_at:
            break
        ties = [k for t, k in candidates if t == nxt]
        if len(ties) > 1:
            rows = [sweep.rows[k] for k in ties]
            raise GenericityError(
                f"edges leaving rows {rows} at basis {sweep.basis} become improving together at lam={nxt}",
                witnesses=rows,
            )
        if lam is not None and nxt <= lam:
            raise GenericityError(f"breakpoint {nxt} does not exceed previous breakpoint {lam}")
        k = ties[0]
        z = sweep.dirs[k]
        leaving, entering = sweep.pivot(k)
        lam = nxt
        if sweep.basis in seen or len(bases) >= max_steps:
            raise GenericityError(f"sweep revisited basis {sweep.basis}; path is not monotone")
        seen.add(sweep.basis)
        events.append(PivotEvent(leaving, entering, lam, z))
        bases.append(sweep.basis)
        vertices.append(sweep.x)
        breakpoints.append(lam)
    codes = None
    if P.tag == "klee-minty":
        codes = tuple(basis_to_code(B, P.dim) for B in bases)
    return ParametricPath(tuple(bases), tuple(vertices), tuple(breakpoints), tuple(events), codes)


def auxiliary_direction(P: HPolytope, B, weights) -> RatVector:
    """-sum_k w_k A_{B_k}: every edge at B increases it, so B uniquely minimises it."""
    out = [Fraction(0)] * P.dim
    for w, i in zip(weights, as_basis(B)):
        for j, a in enumerate(P.A[i]):
            out[j] -= w * a
    return tuple(out)


def _weight_schemes(d: int):
    yield [1] * d
    yield list(range(1, d + 1))
    yield [2**k for k in range(d)]
    yield [3**k for k in range(d)]
    yield list(range(d, 0, -1))


def shadow_vertex_solve(P: HPolytope, c: Sequence[Fraction], start) -> Tuple[Basis, RatVector]:
    """Maximise c^T x from a known vertex by sweeping c + lam d* up to lam = 0.

    If the uniform auxiliary objective makes the sweep non-generic, other
    positive weightings of the tight rows are tried; d* is ours to choose,
    so this does not alter the instance.
    """
    c = tuple(c)
    if len(c) != P.dim:
        raise DimensionError("objective must match the polytope dimension")
    vertex_of(P, start)
    last = None
    for weights in _weight_schemes(P.dim):
        aux = auxiliary_direction(P, start, weights)
        try:
            path = gass_saaty_path(P, c, aux, start, stop_at=Fraction(0))
        except GenericityError as exc:
            last = exc
            continue
        return path.bases[-1], path.vertices[-1]
    raise GenericityError(f"no auxiliary objective gave a generic sweep: {last}")


@dataclass(frozen=True)
class OracleReport:
    checked: int
    failures: Tuple[Tuple[Fraction, int, Optional[int]], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def sample_lambdas(path: ParametricPath, samples: int = 1) -> List[Tuple[Fraction, int]]:
    """(lam, expected index): ``samples`` interior points per finite interval plus both tails."""
    bps = path.breakpoints
    if not bps:
        return [(Fraction(0), 0)]
    out = [(bps[0] - 1, 0)]
    for k in range(1, len(bps)):
        lo, hi = bps[k - 1], bps[k]
        for i in range(1, samples + 1):
            out.append((lo + (hi - lo) * Fraction(i, samples + 1), k))
    out.append((bps[-1] + 1, len(bps)))
    return out


def verify_path_against_oracle(
    P: HPolytope,
    path: ParametricPath,
    c: Sequence[Fraction],
    d: Sequence[Fraction],
    samples: int = 1,
    vertices=None,
) -> OracleReport:
    """Compare the path with a brute-force argmax over all vertices.

    Failures are (lam, path index, oracle index or None when the oracle
    maximum is not unique).
    """
    if vertices is None:
        vertices = [x for _, x in enumerate_vertices(P)]
    failures = []
    samples_ = sample_lambdas(path, samples)
    for lam, k in samples_:
        obj = tuple(ci + lam * di for ci, di in zip(c, d))
        vals = [dot(obj, v) for v in vertices]
        top = max(vals)
        winners = [i for i, v in enumerate(vals) if v == top]
        if len(winners) != 1:
            failures.append((lam, k, None))
            continue
        if vertices[winners[0]] != path.vertices[k]:
            failures.append((lam, k, winners[0]))
    return OracleReport(len(samples_), tuple(failures))


def value_pieces(path: ParametricPath, c, d) -> List[Tuple[Fraction, Fraction]]:
    """(intercept, slope) of the optimal value c.v_k + lam d.v_k on each interval."""
    return [(dot(c, v), dot(d, v)) for v in path.vertices]


def swap_vertices(path: ParametricPath, i: int, j: int) -> ParametricPath:
    """Copy of ``path`` with two vertices exchanged (negative control for the oracle)."""
    vs = list(path.vertices)
    vs[i], vs[j] = vs[j], vs[i]
    return replace(path, vertices=tuple(vs))
