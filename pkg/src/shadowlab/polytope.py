"""H-representation polytopes and their generators.

Generators emit rows pair by pair, lower bound first, so for variable j
(0-based) the lower-bound row is ``2j`` and the upper-bound row ``2j + 1``.
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Tuple

from . import limits
from .errors import (
    DegenerateBoxError,
    DimensionError,
    InfeasibleBasisError,
    NonBasisError,
    ParameterError,
    PolytopeFormatError,
    SingularSystemError,
)
from .exact_linalg import RatMatrix, RatVector, dot, matrix, rat, solve_square, vector

Basis = Tuple[int, ...]


def as_basis(indices) -> Basis:
    return tuple(sorted(int(i) for i in indices))


@dataclass(frozen=True)
class HPolytope:
    """The polytope ``{x : A x <= b}``."""

    A: RatMatrix
    b: RatVector
    tag: Optional[str] = None
    params: Tuple[Tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        A = matrix(self.A)
        b = vector(self.b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "params", tuple((str(k), str(v)) for k, v in self.params))
        if len(A) != len(b):
            raise DimensionError(f"A has {len(A)} rows but b has {len(b)} entries")
        if len(A) < len(A[0]):
            raise DimensionError("need at least d inequalities")
        for i, row in enumerate(A):
            if not any(row):
                raise DimensionError(f"row {i} of A is zero")

    @property
    def n_rows(self) -> int:
        return len(self.A)

    @property
    def dim(self) -> int:
        return len(self.A[0])

    def param(self, key: str) -> Optional[str]:
        return dict(self.params).get(key)


@dataclass(frozen=True)
class Box:
    lowers: RatVector
    uppers: RatVector

    def __post_init__(self):
        lowers, uppers = vector(self.lowers), vector(self.uppers)
        if len(lowers) != len(uppers):
            raise DimensionError("lowers and uppers differ in length")
        for i, (lo, hi) in enumerate(zip(lowers, uppers)):
            if not lo < hi:
                raise DegenerateBoxError(f"need lower < upper for coordinate {i + 1}, got {lo} >= {hi}")
        object.__setattr__(self, "lowers", lowers)
        object.__setattr__(self, "uppers", uppers)

    @property
    def dim(self) -> int:
        return len(self.lowers)

    def corner(self, bits: Sequence[int]) -> RatVector:
        """Corner taking the upper bound where ``bits[i]`` is 1."""
        return tuple(hi if bit else lo for bit, lo, hi in zip(bits, self.lowers, self.uppers))


def make_box(box: Box) -> HPolytope:
    d = box.dim
    rows, rhs = [], []
    for i in range(d):
        lower = [0] * d
        lower[i] = -1
        upper = [0] * d
        upper[i] = 1
        rows += [lower, upper]
        rhs += [-box.lowers[i], box.uppers[i]]
    return HPolytope(rows, rhs, tag="box")


def box_of(P: HPolytope) -> Box:
    """Recover the Box from a generator-built polytope."""
    if P.tag != "box":
        raise ParameterError("polytope was not produced by the box generator")
    return Box([-P.b[2 * i] for i in range(P.dim)], [P.b[2 * i + 1] for i in range(P.dim)])


def check_eps(eps) -> Fraction:
    eps = rat(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ParameterError(f"eps must satisfy 0 < eps < 1/2, got {eps}")
    return eps


def make_klee_minty(d: int, eps) -> HPolytope:
    """Deformed cube: 0 <= x_1 <= 1 and eps x_{j-1} <= x_j <= 1 - eps x_{j-1}."""
    if d < 1:
        raise ParameterError("dimension must be at least 1")
    eps = check_eps(eps)
    rows, rhs = [], []
    for j in range(d):
        lower = [Fraction(0)] * d
        upper = [Fraction(0)] * d
        lower[j] = Fraction(-1)
        upper[j] = Fraction(1)
        if j > 0:
            lower[j - 1] = eps
            upper[j - 1] = eps
        rows += [lower, upper]
        rhs += [Fraction(0), Fraction(1)]
    return HPolytope(rows, rhs, tag="klee-minty", params=(("eps", str(eps)),))


def sparsity(P: HPolytope) -> int:
    return max(sum(1 for a in row if a) for row in P.A)


def is_feasible(P: HPolytope, x: Sequence[Fraction]) -> bool:
    if len(x) != P.dim:
        raise DimensionError(f"point has {len(x)} coordinates, polytope has dimension {P.dim}")
    return all(dot(row, x) <= bj for row, bj in zip(P.A, P.b))


def tight_rows(P: HPolytope, x: Sequence[Fraction]) -> Tuple[int, ...]:
    return tuple(i for i, (row, bj) in enumerate(zip(P.A, P.b)) if dot(row, x) == bj)


def _check_basis(P: HPolytope, B) -> Basis:
    B = as_basis(B)
    if len(B) != P.dim or len(set(B)) != len(B):
        raise NonBasisError(f"a basis needs {P.dim} distinct row indices, got {B}")
    if B and (B[0] < 0 or B[-1] >= P.n_rows):
        raise NonBasisError(f"row index out of range in {B}")
    return B


def vertex_of(P: HPolytope, B) -> RatVector:
    """The point where the rows of ``B`` are tight; must be feasible."""
    B = _check_basis(P, B)
    try:
        x = solve_square([P.A[i] for i in B], [P.b[i] for i in B])
    except SingularSystemError as exc:
        raise NonBasisError(f"rows {B} are linearly dependent") from exc
    if not is_feasible(P, x):
        raise InfeasibleBasisError(f"basis {B} gives infeasible point {tuple(map(str, x))}")
    return x


def enumerate_vertices(P: HPolytope):
    """All feasible bases with their vertices, by brute force over d-subsets.

    Subsets are walked depth-first with an incrementally reduced row echelon
    form, so a dependent prefix prunes every superset. Output is sorted by
    basis. Coinciding points from different bases (non-simple vertices) are
    kept and reported with a warning.
    """
    n, d = P.n_rows, P.dim
    limits.check(comb(n, d), limits.MAX_BASIS_SUBSETS, "vertex enumeration")
    A, b = P.A, P.b
    found = []

    def back_substitute(echelon):
        x = [Fraction(0)] * d
        for piv, row, rhs in reversed(echelon):
            s = rhs
            for j, a in enumerate(row):
                if a and j != piv:
                    s -= a * x[j]
            x[piv] = s
        return tuple(x)

    def walk(start, chosen, echelon):
        if len(chosen) == d:
            x = back_substitute(echelon)
            if all(dot(row, x) <= bj for row, bj in zip(A, b)):
                found.append((tuple(chosen), x))
            return
        # leave room for the remaining picks
        for i in range(start, n - (d - len(chosen)) + 1):
            row = list(A[i])
            rhs = b[i]
            for piv, prow, prhs in echelon:
                f = row[piv]
                if f:
                    row = [a - f * p for a, p in zip(row, prow)]
                    rhs -= f * prhs
            piv = next((j for j, a in enumerate(row) if a), None)
            if piv is None:
                continue
            inv = 1 / row[piv]
            row = [a * inv for a in row]
            chosen.append(i)
            walk(i + 1, chosen, echelon + [(piv, row, rhs * inv)])
            chosen.pop()

    walk(0, [], [])
    seen = {}
    for B, x in found:
        if x in seen:
            warnings.warn(
                f"degenerate vertex {tuple(map(str, x))}: bases {seen[x]} and {B}",
                stacklevel=2,
            )
        else:
            seen[x] = B
    return found


# -- .hpoly text format -----------------------------------------------------


def dumps(P: HPolytope) -> str:
    lines = [f"{P.n_rows} {P.dim}"]
    if P.tag:
        extra = "".join(f" {k}={v}" for k, v in P.params)
        lines.append(f"# generator: {P.tag}{extra}")
    for row, bj in zip(P.A, P.b):
        lines.append(" ".join(str(a) for a in row) + " | " + str(bj))
    return "\n".join(lines) + "\n"


def loads(text: str) -> HPolytope:
    lines = text.splitlines()
    if not lines:
        raise PolytopeFormatError("empty polytope file")
    try:
        n, d = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise PolytopeFormatError(f"bad header line: {lines[0]!r}") from exc
    body = lines[1:]
    tag, params = None, ()
    if body and body[0].startswith("#"):
        comment = body[0][1:].strip()
        body = body[1:]
        if comment.startswith("generator:"):
            parts = comment[len("generator:"):].split()
            if parts:
                tag = parts[0]
                try:
                    params = tuple(tuple(p.split("=", 1)) for p in parts[1:])
                except ValueError as exc:
                    raise PolytopeFormatError(f"bad generator parameters: {comment!r}") from exc
    body = [ln for ln in body if ln.strip()]
    if len(body) != n:
        raise PolytopeFormatError(f"header announces {n} rows, found {len(body)}")
    A, b = [], []
    for ln in body:
        if "|" not in ln:
            raise PolytopeFormatError(f"row lacks '|': {ln!r}")
        lhs, rhs = ln.split("|", 1)
        try:
            row = [rat(t) for t in lhs.split()]
            A.append(row)
            b.append(rat(rhs))
        except ValueError as exc:
            raise PolytopeFormatError(str(exc)) from exc
        if len(row) != d:
            raise PolytopeFormatError(f"row has {len(row)} coefficients, expected {d}: {ln!r}")
    return HPolytope(A, b, tag=tag, params=params)


def read_hpoly(path) -> HPolytope:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_hpoly(P: HPolytope, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(P))

