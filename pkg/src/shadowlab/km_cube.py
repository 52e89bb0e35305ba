"""Closed-form machinery of the Klee-Minty cube.

A vertex is named by a code ``u`` in {0,1}^d: ``u[j] = 1`` means the upper
bound of the j-th inequality pair is tight. Indices ``i``, ``j``, ``ell`` in
the public functions are 1-based to match the usual way the formulas are
written; tuples are of course 0-based internally.

The closed forms (edge directions, q values) are cross-checked against the
plain recursion whenever ``__debug__`` is on, i.e. unless Python runs with
``-O``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from . import limits
from .errors import DimensionError, FormulaMismatchError, ParameterError
from .exact_linalg import RatVector, dot, sub
from .polytope import Basis, HPolytope, check_eps, make_klee_minty

VertexCode = Tuple[int, ...]


@dataclass(frozen=True)
class KmParams:
    d: int
    eps: Fraction = Fraction(1, 4)

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError("dimension must be at least 1")
        object.__setattr__(self, "eps", check_eps(self.eps))

    def polytope(self) -> HPolytope:
        return make_klee_minty(self.d, self.eps)


def parse_code(text: str) -> VertexCode:
    if not text or set(text) - {"0", "1"}:
        raise ParameterError(f"vertex code must be a nonempty bit string, got {text!r}")
    return tuple(int(ch) for ch in text)


def format_code(u: Sequence[int]) -> str:
    return "".join(str(b) for b in u)


def all_codes(d: int):
    """All codes in lexicographic order."""
    return product((0, 1), repeat=d)


def flip(u: VertexCode, ell: int) -> VertexCode:
    return u[: ell - 1] + (1 - u[ell - 1],) + u[ell:]


def code_to_basis(u: Sequence[int]) -> Basis:
    return tuple(2 * j + bit for j, bit in enumerate(u))


def basis_to_code(B: Sequence[int], d: int) -> VertexCode:
    u = [None] * d
    for i in B:
        j, bit = divmod(i, 2)
        if u[j] is not None:
            raise ParameterError(f"basis {tuple(B)} uses both rows of pair {j + 1}")
        u[j] = bit
    if None in u:
        raise ParameterError(f"basis {tuple(B)} does not pick one row per pair")
    return tuple(u)


def _check_code(u, p: KmParams):
    if len(u) != p.d:
        raise DimensionError(f"code has length {len(u)}, expected {p.d}")


def _check_ell(ell: int, p: KmParams):
    if not 1 <= ell <= p.d:
        raise DimensionError(f"ell must be in 1..{p.d}, got {ell}")


def km_vertex(u: Sequence[int], p: KmParams) -> RatVector:
    """x_j = u_j + (1 - 2 u_j) eps x_{j-1}, starting from x_0 = 0."""
    _check_code(u, p)
    x, prev = [], Fraction(0)
    for bit in u:
        prev = bit + (1 - 2 * bit) * p.eps * prev
        x.append(prev)
    return tuple(x)


def parity_p(u: Sequence[int], i: int, j: int) -> int:
    """Product of (1 - 2 u_k) for k = i..j; the empty product (i > j) is 1."""
    d = len(u)
    if not (1 <= i <= d + 1 and 0 <= j <= d):
        raise DimensionError(f"parity indices ({i}, {j}) out of range for d={d}")
    return -1 if sum(u[i - 1 : j]) % 2 else 1


def q_ell(u: Sequence[int], ell: int, p: KmParams) -> Fraction:
    """Change of x_ell when bit ell is flipped: (1 - 2 u_ell)(1 - 2 eps x_{ell-1})."""
    _check_code(u, p)
    _check_ell(ell, p)
    x = km_vertex(u, p)
    prev = x[ell - 2] if ell > 1 else Fraction(0)
    closed = (1 - 2 * u[ell - 1]) * (1 - 2 * p.eps * prev)
    if __debug__:
        direct = km_vertex(flip(tuple(u), ell), p)[ell - 1] - x[ell - 1]
        if direct != closed:
            raise FormulaMismatchError(f"q: closed form {closed} != difference {direct}")
    return closed


def edge_direction_y(u: Sequence[int], ell: int, p: KmParams) -> RatVector:
    """y_j = 0 for j < ell, parity_p(u, ell+1, j) eps^(j-ell) otherwise."""
    _check_code(u, p)
    _check_ell(ell, p)
    y = [Fraction(0)] * p.d
    power, sign = Fraction(1), 1
    for j in range(ell, p.d + 1):
        if j > ell:
            power *= p.eps
            sign *= 1 - 2 * u[j - 1]
        y[j - 1] = sign * power
    return tuple(y)


def edge_delta(u: Sequence[int], ell: int, p: KmParams) -> RatVector:
    """x(u with bit ell flipped) - x(u), from the factorised closed form."""
    q = q_ell(u, ell, p)
    delta = tuple(q * y for y in edge_direction_y(u, ell, p))
    if __debug__:
        direct = sub(km_vertex(flip(tuple(u), ell), p), km_vertex(u, p))
        if direct != delta:
            raise FormulaMismatchError(f"edge delta mismatch at u={format_code(u)}, ell={ell}")
    return delta


def objective_c(p: KmParams) -> RatVector:
    """(eps^(3(d-1)), eps^(3(d-2)), ..., eps^3, 0)."""
    cube = p.eps**3
    return tuple(cube ** (p.d - j) if j < p.d else Fraction(0) for j in range(1, p.d + 1))


def shadow_lambda(u: Sequence[int], p: KmParams) -> Fraction:
    """Multiplier of e_d in d(u): -sum_{j=0}^{d-1} parity_p(u, j+1, d) eps^(2(d-j))."""
    _check_code(u, p)
    d = p.d
    return -sum(
        (parity_p(u, j + 1, d) * p.eps ** (2 * (d - j)) for j in range(d)), Fraction(0)
    )


def objective_d_u(u: Sequence[int], p: KmParams) -> Tuple[RatVector, Fraction]:
    """The vector d(u) = lambda(u) e_d together with lambda(u)."""
    lam = shadow_lambda(u, p)
    return (Fraction(0),) * (p.d - 1) + (lam,), lam


def objective_e_u(u: Sequence[int], p: KmParams, c: RatVector = None) -> RatVector:
    """c + d(u); pass ``c`` to reuse it across a sweep."""
    if c is None:
        c = objective_c(p)
    return c[:-1] + (c[-1] + shadow_lambda(u, p),)


def projection_d(p: KmParams) -> RatVector:
    """The fixed second projection vector (0, ..., 0, 1)."""
    return (Fraction(0),) * (p.d - 1) + (Fraction(1),)


@dataclass(frozen=True)
class LemmaReport:
    code: VertexCode
    values: Tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return all(v < 0 for v in self.values)


def check_lemma_main(u: Sequence[int], p: KmParams, vertices=None, c=None) -> LemmaReport:
    """Exact values e(u)^T (x(u with bit ell flipped) - x(u)) for ell = 1..d.

    ``vertices`` may map codes to precomputed vertices for sweeps.
    """
    _check_code(u, p)
    u = tuple(u)
    vx = vertices.__getitem__ if vertices is not None else (lambda v: km_vertex(v, p))
    e = objective_e_u(u, p, c)
    here = vx(u)
    values = tuple(dot(e, sub(vx(flip(u, ell)), here)) for ell in range(1, p.d + 1))
    return LemmaReport(u, values)


def lemma_main_sweep(p: KmParams) -> List[LemmaReport]:
    limits.check(2**p.d, limits.MAX_KM_CODES, "Klee-Minty code sweep")
    vertices = {u: km_vertex(u, p) for u in all_codes(p.d)}
    c = objective_c(p)
    return [check_lemma_main(u, p, vertices, c) for u in vertices]


def km_start_code(p: KmParams) -> VertexCode:
    """The code minimising the last coordinate of x(u), by brute force."""
    limits.check(2**p.d, limits.MAX_KM_CODES, "start-code search")
    best = None
    best_val = None
    tied = False
    for u in all_codes(p.d):
        val = km_vertex(u, p)[-1]
        if best_val is None or val < best_val:
            best, best_val, tied = u, val, False
        elif val == best_val:
            tied = True
    if tied:
        raise FormulaMismatchError("last coordinate minimiser is not unique")
    return best


def km_vertices(p: KmParams):
    """(basis, vertex, code) for all 2^d codes in lexicographic code order."""
    limits.check(2**p.d, limits.MAX_KM_CODES, "Klee-Minty vertex listing")
    return [(code_to_basis(u), km_vertex(u, p), u) for u in all_codes(p.d)]


def params_of(P: HPolytope) -> KmParams:
    if P.tag != "klee-minty" or P.param("eps") is None:
        raise ParameterError("polytope was not produced by the Klee-Minty generator")
    return KmParams(P.dim, Fraction(P.param("eps")))
