"""Exact rational vectors and dense linear solves.

Scalars are :class:`fractions.Fraction`; vectors are tuples of Fractions and
matrices are tuples of such rows. Everything here is exact; the only
floating-ish output is :func:`to_decimal`, which is for display.
"""

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DimensionError, SingularSystemError

Rational = Fraction
RatVector = Tuple[Fraction, ...]
RatMatrix = Tuple[RatVector, ...]

DEFAULT_DIGITS = 12


def rat(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats are rejected: they would smuggle rounding error into exact paths.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction or 'p/q' string")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    return Fraction(value)


def vector(values: Iterable) -> RatVector:
    out = tuple(rat(v) for v in values)
    if not out:
        raise DimensionError("vectors must have positive length")
    return out


def matrix(rows: Iterable[Iterable]) -> RatMatrix:
    out = tuple(vector(r) for r in rows)
    if not out:
        raise DimensionError("matrix must have at least one row")
    width = len(out[0])
    if any(len(r) != width for r in out):
        raise DimensionError("matrix rows have different lengths")
    return out


def format_rational(x: Fraction) -> str:
    # Fraction.__str__ already omits a denominator of 1
    return str(x)


def parse_rational(text: str) -> Fraction:
    return rat(text)


def parse_vector(text: str) -> RatVector:
    """Parse a comma-separated list of rationals, e.g. ``"1/64,0"``."""
    return vector(part for part in text.split(",") if part.strip())


def to_decimal(x: Fraction, digits: int = DEFAULT_DIGITS) -> str:
    """Render ``x`` with ``digits`` significant digits (display only)."""
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x.numerator) / Decimal(x.denominator)
        return format(value, "g") if value else "0"


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> RatVector:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RatVector:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(s: Fraction, v: Sequence[Fraction]) -> RatVector:
    return tuple(s * a for a in v)


def mat_vec(A: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> RatVector:
    return tuple(dot(row, x) for row in A)


def unit(n: int, i: int) -> RatVector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def _eliminate(A, rhs_columns):
    """Gauss-Jordan on ``A`` with several right-hand sides.

    Pivot choice is the first nonzero entry in the column; with exact
    arithmetic no magnitude heuristics are needed.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise DimensionError("matrix is not square")
    m = len(rhs_columns)
    for col in rhs_columns:
        if len(col) != n:
            raise DimensionError("right-hand side length does not match matrix")
    # augmented rows: [A | B]
    rows = [list(A[i]) + [col[i] for col in rhs_columns] for i in range(n)]
    for k in range(n):
        pivot = next((r for r in range(k, n) if rows[r][k]), None)
        if pivot is None:
            raise SingularSystemError("matrix is singular")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        prow = rows[k]
        inv = 1 / prow[k]
        if inv != 1:
            prow = rows[k] = [a * inv for a in prow]
        for r in range(n):
            if r == k:
                continue
            f = rows[r][k]
            if f:
                rows[r] = [a - f * b if b else a for a, b in zip(rows[r], prow)]
    return [tuple(rows[i][n + j] for i in range(n)) for j in range(m)]


def solve_square(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> RatVector:
    """Solve ``A x = b`` exactly; raises SingularSystemError if ``A`` is singular."""
    return _eliminate(A, [tuple(b)])[0]


def inverse_columns(A: Sequence[Sequence[Fraction]]) -> list:
    """Columns of ``A^-1``, i.e. the solutions of ``A x = e_k`` for each k."""
    n = len(A)
    return _eliminate(A, [unit(n, k) for k in range(n)])


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)
