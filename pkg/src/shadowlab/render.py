"""CSV and SVG output. Decimal strings appear here and nowhere else."""

import csv
import io
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exact_linalg import DEFAULT_DIGITS, format_rational, to_decimal
from .km_cube import format_code
from .parametric import Infinity, ParametricPath
from .shadow import Shadow


def polygon_csv(shadow: Shadow, label: Callable[[int], str], digits: int = DEFAULT_DIGITS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "y1_exact", "y2_exact", "y1_dec", "y2_dec", "preimage_codes"])
    for k, (pt, pre) in enumerate(zip(shadow.polygon.vertices, shadow.preimages)):
        w.writerow([
            k,
            format_rational(pt.y1),
            format_rational(pt.y2),
            to_decimal(pt.y1, digits),
            to_decimal(pt.y2, digits),
            ";".join(label(i) for i in pre),
        ])
    return buf.getvalue()


def path_csv(path: ParametricPath, digits: int = DEFAULT_DIGITS) -> str:
    d = len(path.vertices[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "lambda_exact", "lambda_dec", "code"] + [f"x{j}" for j in range(1, d + 1)])
    for k, x in enumerate(path.vertices):
        lo, _ = path.interval(k)
        if lo is Infinity.NEG:
            exact = dec = str(lo)
        else:
            exact, dec = format_rational(lo), to_decimal(lo, digits)
        code = format_code(path.codes[k]) if path.codes else ""
        w.writerow([k, exact, dec, code] + [format_rational(v) for v in x])
    return buf.getvalue()


def _scaler(values: Sequence[Fraction], lo_px: float, hi_px: float):
    vmin, vmax = min(values), max(values)
    span = vmax - vmin
    if not span:
        mid = (lo_px + hi_px) / 2
        return lambda v: mid
    # ratio is exact; only the final pixel value is a float
    return lambda v: lo_px + float((v - vmin) / span) * (hi_px - lo_px)


def polygon_svg(
    shadow: Shadow,
    overlay: Optional[Sequence[Sequence[Fraction]]] = None,
    size: int = 640,
    margin: int = 40,
) -> str:
    """Shadow outline with vertex dots; optional polyline through ``overlay``.

    Each axis is scaled to fit independently, since the two projected
    coordinates may differ by many orders of magnitude.
    """
    pts = list(shadow.polygon.vertices)
    extra = [tuple(p) for p in overlay] if overlay else []
    sx = _scaler([p[0] for p in pts + extra], margin, size - margin)
    sy = _scaler([p[1] for p in pts + extra], size - margin, margin)

    def fmt(p):
        return f"{sx(p[0]):.3f},{sy(p[1]):.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if len(pts) >= 2:
        out.append(
            f'<polygon points="{" ".join(fmt(p) for p in pts)}" fill="#dde8f6" '
            'stroke="#1f4e8c" stroke-width="1.5"/>'
        )
    if len(extra) >= 2:
        out.append(
            f'<polyline points="{" ".join(fmt(p) for p in extra)}" fill="none" '
            'stroke="#c0392b" stroke-width="1" stroke-dasharray="4 2"/>'
        )
    for p in pts:
        x, y = fmt(p).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="#1f4e8c"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
