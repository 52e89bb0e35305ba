"""Verification suites behind ``shadowlab verify``.

Each suite returns a :class:`Report` of ``key: value`` lines ending in PASS
or FAIL. Reports contain only exact, seed-determined values so identical
flags give byte-identical output.
"""

import random
from fractions import Fraction
from typing import List, Tuple

from .exact_linalg import sub
from .km_cube import (
    KmParams,
    all_codes,
    code_to_basis,
    flip,
    km_start_code,
    km_vertex,
    km_vertices,
    lemma_main_sweep,
    objective_c,
    parity_p,
    projection_d,
    q_ell,
    edge_direction_y,
    shadow_lambda,
)
from .parametric import Infinity, gass_saaty_path, value_pieces, verify_path_against_oracle
from .polytope import enumerate_vertices
from .shadow import ProjectionPair, box_shadow_report, random_box, random_projection, shadow_of_vertices

SUITES = ("km-shadow", "km-lemmas", "box-bound", "path-oracle")


class Report:
    def __init__(self, suite: str):
        self.lines: List[Tuple[str, str]] = [("suite", suite)]
        self.checks: List[Tuple[str, bool]] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def check(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def render(self) -> str:
        rows = [f"{k}: {v}" for k, v in self.lines]
        rows += [f"check.{name}: {'pass' if ok else 'fail'}" for name, ok in self.checks]
        rows.append("PASS" if self.ok else "FAIL")
        return "\n".join(rows) + "\n"


def km_shadow(dim: int, eps: Fraction) -> Report:
    p = KmParams(dim, eps)
    rep = Report("km-shadow")
    rep.add("dim", dim)
    rep.add("eps", p.eps)
    listed = km_vertices(p)
    shadow = shadow_of_vertices(ProjectionPair(objective_c(p), projection_d(p)), [x for _, x, _ in listed])
    rep.add("vertices", len(listed))
    rep.add("hull_vertices", shadow.size)
    rep.add("expected", 2**dim)
    rep.check("hull_is_2^d", shadow.size == 2**dim)
    rep.check("preimages_unique", all(len(pre) == 1 for pre in shadow.preimages))
    return rep


def km_lemmas(dim: int, eps: Fraction) -> Report:
    p = KmParams(dim, eps)
    rep = Report("km-lemmas")
    rep.add("dim", dim)
    rep.add("eps", p.eps)

    sweep = lemma_main_sweep(p)
    values = [v for r in sweep for v in r.values]
    negative = sum(1 for v in values if v < 0)
    rep.add("lemma_main.checks", len(values))
    rep.add("lemma_main.negative", negative)
    rep.check("lemma_main", negative == len(values))

    vertices = {u: km_vertex(u, p) for u in all_codes(dim)}
    edge_total = edge_ok = 0
    for u, x in vertices.items():
        for ell in range(1, dim + 1):
            direct = sub(vertices[flip(u, ell)], x)
            q = q_ell(u, ell, p)
            closed = tuple(q * y for y in edge_direction_y(u, ell, p))
            edge_total += 1
            edge_ok += direct == closed
    rep.add("edge_lemma.checks", edge_total)
    rep.add("edge_lemma.matching", edge_ok)
    rep.check("edge_lemma", edge_ok == edge_total)

    par_total = par_ok = 0
    for u in vertices:
        for ell in range(1, dim + 1):
            for j in range(ell, dim + 1):
                par_total += 1
                par_ok += parity_p(u, j + 1, dim) * parity_p(u, ell + 1, dim) == parity_p(u, ell + 1, j)
    rep.add("parity_identity.checks", par_total)
    rep.add("parity_identity.holding", par_ok)
    rep.check("parity_identity", par_ok == par_total)

    lams = [shadow_lambda(u, p) for u in vertices]
    rep.add("lambda.distinct", len(set(lams)))
    rep.check("lambda_distinct", len(set(lams)) == len(lams))
    return rep


def trial_rng(seed: int, trial: int) -> random.Random:
    # per-trial stream, independent of how trials are scheduled
    return random.Random(f"{seed}:{trial}")


def box_bound(dim: int, trials: int, seed: int) -> Report:
    rep = Report("box-bound")
    rep.add("dim", dim)
    rep.add("trials", trials)
    rep.add("seed", seed)
    max_hull = max_patterns = 0
    covered = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        r = box_shadow_report(random_box(rng, dim), random_projection(rng, dim))
        max_hull = max(max_hull, r.hull_size)
        max_patterns = max(max_patterns, r.pattern_count)
        covered += r.corners_cover_hull
    rep.add("bound", 2 * dim)
    rep.add("max_hull_size", max_hull)
    rep.add("max_sign_patterns", max_patterns)
    rep.add("trials_with_cover", covered)
    rep.check("hull_size_bound", max_hull <= 2 * dim)
    rep.check("sign_pattern_bound", max_patterns <= 2 * dim)
    rep.check("preimages_in_pattern_corners", covered == trials)
    return rep


def km_path_checks(p: KmParams, rep: Report, oracle: bool):
    P = p.polytope()
    c, d = objective_c(p), projection_d(p)
    path = gass_saaty_path(P, c, d, code_to_basis(km_start_code(p)))
    rep.add("path.vertices", path.M)
    rep.add("path.breakpoints", len(path.breakpoints))
    rep.check("path_visits_2^d", path.M == 2**p.d and len(set(path.codes)) == path.M)
    rep.check(
        "gray_order",
        all(sum(a != b for a, b in zip(u, v)) == 1 for u, v in zip(path.codes, path.codes[1:])),
    )
    bps = path.breakpoints
    rep.check("breakpoints_increase", all(a < b for a, b in zip(bps, bps[1:])))
    pieces = value_pieces(path, c, d)
    rep.check(
        "continuity",
        all(pieces[k][0] + lam * pieces[k][1] == pieces[k + 1][0] + lam * pieces[k + 1][1]
            for k, lam in enumerate(bps)),
    )
    rep.check("convex_value", all(a[1] < b[1] for a, b in zip(pieces, pieces[1:])))
    inside = 0
    for k, u in enumerate(path.codes):
        lam = shadow_lambda(u, p)
        lo, hi = path.interval(k)
        inside += (lo is Infinity.NEG or lo < lam) and (hi is Infinity.POS or lam < hi)
    rep.add("lambda_u.inside", inside)
    rep.check("lambda_u_interior", inside == path.M)
    if oracle:
        res = verify_path_against_oracle(P, path, c, d, vertices=[x for _, x in enumerate_vertices(P)])
        rep.add("oracle.samples", res.checked)
        rep.add("oracle.failures", len(res.failures))
        for lam, k, got in res.failures[:5]:
            rep.add("oracle.failure", f"lam={lam} path_index={k} oracle_index={got}")
        rep.check("oracle", res.ok)
    return path


def path_oracle(dim: int, eps: Fraction) -> Report:
    p = KmParams(dim, eps)
    rep = Report("path-oracle")
    rep.add("dim", dim)
    rep.add("eps", p.eps)
    km_path_checks(p, rep, oracle=True)
    return rep


def run(suite: str, dim: int, eps: Fraction, trials: int, seed: int) -> Report:
    if suite == "km-shadow":
        return km_shadow(dim, eps)
    if suite == "km-lemmas":
        return km_lemmas(dim, eps)
    if suite == "box-bound":
        return box_bound(dim, trials, seed)
    if suite == "path-oracle":
        return path_oracle(dim, eps)
    raise ValueError(f"unknown suite {suite!r}")

