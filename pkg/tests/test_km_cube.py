from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.errors import DimensionError, ParameterError
from shadowlab.km_cube import (
    KmParams,
    basis_to_code,
    check_lemma_main,
    code_to_basis,
    edge_delta,
    edge_direction_y,
    flip,
    format_code,
    km_start_code,
    km_vertex,
    lemma_main_sweep,
    objective_c,
    objective_d_u,
    objective_e_u,
    parity_p,
    parse_code,
    q_ell,
    shadow_lambda,
)
from shadowlab.exact_linalg import sub
from shadowlab.polytope import is_feasible, tight_rows

Q = F(1, 4)
EPSILONS = [F(1, 4), F(1, 3), F(2, 5)]


def codes(d):
    return list(product((0, 1), repeat=d))


def test_params_validation():
    with pytest.raises(ParameterError):
        KmParams(3, F(1, 2))
    with pytest.raises(ParameterError):
        KmParams(0, Q)
    assert KmParams(2).eps == Q


def test_code_text_form():
    assert parse_code("101") == (1, 0, 1)
    assert format_code((1, 0, 1)) == "101"
    with pytest.raises(ParameterError):
        parse_code("12")
    assert basis_to_code(code_to_basis((1, 0, 1)), 3) == (1, 0, 1)
    with pytest.raises(ParameterError):
        basis_to_code((0, 1, 2), 3)


def test_km_vertex_examples():
    assert km_vertex((0, 0, 0), KmParams(3, Q)) == (0, 0, 0)
    p = KmParams(2, Q)
    assert km_vertex((1, 0), p) == (1, F(1, 4))
    assert km_vertex((1, 1), p) == (1, F(3, 4))
    with pytest.raises(DimensionError):
        km_vertex((1,), p)


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("eps", EPSILONS)
def test_km_vertex_is_the_vertex_named_by_its_code(d, eps):
    p = KmParams(d, eps)
    P = p.polytope()
    for u in codes(d):
        x = km_vertex(u, p)
        assert is_feasible(P, x)
        assert tight_rows(P, x) == code_to_basis(u)
        assert all(0 <= xj <= 1 for xj in x)
        # x_j can only be 0 or 1 when every earlier bit is 0
        for j in range(d):
            assert (x[j] in (0, 1)) == (not any(u[:j]))


def test_parity_examples():
    assert parity_p((1, 0, 1), 1, 3) == 1
    for u in codes(3):
        for i in range(1, 4):
            assert parity_p(u, i, i - 1) == 1
    assert all(parity_p((0, 0, 0, 0), i, j) == 1 for i in range(1, 5) for j in range(i, 5))
    with pytest.raises(DimensionError):
        parity_p((0, 1), 0, 1)
    with pytest.raises(DimensionError):
        parity_p((0, 1), 1, 3)


@pytest.mark.parametrize("d", range(1, 9))
def test_parity_cancellation_identity(d):
    for u in codes(d):
        for ell in range(1, d + 1):
            for j in range(ell, d + 1):
                assert parity_p(u, j + 1, d) * parity_p(u, ell + 1, d) == parity_p(u, ell + 1, j)


def test_q_examples():
    assert q_ell((0,), 1, KmParams(1, Q)) == 1
    p = KmParams(2, Q)
    assert q_ell((1, 0), 2, p) == F(1, 2)
    assert q_ell((1, 1), 2, p) == F(-1, 2)


@pytest.mark.parametrize("eps", EPSILONS)
def test_q_sign_and_magnitude(eps):
    p = KmParams(4, eps)
    for u in codes(4):
        for ell in range(1, 5):
            q = q_ell(u, ell, p)
            assert (q > 0) == (u[ell - 1] == 0)
            assert abs(q) >= 1 - 2 * eps


def test_edge_delta_examples():
    p = KmParams(2, Q)
    # x(1,0) - x(0,0) = (1, 1/4) - (0, 0)
    assert edge_delta((0, 0), 1, p) == (1, F(1, 4))
    p3 = KmParams(3, Q)
    for u in codes(3):
        delta = edge_delta(u, 3, p3)
        assert delta[:2] == (0, 0) and delta[2] == q_ell(u, 3, p3)
        for ell in range(1, 4):
            assert all(v == 0 for v in edge_delta(u, ell, p3)[: ell - 1])


def test_edge_direction_y_examples():
    p = KmParams(3, Q)
    assert edge_direction_y((0, 0, 0), 1, p) == (1, F(1, 4), F(1, 16))
    assert edge_direction_y((0, 1, 0), 1, p) == (1, F(-1, 4), F(-1, 16))
    for u in codes(3):
        assert edge_direction_y(u, 3, p) == (0, 0, 1)


@pytest.mark.parametrize("d", range(1, 9))
def test_edge_lemma_against_recursion(d):
    p = KmParams(d, F(1, 3))
    for u in codes(d):
        for ell in range(1, d + 1):
            direct = sub(km_vertex(flip(u, ell), p), km_vertex(u, p))
            y = edge_direction_y(u, ell, p)
            assert edge_delta(u, ell, p) == direct
            assert tuple(q_ell(u, ell, p) * v for v in y) == direct


def test_objective_c_examples():
    assert objective_c(KmParams(3, Q)) == (F(1, 4096), F(1, 64), 0)
    assert objective_c(KmParams(1, Q)) == (0,)
    assert objective_c(KmParams(2, F(1, 3))) == (F(1, 27), 0)


def lam_oracle(u, eps):
    # direct transcription with explicit products
    d = len(u)
    total = F(0)
    for j in range(d):
        sign = 1
        for k in range(j, d):
            sign *= 1 - 2 * u[k]
        total += sign * eps ** (2 * (d - j))
    return -total


def test_objective_d_u_examples():
    p1 = KmParams(1, Q)
    assert objective_d_u((0,), p1) == ((F(-1, 16),), F(-1, 16))
    assert objective_d_u((1,), p1) == ((F(1, 16),), F(1, 16))
    vec, lam = objective_d_u((0, 0), KmParams(2, Q))
    assert vec == (0, F(-17, 256)) and lam == F(-17, 256)


@pytest.mark.parametrize("d", range(1, 9))
@pytest.mark.parametrize("eps", EPSILONS)
def test_lambda_matches_oracle_and_is_injective(d, eps):
    p = KmParams(d, eps)
    lams = [shadow_lambda(u, p) for u in codes(d)]
    assert lams == [lam_oracle(u, eps) for u in codes(d)]
    assert len(set(lams)) == len(lams)


def test_lemma_main_examples():
    rep = check_lemma_main((0,), KmParams(1, Q))
    assert rep.values == (F(-1, 16),) and rep.ok
    sweep = lemma_main_sweep(KmParams(3, Q))
    assert len(sweep) == 8 and all(len(r.values) == 3 and r.ok for r in sweep)


@pytest.mark.parametrize("eps", EPSILONS)
def test_lemma_main_sign_matches_leading_term(eps):
    p = KmParams(5, eps)
    for rep in lemma_main_sweep(p):
        u = rep.code
        for ell, value in enumerate(rep.values, start=1):
            lead = -(1 - 2 * u[ell - 1]) * q_ell(u, ell, p)
            assert lead < 0 and value < 0


@pytest.mark.parametrize("eps", EPSILONS)
def test_lemma_main_value_is_difference_of_objective(eps):
    p = KmParams(4, eps)
    for u in codes(4):
        e = objective_e_u(u, p)
        rep = check_lemma_main(u, p)
        for ell in range(1, 5):
            lhs = sum(a * b for a, b in zip(e, km_vertex(flip(u, ell), p)))
            rhs = sum(a * b for a, b in zip(e, km_vertex(u, p)))
            assert rep.values[ell - 1] == lhs - rhs


def start_oracle(d, eps):
    best = None
    for u in product((0, 1), repeat=d):
        x = F(0)
        for bit in u:
            x = bit + (1 - 2 * bit) * eps * x
        if best is None or x < best[0]:
            best = (x, u)
    return best[1]


def test_km_start_code():
    assert km_start_code(KmParams(1, Q)) == (0,)
    # brute force over the four codes: x_2 = 0, 1/4, 1, 3/4
    assert start_oracle(2, Q) == (0, 0)
    assert km_start_code(KmParams(2, Q)) == (0, 0)
    for d in range(1, 9):
        for eps in EPSILONS:
            assert km_start_code(KmParams(d, eps)) == start_oracle(d, eps)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 7),
    st.fractions(min_value=F(1, 100), max_value=F(49, 100), max_denominator=100),
    st.data(),
)
def test_lemma_main_random_eps(d, eps, data):
    u = tuple(data.draw(st.lists(st.integers(0, 1), min_size=d, max_size=d)))
    assert check_lemma_main(u, KmParams(d, eps)).ok
