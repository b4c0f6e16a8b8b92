import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from conftest import random_two_form
from diracindex.algebra import AlgebraContext, EXTERIOR, CLIFFORD, MultiVector, wedge
from diracindex.charclasses import (
    RIEMANN,
    TWIST,
    FormMatrix,
    FormSeries,
    TWO_PI,
    a_closed_form,
    a_hat,
    a_series_coefficients,
    block_diagonal_riemann,
    chern_character,
    format_partition,
    index_density,
    partition_sum,
    series_exp,
    series_log,
    series_mul,
    series_sqrt_inverse,
    splitting_oracle,
    twist_direct_sum,
    zero_riemann,
)


# -- exact scalar tables -----------------------------------------------------

def test_a_series_exact_values():
    c = a_series_coefficients(3)
    assert c == [Fraction(1), Fraction(-1, 24), Fraction(7, 5760), Fraction(-31, 967680)]
    assert len(a_series_coefficients(12)) == 13
    with pytest.raises(ValueError):
        a_series_coefficients(13)
    with pytest.raises(ValueError):
        a_series_coefficients(-1)


def test_a_series_sums_to_closed_form():
    # independent numeric check of the rational division
    y = 0.2
    c = a_series_coefficients(6)
    approx = sum(float(ck) * y ** (2 * k) for k, ck in enumerate(c))
    assert abs(approx - a_closed_form(y)) < 1e-14


def test_splitting_oracle_tables():
    assert splitting_oracle(1, 2) == {(): Fraction(1), (1,): Fraction(-1, 24)}
    assert splitting_oracle(2, 4) == {
        (): Fraction(1),
        (1,): Fraction(-1, 24),
        (1, 1): Fraction(7, 5760),
        (2,): Fraction(-1, 1440),
    }
    # with a single variable there is no p2, its weight folds into p1^2
    assert splitting_oracle(1, 4) == {
        (): Fraction(1),
        (1,): Fraction(-1, 24),
        (1, 1): Fraction(7, 5760),
    }
    for n in (1, 2, 3):
        assert splitting_oracle(n, 0) == {(): Fraction(1)}
    with pytest.raises(ValueError):
        splitting_oracle(0, 4)
    with pytest.raises(ValueError):
        splitting_oracle(2, -2)


def test_splitting_oracle_matches_direct_product_exactly():
    # expand prod_l A(x_l) in exact monomials of z_l = x_l^2 and compare
    def poly_mul(p, q, deg):
        out = {}
        for ka, ca in p.items():
            for kb, cb in q.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                if sum(key) <= deg:
                    out[key] = out.get(key, Fraction(0)) + ca * cb
        return out

    n, cap = 2, 8
    deg = cap // 2
    coeffs = a_series_coefficients(deg)
    zero = (0,) * n
    direct = {zero: Fraction(1)}
    for l in range(n):
        factor = {}
        for k, ck in enumerate(coeffs):
            key = tuple(k if i == l else 0 for i in range(n))
            factor[key] = ck
        direct = poly_mul(direct, factor, deg)
    direct = {k: c for k, c in direct.items() if c}

    # realize each oracle monomial in the z variables: p_j -> e_j(z_1..z_n)
    elem = {}
    for j in range(1, n + 1):
        acc = {}
        for comb in combinations(range(n), j):
            key = tuple(1 if i in comb else 0 for i in range(n))
            acc[key] = Fraction(1)
        elem[j] = acc
    table = splitting_oracle(n, cap)
    expanded = {}
    for key, c in table.items():
        term = {zero: c}
        for j in key:
            term = poly_mul(term, elem[j], deg)
        for k, v in term.items():
            expanded[k] = expanded.get(k, Fraction(0)) + v
    expanded = {k: c for k, c in expanded.items() if c}
    assert expanded == direct


def test_format_partition():
    assert format_partition(()) == "1"
    assert format_partition((1,)) == "p1"
    assert format_partition((1, 1)) == "p1^2"
    assert format_partition((1, 1, 2)) == "p1^2*p2"
    assert format_partition((2, 3)) == "p2*p3"


# -- series layer ------------------------------------------------------------

def test_form_series_validation():
    ctx = AlgebraContext(4)
    with pytest.raises(ValueError):
        FormSeries(ctx.generator(1))  # odd grade
    with pytest.raises(TypeError):
        FormSeries(ctx.scalar(1.0, CLIFFORD))
    s = FormSeries(ctx.scalar(2.0) + ctx.blade([1, 2]))
    assert s.scalar_part() == 2.0
    assert s.grades() == [0, 2]


def test_series_exp_against_hand_expansion():
    ctx = AlgebraContext(4)
    a = FormSeries(ctx.blade([1, 2]) + ctx.blade([3, 4]))
    full = series_exp(a, 4)
    want = ctx.scalar(1.0) + ctx.blade([1, 2]) + ctx.blade([3, 4]) + ctx.blade([1, 2, 3, 4])
    assert (full.value - want).max_norm() < 1e-15
    capped = series_exp(a, 2)
    assert capped.value.terms.get(0b1111) is None


def test_series_log_exp_roundtrip():
    rng = np.random.default_rng(31)
    ctx = AlgebraContext(6)
    for _ in range(5):
        even = ctx.scalar(rng.uniform(0.5, 2.0))
        for masks in range(4):
            i, j = sorted(rng.choice(np.arange(1, 7), size=2, replace=False))
            even = even + rng.uniform(-0.5, 0.5) * ctx.blade([int(i), int(j)])
        s = FormSeries(even)
        back = series_exp(series_log(s))
        assert (back.value - s.value).max_norm() < 1e-12


def test_series_log_needs_positive_scalar():
    ctx = AlgebraContext(4)
    with pytest.raises(ValueError):
        series_log(FormSeries(ctx.scalar(0.0) + ctx.blade([1, 2])))
    with pytest.raises(ValueError):
        series_log(FormSeries(ctx.scalar(-1.0)))
    with pytest.raises(ValueError):
        series_sqrt_inverse(FormSeries(ctx.scalar(-2.0)))


def test_series_sqrt_inverse_property():
    ctx = AlgebraContext(6)
    s = FormSeries(ctx.scalar(3.0) + 0.4 * ctx.blade([1, 2]) + 0.7 * ctx.blade([2, 5]))
    r = series_sqrt_inverse(s)
    prod = series_mul(series_mul(r, r), s)
    assert (prod.value - ctx.scalar(1.0)).max_norm() < 1e-13


# -- curvature matrices ------------------------------------------------------

def test_form_matrix_validation():
    ctx = AlgebraContext(4)
    th = ctx.blade([1, 2])
    z = ctx.scalar(0.0)
    with pytest.raises(ValueError):
        FormMatrix([[z, th], [th, z]], RIEMANN)  # not antisymmetric
    with pytest.raises(ValueError):
        FormMatrix([[z, th]], RIEMANN)  # not square
    with pytest.raises(ValueError):
        FormMatrix([[z, th], [-th, z]], RIEMANN)  # wrong size for dim 4
    with pytest.raises(ValueError):
        FormMatrix([[ctx.generator(1)]], TWIST)  # not a 2-form
    with pytest.raises(ValueError):
        FormMatrix([[1j * th]], TWIST)  # diagonal must be real under conj-transpose
    with pytest.raises(ValueError):
        cplx = [[z] * 4 for _ in range(4)]
        cplx[0][1] = 1j * th
        cplx[1][0] = -1j * th
        FormMatrix(cplx, RIEMANN)  # complex riemann entries
    with pytest.raises(ValueError):
        FormMatrix([[th]], "metric")
    off = 0.3 + 0.7j
    ok = FormMatrix([[th, off * th], [off.conjugate() * th, 2 * th]], TWIST)
    assert ok.size == 2
    with pytest.raises(ValueError):
        FormMatrix([[th, off * th], [off * th, 2 * th]], TWIST)


def test_block_diagonal_riemann():
    ctx = AlgebraContext(4)
    th = ctx.blade([1, 2])
    with pytest.raises(ValueError):
        block_diagonal_riemann(ctx, [th])
    R = block_diagonal_riemann(ctx, [th, 2 * th])
    assert R.kind == RIEMANN
    assert R.entry(0, 1) == th and R.entry(1, 0) == -th
    assert R.entry(2, 3) == 2 * th


# -- genus and character -----------------------------------------------------

def test_a_hat_flat_is_one():
    ctx = AlgebraContext(6)
    A = a_hat(zero_riemann(ctx))
    assert A.value == ctx.scalar(1.0)


def test_a_hat_single_block_matches_scalar_series():
    # one rotation block with parameter theta: the genus is the scalar series
    # evaluated at theta/(2 pi), wedge powers replacing y powers
    ctx = AlgebraContext(4)
    theta = 2.5 * ctx.blade([1, 2]) + 0.7 * ctx.blade([3, 4])
    R = block_diagonal_riemann(ctx, [theta, ctx.scalar(0.0)])
    A = a_hat(R)
    x = theta * (1.0 / TWO_PI)
    coeffs = a_series_coefficients(2)
    want = ctx.scalar(float(coeffs[0])) + float(coeffs[1]) * wedge(x, x)
    assert (A.value - want).max_norm() < 1e-15


def test_a_hat_matches_splitting_oracle():
    rng = np.random.default_rng(97)
    ctx = AlgebraContext(6)
    blocks = [random_two_form(ctx, rng) for _ in range(2)] + [ctx.scalar(0.0)]
    R = block_diagonal_riemann(ctx, blocks)
    A = a_hat(R)
    squares = [wedge(b * (1.0 / TWO_PI), b * (1.0 / TWO_PI)) for b in blocks]

    def elementary(j):
        acc = ctx.scalar(0.0)
        for comb in combinations(range(len(squares)), j):
            term = ctx.scalar(1.0)
            for i in comb:
                term = wedge(term, squares[i])
            acc = acc + term
        return acc

    want = ctx.scalar(0.0)
    for key, c in splitting_oracle(3, 6).items():
        term = ctx.scalar(float(c))
        for j in key:
            term = wedge(term, elementary(j))
        want = want + term
    assert (A.value - want).max_norm() < 1e-12


def test_a_hat_rejects_twist():
    ctx = AlgebraContext(4)
    F = FormMatrix([[ctx.blade([1, 2])]], TWIST)
    with pytest.raises(TypeError):
        a_hat(F)


def test_chern_character_rank_and_flux():
    ctx = AlgebraContext(2)
    F = FormMatrix([[3.0 * ctx.blade([1, 2])]], TWIST)
    ch = chern_character(F)
    assert ch.scalar_part() == 1.0
    assert abs(ch.coefficient(1, 2) - 3.0 / TWO_PI) < 1e-15
    z = ctx.scalar(0.0)
    triv = FormMatrix([[z, z], [z, z]], TWIST)
    assert chern_character(triv).value == ctx.scalar(2.0)


def test_chern_character_additive_on_direct_sums():
    ctx = AlgebraContext(4)
    F1 = FormMatrix([[1.2 * ctx.blade([1, 2])]], TWIST)
    off = 0.4 - 0.9j
    F2 = FormMatrix([[0.5 * ctx.blade([3, 4]), off * ctx.blade([1, 3])],
                     [off.conjugate() * ctx.blade([1, 3]), -0.8 * ctx.blade([1, 4])]], TWIST)
    lhs = chern_character(twist_direct_sum(F1, F2))
    rhs = chern_character(F1) + chern_character(F2)
    assert (lhs.value - rhs.value).max_norm() < 1e-15


def test_chern_character_real_for_valid_twists():
    rng = np.random.default_rng(12)
    ctx = AlgebraContext(6)
    size = 3
    entries = [[None] * size for _ in range(size)]
    for i in range(size):
        entries[i][i] = random_two_form(ctx, rng)
        for j in range(i + 1, size):
            e = random_two_form(ctx, rng)
            f = random_two_form(ctx, rng)
            entries[i][j] = e + 1j * f
            entries[j][i] = e + (-1j) * f
    ch = chern_character(FormMatrix(entries, TWIST))
    assert max(abs(c.imag) for c in ch.value.terms.values()) < 1e-12


def test_index_density_torus():
    ctx = AlgebraContext(2)
    F = FormMatrix([[3.0 * ctx.blade([1, 2])]], TWIST)
    dens = index_density(None, F)
    assert dens.grades() in ([], [2])
    assert abs(dens.coefficient(1, 2).real * TWO_PI - 3.0) < 1e-12
    flat = index_density(zero_riemann(ctx), F)
    assert (flat.value - dens.value).max_norm() == 0.0
    with pytest.raises(ValueError):
        index_density(None, None)


# -- scalar closed forms -----------------------------------------------------

def test_a_closed_form():
    assert a_closed_form(0.0) == 1.0
    assert abs(a_closed_form(1.0) - 0.9595173756674719) < 1e-15
    for y in (0.3, 1.7, 8.0):
        assert a_closed_form(y) == a_closed_form(-y)
    # the small-y branch joins the sinh branch smoothly
    assert abs(a_closed_form(9.9e-5) - a_closed_form(1.01e-4)) < 1e-10


def test_partition_sum_matches_closed_form():
    for y in (0.5, 1.0, 2.0):
        assert abs(partition_sum(y, 100) - a_closed_form(y)) < 1e-12
    # the omitted tail is an exact geometric remainder
    y, M = 0.35, 12
    tail = y * math.exp(-y / 2) * math.exp(-(M + 1) * y) / (1 - math.exp(-y))
    assert abs(a_closed_form(y) - partition_sum(y, M) - tail) < 1e-15


def test_partition_sum_monotone_and_validated():
    vals = [partition_sum(0.8, M) for M in (0, 1, 5, 20, 80)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        partition_sum(0.0, 10)
    with pytest.raises(ValueError):
        partition_sum(-1.0, 10)
    with pytest.raises(ValueError):
        partition_sum(1.0, -1)
