import numpy as np
import pytest

from conftest import random_multivector
from diracindex.algebra import (
    CLIFFORD,
    EXTERIOR,
    AlgebraContext,
    MultiVector,
    chirality,
    clifford_mul,
    clifford_trace,
    grade_project,
    hodge_star,
    phi_eps,
    phi_eps_inv,
    supertrace,
    wedge,
)


def test_context_validation():
    for bad in (0, 1, 3, 7, 18, -2, 2.0):
        with pytest.raises((ValueError, TypeError)):
            AlgebraContext(bad)
    ctx = AlgebraContext(4)
    assert ctx.half == 2 and ctx.top_mask == 0b1111
    with pytest.raises(ValueError):
        ctx.generator(0)
    with pytest.raises(ValueError):
        ctx.generator(5)
    with pytest.raises(ValueError):
        ctx.blade([2, 1])
    # contexts compare by dimension, so independently built ones interoperate
    assert AlgebraContext(4) == ctx
    other = AlgebraContext(6)
    with pytest.raises(ValueError):
        wedge(ctx.generator(1), other.generator(1))


def test_wedge_basics():
    ctx = AlgebraContext(4)
    e1, e2, e3 = (ctx.generator(mu) for mu in (1, 2, 3))
    assert wedge(e1, e1).is_zero()
    assert wedge(e1, e2) == -wedge(e2, e1)
    v = wedge(e1 + e2, wedge(e1, e3))
    assert v.coefficient(1, 2, 3) == -1
    assert len(v.terms) == 1


def test_wedge_vector_nilpotency_is_exact():
    rng = np.random.default_rng(11)
    ctx = AlgebraContext(8)
    for _ in range(20):
        v = random_multivector(ctx, rng, max_grade=1, n_terms=8)
        v = v - grade_project(v, 0)
        assert wedge(v, v).is_zero()


def test_product_associativity_random():
    rng = np.random.default_rng(23)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        ctx = AlgebraContext(2 * n)
        a, b, c = (random_multivector(ctx, rng) for _ in range(3))
        lhs = wedge(wedge(a, b), c)
        rhs = wedge(a, wedge(b, c))
        assert (lhs - rhs).max_norm() < 1e-12
        a, b, c = (random_multivector(ctx, rng, flavor=CLIFFORD) for _ in range(3))
        lhs = clifford_mul(clifford_mul(a, b), c)
        rhs = clifford_mul(a, clifford_mul(b, c))
        assert (lhs - rhs).max_norm() < 1e-12


def test_clifford_anticommutator_exact():
    # {g_mu, g_nu} = -2 delta, with no float dust at all
    for n in range(1, 5):
        ctx = AlgebraContext(2 * n)
        for mu in range(1, 2 * n + 1):
            for nu in range(1, 2 * n + 1):
                gm = ctx.generator(mu, CLIFFORD)
                gn = ctx.generator(nu, CLIFFORD)
                acomm = clifford_mul(gm, gn) + clifford_mul(gn, gm)
                want = ctx.scalar(-2.0 if mu == nu else 0.0, CLIFFORD)
                assert acomm == want


def test_scaled_anticommutator():
    ctx = AlgebraContext(6)
    for eps in (0.5, 1e-2, 2.0, 0.3 + 0.4j):
        for mu, nu in ((1, 1), (2, 5), (4, 4)):
            a = phi_eps(ctx.generator(mu), eps)
            b = phi_eps(ctx.generator(nu), eps)
            acomm = clifford_mul(a, b) + clifford_mul(b, a)
            want = ctx.scalar(-2 * eps * eps if mu == nu else 0.0, CLIFFORD)
            assert (acomm - want).max_norm() == 0.0


def test_grade_project():
    ctx = AlgebraContext(4)
    e1 = ctx.generator(1, CLIFFORD)
    sq = clifford_mul(e1, e1)
    assert grade_project(sq, 0) == ctx.scalar(-1.0, CLIFFORD)
    rng = np.random.default_rng(3)
    a = random_multivector(ctx, rng, n_terms=12)
    back = ctx.scalar(0.0)
    for r in range(ctx.dim + 1):
        back = back + grade_project(a, r)
    assert back == a


def test_hodge_examples():
    ctx2 = AlgebraContext(2)
    e1, e2 = ctx2.generator(1), ctx2.generator(2)
    assert hodge_star(e1) == e2
    assert hodge_star(e2) == -e1
    ctx4 = AlgebraContext(4)
    top = ctx4.blade([1, 2, 3, 4])
    assert hodge_star(ctx4.scalar(1.0)) == top
    assert hodge_star(top) == ctx4.scalar(1.0)


def test_hodge_complement_normalization():
    # defining property: blade ^ star(blade) = +top, for every basis blade
    for dim in (2, 4, 6):
        ctx = AlgebraContext(dim)
        top = ctx.blade_from_mask(ctx.top_mask)
        for mask in range(ctx.top_mask + 1):
            b = ctx.blade_from_mask(mask)
            assert wedge(b, hodge_star(b)) == top


def test_hodge_double_star_sign():
    # star(star(b)) = (-1)^grade b in even total dimension
    ctx = AlgebraContext(6)
    for mask in range(ctx.top_mask + 1):
        b = ctx.blade_from_mask(mask)
        sign = -1 if mask.bit_count() & 1 else 1
        assert hodge_star(hodge_star(b)) == sign * b


def test_phi_eps_roundtrip():
    rng = np.random.default_rng(7)
    ctx = AlgebraContext(8)
    for eps in (0.1, 1e-3, 2.0, 0.3 + 0.4j):
        a = random_multivector(ctx, rng, n_terms=10)
        back = phi_eps_inv(phi_eps(a, eps), eps)
        assert set(back.terms) == set(a.terms)
        assert (back - a).max_norm() < 1e-12


def test_phi_eps_flavor_discipline():
    ctx = AlgebraContext(4)
    a = ctx.generator(1)
    with pytest.raises(TypeError):
        clifford_mul(a, a)
    with pytest.raises(TypeError):
        phi_eps_inv(a, 0.5)
    b = phi_eps(a, 0.5)
    with pytest.raises(TypeError):
        phi_eps(b, 0.5)
    with pytest.raises(TypeError):
        hodge_star(b)
    with pytest.raises(ValueError):
        phi_eps(a, 0.0)


def test_phi_eps_defect_scales_quadratically():
    # phi is not an algebra map: the defect against wedge shrinks like eps^2
    rng = np.random.default_rng(19)
    ctx = AlgebraContext(4)
    xi = random_multivector(ctx, rng, max_grade=2, n_terms=6)
    eta = random_multivector(ctx, rng, max_grade=2, n_terms=6)
    defects = []
    for eps in (1e-1, 1e-2):
        prod = clifford_mul(phi_eps(xi, eps), phi_eps(eta, eps))
        defects.append((phi_eps_inv(prod, eps) - wedge(xi, eta)).max_norm())
    assert 50 < defects[0] / defects[1] < 200


def test_clifford_trace():
    for n in range(1, 5):
        ctx = AlgebraContext(2 * n)
        assert clifford_trace(ctx.scalar(1.0, CLIFFORD)) == 2**n
        for mask in range(1, ctx.top_mask + 1):
            assert clifford_trace(ctx.blade_from_mask(mask, CLIFFORD)) == 0
    ctx = AlgebraContext(2)
    a = ctx.scalar(2.0, CLIFFORD) + 3 * ctx.generator(1, CLIFFORD)
    assert clifford_trace(a) == 4.0


def test_chirality_squares_to_one():
    # holds for every n under this sign convention, not just even n
    for n in range(1, 5):
        ctx = AlgebraContext(2 * n)
        g = chirality(ctx)
        assert clifford_mul(g, g) == ctx.scalar(1.0, CLIFFORD)


def test_chirality_anticommutes_with_generators():
    for n in (1, 2, 3):
        ctx = AlgebraContext(2 * n)
        g = chirality(ctx)
        for mu in range(1, 2 * n + 1):
            v = ctx.generator(mu, CLIFFORD)
            assert (clifford_mul(g, v) + clifford_mul(v, g)).is_zero()


def test_chirality_pulls_back_to_volume_form():
    for n in (1, 2, 3):
        ctx = AlgebraContext(2 * n)
        vol = hodge_star(ctx.scalar(1.0))
        assert phi_eps_inv(chirality(ctx), 1.0) == 1j**n * vol


def test_supertrace():
    ctx = AlgebraContext(2)
    assert supertrace(ctx.scalar(1.0, CLIFFORD)) == 0
    top = ctx.blade([1, 2], CLIFFORD)
    assert supertrace(top) == -2j
    for n in range(1, 5):
        ctx = AlgebraContext(2 * n)
        assert supertrace(chirality(ctx)) == 2**n


def test_products_prune_relative_dust():
    ctx = AlgebraContext(4)
    e1, e2, e3 = (ctx.generator(mu) for mu in (1, 2, 3))
    a = e1 + 1e-20 * e2
    v = wedge(a, e3)
    assert v.coefficient(1, 3) == 1
    assert v.coefficient(2, 3) == 0  # below 1e-14 of the leading term


def test_linear_operations_do_not_prune():
    ctx = AlgebraContext(4)
    a = ctx.scalar(1.0) + 1e-20 * ctx.generator(1)
    assert len(a.terms) == 2
    full = ctx.scalar(1.0) + ctx.blade([1, 2, 3, 4])
    back = phi_eps_inv(phi_eps(full, 1e-3), 1e-3)  # grade 4 sits at 1e-12 relative
    assert (back - full).max_norm() < 1e-12
    assert len(back.terms) == 2


def test_operator_sugar():
    rng = np.random.default_rng(5)
    ctx = AlgebraContext(4)
    a = random_multivector(ctx, rng)
    b = random_multivector(ctx, rng)
    assert (a ^ b) == wedge(a, b)
    assert 2 * a == a + a
    assert a / 2 + a / 2 == a
    assert a - b == a + (-b)
    ca = phi_eps(a, 1.0)
    cb = phi_eps(b, 1.0)
    assert ca * cb == clifford_mul(ca, cb)
    assert (2.0 * ca).max_norm() == 2 * ca.max_norm()
