import numpy as np

from diracindex.algebra import EXTERIOR, MultiVector


def random_multivector(ctx, rng, flavor=EXTERIOR, max_grade=None, n_terms=6):
    """Sparse random element with coefficients uniform in [-1,1]^2."""
    cap = ctx.dim if max_grade is None else max_grade
    masks = [m for m in range(ctx.top_mask + 1) if m.bit_count() <= cap]
    idx = rng.choice(len(masks), size=min(n_terms, len(masks)), replace=False)
    terms = {masks[k]: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for k in idx}
    return MultiVector(ctx, terms, flavor)


def random_two_form(ctx, rng):
    """Random real grade-2 element (a curvature-style entry)."""
    terms = {}
    for i in range(1, ctx.dim + 1):
        for j in range(i + 1, ctx.dim + 1):
            terms[(1 << (i - 1)) | (1 << (j - 1))] = rng.uniform(-1, 1)
    return MultiVector(ctx, terms, EXTERIOR)
