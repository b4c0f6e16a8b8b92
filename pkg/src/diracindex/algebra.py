"""Exterior and Clifford algebras on an even-dimensional real vector space.

Basis blades are encoded as bitmasks over the generators: bit mu-1 set means
generator mu is a factor, so mask 0b0101 is the blade built from generators
1 and 3, in increasing order.  A multivector is a sparse map from masks to
complex coefficients.  Two product families share this storage:

* exterior flavor: generators anticommute and square to zero (wedge),
* clifford flavor: generators anticommute and square to -1, that is
  {g_mu, g_nu} = -2 delta_{mu,nu}.

The flavor tag records which family an element lives in.  ``phi_eps`` is the
grade-scaling vector-space isomorphism between the two; its failure to be an
algebra map is O(eps^2) and is itself a quantity of interest, so the two
products are never silently mixed.

Operator sugar: ``^`` is wedge, ``*`` is scalar scaling or (between two
clifford elements) the Clifford product.  Python gives ``^`` very low
precedence, parenthesize wedge expressions.
"""

EXTERIOR = "exterior"
CLIFFORD = "clifford"

# Dropped after every product: coefficients below this fraction of the
# largest surviving one.  Linear maps never prune, phi_eps legitimately
# spans eps**dim in relative size and has to round-trip exactly.
PRUNE_RELATIVE = 1e-14

_MAX_DIM = 16

_FLAVOR_SEP = {EXTERIOR: "^", CLIFFORD: "*"}


def _reorder_sign(a, b):
    # Parity of the transpositions that merge sorted blade `a` in front of
    # sorted blade `b`: each generator of b hops over every generator of a
    # with a larger index.
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def _prune(terms):
    if not terms:
        return terms
    cut = PRUNE_RELATIVE * max(abs(c) for c in terms.values())
    return {m: c for m, c in terms.items() if abs(c) > cut}


class AlgebraContext:
    """Dimension bookkeeping shared by all elements of one algebra.

    ``dim`` must be even (dim = 2n) and at most 16: dense iteration over the
    2**dim basis masks has to stay cheap.
    """

    __slots__ = ("dim", "half")

    def __init__(self, dim):
        if not isinstance(dim, int) or dim < 2 or dim % 2 or dim > _MAX_DIM:
            raise ValueError(
                f"dim must be an even integer between 2 and {_MAX_DIM}, got {dim!r}")
        self.dim = dim
        self.half = dim // 2

    def __eq__(self, other):
        return isinstance(other, AlgebraContext) and other.dim == self.dim

    def __hash__(self):
        return hash((AlgebraContext, self.dim))

    def __repr__(self):
        return f"AlgebraContext(dim={self.dim})"

    @property
    def top_mask(self):
        return (1 << self.dim) - 1

    def scalar(self, value, flavor=EXTERIOR):
        return MultiVector(self, {0: value}, flavor)

    def generator(self, mu, flavor=EXTERIOR):
        """Basis generator e_mu (or its clifford twin), mu in 1..dim."""
        if not 1 <= mu <= self.dim:
            raise ValueError(f"generator index {mu} outside 1..{self.dim}")
        return MultiVector(self, {1 << (mu - 1): 1.0}, flavor)

    def blade(self, indices, flavor=EXTERIOR):
        """Basis blade from strictly increasing generator indices."""
        mask = 0
        prev = 0
        for mu in indices:
            if not 1 <= mu <= self.dim:
                raise ValueError(f"generator index {mu} outside 1..{self.dim}")
            if mu <= prev:
                raise ValueError("blade indices must be strictly increasing")
            mask |= 1 << (mu - 1)
            prev = mu
        return MultiVector(self, {mask: 1.0}, flavor)

    def blade_from_mask(self, mask, flavor=EXTERIOR):
        if not 0 <= mask <= self.top_mask:
            raise ValueError(f"mask {mask:#x} outside the {self.dim}-generator algebra")
        return MultiVector(self, {mask: 1.0}, flavor)


class MultiVector:
    """Sparse multivector.  Treat as immutable; build new ones via operations."""

    __slots__ = ("context", "flavor", "terms")

    def __init__(self, context, terms, flavor):
        if flavor not in (EXTERIOR, CLIFFORD):
            raise ValueError(f"unknown flavor {flavor!r}")
        if not isinstance(context, AlgebraContext):
            raise TypeError("context must be an AlgebraContext")
        top = context.top_mask
        clean = {}
        for mask, coeff in terms.items():
            if not 0 <= mask <= top:
                raise ValueError(f"mask {mask:#x} outside the {context.dim}-generator algebra")
            c = complex(coeff)
            if c != 0:
                clean[mask] = c
        self.context = context
        self.flavor = flavor
        self.terms = clean

    # -- inspection ----------------------------------------------------

    def grades(self):
        return sorted({m.bit_count() for m in self.terms})

    def coefficient(self, *indices):
        """Coefficient of the blade with the given strictly increasing indices."""
        mask = 0
        prev = 0
        for mu in indices:
            if mu <= prev:
                raise ValueError("indices must be strictly increasing")
            mask |= 1 << (mu - 1)
            prev = mu
        return self.terms.get(mask, 0j)

    def max_norm(self):
        """Largest coefficient magnitude (0.0 for the zero element)."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero(self):
        return not self.terms

    # -- linear structure (never pruned) -------------------------------

    def _require_same(self, other):
        if not isinstance(other, MultiVector):
            raise TypeError("expected a MultiVector")
        if other.context != self.context:
            raise ValueError("mixed algebra contexts")
        if other.flavor != self.flavor:
            raise ValueError(f"mixed flavors ({self.flavor} vs {other.flavor})")

    def __add__(self, other):
        self._require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiVector(self.context, out, self.flavor)

    def __sub__(self, other):
        self._require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return MultiVector(self.context, out, self.flavor)

    def __neg__(self):
        return MultiVector(self.context, {m: -c for m, c in self.terms.items()}, self.flavor)

    def _scaled(self, factor):
        return MultiVector(self.context, {m: c * factor for m, c in self.terms.items()},
                           self.flavor)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self._scaled(other)
        if isinstance(other, MultiVector):
            return clifford_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self._scaled(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return self._scaled(1 / other)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, MultiVector):
            return wedge(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.context == other.context and self.flavor == other.flavor
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return f"MultiVector<{self.flavor}>(0)"
        sep = _FLAVOR_SEP[self.flavor]
        parts = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            blade = sep.join(f"e{mu + 1}" for mu in range(self.context.dim)
                             if mask >> mu & 1)
            c = self.terms[mask]
            parts.append(f"({c})" if not blade else f"({c})*{blade}")
        return f"MultiVector<{self.flavor}>({' + '.join(parts)})"


def _common_context(a, b):
    if not isinstance(a, MultiVector) or not isinstance(b, MultiVector):
        raise TypeError("expected MultiVector operands")
    if a.context != b.context:
        raise ValueError("mixed algebra contexts")
    if a.flavor != b.flavor:
        raise ValueError(f"mixed flavors ({a.flavor} vs {b.flavor})")
    return a.context


def wedge(a, b):
    """Graded antisymmetric product.  Overlapping blades annihilate."""
    ctx = _common_context(a, b)
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            m = ma | mb
            out[m] = out.get(m, 0) + ca * cb * _reorder_sign(ma, mb)
    return MultiVector(ctx, _prune(out), a.flavor)


def clifford_mul(a, b):
    """Clifford product for the negative-definite generator metric.

    Coinciding generators contract with a factor -1 each, the surviving ones
    combine by xor of the masks with the usual reordering sign.  Both
    operands must carry the clifford flavor; exterior elements go through
    ``phi_eps`` first.
    """
    ctx = _common_context(a, b)
    if a.flavor != CLIFFORD:
        raise TypeError("clifford_mul needs clifford-flavored operands, map through phi_eps")
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign = _reorder_sign(ma, mb)
            if (ma & mb).bit_count() & 1:
                sign = -sign
            m = ma ^ mb
            out[m] = out.get(m, 0) + ca * cb * sign
    return MultiVector(ctx, _prune(out), a.flavor)


def grade_project(a, r):
    """Keep the grade-r part."""
    return MultiVector(a.context, {m: c for m, c in a.terms.items() if m.bit_count() == r},
                       a.flavor)


def hodge_star(a):
    """Hodge dual on the exterior algebra: blade -> signed complement.

    The sign is fixed by blade ^ star(blade) = +(top form), coefficients are
    carried along complex-linearly.
    """
    if a.flavor != EXTERIOR:
        raise TypeError("hodge_star acts on exterior elements")
    top = a.context.top_mask
    out = {}
    for m, c in a.terms.items():
        comp = top & ~m
        out[comp] = c * _reorder_sign(m, comp)
    return MultiVector(a.context, out, EXTERIOR)


def phi_eps(a, eps):
    """Grade-scaling map into the clifford flavor: grade r picks up eps**r.

    A vector-space isomorphism for any eps != 0, but not an algebra map:
    phi_eps_inv(phi_eps(x) * phi_eps(y)) differs from x ^ y at O(eps^2),
    which is how the contraction terms of the Clifford product are dialed in
    and out.
    """
    if a.flavor != EXTERIOR:
        raise TypeError("phi_eps maps exterior elements to clifford ones")
    if eps == 0:
        raise ValueError("eps must be nonzero")
    return MultiVector(a.context,
                       {m: c * eps ** m.bit_count() for m, c in a.terms.items()},
                       CLIFFORD)


def phi_eps_inv(a, eps):
    """Inverse of ``phi_eps``: grade r picks up eps**(-r), back to exterior."""
    if a.flavor != CLIFFORD:
        raise TypeError("phi_eps_inv maps clifford elements to exterior ones")
    if eps == 0:
        raise ValueError("eps must be nonzero")
    return MultiVector(a.context,
                       {m: c * eps ** (-m.bit_count()) for m, c in a.terms.items()},
                       EXTERIOR)


def clifford_trace(a):
    """Trace in the spinor representation: 2**n times the scalar part.

    Every nonscalar basis blade is traceless, so only the empty mask
    contributes.
    """
    if a.flavor != CLIFFORD:
        raise TypeError("clifford_trace needs a clifford element")
    return 2 ** a.context.half * a.terms.get(0, 0j)


def chirality(ctx):
    """The grading involution i**n g_1 g_2 ... g_2n; squares to +1."""
    return MultiVector(ctx, {ctx.top_mask: 1j ** ctx.half}, CLIFFORD)


def supertrace(a):
    """Chirality-weighted trace, tr(chirality * a)."""
    return clifford_trace(clifford_mul(chirality(a.context), a))
