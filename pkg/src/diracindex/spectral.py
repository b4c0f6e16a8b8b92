"""Spectral side of the index: chirality-graded heat sums, a constant-flux
torus background with its Wilson and overlap operators, and an exactly
solvable monopole fixture.

Three independent integers are computable here for a lattice background and
are asserted equal by the verification layer: the plaquette-angle flux, the
spectral-flow count of the Wilson-overlap construction, and the zero-mode
chirality asymmetry of the squared overlap spectrum.  Heat sums over that
spectrum are then tau-independent up to truncation noise, which is the
pairing statement made quantitative by ``pair_check``.

Numerical-ambiguity failures (a flux sum far from an integer, a sign
function fed a near-zero eigenvalue, an unsharp zero-mode chirality, a
collapsed zero/nonzero gap) raise AmbiguousSpectrumError rather than guess.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi

ZERO_TOL = 1e-10
CLUSTER_RELATIVE_GAP = 1e-6
GAP_RATIO_MIN = 1e3
INTEGER_RESIDUAL = 0.01

_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# Chirality orientation is a convention; this assignment (Gamma = +i g1 g2)
# is the one under which the overlap count of the constant-flux background
# comes out equal to the plaquette flux, not its negative.
GAMMA1 = _SIGMA2
GAMMA2 = _SIGMA1
GAMMA5 = _SIGMA3


class AmbiguousSpectrumError(RuntimeError):
    """A spectral quantity cannot be read off unambiguously."""


# ---------------------------------------------------------------------------
# graded spectra


@dataclass(frozen=True)
class SpectralSystem:
    """Chirality-graded nonnegative spectrum.

    modes holds (eigenvalue, chirality) pairs with chirality +-1.  The
    convention flag records what the eigenvalues mean: "H" for halved-
    Laplacian energies (heat weight e^(-tau lambda)) and "Delta" for squared-
    operator values (weight e^(-tau lambda/2)).  Eigenvalues must be
    nonnegative; anything above -1e-8 is clamped to zero, anything below is
    a positivity violation and is rejected.
    """

    modes: tuple
    source: str = "generic"
    convention: str = "H"

    def __post_init__(self):
        if self.convention not in ("H", "Delta"):
            raise ValueError(f"unknown convention {self.convention!r}")
        clean = []
        for lam, chi in self.modes:
            lam = float(lam)
            chi = int(chi)
            if chi not in (-1, 1):
                raise ValueError(f"chirality must be +-1, got {chi}")
            if lam < -1e-8:
                raise ValueError(f"eigenvalue {lam} violates positivity")
            clean.append((max(lam, 0.0), chi))
        object.__setattr__(self, "modes", tuple(clean))

    @property
    def heat_rate(self):
        return 1.0 if self.convention == "H" else 0.5

    def eigenvalues(self):
        return np.array([lam for lam, _ in self.modes])

    def chiralities(self):
        return np.array([chi for _, chi in self.modes], dtype=int)


class PairViolation(NamedTuple):
    lam_min: float
    lam_max: float
    n_plus: int
    n_minus: int


def witten_index(system, tau):
    """Chirality-weighted heat sum over the spectrum at inverse temperature tau."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    lam = system.eigenvalues()
    chi = system.chiralities()
    return float(np.sum(chi * np.exp(-tau * system.heat_rate * lam)))


def zero_mode_asymmetry(system, tol=ZERO_TOL):
    """Signed count of zero modes, n_plus - n_minus below tol.

    Refuses (AmbiguousSpectrumError) when the smallest nonzero eigenvalue
    sits within a factor 1e3 of the tolerance: such a spectrum has no clean
    zero/nonzero split and the count would depend on the tolerance choice.
    """
    zeros = 0
    smallest = None
    for lam, chi in system.modes:
        if lam <= tol:
            zeros += chi
        elif smallest is None or lam < smallest:
            smallest = lam
    if smallest is not None and smallest < tol * GAP_RATIO_MIN:
        raise AmbiguousSpectrumError(
            f"smallest nonzero eigenvalue {smallest:.3e} is within 1e3 of the "
            f"zero tolerance {tol:.1e}")
    return int(zeros)


def _nonzero_clusters(pairs):
    # pairs sorted by eigenvalue; split where the gap exceeds the relative width
    clusters = []
    current = [pairs[0]]
    for lam, chi in pairs[1:]:
        if lam - current[-1][0] > CLUSTER_RELATIVE_GAP * lam:
            clusters.append(current)
            current = []
        current.append((lam, chi))
    clusters.append(current)
    return clusters


def pair_check(system, tol=ZERO_TOL):
    """Per-cluster chirality balance of the nonzero spectrum.

    Degenerate clusters are formed by relative gap 1e-6 after the zero modes
    (below tol) are set aside.  Returns the list of unbalanced clusters as
    PairViolation records; an empty list is the supersymmetric-pairing
    statement.  Violations are data, not errors.
    """
    nonzero = sorted((lam, chi) for lam, chi in system.modes if lam > tol)
    if not nonzero:
        return []
    violations = []
    for cluster in _nonzero_clusters(nonzero):
        n_plus = sum(1 for _, chi in cluster if chi > 0)
        n_minus = len(cluster) - n_plus
        if n_plus != n_minus:
            violations.append(PairViolation(cluster[0][0], cluster[-1][0],
                                            n_plus, n_minus))
    return violations


# ---------------------------------------------------------------------------
# monopole fixture


def sphere_monopole_fixture(q, k_max):
    """Exactly paired monopole spectrum on the round sphere.

    |q| zero modes, all of chirality sign(q); level k = 1..k_max sits at
    lambda = k (k + |q|) with multiplicity 2k + |q| in each chirality sector,
    so every nonzero level is exactly balanced.  At q = 0 this reduces to the
    round-sphere spectrum (multiplicity 2k per sector, no zero modes).
    Eigenvalues are squared-operator values, convention "Delta".
    """
    if not isinstance(q, int):
        raise ValueError("q must be an integer")
    if not isinstance(k_max, int) or k_max < 1:
        raise ValueError("k_max must be an integer >= 1")
    modes = [(0.0, 1 if q > 0 else -1)] * abs(q)
    for k in range(1, k_max + 1):
        lam = float(k * (k + abs(q)))
        mult = 2 * k + abs(q)
        modes.extend([(lam, 1)] * mult)
        modes.extend([(lam, -1)] * mult)
    return SpectralSystem(tuple(modes), source="sphere", convention="Delta")


def sphere_tail_bound(q, k_max, tau):
    """Heat weight of the first omitted fixture level times its multiplicity."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    lam_next = (k_max + 1) * (k_max + 1 + abs(q))
    return (2 * (k_max + 1) + abs(q)) * math.exp(-tau * lam_next / 2.0)


# ---------------------------------------------------------------------------
# constant-flux torus background


@dataclass(frozen=True)
class LatticeGaugeField:
    """U(1) link phases on a periodic N x N lattice.

    links[mu, x, y] is the phase on the link leaving site (x, y) in direction
    mu (0 = x, 1 = y).  Unit modulus is enforced; the flux integer is carried
    for labeling only, the measured flux always comes from the plaquettes.
    """

    links: np.ndarray
    flux_quantum: int = 0

    def __post_init__(self):
        links = np.asarray(self.links, dtype=complex)
        if links.ndim != 3 or links.shape[0] != 2 or links.shape[1] != links.shape[2]:
            raise ValueError("links must have shape (2, N, N)")
        if np.max(np.abs(np.abs(links) - 1.0)) > 1e-12:
            raise ValueError("link phases must have unit modulus")
        links = links.copy()
        links.setflags(write=False)
        object.__setattr__(self, "links", links)

    @property
    def size(self):
        return self.links.shape[1]


def build_torus_gauge(size, q):
    """Constant-flux background: every plaquette carries exactly 2 pi q / N^2.

    The y links grow linearly in x, U_y(x, y) = exp(i phi x); the last column
    of x links closes the cycle, U_x(N-1, y) = exp(-i phi N y).  The half-
    filling bound |q| < N^2/2 keeps every plaquette angle on the principal
    branch, so the measured flux is exact.
    """
    if not isinstance(size, int) or size < 4:
        raise ValueError("lattice size must be an integer >= 4")
    if not isinstance(q, int):
        raise ValueError("flux quantum must be an integer")
    if abs(q) >= size * size / 2:
        raise ValueError(f"|q| = {abs(q)} too large for a {size}x{size} lattice "
                         f"(need |q| < {size * size / 2:g})")
    phi = TWO_PI * q / size**2
    x = np.arange(size)[:, None]
    y = np.arange(size)[None, :]
    ux = np.ones((size, size), dtype=complex)
    ux[size - 1, :] = np.exp(-1j * phi * size * y[0])
    uy = np.exp(1j * phi * x) * np.ones((size, size))
    return LatticeGaugeField(np.stack([ux, uy]), flux_quantum=q)


def plaquette_angles(gauge):
    """Principal-branch angle of every plaquette holonomy, shape (N, N)."""
    ux, uy = gauge.links
    hol = ux * np.roll(uy, -1, axis=0) * np.conj(np.roll(ux, -1, axis=1)) * np.conj(uy)
    return np.angle(hol)


def topological_flux(gauge):
    """Total plaquette angle over 2 pi, rounded to the nearest integer.

    Raises AmbiguousSpectrumError when the sum misses an integer by 0.01 or
    more, which means some holonomy angle wrapped off the principal branch
    and the field is not resolving its own flux.
    """
    total = float(plaquette_angles(gauge).sum() / TWO_PI)
    nearest = round(total)
    if abs(total - nearest) >= INTEGER_RESIDUAL:
        raise AmbiguousSpectrumError(
            f"plaquette flux {total:.6f} is not within {INTEGER_RESIDUAL} of an integer")
    return int(nearest)


def gauge_transform(gauge, site_phases):
    """Rephase the links, U'_mu(x) = alpha(x) U_mu(x) conj(alpha(x + mu)).

    site_phases may be unit complex factors or real angles, shape (N, N).
    Every plaquette holonomy is exactly unchanged, hence so is everything
    built from the field.
    """
    alpha = np.asarray(site_phases)
    if alpha.shape != (gauge.size, gauge.size):
        raise ValueError(f"site phases must have shape ({gauge.size}, {gauge.size})")
    if not np.iscomplexobj(alpha):
        alpha = np.exp(1j * alpha)
    elif np.max(np.abs(np.abs(alpha) - 1.0)) > 1e-12:
        raise ValueError("complex site phases must have unit modulus")
    ux, uy = gauge.links
    new_ux = alpha * ux * np.conj(np.roll(alpha, -1, axis=0))
    new_uy = alpha * uy * np.conj(np.roll(alpha, -1, axis=1))
    return LatticeGaugeField(np.stack([new_ux, new_uy]), gauge.flux_quantum)


def random_gauge_transform(gauge, rng):
    """Gauge transform by independent uniform site angles from rng."""
    return gauge_transform(gauge, rng.uniform(0.0, TWO_PI, (gauge.size, gauge.size)))


# ---------------------------------------------------------------------------
# Wilson and overlap operators


@dataclass(frozen=True)
class WilsonDiracOperator:
    """Massless Wilson matrix with its chirality pairing and subtraction mass.

    matrix is the dense (2 N^2)-square massless Wilson operator, site-major
    with the spinor index innermost; chirality_matrix is the corresponding
    Gamma.  The mass is not added to the matrix, it is the parameter the
    overlap construction subtracts.
    """

    matrix: np.ndarray
    chirality_matrix: np.ndarray
    mass: float
    label: str = "wilson"


def build_wilson_dirac(gauge, mass=1.0):
    """Assemble the Wilson operator on a gauge background, Wilson weight 1.

    D = 2 r - (1/2) sum_mu [ U_mu(x) (r - gamma_mu) shift_+mu
                           + U_mu(x - mu)^* (r + gamma_mu) shift_-mu ]
    with r = 1.  Chirality-hermiticity Gamma D Gamma = D^dagger holds exactly
    and is asserted.  An index reading needs the mass inside the first
    doubler window 0 < m < 2; outside it the overlap counts doubler branches
    too, so a warning is raised.
    """
    mass = float(mass)
    if not 0.0 < mass < 2.0:
        warnings.warn(f"mass {mass:g} is outside the (0, 2) window, the overlap "
                      "count will include doubler branches", stacklevel=2)
    n = gauge.size
    sites = np.arange(n * n).reshape(n, n)
    ux, uy = gauge.links
    tx = np.zeros((n * n, n * n), dtype=complex)
    ty = np.zeros((n * n, n * n), dtype=complex)
    tx[sites.ravel(), np.roll(sites, -1, axis=0).ravel()] = ux.ravel()
    ty[sites.ravel(), np.roll(sites, -1, axis=1).ravel()] = uy.ravel()
    r = 1.0
    eye2 = np.eye(2, dtype=complex)
    d = 2.0 * r * np.eye(2 * n * n, dtype=complex)
    d -= 0.5 * (np.kron(tx, r * eye2 - GAMMA1) + np.kron(tx.conj().T, r * eye2 + GAMMA1)
                + np.kron(ty, r * eye2 - GAMMA2) + np.kron(ty.conj().T, r * eye2 + GAMMA2))
    gamma = np.kron(np.eye(n * n), GAMMA5)
    herm_defect = np.max(np.abs(gamma @ d @ gamma - d.conj().T))
    if herm_defect > 1e-12:
        raise AssertionError(f"chirality-hermiticity defect {herm_defect:.3e}")
    label = f"torus N={n} q={gauge.flux_quantum}"
    return WilsonDiracOperator(matrix=d, chirality_matrix=gamma, mass=mass, label=label)


def _kernel_sign(op):
    h = op.chirality_matrix @ (op.matrix - op.mass * np.eye(op.matrix.shape[0]))
    h = 0.5 * (h + h.conj().T)
    evals, vecs = np.linalg.eigh(h)
    low = float(np.min(np.abs(evals)))
    if low < ZERO_TOL:
        raise AmbiguousSpectrumError(
            f"kernel operator has a near-zero eigenvalue {low:.3e}; "
            "the mass sits on a spectral-flow crossing")
    return evals, vecs


def overlap_index(op):
    """Spectral-flow count -(1/2) tr sign(Gamma (D - m)).

    Raises AmbiguousSpectrumError when the sign function is ill-defined (a
    near-zero eigenvalue) or the half-trace misses an integer by 0.01.
    """
    evals, _ = _kernel_sign(op)
    raw = -0.5 * float(np.sum(np.sign(evals)))
    nearest = round(raw)
    if abs(raw - nearest) >= INTEGER_RESIDUAL:
        raise AmbiguousSpectrumError(f"half-trace {raw:.6f} is not near an integer")
    return int(nearest)


def overlap_operator(op):
    """The overlap matrix m (1 + Gamma sign(Gamma (D - m)))."""
    evals, vecs = _kernel_sign(op)
    sgn = (vecs * np.sign(evals)) @ vecs.conj().T
    dim = op.matrix.shape[0]
    return op.mass * (np.eye(dim) + op.chirality_matrix @ sgn)


def heat_kernel_system(op, zero_tol=ZERO_TOL):
    """Chirality-graded spectrum of the squared overlap operator.

    The squared operator commutes with the chirality pairing exactly, so
    each degenerate cluster carries sharp +-1 sectors; they are recovered by
    rediagonalizing the pairing restricted to the cluster eigenspace.  Any
    mode whose restricted chirality is farther than 0.01 from +-1 aborts
    with AmbiguousSpectrumError.  Clusters are formed zero-tolerance first,
    then by relative gap among the nonzero eigenvalues.

    The branch at exactly 4 m^2, the far end of the overlap circle, is a
    pure lattice artifact (it hosts the chirality asymmetry that compensates
    the zero modes on the finite lattice) and is excluded from the returned
    continuum-like spectrum.  Eigenvalues are squared-operator values,
    convention "Delta".
    """
    dov = overlap_operator(op)
    k = dov.conj().T @ dov
    k = 0.5 * (k + k.conj().T)
    evals, vecs = np.linalg.eigh(k)
    gamma = op.chirality_matrix
    top = 4.0 * op.mass * op.mass
    keep = np.abs(evals - top) > 1e-8 * top
    idx = np.nonzero(keep)[0]
    zero_idx = [i for i in idx if abs(evals[i]) <= zero_tol]
    nonzero_idx = [i for i in idx if abs(evals[i]) > zero_tol]
    clusters = [zero_idx] if zero_idx else []
    if nonzero_idx:
        current = [nonzero_idx[0]]
        for i in nonzero_idx[1:]:
            if evals[i] - evals[current[-1]] > CLUSTER_RELATIVE_GAP * evals[i]:
                clusters.append(current)
                current = []
            current.append(i)
        clusters.append(current)
    modes = []
    for cluster in clusters:
        block = vecs[:, cluster]
        restricted = block.conj().T @ gamma @ block
        restricted = 0.5 * (restricted + restricted.conj().T)
        geig = np.linalg.eigvalsh(restricted)
        if np.max(np.abs(np.abs(geig) - 1.0)) > INTEGER_RESIDUAL:
            worst = geig[np.argmax(np.abs(np.abs(geig) - 1.0))]
            raise AmbiguousSpectrumError(
                f"cluster at {evals[cluster[0]]:.3e} has unsharp chirality {worst:.4f}")
        chis = np.rint(geig).astype(int)
        for i, chi in zip(cluster, sorted(chis)):
            modes.append((float(evals[i]), int(chi)))
    return SpectralSystem(tuple(modes), source=op.label, convention="Delta")
