"""Frame-bound estimation for Gabor systems G(g, Q Z^2) with atom windows.

Two independent instruments:

* ``estimate_bounds`` is a finite-section estimator. Lattice atoms are
  sampled on a grid and the analysis map is compressed to the span of the
  first Hermite functions that fit inside the sampled time-frequency box.
  The squared extreme singular values are Rayleigh-quotient bounds of the
  true frame operator on that subspace, so ``A <= A_est <= B_est <= B``;
  they converge from inside as the box grows. They estimate, they do not
  certify.
* ``janssen_certify`` sums the closed-form ambiguity values over the
  adjoint lattice and returns certified bounds whenever the diagonal
  dominates.

``canonicalize`` reduces G(phi_gamma, Q Z^2) to a separable chirped system by
dilation, QR factorization, and rotation invariance of the Gaussian under
the fractional Fourier transform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .atoms import GaussianAtom, gaussian, l2_norm, multiply_chirp, scale_argument, shifted_inner_product
from .errors import DegenerateError, DomainError
from .lattice import Mat2, dilation_matrix, factor_qr, separable, upper_shear
from .parallel import ordered_map

__all__ = [
    "LatticeSystem",
    "BoundEstimate",
    "Inconclusive",
    "CanonicalForm",
    "Resolution",
    "canonicalize",
    "lattice_points",
    "hermite_basis",
    "estimate_bounds",
    "normalize_window",
    "janssen_certify",
    "equivalence_check",
    "sweep_det",
    "SweepRow",
    "DEFAULT_RESOLUTION",
]

ESTIMATOR_NOTE = "finite-section estimate of the truncated, discretized system; not a bound on the L2 frame"


@dataclass(frozen=True)
class LatticeSystem:
    window: GaussianAtom
    Q: Mat2

    @property
    def density(self) -> float:
        return abs(self.Q.det)


@dataclass(frozen=True)
class Resolution:
    L: float = 6.0
    N: int = 512
    M: float = 12.0
    margin: float = 2.0


DEFAULT_RESOLUTION = Resolution()


@dataclass
class BoundEstimate:
    A_est: float
    B_est: float
    L: float
    N: int
    M: float
    certified: bool = False
    n_atoms: int = 0
    n_basis: int = 0
    refined: tuple | None = None
    note: str = ESTIMATOR_NOTE

    @property
    def ratio(self) -> float:
        return self.A_est / self.B_est

    def scaled(self, s: float) -> BoundEstimate:
        ref = None if self.refined is None else (self.refined[0] * s, self.refined[1] * s)
        return BoundEstimate(self.A_est * s, self.B_est * s, self.L, self.N, self.M,
                             self.certified, self.n_atoms, self.n_basis, ref, self.note)


@dataclass(frozen=True)
class Inconclusive:
    """Janssen dominance failed; ``margin`` is c00 - sum' - tail (<= 0)."""

    margin: float
    K: int
    certified: bool = False


@dataclass(frozen=True)
class CanonicalForm:
    window: GaussianAtom
    alpha: float
    beta: float
    scale: float
    theta: float
    lam: float
    negated: bool = False


def canonicalize(gamma: float, Q: Mat2) -> CanonicalForm:
    """G(phi_gamma, Q Z^2) ~ G(h_lam phi, alpha Z x beta Z).

    Frame bounds of the input equal ``scale`` times those of the separable
    system with window ``h_lam * phi``, translation step ``alpha`` and
    modulation step ``beta``.
    """
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    det = Q.det
    if det == 0:
        raise DomainError("lattice matrix is singular")
    negated = det < 0
    if negated:
        # det(-Q) = det(Q) for 2x2, so flip one column instead: same lattice, det > 0
        Q = Mat2(Q.a, -Q.b, Q.c, -Q.d)
    theta, lam, alpha, beta = factor_qr(dilation_matrix(gamma) @ Q)
    if abs(alpha * beta - abs(det)) > 1e-12 * max(1.0, abs(det)):
        raise DomainError("factorization lost the determinant")
    window = GaussianAtom(1.0, complex(1.0, lam), 0.0)
    return CanonicalForm(window, alpha, beta, 1.0 / gamma, theta, lam, negated)


def lattice_points(Q: Mat2, M: float) -> np.ndarray:
    """All Q z with z in Z^2 and ||Q z||_inf <= M, as a (2, n) array of (a, b)."""
    if Q.det == 0:
        raise DomainError("lattice matrix is singular")
    Qi = np.linalg.inv(Q.as_array())
    R = int(math.ceil(M * np.max(np.sum(np.abs(Qi), axis=1)))) + 1
    k = np.arange(-R, R + 1)
    Z = np.stack(np.meshgrid(k, k, indexing="ij")).reshape(2, -1)
    P = Q.as_array() @ Z
    keep = np.max(np.abs(P), axis=0) <= M + 1e-12
    return P[:, keep]


def hermite_basis(x: np.ndarray, n: int) -> np.ndarray:
    """First n Hermite functions for the e^{-pi x^2} normalization, sampled on x.

    Columns are orthonormalized in the grid inner product sum(f conj(g)) dx.
    """
    y = math.sqrt(2 * math.pi) * x
    H = np.empty((x.size, n))
    H[:, 0] = math.pi**-0.25 * np.exp(-y * y / 2)
    if n > 1:
        H[:, 1] = math.sqrt(2) * y * H[:, 0]
    for j in range(1, n - 1):
        H[:, j + 1] = math.sqrt(2 / (j + 1)) * y * H[:, j] - math.sqrt(j / (j + 1)) * H[:, j - 1]
    dx = x[1] - x[0]
    q, _ = np.linalg.qr(H * math.sqrt(dx))
    return q / math.sqrt(dx)


def basis_size(res: Resolution) -> int:
    # h_n fills the disk of radius sqrt((2n+1)/(2 pi)) in the time-frequency plane
    R = min(res.L, res.M) - res.margin
    if R <= 0:
        raise DomainError("resolution leaves no room inside the margin")
    return max(1, int((2 * math.pi * R * R - 1) / 2))


def _section(system: LatticeSystem, L: float, N: int, M: float, n_basis: int):
    x = np.linspace(-L, L, N)
    dx = x[1] - x[0]
    P = lattice_points(system.Q, M)
    g = system.window
    a, b = P[0][:, None], P[1][None, :].T
    # rows: pi(a, b) g = e^{2 pi i a x} g(x - b)
    xs = x[None, :] - b
    G = g.c * np.exp(-np.pi * g.w * xs * xs + g.ell * xs + 2j * np.pi * a * x[None, :])
    alive = np.max(np.abs(G), axis=1) > 1e-14
    if np.count_nonzero(alive) < 3:
        raise DegenerateError("fewer than 3 lattice atoms reach the sampling grid")
    G = G[alive]
    V = hermite_basis(x, n_basis)
    T = dx * (G.conj() @ V)
    s = np.linalg.svd(T, compute_uv=False)
    return float(s[-1] ** 2), float(s[0] ** 2), int(G.shape[0])


def normalize_window(system: LatticeSystem):
    """Move the window's chirp into the lattice and rescale it to unit width.

    ``g = h_lam G`` with ``lam = Im w`` has the bounds of ``(G, U_lam Q)``
    (chirp multiplication is unitary and shifts commute with it up to a
    phase and a shear). With ``G(x) = H(d x)``, ``d = sqrt(Re w)``, the
    bounds of ``(G, Q')`` are ``1/d`` times those of ``(H, D_d Q')``.
    The Hermite section is only rotation invariant, so this is what keeps
    it matched to the window.
    """
    g = system.window
    lam = g.w.imag
    Q = upper_shear(lam) @ system.Q if lam else system.Q
    d = math.sqrt(g.w.real)
    H = scale_argument(multiply_chirp(g, -lam), 1.0 / d)
    return LatticeSystem(H, dilation_matrix(d) @ Q), 1.0 / d


def estimate_bounds(system: LatticeSystem, L: float = 6.0, N: int = 512, M: float = 12.0,
                    margin: float = 2.0, refine: bool = True, normalize: bool = True) -> BoundEstimate:
    """Finite-section frame-bound estimate at (L, N, M); optionally also at 2N.

    With ``normalize`` (default) the window is first brought to an unchirped
    unit-width Gaussian and L, M are measured in those coordinates;
    ``normalize=False`` samples the window as given.
    """
    if N < 128 or M < 4 or L < 4:
        raise DomainError("estimate_bounds needs N >= 128, M >= 4, L >= 4")
    if system.Q.det == 0:
        raise DomainError("lattice matrix is singular")
    normed, scale = normalize_window(system) if normalize else (system, 1.0)
    n = basis_size(Resolution(L, N, M, margin))
    A, B, K = _section(normed, L, N, M, n)
    ref = None
    if refine:
        A2, B2, _ = _section(normed, L, 2 * N, M, n)
        ref = (A2, B2)
    return BoundEstimate(max(A, 0.0), B, L, N, M, False, K, n, ref).scaled(scale)


def _ambiguity_tail(g: GaussianAtom, alpha: float, beta: float, K: int) -> float:
    # |<g, M_a T_b g>| = ||g||^2 exp(-(pi/2)(u b^2 + (a + v b)^2 / u)) for g's quadratic
    # part u + i v; bound the form below by its smallest eigenvalue mu (b^2 + a^2)
    u, v = g.w.real, g.w.imag
    form = 0.5 * math.pi * np.array([[u + v * v / u, v / u], [v / u, 1 / u]])
    mu = float(np.linalg.eigvalsh(form)[0])
    n2 = l2_norm(g) ** 2
    sb, sa = mu / beta**2, mu / alpha**2  # b = k / beta, a = l / alpha

    def full(s):
        return 1 + math.sqrt(math.pi / s)

    def tail(s):
        r = math.exp(-s * (2 * K + 3))
        return 2 * math.exp(-s * (K + 1) ** 2) / (1 - r)

    return n2 * (tail(sb) * full(sa) + full(sb) * tail(sa))


def janssen_certify(window: GaussianAtom, alpha: float, beta: float, K: int = 12):
    """Certified bounds for G(window, alpha, beta) by adjoint-lattice dominance.

    ``alpha`` is the translation step, ``beta`` the modulation step. Returns a
    certified ``BoundEstimate`` or an ``Inconclusive`` value.
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError("alpha and beta must be positive")
    if K < 8:
        raise DomainError("K must be >= 8")
    ks = np.arange(-K, K + 1)
    c = np.empty((ks.size, ks.size), dtype=complex)
    for i, k in enumerate(ks):
        for j, l in enumerate(ks):
            c[i, j] = shifted_inner_product(window, window, l / alpha, k / beta)
    c00 = c[K, K].real
    off = float(np.sum(np.abs(c)) - abs(c[K, K]))
    tail = _ambiguity_tail(window, alpha, beta, K)
    margin = c00 - off - tail
    if margin <= 0:
        return Inconclusive(margin, K)
    dens = alpha * beta
    return BoundEstimate(margin / dens, (c00 + off + tail) / dens, math.nan, 0, float(K), certified=True,
                         note="adjoint-lattice dominance certificate")


def equivalence_check(gamma: float, Q: Mat2, resolution: Resolution = DEFAULT_RESOLUTION, tol: float = 0.15) -> dict:
    """Compare conditioning of G(phi_gamma, Q Z^2) with its canonical separable form."""
    det = abs(Q.det)
    if not 0 < det < 1:
        raise DomainError("equivalence_check needs 0 < |det Q| < 1")
    r = resolution
    direct = estimate_bounds(LatticeSystem(gaussian(gamma), Q), r.L, r.N, r.M, r.margin, refine=False)
    cf = canonicalize(gamma, Q)
    canon = estimate_bounds(LatticeSystem(cf.window, separable(cf.alpha, cf.beta)), r.L, r.N, r.M, r.margin,
                            refine=False).scaled(cf.scale)
    ratio = direct.ratio / canon.ratio
    return {
        "det": det,
        "direct": direct,
        "canonical": canon,
        "form": cf,
        "ratio": ratio,
        "passed": abs(ratio - 1) <= tol,
    }


@dataclass
class SweepRow:
    det: float
    A_est: float | None
    B_est: float | None
    certified: bool
    flag: str = ""
    certificate: object = field(default=None, repr=False)

    @property
    def ratio(self) -> float | None:
        if self.A_est is None:
            return None
        return self.A_est / self.B_est


def sweep_det(gamma: float, shape: Mat2, dets, resolution: Resolution = DEFAULT_RESOLUTION, K: int = 12):
    """Estimate G(phi_gamma, (sqrt|s| shape) Z^2) along a list of determinants."""
    if abs(shape.det - 1) > 1e-9:
        raise DomainError("shape must have determinant 1")
    r = resolution

    def row(s):
        if s == 0:
            raise DomainError("determinant 0 is not a lattice")
        Q = shape * math.sqrt(abs(s))
        if s < 0:
            Q = Mat2(-Q.a, Q.b, -Q.c, Q.d)  # flip one column: det changes sign
        if abs(s) > 1:
            return SweepRow(s, None, None, False, "density-violating")
        est = estimate_bounds(LatticeSystem(gaussian(gamma), Q), r.L, r.N, r.M, r.margin, refine=False)
        cert = None
        if abs(s) < 1:
            cf = canonicalize(gamma, Q)
            cert = janssen_certify(cf.window, cf.alpha, cf.beta, K)
        return SweepRow(s, est.A_est, est.B_est, bool(cert is not None and cert.certified), "", cert)

    return ordered_map(row, list(dets))
