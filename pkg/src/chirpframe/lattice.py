"""2x2 lattice generators, their factorizations, and the chirp-design maps.

Matrix conventions follow the time-frequency side: a lattice point ``Q z``
is read as ``(a, b)`` = (modulation, translation), so ``diag(beta, alpha)``
generates the separable lattice with translation step ``alpha`` and
modulation step ``beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .atoms import dilate, product_convolution
from .errors import DomainError, NoRootError

__all__ = [
    "Mat2",
    "rotation",
    "upper_shear",
    "lower_shear",
    "dilation_matrix",
    "separable",
    "generators",
    "factor_qr",
    "factor_lu_rotation",
    "ChirpDesign",
    "chirp_design",
    "ratio_G",
    "solve_lambda",
    "window_design",
]


@dataclass(frozen=True)
class Mat2:
    """Real 2x2 matrix ``[[a, b], [c, d]]``; columns generate the lattice."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in "abcd":
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError("matrix entries must be finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, m) -> Mat2:
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1.0, 0.0, 0.0, 1.0)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, s: float) -> Mat2:
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    __rmul__ = __mul__

    def apply(self, z):
        """Q z for a 2-vector or a (2, n) array of column vectors."""
        return self.as_array() @ np.asarray(z, dtype=float)

    def max_diff(self, other: Mat2) -> float:
        return float(np.max(np.abs(self.as_array() - other.as_array())))


def rotation(theta: float) -> Mat2:
    """R_theta = [[cos, sin], [-sin, cos]]."""
    co, si = math.cos(theta), math.sin(theta)
    return Mat2(co, si, -si, co)


def upper_shear(lam: float) -> Mat2:
    """U_lam = [[1, lam], [0, 1]]."""
    return Mat2(1.0, lam, 0.0, 1.0)


def lower_shear(lam_p: float) -> Mat2:
    """L_{lam'} = [[1, 0], [1/lam', 1]]."""
    if lam_p == 0:
        raise DomainError("L_{lam'} needs lam' != 0")
    return Mat2(1.0, 0.0, 1.0 / lam_p, 1.0)


def dilation_matrix(gamma: float) -> Mat2:
    """D_gamma = diag(1/gamma, gamma)."""
    if not gamma > 0:
        raise DomainError("D_gamma needs gamma > 0")
    return Mat2(1.0 / gamma, 0.0, 0.0, gamma)


def separable(alpha: float, beta: float) -> Mat2:
    """D_{alpha,beta} = diag(beta, alpha)."""
    return Mat2(beta, 0.0, 0.0, alpha)


def generators(theta=0.0, lam=0.0, lam_p=None, gamma=None, alpha=1.0, beta=1.0) -> dict:
    """The named generator family; L and D_gamma only when their parameter is given."""
    fam = {
        "R": rotation(theta),
        "U": upper_shear(lam),
        "D_ab": separable(alpha, beta),
    }
    if lam_p is not None:
        fam["L"] = lower_shear(lam_p)
    if gamma is not None:
        fam["D"] = dilation_matrix(gamma)
    return fam


def factor_qr(Q: Mat2):
    """Q = R_theta U_lam D_{alpha,beta} for det Q > 0.

    Returns ``(theta, lam, alpha, beta)`` with ``beta = |first column|`` and
    ``alpha * beta = det Q``.
    """
    a, b, c, d = Q.a, Q.b, Q.c, Q.d
    det = Q.det
    if not det > 0:
        raise DomainError(f"factor_qr needs det Q > 0 (got {det}); negate Q first")
    n = math.hypot(a, c)
    # R_theta has first column (cos, -sin) = (a, c)/n
    theta = math.atan2(-c, a)
    return theta, (a * b + c * d) / det, det / n, n


def factor_lu_rotation(lam: float):
    """L_{lam'} U_lam = diag(d1, d2) R_theta with lam' = -(lam + 1/lam).

    ``d1, d2`` are the row norms of the product; the rows are orthogonal,
    which is what makes the diagonal-times-rotation split exact.
    """
    if lam == 0:
        raise DomainError("lam must be nonzero")
    lam_p = -(lam + 1.0 / lam)
    P = lower_shear(lam_p) @ upper_shear(lam)
    d1 = math.hypot(P.a, P.b)
    d2 = math.hypot(P.c, P.d)
    theta = math.atan2(P.b / d1, P.a / d1)
    return d1, d2, theta, lam_p


@dataclass(frozen=True)
class ChirpDesign:
    lam: float
    lam_p: float
    gamma: float
    u: float
    v: float
    r: float
    s: complex

    @property
    def ratio(self) -> float:
        return self.r / self.u


def chirp_design(lam: float) -> ChirpDesign:
    """lam' = -(lam + 1/lam), gamma = sqrt(lam^2 + 1), then (u, v, s) of the
    product-convolved Gaussian and its chirp rate r = lam + v."""
    if lam == 0:
        raise DomainError("lam must be nonzero")
    lam_p = -(lam + 1.0 / lam)
    gamma = math.sqrt(lam * lam + 1.0)
    _, s, u, v = product_convolution(lam, lam_p, gamma)
    return ChirpDesign(lam, lam_p, gamma, u, v, lam + v, s)


def ratio_G(lam: float) -> float:
    """r/u as a function of lam, in its expanded (manifestly odd) form."""
    if lam == 0:
        raise DomainError("lam must be nonzero")
    p = lam * lam + 1.0
    return lam / p * (lam**4 + 2 * lam**2 + lam**2 / p**2 + lam**2 / p)


_SCAN = np.geomspace(1e-6, 1e6, 1201)


def solve_lambda(rho: float) -> float:
    """Smallest-|lam| solution of ratio_G(lam) = rho (same sign as rho)."""
    if rho == 0 or not math.isfinite(rho):
        raise DomainError("rho must be finite and nonzero")
    sgn = 1.0 if rho > 0 else -1.0
    target = abs(rho)
    # G is odd, so solve on the positive axis
    vals = np.array([ratio_G(x) for x in _SCAN]) - target
    hits = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if hits.size == 0:
        raise NoRootError(f"no bracket for rho={rho} in |lam| in [1e-6, 1e6]")
    i = hits[0]
    lo, hi = _SCAN[i], _SCAN[i + 1]
    if vals[i] == 0:
        return sgn * lo
    root = optimize.brentq(lambda x: ratio_G(x) - target, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return sgn * root


def window_design(r: float, u: float):
    """Find (design, gamma_dil): dilating the designed atom by gamma_dil gives
    the chirped Gaussian with quadratic coefficient ``u + r i``."""
    if r == 0 or not u > 0:
        raise DomainError("need r != 0 and u > 0")
    design = chirp_design(solve_lambda(r / u))
    gamma_dil = math.sqrt(u / design.u)
    atom, *_ = product_convolution(design.lam, design.lam_p, design.gamma)
    w = dilate(atom, gamma_dil).w
    if abs(w - complex(u, r)) > 1e-9 * max(1.0, abs(complex(u, r))):
        raise NoRootError(f"window design missed target: w={w}, want {complex(u, r)}")
    return design, gamma_dil
