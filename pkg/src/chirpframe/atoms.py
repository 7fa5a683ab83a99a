"""Closed-form algebra of generalized Gaussian atoms.

An atom is ``g(x) = c * exp(-pi*w*x**2 + ell*x)`` with ``Re w > 0``. The class
is closed under chirp multiplication, chirp convolution, the Fourier
transform, dilation and time-frequency shifts, so every window used by the
rest of the package lives here and every operation is exact.

Conventions: ``F g(xi) = int g(x) exp(-2 pi i xi x) dx``, ``M_a f(x) =
exp(2 pi i a x) f(x)``, ``T_b f(x) = f(x - b)``, ``pi(a, b) = M_a T_b`` and
the chirp ``h_lam(x) = exp(-pi i lam x**2)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "GaussianAtom",
    "Chirp",
    "make_atom",
    "gaussian",
    "chirped_gaussian",
    "evaluate",
    "multiply_chirp",
    "fourier",
    "inverse_fourier",
    "reflect",
    "scale_argument",
    "chirp_fourier_constant",
    "convolve_chirp",
    "tf_shift",
    "dilate",
    "l2_norm",
    "inner_product",
    "shifted_inner_product",
    "product_convolution",
    "atoms_close",
    "COMPARISON_GRID",
]


@dataclass(frozen=True)
class GaussianAtom:
    """``c * exp(-pi*w*x**2 + ell*x)``; construction enforces ``Re w > 0``."""

    c: complex
    w: complex
    ell: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "ell", complex(self.ell))
        if not self.w.real > 0:
            raise DomainError(f"atom needs Re w > 0, got w={self.w}")
        if not all(map(cmath.isfinite, (self.c, self.w, self.ell))):
            raise DomainError("atom parameters must be finite")

    def __call__(self, x):
        return evaluate(self, x)

    def scaled(self, s: complex) -> GaussianAtom:
        return GaussianAtom(self.c * s, self.w, self.ell)


@dataclass(frozen=True)
class Chirp:
    """The unimodular chirp ``exp(-pi i rate x**2)``."""

    rate: float

    def __post_init__(self):
        if self.rate == 0:
            raise DomainError("chirp rate must be nonzero")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-1j * np.pi * self.rate * x * x)


def make_atom(c: complex, w: complex, ell: complex = 0j) -> GaussianAtom:
    return GaussianAtom(c, w, ell)


def gaussian(gamma: float = 1.0) -> GaussianAtom:
    """phi_gamma(x) = exp(-pi gamma^2 x^2)."""
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    return GaussianAtom(1.0, gamma * gamma, 0.0)


def chirped_gaussian(r: float, u: float) -> GaussianAtom:
    """h_r * phi_sqrt(u), i.e. the atom with quadratic coefficient u + r i."""
    if u <= 0:
        raise DomainError("u must be positive")
    return GaussianAtom(1.0, complex(u, r), 0.0)


def evaluate(g: GaussianAtom, x):
    x = np.asarray(x, dtype=float)
    out = g.c * np.exp(-np.pi * g.w * x * x + g.ell * x)
    return complex(out) if out.ndim == 0 else out


def multiply_chirp(g: GaussianAtom, lam: float) -> GaussianAtom:
    return GaussianAtom(g.c, g.w + 1j * lam, g.ell)


def _gauss_integral(A: complex, B: complex) -> complex:
    # int exp(-pi A x^2 + B x) dx = A^{-1/2} exp(B^2 / (4 pi A)), Re A > 0
    return cmath.exp(B * B / (4 * math.pi * A)) / cmath.sqrt(A)


def fourier(g: GaussianAtom) -> GaussianAtom:
    """Fourier transform, by completing the square.

    ``F g(xi) = c w^{-1/2} exp(ell^2/(4 pi w)) exp(-pi xi^2/w - i ell xi/w)``
    with the principal square root (``Re w > 0``).
    """
    w, ell = g.w, g.ell
    c = g.c * cmath.exp(ell * ell / (4 * math.pi * w)) / cmath.sqrt(w)
    return GaussianAtom(c, 1 / w, -1j * ell / w)


def reflect(g: GaussianAtom) -> GaussianAtom:
    """x -> g(-x)."""
    return GaussianAtom(g.c, g.w, -g.ell)


def inverse_fourier(g: GaussianAtom) -> GaussianAtom:
    return reflect(fourier(g))


def scale_argument(g: GaussianAtom, s: float) -> GaussianAtom:
    """x -> g(s x) for any nonzero real s (negative s includes a reflection)."""
    if s == 0:
        raise DomainError("scale must be nonzero")
    return GaussianAtom(g.c, g.w * s * s, g.ell * s)


def chirp_fourier_constant(lam_p: float) -> complex:
    """c_{lam'} in  F h_{lam'} = c_{lam'} h_{-1/lam'}."""
    if lam_p == 0:
        raise DomainError("chirp rate must be nonzero")
    phase = -math.pi / 4 if lam_p > 0 else math.pi / 4
    return cmath.exp(1j * phase) / math.sqrt(abs(lam_p))


def convolve_chirp(g: GaussianAtom, lam_p: float) -> GaussianAtom:
    """h_{lam'} * g, computed as F^{-1}(c_{lam'} h_{-1/lam'} F g)."""
    if lam_p == 0:
        raise DomainError("chirp convolution needs lam' != 0")
    spectrum = multiply_chirp(fourier(g), -1.0 / lam_p)
    return inverse_fourier(spectrum).scaled(chirp_fourier_constant(lam_p))


def tf_shift(g: GaussianAtom, a: float, b: float) -> GaussianAtom:
    """M_a T_b g."""
    w, ell = g.w, g.ell
    c = g.c * cmath.exp(-math.pi * w * b * b - ell * b)
    return GaussianAtom(c, w, ell + 2 * math.pi * w * b + 2j * math.pi * a)


def dilate(g: GaussianAtom, gamma: float) -> GaussianAtom:
    """x -> g(gamma x), gamma > 0."""
    if not gamma > 0:
        raise DomainError("dilation factor must be positive")
    return scale_argument(g, gamma)


def l2_norm(g: GaussianAtom) -> float:
    u, m = g.w.real, g.ell.real
    sq = abs(g.c) ** 2 * math.exp(m * m / (2 * math.pi * u)) / math.sqrt(2 * u)
    return math.sqrt(sq)


def inner_product(g1: GaussianAtom, g2: GaussianAtom) -> complex:
    """<g1, g2> = int g1 * conj(g2); linear in the first slot."""
    A = g1.w + g2.w.conjugate()
    B = g1.ell + g2.ell.conjugate()
    return g1.c * g2.c.conjugate() * _gauss_integral(A, B)


def shifted_inner_product(g1: GaussianAtom, g2: GaussianAtom, a: float, b: float) -> complex:
    """<g1, M_a T_b g2> in one exponential, safe for far shifts."""
    w2, l2 = g2.w.conjugate(), g2.ell.conjugate()
    A = g1.w + w2
    B = g1.ell + l2 + 2 * math.pi * w2 * b - 2j * math.pi * a
    C = -math.pi * w2 * b * b - l2 * b
    return g1.c * g2.c.conjugate() * cmath.exp(B * B / (4 * math.pi * A) + C) / cmath.sqrt(A)


def product_convolution(lam: float, lam_p: float, gamma: float):
    """h_lam * (h_{lam'} conv phi_{1/gamma}) as a chirped Gaussian.

    Returns ``(atom, s, u, v)`` where the atom equals
    ``s * h_{v+lam} * phi_{sqrt u}``.
    """
    if lam == 0 or lam_p == 0:
        raise DomainError("lam and lam' must be nonzero")
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    ip = 1.0 / lam_p
    den = gamma**4 + ip * ip
    u = gamma * gamma / den
    v = ip / den
    eta = cmath.sqrt(complex(u, v))
    s = chirp_fourier_constant(lam_p) * gamma * eta
    return GaussianAtom(s, complex(u, v + lam), 0.0), s, u, v


COMPARISON_GRID = np.linspace(-3.0, 3.0, 257)


def atoms_close(g1: GaussianAtom, g2: GaussianAtom, rtol: float = 1e-10, grid=None) -> bool:
    """Pointwise comparison on a fixed grid, relative to the larger peak."""
    x = COMPARISON_GRID if grid is None else np.asarray(grid, dtype=float)
    v1, v2 = evaluate(g1, x), evaluate(g2, x)
    scale = max(np.max(np.abs(v1)), np.max(np.abs(v2)), 1e-300)
    return bool(np.max(np.abs(v1 - v2)) <= rtol * scale)
