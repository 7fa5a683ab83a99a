"""Brute-force numerical oracles for the closed forms.

These only ever call ``evaluate`` (or a plain callable) and integrate
numerically, so they stay independent of the algebra they check.
"""
from __future__ import annotations

import numpy as np
from scipy import integrate

from .atoms import GaussianAtom, evaluate


def _interval(g: GaussianAtom | None, base: float = 8.0) -> float:
    if g is not None and g.w.real < 0.25:
        return 2 * base
    return base


def _cquad(f, a, b, tol=1e-12):
    opts = dict(epsabs=tol, epsrel=tol, limit=400)
    re = integrate.quad(lambda x: f(x).real, a, b, **opts)[0]
    im = integrate.quad(lambda x: f(x).imag, a, b, **opts)[0]
    return complex(re, im)


def quad_integral(f, half_width: float = 8.0, tol: float = 1e-12) -> complex:
    """Adaptive Gauss-Kronrod integral of a complex callable over [-hw, hw]."""
    return _cquad(lambda x: complex(f(x)), -half_width, half_width, tol)


def quad_fourier(g: GaussianAtom, xi: float) -> complex:
    L = _interval(g)
    return quad_integral(lambda x: evaluate(g, x) * np.exp(-2j * np.pi * xi * x), L)


def quad_norm(g: GaussianAtom) -> float:
    L = _interval(g)
    return float(np.sqrt(quad_integral(lambda x: abs(evaluate(g, x)) ** 2, L).real))


def quad_inner(g1: GaussianAtom, g2: GaussianAtom) -> complex:
    L = max(_interval(g1), _interval(g2))
    return quad_integral(lambda x: evaluate(g1, x) * np.conj(evaluate(g2, x)), L)


def fresnel_convolution(f, lam_p: float, x, half_width: float = 8.0, nodes: int = 4096):
    """(h_{lam'} conv f)(x) by a uniform trapezoid sum over [-hw, hw].

    The node count must keep the chirp phase step below pi/4 at the edge,
    otherwise a ValueError is raised.
    """
    y = np.linspace(-half_width, half_width, nodes)
    dy = y[1] - y[0]
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    reach = half_width + np.max(np.abs(xs))
    if 2 * np.pi * abs(lam_p) * reach * dy >= np.pi / 4:
        raise ValueError("grid too coarse for this chirp rate")
    fy = np.asarray(f(y), dtype=complex)
    w = np.full(nodes, dy)
    w[0] = w[-1] = dy / 2
    kern = np.exp(-1j * np.pi * lam_p * (xs[:, None] - y[None, :]) ** 2)
    out = kern @ (w * fy)
    return out if np.ndim(x) else complex(out[0])
