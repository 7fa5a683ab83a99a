"""Zak transform of chirped Gaussians, theta functions, and zero certification.

For ``g = h_lam * phi_gamma`` the Zak transform reduces to a theta function::

    Z g(t, w) = exp(-pi (gamma^2 + i lam) t^2) * Theta(z, q),
    q = exp(-pi (gamma^2 + i lam)),  z = exp(2 pi (gamma^2 t + i (w + lam t)))

with ``Theta(z, q) = sum_k q^{k^2} z^k``. ``zak_direct`` sums the defining
series instead, so the two routes check each other.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize

from .atoms import GaussianAtom, chirped_gaussian, evaluate, fourier
from .errors import ContourError, DomainError, MultipleZeroError, NoZeroError
from .parallel import ordered_map

__all__ = [
    "ThetaParams",
    "ZakValue",
    "ZeroCertificate",
    "SymmetryReport",
    "zak_direct",
    "zak_callable",
    "theta_eval",
    "zak_theta",
    "zak_theta_array",
    "theta_zero_pullback",
    "winding_number",
    "simplicity_constant",
    "find_zero",
    "symmetry_suite",
    "zak_grid",
    "chirped_atom",
]

DEFAULT_K = 30
CONVERGED = 1e-13


@dataclass(frozen=True)
class ThetaParams:
    z: complex
    q: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "q", complex(self.q))
        if not abs(self.q) < 1:
            raise DomainError(f"theta needs |q| < 1, got |q|={abs(self.q)}")
        if self.z == 0:
            raise DomainError("theta needs z != 0")


@dataclass(frozen=True)
class ZakValue:
    value: complex
    tail: float
    K: int

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


@dataclass(frozen=True)
class ZeroCertificate:
    t: float
    omega: float
    winding: int
    simplicity_constant: float
    search_resolution: int
    residual: float = 0.0
    n_zeros: int = 1

    @property
    def simple(self) -> bool:
        return self.winding == 1 and self.simplicity_constant > 0


@dataclass
class SymmetryReport:
    kind: str
    tol: float
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


# --- Zak by direct summation -------------------------------------------------


def _atom_tail(g: GaussianAtom, t: float, K: int) -> float:
    # |g(x)| <= |c| exp(|Re ell| |x| - pi Re w x^2); terms with |k| > K have |x| >= K + 1 - |t|
    u, m = g.w.real, abs(g.ell.real)

    def bound(x):
        return abs(g.c) * math.exp(m * x - math.pi * u * x * x)

    x0 = K + 1 - abs(t)
    if x0 <= m / (2 * math.pi * u):
        return math.inf
    first = bound(x0)
    ratio = bound(x0 + 1) / first if first > 0 else 0.0
    if ratio >= 1:
        return math.inf
    return 2 * first / (1 - ratio)


def zak_direct(g: GaussianAtom, t: float, omega: float, K: int = DEFAULT_K) -> ZakValue:
    """sum_{|k| <= K} g(t - k) exp(2 pi i k omega), with a Gaussian tail bound."""
    if K < 1:
        raise DomainError("K must be >= 1")
    k = np.arange(-K, K + 1)
    terms = evaluate(g, t - k) * np.exp(2j * math.pi * k * omega)
    return ZakValue(complex(np.sum(terms)), _atom_tail(g, t, K), K)


def zak_callable(f: Callable, t: float, omega: float, K: int = DEFAULT_K) -> complex:
    k = np.arange(-K, K + 1)
    vals = np.asarray(f(t - k), dtype=complex)
    return complex(np.sum(vals * np.exp(2j * math.pi * k * omega)))


# --- theta -------------------------------------------------------------------


def _series_log(log_z, log_q, K):
    # integer powers are branch independent, so logs are safe here
    k = np.arange(-K, K + 1)
    log_z = np.asarray(log_z)[..., None]
    log_q = np.asarray(log_q)[..., None]
    return np.sum(np.exp(k * k * log_q + k * log_z), axis=-1)


def _series_tail(az: float, aq: float, K: int) -> float:
    tot = 0.0
    for s in (az, 1.0 / az):
        for k in range(K + 1, K + 400):
            term = aq ** (k * k) * s**k
            tot += term
            if term < 1e-300 or term < 1e-18 * tot:
                break
    return tot


def _product(z, q, K):
    j = np.arange(1, K + 1)
    k = np.arange(0, K + 1)
    qodd = q ** (2 * k + 1)
    return np.prod(1 - q ** (2 * j)) * np.prod((1 + qodd * z) * (1 + qodd / z))


def _product_tail(az: float, aq: float, K: int) -> float:
    # |log prod_{n>K}(1+x_n)| <= sum |x_n| / (1 - max|x_n|)
    s = aq ** (2 * K + 2) / (1 - aq * aq)
    s += aq ** (2 * K + 3) * (az + 1 / az) / (1 - aq * aq)
    return s / max(1e-300, 1 - s)


def theta_eval(p: ThetaParams, K: int | None = None, mode: str = "series"):
    """Truncated theta value and a tail estimate.

    ``K=None`` starts at 30 and doubles until two successive truncations
    agree to 1e-13 (relative). Returns ``(value, tail)``; for the product
    the tail is relative.
    """
    if mode not in ("series", "product"):
        raise DomainError(f"unknown theta mode {mode!r}")
    z, q = p.z, p.q
    if q == 0:
        return 1.0 + 0j, 0.0

    def once(K):
        if mode == "series":
            return complex(_series_log(cmath.log(z), cmath.log(q), K))
        return complex(_product(z, q, K))

    if K is not None:
        val = once(K)
    else:
        K, val = DEFAULT_K, once(DEFAULT_K)
        while True:
            nxt = once(2 * K)
            done = abs(nxt - val) <= CONVERGED * max(1.0, abs(nxt))
            K, val = 2 * K, nxt
            if done or K > 4096:
                break
    if mode == "series":
        return val, _series_tail(abs(z), abs(q), K)
    return val, _product_tail(abs(z), abs(q), K)


def _theta_K(gamma: float) -> int:
    if gamma < 0.1:
        warnings.warn("gamma < 0.1: |q| is close to 1 and theta converges slowly", RuntimeWarning)
    return max(DEFAULT_K, math.ceil(DEFAULT_K / gamma**2))


def zak_theta_array(lam: float, gamma: float, t, omega, K: int | None = None):
    """Vectorized theta route; ``t`` and ``omega`` broadcast."""
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    t = np.asarray(t, dtype=float)
    omega = np.asarray(omega, dtype=float)
    K = _theta_K(gamma) if K is None else K
    mu = complex(gamma * gamma, lam)
    log_q = -math.pi * mu
    # outside |t| <= 1 recenter with Z(t + n, w) = exp(2 pi i n w) Z(t, w)
    shift = np.where(np.abs(t) > 1, np.round(t), 0.0)
    tr = t - shift
    log_z = 2 * math.pi * (gamma * gamma * tr + 1j * (omega + lam * tr))
    val = np.exp(-math.pi * mu * tr * tr) * _series_log(log_z, log_q, K)
    return val * np.exp(2j * math.pi * shift * omega)


def zak_theta(lam: float, gamma: float, t: float, omega: float, K: int | None = None) -> complex:
    """exp(-pi (gamma^2 + i lam) t^2) * Theta(z, q)."""
    return complex(zak_theta_array(lam, gamma, t, omega, K))


def theta_zero_pullback(lam: float, gamma: float, m: int = -1):
    """(t, omega) in [0,1)^2 where z(t, omega) = -q^m, for odd m.

    |z| = |q^m| forces t = -m/2; only m = -1 lands in [0, 1).
    """
    if m % 2 == 0:
        raise DomainError("theta zeros sit at odd powers only")
    t = -m / 2
    # arg: 2 pi (w + lam t) = pi - pi m lam  (mod 2 pi)
    omega = (0.5 - m * lam / 2 - lam * t) % 1.0
    return t, omega


# --- zero location and certification -----------------------------------------


def _contour_square(t0, w0, radius, n):
    # counterclockwise square of half-side `radius`, n samples, closed
    s = np.linspace(0, 4, n + 1)
    side = np.floor(s).clip(0, 3).astype(int)
    f = s - side
    f[-1] = 1.0
    dt = np.choose(side, [-1 + 2 * f, np.ones_like(f), 1 - 2 * f, -np.ones_like(f)])
    dw = np.choose(side, [-np.ones_like(f), -1 + 2 * f, np.ones_like(f), 1 - 2 * f])
    return t0 + radius * dt, w0 + radius * dw


def winding_number(F, t0: float, w0: float, radius: float = 0.05, n: int = 512, max_depth: int = 12) -> int:
    """Winding number of F(t, w) around 0 along a square contour.

    Argument increments must stay below pi/2; offending steps are bisected.
    """
    ts, ws = _contour_square(t0, w0, radius, n)
    vals = np.asarray(F(ts, ws), dtype=complex)
    scale = np.max(np.abs(vals))
    floor = 1e-12 * scale

    def check(v):
        if np.any(np.abs(v) <= floor):
            raise ContourError("Zak transform vanishes on the contour")

    check(vals)
    total = 0.0
    for i in range(n):
        total += _arg_step(F, ts[i], ws[i], ts[i + 1], ws[i + 1], vals[i], vals[i + 1], max_depth, check)
    return int(round(total / (2 * math.pi)))


def _arg_step(F, t1, w1, t2, w2, v1, v2, depth, check):
    d = cmath.phase(v2 / v1)
    if abs(d) < math.pi / 2:
        return d
    if depth == 0:
        raise ContourError("argument step guard not met after refinement")
    tm, wm = (t1 + t2) / 2, (w1 + w2) / 2
    vm = complex(np.asarray(F(np.array([tm]), np.array([wm])))[0])
    check(np.array([vm]))
    return _arg_step(F, t1, w1, tm, wm, v1, vm, depth - 1, check) + _arg_step(
        F, tm, wm, t2, w2, vm, v2, depth - 1, check
    )


def simplicity_constant(F, t0: float, w0: float, rings: int = 8, angles: int = 64,
                        r_min: float = 1e-3, r_max: float = 5e-2) -> float:
    """min |F| / distance over a punctured sampled disk around (t0, w0)."""
    r = np.geomspace(r_min, r_max, rings)[:, None]
    a = np.linspace(0, 2 * math.pi, angles, endpoint=False)[None, :]
    ts = t0 + r * np.cos(a)
    ws = w0 + r * np.sin(a)
    return float(np.min(np.abs(F(ts, ws)) / r))


def _local_minima(A):
    # periodic 8-neighbourhood; |Z| is doubly periodic
    m = np.ones_like(A, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                m &= A <= np.roll(np.roll(A, di, 0), dj, 1)
    return np.argwhere(m)


def find_zero(lam: float, gamma: float, N: int = 256) -> ZeroCertificate:
    """Locate, count and certify the zeros of Z(h_lam phi_gamma) on [0,1)^2."""
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    if N < 64:
        raise DomainError("search grid needs N >= 64")

    def F(t, w):
        return zak_theta_array(lam, gamma, t, w)

    A = zak_grid(lam, gamma, N)
    scale = float(np.max(A))
    zeros = []
    for iw, it in _local_minima(A):
        x0 = np.array([it / N, iw / N])

        def resid(p):
            v = complex(F(p[0], p[1]))
            return [v.real / scale, v.imag / scale]

        sol = optimize.root(resid, x0, method="hybr", options={"xtol": 1e-14})
        p = sol.x
        if np.max(np.abs(p - x0)) > 2.0 / N:
            continue  # wandered off: not a zero basin
        if abs(complex(F(p[0], p[1]))) > 1e-10 * scale:
            continue  # nonzero local minimum of |Z|
        p = np.mod(p, 1.0)
        p[np.isclose(p, 1.0, atol=1e-12)] = 0.0
        if not any(np.hypot(*(_wrap(p - q))) < 1e-6 for q in zeros):
            zeros.append(p)
    if not zeros:
        raise NoZeroError(f"no zero found for lam={lam}, gamma={gamma}")
    if len(zeros) > 1:
        raise MultipleZeroError(f"{len(zeros)} zeros found for lam={lam}, gamma={gamma}: {zeros}")
    t0, w0 = (float(v) for v in zeros[0])
    wind = winding_number(F, t0, w0)
    C = simplicity_constant(F, t0, w0)
    res = abs(complex(F(t0, w0)))
    return ZeroCertificate(t0, w0, wind, C, N, res, 1)


def _wrap(d):
    return (np.asarray(d) + 0.5) % 1.0 - 0.5


# --- appendix symmetry identities --------------------------------------------

_SAMPLES = [(t, w) for t in (0.1, 0.3, 0.5, 0.7, 0.9) for w in (0.05, 0.25, 0.45, 0.65, 0.85)]


def symmetry_suite(g, kind: str, eigenvalue: complex = 1.0, K: int = DEFAULT_K, tol: float = 1e-10) -> SymmetryReport:
    """Evaluate the Zak-zero identities implied by the declared symmetry class.

    ``kind`` is one of ``real``, ``even``, ``odd``, ``eigenfunction``; ``g``
    is an atom or a vectorized callable. For ``eigenfunction`` the Fourier
    eigenvalue must be passed and must not be ``-i``.
    """
    if isinstance(g, GaussianAtom):
        atom = g

        def Zf(t, w):
            return zak_direct(atom, t, w, K).value
    else:
        atom = None

        def Zf(t, w):
            return zak_callable(g, t, w, K)

    scale = max(abs(Zf(t, w)) for t, w in _SAMPLES) or 1.0
    rep = SymmetryReport(kind, tol)
    R = rep.residuals
    if kind == "real":
        R["conj(Zf(t,w)) = Zf(t,1-w)"] = max(abs(Zf(t, w).conjugate() - Zf(t, 1 - w)) for t, w in _SAMPLES) / scale
        # Zf(t, 1/2) is real, so a sign change gives a zero on that line
        R["Im Zf(t,1/2)"] = max(abs(Zf(t, 0.5).imag) for t, _ in _SAMPLES) / scale
        R["Zf(0,1/2) = -Zf(1,1/2)"] = abs(Zf(0.0, 0.5) + Zf(1.0, 0.5)) / scale
    elif kind == "even":
        R["Zf(1/2,1/2)"] = abs(Zf(0.5, 0.5)) / scale
    elif kind == "odd":
        for pt in ((0.0, 0.0), (0.5, 0.0), (0.0, 0.5)):
            R[f"Zf{pt}"] = abs(Zf(*pt)) / scale
    elif kind == "eigenfunction":
        mu = complex(eigenvalue)
        if abs(mu + 1j) < 1e-12:
            raise DomainError("eigenvalue -i gives no zero at the center")
        R["Zf(t,w) = mu e^{2pi i t w} Zf(w,1-t)"] = max(
            abs(Zf(t, w) - mu * cmath.exp(2j * math.pi * t * w) * Zf(w, 1 - t)) for t, w in _SAMPLES
        ) / scale
        if atom is not None:
            fh = fourier(atom)
            R["Zf(t,w) = e^{2pi i t w} Zfhat(w,-t)"] = max(
                abs(Zf(t, w) - cmath.exp(2j * math.pi * t * w) * zak_direct(fh, w, -t, K).value)
                for t, w in _SAMPLES
            ) / scale
        R["Zf(1/2,1/2)"] = abs(Zf(0.5, 0.5)) / scale
    else:
        raise DomainError(f"unknown symmetry kind {kind!r}")
    return rep


def zak_grid(lam: float, gamma: float, N: int) -> np.ndarray:
    """|Z(h_lam phi_gamma)| on the N x N grid (i/N, j/N); rows are omega, t varies fastest."""
    if N < 1:
        raise DomainError("N must be positive")
    t = np.arange(N) / N
    rows = ordered_map(lambda j: np.abs(zak_theta_array(lam, gamma, t, np.full(N, j / N))), range(N))
    return np.vstack(rows)


def chirped_atom(lam: float, gamma: float) -> GaussianAtom:
    """h_lam * phi_gamma as an atom."""
    return chirped_gaussian(lam, gamma * gamma)
