"""Quick invariant batteries, one per module, used by ``chirpframe --selftest``.

Each check is a zero-argument callable returning a bool. The batteries are
deliberately small (seconds, not minutes); the pytest suite is the thorough
version.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from . import atoms, frames, frft, lattice, zak

__all__ = ["BATTERIES", "run_batteries"]


def _rng():
    return np.random.default_rng(20240501)


def _random_atom(rng):
    return atoms.GaussianAtom(complex(*rng.normal(size=2)), complex(rng.uniform(0.5, 2), rng.normal()),
                              complex(*rng.normal(scale=0.5, size=2)))


def _atoms_battery():
    rng = _rng()
    phi = atoms.gaussian()
    g = _random_atom(rng)
    return {
        "fourier(phi) = phi": lambda: atoms.atoms_close(atoms.fourier(phi), phi, 1e-14),
        "fourier involution": lambda: atoms.atoms_close(atoms.fourier(atoms.fourier(g)), atoms.reflect(g)),
        "Parseval": lambda: abs(atoms.l2_norm(atoms.fourier(g)) - atoms.l2_norm(g)) <= 1e-10 * atoms.l2_norm(g),
        "norm of phi": lambda: abs(atoms.l2_norm(phi) - 2 ** -0.25) <= 1e-15,
        "<phi, T_2 phi>": lambda: abs(atoms.inner_product(phi, atoms.tf_shift(phi, 0, 2))
                                      - math.exp(-2 * math.pi) / math.sqrt(2)) <= 1e-15,
        "dilation norm": lambda: abs(atoms.l2_norm(phi) ** 2 - 3 * atoms.l2_norm(atoms.dilate(phi, 3)) ** 2) <= 1e-14,
        "product convolution": lambda: atoms.atoms_close(
            atoms.product_convolution(1.0, -2.0, math.sqrt(2))[0],
            atoms.multiply_chirp(atoms.convolve_chirp(atoms.gaussian(1 / math.sqrt(2)), -2.0), 1.0)),
    }


def _lattice_battery():
    def lu_ok():
        for lam in (-2, -1, -0.5, 0.5, 1, 2):
            d1, d2, th, lp = lattice.factor_lu_rotation(lam)
            P = lattice.lower_shear(lp) @ lattice.upper_shear(lam)
            if (lattice.Mat2(d1, 0, 0, d2) @ lattice.rotation(th)).max_diff(P) > 1e-12 or abs(d1 * d2 - 1) > 1e-12:
                return False
        return True

    def qr_ok():
        rng = _rng()
        for _ in range(20):
            Q = lattice.Mat2(*rng.normal(size=4))
            if Q.det < 0:
                Q = lattice.Mat2(Q.a, -Q.b, Q.c, -Q.d)
            th, lam, al, be = lattice.factor_qr(Q)
            R = lattice.rotation(th) @ lattice.upper_shear(lam) @ lattice.separable(al, be)
            if R.max_diff(Q) > 1e-12:
                return False
        return True

    def design_ok():
        d = lattice.chirp_design(1.0)
        return max(abs(d.u - 8 / 17), abs(d.v + 2 / 17), abs(d.r - 15 / 17)) <= 1e-14

    return {
        "factor_qr reconstruction": qr_ok,
        "LU = diag R": lu_ok,
        "chirp_design(1)": design_ok,
        "G(1) = 15/8": lambda: abs(lattice.ratio_G(1.0) - 15 / 8) <= 1e-14,
        "solve_lambda round trip": lambda: all(
            abs(lattice.ratio_G(lattice.solve_lambda(r)) - r) <= 1e-10 * max(1, abs(r)) for r in (-3, 0.01, 100)),
        "window_design(15/8, 1)": lambda: abs(lattice.window_design(15 / 8, 1.0)[1] - math.sqrt(17 / 8)) <= 1e-10,
    }


def _frft_battery():
    phi = atoms.gaussian()
    g = atoms.GaussianAtom(1.0, 1.3 + 0.4j, 0.2 - 0.3j)

    def numeric_ok():
        sig = frft.SampledSignal.from_function(phi, -8, 8, 1024)
        out = frft.frft_numeric(sig, 1.1)
        return np.sqrt(np.sum(np.abs(out.samples - phi(sig.grid)) ** 2) * sig.dx) <= 1e-6

    def commutation_ok():
        a, b, th = 0.3, 0.5, 0.8
        lhs = atoms.tf_shift(frft.frft_atom(g, th), a, b)
        ra, rb = lattice.rotation(th).apply([a, b])
        rhs = frft.frft_atom(atoms.tf_shift(g, ra, rb), th).scaled(frft.commutation_phase((a, b), th))
        return atoms.atoms_close(lhs, rhs, 1e-8)

    return {
        "F_theta phi = phi": lambda: all(atoms.atoms_close(frft.frft_atom(phi, t), phi, 1e-12) for t in (0.3, 1.0, 2.7)),
        "F_{pi/2} = F": lambda: atoms.atoms_close(frft.frft_atom(g, math.pi / 2), atoms.fourier(g), 1e-12),
        "group law": lambda: atoms.atoms_close(frft.frft_atom(frft.frft_atom(g, 0.4), 0.9), frft.frft_atom(g, 1.3), 1e-8),
        "unitarity": lambda: abs(atoms.l2_norm(frft.frft_atom(g, 0.77)) - atoms.l2_norm(g)) <= 1e-10,
        "commutation phase": commutation_ok,
        "numeric vs atom": numeric_ok,
    }


def _zak_battery():
    def theta_zero():
        q = 0.3
        return abs(zak.theta_eval(zak.ThetaParams(-q, q), 40)[0]) <= 1e-12

    def two_routes():
        g = zak.chirped_atom(2.0, 0.7)
        return abs(zak.zak_theta(2.0, 0.7, 0.2, 0.8) - zak.zak_direct(g, 0.2, 0.8).value) <= 1e-10

    def zero_found():
        c = zak.find_zero(1.0, 1.0, 64)
        return abs(c.t - 0.5) <= 1e-6 and abs(c.omega - 0.5) <= 1e-6 and c.simple

    return {
        "Z phi(0,0)": lambda: abs(zak.zak_direct(atoms.gaussian(), 0, 0).value - 1.0864348112133080) <= 1e-12,
        "Theta(1, 0.1)": lambda: abs(zak.theta_eval(zak.ThetaParams(1, 0.1))[0] - 1.2002000020000002) <= 1e-13,
        "Theta(-q, q) = 0": theta_zero,
        "series = product": lambda: abs(zak.theta_eval(zak.ThetaParams(cmath.exp(0.4j), 0.5j), mode="series")[0]
                                        - zak.theta_eval(zak.ThetaParams(cmath.exp(0.4j), 0.5j), mode="product")[0]) <= 1e-12,
        "two routes": two_routes,
        "symmetry (real)": lambda: zak.symmetry_suite(atoms.gaussian(), "real").passed,
        "unique simple zero": zero_found,
    }


def _frames_battery():
    def canon_det():
        rng = _rng()
        for _ in range(20):
            Q = lattice.Mat2(*rng.normal(size=4))
            cf = frames.canonicalize(rng.uniform(0.5, 2), Q)
            if abs(cf.alpha * cf.beta - abs(Q.det)) > 1e-12 * max(1, abs(Q.det)):
                return False
        return True

    def janssen():
        cert = frames.janssen_certify(atoms.gaussian(), 0.5, 0.5)
        return cert.certified and cert.A_est > 0

    def estimate():
        r = frames.Resolution(L=6, N=256, M=10)
        e = frames.estimate_bounds(frames.LatticeSystem(atoms.gaussian(), lattice.separable(0.5, 0.5)),
                                   r.L, r.N, r.M, refine=False)
        return 0 <= e.A_est <= e.B_est and e.A_est > 0.1 * e.B_est

    return {
        "canonicalize keeps |det|": canon_det,
        "Janssen certifies (phi, 1/2, 1/2)": janssen,
        "Janssen inconclusive at (phi, 1, 1)": lambda: not frames.janssen_certify(atoms.gaussian(), 1.0, 1.0).certified,
        "finite section at density 1/4": estimate,
    }


BATTERIES = {
    "atoms": _atoms_battery,
    "lattice": _lattice_battery,
    "frft": _frft_battery,
    "zak": _zak_battery,
    "frames": _frames_battery,
}


def run_batteries(module: str = "all") -> dict:
    names = list(BATTERIES) if module == "all" else [module]
    unknown = [n for n in names if n not in BATTERIES]
    if unknown:
        from .errors import DomainError

        raise DomainError(f"unknown battery {unknown[0]!r}; choose from {sorted(BATTERIES)} or 'all'")
    report, passed, failed = {}, 0, 0
    for name in names:
        checks = BATTERIES[name]()
        fails = []
        for label, fn in checks.items():
            try:
                ok = bool(fn())
            except Exception as exc:  # a crashing check is a failing check
                ok = False
                label = f"{label} ({type(exc).__name__}: {exc})"
            if not ok:
                fails.append(label)
        report[name] = {"passed": len(checks) - len(fails), "total": len(checks), "failures": fails}
        passed += len(checks) - len(fails)
        failed += len(fails)
    return {"modules": report, "passed": passed, "failed": failed}
