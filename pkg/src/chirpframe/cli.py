"""Command-line front end.

    chirpframe factor --matrix 1,1,0,1
    chirpframe zak-zeros --lambda 1 --gamma 1
    chirpframe sweep-det --dets 0.5,0.8,0.95,1.0 --format csv

Every subcommand also accepts ``--config PATH`` (``key = value`` lines,
matrices as four comma-separated reals) and ``--selftest``.
Exit codes: 0 success, 2 domain/config error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import atoms, frames, frft, lattice, zak
from .errors import DomainError, NumericError

__all__ = ["RunConfig", "run", "main", "load_config", "dumps", "heatmap_svg"]


def _matrix(text):
    if isinstance(text, lattice.Mat2):
        return text
    vals = [float(v) for v in str(text).replace(";", ",").split(",") if v.strip()]
    if len(vals) != 4:
        raise DomainError(f"matrix needs four reals (row-major), got {text!r}")
    return lattice.Mat2(*vals)


def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).split(",") if v.strip()]


def _complex(text):
    return complex(str(text).replace(" ", ""))


RESOLUTION_KEYS = {"L": float, "N": int, "M": float}

# name -> (parameter types, defaults, resolution keys allowed, selftest module)
COMMANDS = {
    "factor": ({"matrix": _matrix}, {}, False, "lattice"),
    "lu-rotation": ({"lambda": float}, {}, False, "lattice"),
    "chirp-design": ({"lambda": float}, {}, False, "lattice"),
    "window-design": ({"r": float, "u": float}, {}, False, "lattice"),
    "frft-check": ({"theta": float, "nodes": int, "half-width": float}, {"nodes": 2048, "half-width": 8.0}, False, "frft"),
    "zak-eval": ({"lambda": float, "gamma": float, "t": float, "omega": float}, {"gamma": 1.0}, False, "zak"),
    "zak-zeros": ({"lambda": float, "gamma": float, "n": int}, {"gamma": 1.0, "n": 256}, False, "zak"),
    "zak-heatmap": ({"lambda": float, "gamma": float, "n": int}, {"gamma": 1.0, "n": 128}, False, "zak"),
    "theta": ({"z": _complex, "q": _complex, "K": int, "mode": str}, {"mode": "series"}, False, "zak"),
    "frame-estimate": ({"gamma": float, "matrix": _matrix}, {"gamma": 1.0}, True, "frames"),
    "frame-certify": ({"alpha": float, "beta": float, "lambda": float, "K": int}, {"lambda": 0.0, "K": 12}, False, "frames"),
    "canonicalize": ({"gamma": float, "matrix": _matrix}, {"gamma": 1.0}, False, "frames"),
    "sweep-det": ({"gamma": float, "shape": _matrix, "dets": _floats},
                  {"gamma": 1.0, "shape": "1,0,0,1", "dets": "0.5,0.8,0.95,1.0"}, True, "frames"),
    "selftest": ({"module": str}, {"module": "all"}, False, "all"),
}

FORMATS = ("json", "csv", "svg")


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output: str | None = None
    fmt: str = "json"
    resolution: dict = field(default_factory=dict)
    selftest: bool = False

    def validate(self) -> RunConfig:
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        types, defaults, res_ok, _ = COMMANDS[self.command]
        unknown = set(self.params) - set(types)
        if unknown:
            raise DomainError(f"unknown parameter(s) for {self.command}: {sorted(unknown)}")
        bad_res = set(self.resolution) - (set(RESOLUTION_KEYS) if res_ok else set())
        if bad_res:
            raise DomainError(f"resolution override(s) not accepted by {self.command}: {sorted(bad_res)}")
        if self.fmt not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}")
        merged = {**defaults, **self.params}
        try:
            self.params = {k: types[k](v) for k, v in merged.items() if v is not None}
            self.resolution = {k: RESOLUTION_KEYS[k](v) for k, v in self.resolution.items()}
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"bad parameter value: {exc}") from None
        return self

    def need(self, *names):
        missing = [n for n in names if n not in self.params]
        if missing:
            raise DomainError(f"{self.command} needs --{' --'.join(missing)}")
        return [self.params[n] for n in names]


def load_config(path) -> dict:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


# --- deterministic output ----------------------------------------------------


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0:
        x = 0.0  # no signed zeros in output
    return f"{x:.17g}"


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float at 17 significant digits; complex as {re, im}."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps({"re": obj.real, "im": obj.imag}, indent, _level)
    if isinstance(obj, str):
        import json

        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([_num(v) if isinstance(v, (float, np.floating)) else ("" if v is None else v) for v in r])
    return buf.getvalue()


def heatmap_svg(values: np.ndarray, marker=None, size: int = 512) -> str:
    """Grayscale SVG of -log10(|Z| + 1e-16) clipped to [0, 12]; omega increases upward."""
    N = values.shape[0]
    cell = size / N
    level = np.clip(-np.log10(values + 1e-16), 0.0, 12.0)
    gray = np.round(255 * (1 - level / 12)).astype(int)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
    ]
    for j in range(N):
        y = (N - 1 - j) * cell
        for i in range(N):
            g = gray[j, i]
            parts.append(f'<rect x="{i * cell:.4f}" y="{y:.4f}" width="{cell:.4f}" height="{cell:.4f}" '
                         f'fill="rgb({g},{g},{g})"/>')
    if marker is not None:
        t, w = marker
        parts.append(f'<circle cx="{t * size:.4f}" cy="{(1 - w) * size:.4f}" r="6" fill="none" '
                     f'stroke="red" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --- commands ----------------------------------------------------------------


def _estimate_dict(e):
    return {"A_est": e.A_est, "B_est": e.B_est, "ratio": e.ratio, "L": e.L, "N": e.N, "M": e.M,
            "certified": e.certified, "n_atoms": e.n_atoms, "n_basis": e.n_basis,
            "refined": list(e.refined) if e.refined else None, "note": e.note}


def _resolution(cfg):
    return frames.Resolution(**{**vars(frames.DEFAULT_RESOLUTION), **cfg.resolution})


def _cmd_factor(cfg):
    (Q,) = cfg.need("matrix")
    theta, lam, alpha, beta = lattice.factor_qr(Q)
    return {"theta": theta, "lambda": lam, "alpha": alpha, "beta": beta}


def _cmd_lu_rotation(cfg):
    (lam,) = cfg.need("lambda")
    d1, d2, theta, lam_p = lattice.factor_lu_rotation(lam)
    return {"d1": d1, "d2": d2, "theta": theta, "lambda_prime": lam_p}


def _design_dict(d):
    return {"lambda": d.lam, "lambda_prime": d.lam_p, "gamma": d.gamma, "u": d.u, "v": d.v, "r": d.r, "s": d.s}


def _cmd_chirp_design(cfg):
    (lam,) = cfg.need("lambda")
    return _design_dict(lattice.chirp_design(lam))


def _cmd_window_design(cfg):
    r, u = cfg.need("r", "u")
    design, gdil = lattice.window_design(r, u)
    return {**_design_dict(design), "gamma_dil": gdil}


def _cmd_frft_check(cfg):
    (theta,) = cfg.need("theta")
    n, hw = cfg.params["nodes"], cfg.params["half-width"]
    phi = atoms.gaussian()
    sig = frft.SampledSignal.from_function(phi, -hw, hw, n)
    out = frft.frft_numeric(sig, theta)
    err = float(np.sqrt(np.sum(np.abs(out.samples - atoms.evaluate(phi, sig.grid)) ** 2) * sig.dx))
    atom_err = float(np.max(np.abs(atoms.evaluate(frft.frft_atom(phi, theta), atoms.COMPARISON_GRID)
                                   - atoms.evaluate(phi, atoms.COMPARISON_GRID))))
    return {"theta": theta, "nodes": n, "numeric_l2_error": err, "norm_drift": out.norm() - sig.norm(),
            "atom_max_error": atom_err}


def _cmd_zak_eval(cfg):
    lam, gamma, t, w = cfg.need("lambda", "gamma", "t", "omega")
    via_theta = zak.zak_theta(lam, gamma, t, w)
    direct = zak.zak_direct(zak.chirped_atom(lam, gamma), t, w)
    return {"theta_route": via_theta, "direct_route": direct.value, "difference": abs(via_theta - direct.value),
            "direct_tail_bound": direct.tail}


def _cmd_zak_zeros(cfg):
    lam, gamma, n = cfg.need("lambda", "gamma", "n")
    c = zak.find_zero(lam, gamma, n)
    return {"t": c.t, "omega": c.omega, "winding": c.winding, "simplicity_constant": c.simplicity_constant,
            "residual": c.residual, "n_zeros": c.n_zeros, "search_resolution": c.search_resolution,
            "theta_pullback": list(zak.theta_zero_pullback(lam, gamma))}


def _cmd_zak_heatmap(cfg):
    lam, gamma, n = cfg.need("lambda", "gamma", "n")
    grid = zak.zak_grid(lam, gamma, n)
    if cfg.fmt == "svg":
        marker = None
        if n >= 64:
            c = zak.find_zero(lam, gamma, n)
            marker = (c.t, c.omega)
        return heatmap_svg(grid, marker)
    if cfg.fmt == "csv":
        t = np.arange(n) / n
        rows = [(t[i], t[j], grid[j, i]) for j in range(n) for i in range(n)]
        return _csv(["t", "omega", "abs_Z"], rows)
    return {"n": n, "abs_Z": grid.tolist()}


def _cmd_theta(cfg):
    z, q = cfg.need("z", "q")
    val, tail = zak.theta_eval(zak.ThetaParams(z, q), cfg.params.get("K"), cfg.params["mode"])
    return {"value": val, "tail_estimate": tail, "mode": cfg.params["mode"]}


def _cmd_frame_estimate(cfg):
    gamma, Q = cfg.need("gamma", "matrix")
    r = _resolution(cfg)
    e = frames.estimate_bounds(frames.LatticeSystem(atoms.gaussian(gamma), Q), r.L, r.N, r.M, r.margin)
    return _estimate_dict(e)


def _cmd_frame_certify(cfg):
    alpha, beta, lam, K = cfg.need("alpha", "beta", "lambda", "K")
    window = atoms.GaussianAtom(1.0, complex(1.0, lam))
    res = frames.janssen_certify(window, alpha, beta, K)
    if isinstance(res, frames.Inconclusive):
        return {"certified": False, "margin": res.margin, "K": res.K}
    return {"certified": True, "A_lower": res.A_est, "B_upper": res.B_est, "K": K}


def _cmd_canonicalize(cfg):
    gamma, Q = cfg.need("gamma", "matrix")
    f = frames.canonicalize(gamma, Q)
    return {"window": {"c": f.window.c, "w": f.window.w, "ell": f.window.ell}, "alpha": f.alpha,
            "beta": f.beta, "scale": f.scale, "theta": f.theta, "lambda": f.lam, "negated": f.negated}


def _cmd_sweep_det(cfg):
    gamma, shape, dets = cfg.need("gamma", "shape", "dets")
    rows = frames.sweep_det(gamma, shape, dets, _resolution(cfg))
    if cfg.fmt == "csv":
        return _csv(["det", "A_est", "B_est", "ratio", "certified"],
                    [(r.det, r.A_est, r.B_est, r.ratio, "true" if r.certified else "false") for r in rows])
    return [{"det": r.det, "A_est": r.A_est, "B_est": r.B_est, "ratio": r.ratio, "certified": r.certified,
             "flag": r.flag} for r in rows]


def _cmd_selftest(cfg):
    from . import selftest

    return selftest.run_batteries(cfg.params["module"])


HANDLERS = {
    "factor": _cmd_factor,
    "lu-rotation": _cmd_lu_rotation,
    "chirp-design": _cmd_chirp_design,
    "window-design": _cmd_window_design,
    "frft-check": _cmd_frft_check,
    "zak-eval": _cmd_zak_eval,
    "zak-zeros": _cmd_zak_zeros,
    "zak-heatmap": _cmd_zak_heatmap,
    "theta": _cmd_theta,
    "frame-estimate": _cmd_frame_estimate,
    "frame-certify": _cmd_frame_certify,
    "canonicalize": _cmd_canonicalize,
    "sweep-det": _cmd_sweep_det,
    "selftest": _cmd_selftest,
}


def _emit(cfg, result, stdout):
    if isinstance(result, str):
        text = result
    else:
        text = dumps(result) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config.validate()
        if config.fmt == "svg" and config.command != "zak-heatmap":
            raise DomainError("svg output is only available for zak-heatmap")
        if config.fmt == "csv" and config.command not in ("sweep-det", "zak-heatmap"):
            raise DomainError("csv output is only available for sweep-det and zak-heatmap")
        if config.selftest:
            from . import selftest

            result = selftest.run_batteries(COMMANDS[config.command][3])
            _emit(config, result, stdout)
            return 0 if result["failed"] == 0 else 3
        result = HANDLERS[config.command](config)
        _emit(config, result, stdout)
        if config.command == "selftest" and result["failed"]:
            return 3
        return 0
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except NumericError as exc:
        stderr.write(f"numeric failure: {type(exc).__name__}: {exc}\n")
        return 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chirpframe", description="Chirped-Gaussian Gabor toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (types, defaults, res_ok, _) in COMMANDS.items():
        sp = sub.add_parser(name)
        for key in types:
            sp.add_argument(f"--{key}", dest=f"p:{key}", default=None, metavar=key.upper())
        if res_ok:
            for key in RESOLUTION_KEYS:
                sp.add_argument(f"--{key}", dest=f"r:{key}", default=None, metavar=key.upper())
        sp.add_argument("--config", default=None, help="key = value file")
        sp.add_argument("--output", "-o", default=None)
        sp.add_argument("--format", dest="fmt", default=None, choices=FORMATS)
        sp.add_argument("--selftest", action="store_true")
    return p


def config_from_args(ns) -> RunConfig:
    params, res = {}, {}
    output, fmt = None, None
    if ns.config:
        for k, v in load_config(ns.config).items():
            if k == "output":
                output = v
            elif k == "format":
                fmt = v
            elif k in RESOLUTION_KEYS:
                res[k] = v
            else:
                params[k] = v
    for k, v in vars(ns).items():
        if v is None:
            continue
        if k.startswith("p:"):
            params[k[2:]] = v
        elif k.startswith("r:"):
            res[k[2:]] = v
    output = ns.output or output
    fmt = ns.fmt or fmt or ("svg" if ns.command == "zak-heatmap" else "json")
    return RunConfig(ns.command, params, output, fmt, res, ns.selftest)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (DomainError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    try:
        return run(cfg)
    except BrokenPipeError:  # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
