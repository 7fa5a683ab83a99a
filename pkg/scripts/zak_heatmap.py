"""Write SVG heatmaps of |Z(h_lam phi_gamma)| over the unit square.

    python3 scripts/zak_heatmap.py --out-dir heatmaps --n 128
"""
import argparse
from pathlib import Path

from chirpframe import zak
from chirpframe.cli import heatmap_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="heatmaps")
    ap.add_argument("--n", type=int, default=128)
    ap.add_argument("--lambdas", default="-2,-1,-0.5,0.5,1,2")
    ap.add_argument("--gammas", default="0.5,1,2")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for lam in map(float, args.lambdas.split(",")):
        for gam in map(float, args.gammas.split(",")):
            c = zak.find_zero(lam, gam, max(args.n, 64))
            svg = heatmap_svg(zak.zak_grid(lam, gam, args.n), (c.t, c.omega))
            path = out / f"zak_lam{lam:+g}_gam{gam:g}.svg"
            path.write_text(svg, encoding="utf-8")
            print(f"{path}: zero at ({c.t:.9f}, {c.omega:.9f}), winding {c.winding}, C = {c.simplicity_constant:.4g}")


if __name__ == "__main__":
    main()
