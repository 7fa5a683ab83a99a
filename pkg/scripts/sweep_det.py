"""Frame-bound estimates along a determinant sweep, with Janssen certificates.

    python3 scripts/sweep_det.py --dets 0.3,0.5,0.7,0.8,0.9,0.95,1.0,1.05 --shape 1,0.5,0,1
"""
import argparse
import math

from chirpframe import frames, lattice


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--shape", default="1,0,0,1", help="det-1 shape matrix, row-major")
    ap.add_argument("--dets", default="0.3,0.5,0.7,0.8,0.9,0.95,1.0,1.05")
    ap.add_argument("--L", type=float, default=6.0)
    ap.add_argument("--M", type=float, default=12.0)
    ap.add_argument("--N", type=int, default=512)
    args = ap.parse_args()

    shape = lattice.Mat2(*map(float, args.shape.split(",")))
    shape = shape * (1 / math.sqrt(shape.det))  # accept any positive-det shape
    res = frames.Resolution(args.L, args.N, args.M)
    rows = frames.sweep_det(args.gamma, shape, [float(s) for s in args.dets.split(",")], res)
    print(f"{'det':>6} {'A_est':>12} {'B_est':>12} {'A/B':>10}  certified  note")
    for r in rows:
        if r.A_est is None:
            print(f"{r.det:6.3f} {'-':>12} {'-':>12} {'-':>10}  {'-':>9}  {r.flag}")
            continue
        c = r.certificate
        extra = f"[{c.A_est:.4f}, {c.B_est:.4f}]" if c is not None and c.certified else ""
        print(f"{r.det:6.3f} {r.A_est:12.6f} {r.B_est:12.6f} {r.ratio:10.6f}  {str(r.certified):>9}  {extra}")


if __name__ == "__main__":
    main()
