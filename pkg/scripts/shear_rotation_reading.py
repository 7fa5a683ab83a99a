"""Which diagonal does L_{lam'} U_lam = diag(d1, d2) R_theta carry?

Compares finite-section conditioning of four systems per lam:
  designed window  G(h_lam (h_lam' * phi_{1/gamma}), D)
  sheared lattice  G(phi_{1/gamma}, L U D)         (same bounds, up to 1/|lam'|)
  row-norm reading G(phi_gamma, L U D)  ~  G(phi, D)
  other reading    G(phi_{1/gamma^2}, R D)
"""
import math

from chirpframe import atoms, frames, lattice


def ratio(g, Q, normalize=True):
    return frames.estimate_bounds(frames.LatticeSystem(g, Q), refine=False, normalize=normalize).ratio


def main():
    D = lattice.separable(math.sqrt(0.5), math.sqrt(0.5))
    print(f"{'lam':>5} {'d1':>8} {'gamma':>8} | {'designed':>9} {'sheared':>9} {'phi_g LUD':>9} {'phi D':>9} "
          f"{'phi_1/g2 RD':>11}")
    for lam in (0.5, 1.0, 2.0):
        d = lattice.chirp_design(lam)
        d1, d2, th, lp = lattice.factor_lu_rotation(lam)
        W, *_ = atoms.product_convolution(lam, d.lam_p, d.gamma)
        LU = lattice.lower_shear(lp) @ lattice.upper_shear(lam)
        print(f"{lam:5.2f} {d1:8.5f} {d.gamma:8.5f} | {ratio(W, D):9.5f} {ratio(atoms.gaussian(1 / d.gamma), LU @ D):9.5f} "
              f"{ratio(atoms.gaussian(d.gamma), LU @ D):9.5f} {ratio(atoms.gaussian(), D):9.5f} "
              f"{ratio(atoms.gaussian(1 / d.gamma**2), lattice.rotation(th) @ D):11.5f}")


if __name__ == "__main__":
    main()
