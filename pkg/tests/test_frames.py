import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chirpframe import atoms as A
from chirpframe import frames as F
from chirpframe import lattice as La
from chirpframe.errors import DegenerateError, DomainError

from conftest import finite

phi = A.gaussian()
COARSE = F.Resolution(L=6, N=256, M=10)


def est(g, Q, res=F.DEFAULT_RESOLUTION, refine=False, normalize=True):
    return F.estimate_bounds(F.LatticeSystem(g, Q), res.L, res.N, res.M, res.margin, refine=refine,
                             normalize=normalize)


def random_Q(rng, det_range):
    while True:
        Q = La.rotation(rng.uniform(0, 2 * math.pi)) @ La.upper_shear(rng.uniform(-1.5, 1.5)) @ La.separable(
            *np.exp(rng.normal(scale=0.3, size=2)))
        s = rng.uniform(*det_range)
        Q = Q * math.sqrt(s / Q.det)
        return Q


# --- canonicalize -------------------------------------------------------------


def test_canonicalize_separable_is_itself():
    cf = F.canonicalize(1.0, La.separable(0.4, 0.7))
    assert cf.window == phi or A.atoms_close(cf.window, phi, 1e-15)
    assert (cf.alpha, cf.beta, cf.scale) == pytest.approx((0.4, 0.7, 1.0), abs=1e-15)
    assert cf.lam == 0 and cf.theta == 0


def test_canonicalize_sheared():
    Q = La.upper_shear(1) @ La.separable(1, 0.5)
    cf = F.canonicalize(1.0, Q)
    assert abs(cf.alpha * cf.beta - 0.5) < 1e-15
    assert abs(cf.lam - La.factor_qr(Q)[1]) < 1e-15
    assert A.atoms_close(cf.window, A.multiply_chirp(phi, cf.lam), 1e-15)


def test_canonicalize_scalar_lattice_ignores_gamma():
    for gam in (0.5, 2.0):
        cf = F.canonicalize(gam, La.Mat2.identity() * 0.9)
        assert abs(cf.alpha * cf.beta - 0.81) < 1e-14
        assert abs(cf.scale - 1 / gam) < 1e-15


def test_canonicalize_keeps_det_random():
    rng = np.random.default_rng(2)
    for _ in range(100):
        Q = La.Mat2(*rng.normal(size=4))
        cf = F.canonicalize(rng.uniform(0.3, 3), Q)
        assert abs(cf.alpha * cf.beta - abs(Q.det)) <= 1e-12 * max(1, abs(Q.det))
        assert cf.negated == (Q.det < 0)


def test_canonicalize_errors():
    with pytest.raises(DomainError):
        F.canonicalize(1, La.Mat2(1, 2, 2, 4))
    with pytest.raises(DomainError):
        F.canonicalize(0, La.Mat2.identity())


def test_negative_det_is_same_lattice():
    Q = La.Mat2(0.7, 0.2, 0.1, -0.6)
    flipped = La.Mat2(Q.a, -Q.b, Q.c, -Q.d)
    p1 = {tuple(np.round(v, 12)) for v in F.lattice_points(Q, 5).T}
    p2 = {tuple(np.round(v, 12)) for v in F.lattice_points(flipped, 5).T}
    assert p1 == p2


# --- finite-section estimator -------------------------------------------------


def test_lattice_points():
    P = F.lattice_points(La.separable(0.5, 0.5), 2)
    assert P.shape[1] == 81 and np.max(np.abs(P)) <= 2
    with pytest.raises(DomainError):
        F.lattice_points(La.Mat2(1, 1, 1, 1), 2)


def test_hermite_basis_orthonormal():
    x = np.linspace(-6, 6, 512)
    V = F.hermite_basis(x, 40)
    G = (V.T @ V) * (x[1] - x[0])
    assert np.max(np.abs(G - np.eye(40))) < 1e-12
    assert np.allclose(np.abs(V[:, 0]), 2**0.25 * np.exp(-np.pi * x * x), atol=1e-10)


def test_estimate_oversampled_gaussian():
    e = est(phi, La.separable(0.5, 0.5), refine=True)
    assert e.A_est > 0.1 * e.B_est
    assert 0 <= e.A_est <= e.B_est and not e.certified
    assert "not a bound" in e.note
    A2, B2 = e.refined
    assert abs(A2 - e.A_est) <= 1e-6 * e.A_est and abs(B2 - e.B_est) <= 1e-6 * e.B_est


def test_estimate_critical_density_degrades():
    r1 = est(phi, La.separable(1, 1), F.Resolution(6, 512, 12)).ratio
    r2 = est(phi, La.separable(1, 1), F.Resolution(8, 512, 16)).ratio
    assert r2 <= r1 / 2


def test_estimate_undersampled_below_all_frames():
    bad = est(phi, La.separable(1.05, 1.0)).ratio
    for s in (0.25, 0.5, 0.8, 0.95):
        assert bad < est(phi, La.separable(math.sqrt(s), math.sqrt(s))).ratio


def test_estimate_degenerate_and_domain():
    with pytest.raises(DegenerateError):
        est(phi, La.separable(50, 50))
    for L, N, M in [(3, 512, 12), (6, 64, 12), (6, 512, 3)]:
        with pytest.raises(DomainError):
            F.estimate_bounds(F.LatticeSystem(phi, La.Mat2.identity()), L, N, M)


@given(st.floats(0.3, 0.95, **finite), st.floats(0, 6.2, **finite), st.floats(-1, 1, **finite),
       st.floats(0.5, 2, **finite))
def test_estimate_ordering_property(s, th, lam, gam):
    Q = La.rotation(th) @ La.upper_shear(lam) * math.sqrt(s)
    e = est(A.gaussian(gam), Q, COARSE)
    assert 0 <= e.A_est <= e.B_est


@pytest.mark.parametrize("gam", [0.5, 2.0])
def test_dilation_invariance(gam):
    Q = La.rotation(0.4) @ La.separable(0.6, 0.9)
    a = est(A.gaussian(gam), Q)
    b = est(phi, La.dilation_matrix(gam) @ Q)
    assert abs(a.ratio / b.ratio - 1) <= 0.10
    # absolute bounds carry the 1/gamma factor
    assert abs(a.B_est * gam / b.B_est - 1) <= 0.10


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, -1.5])
@pytest.mark.parametrize("s", [0.5, 0.8])
def test_chirp_moves_into_lattice(lam, s):
    # raw sampling of the chirped window, no normalization: the identity must survive discretization
    D = La.separable(math.sqrt(s), math.sqrt(s))
    a = est(A.multiply_chirp(phi, lam), D, normalize=False).ratio
    b = est(phi, La.upper_shear(lam) @ D, normalize=False).ratio
    assert abs(a / b - 1) <= 0.15


def test_normalized_matches_raw_for_plain_gaussian():
    Q = La.rotation(0.3) @ La.separable(0.7, 0.8)
    a, b = est(phi, Q), est(phi, Q, normalize=False)
    assert a.A_est == b.A_est and a.B_est == b.B_est


def test_normalize_window():
    g = A.GaussianAtom(1, 2.0 + 0.6j)
    sysn, scale = F.normalize_window(F.LatticeSystem(g, La.Mat2.identity()))
    assert abs(sysn.window.w - 1) < 1e-15 and abs(scale - 1 / math.sqrt(2)) < 1e-15
    expect = La.dilation_matrix(math.sqrt(2)) @ La.upper_shear(0.6)
    assert sysn.Q.max_diff(expect) < 1e-15


# --- Janssen certificate --------------------------------------------------------


def test_janssen_certifies_oversampled():
    c = F.janssen_certify(phi, 0.5, 0.5)
    assert c.certified and c.A_est > 0 and c.A_est <= c.B_est
    e = est(phi, La.separable(0.5, 0.5))
    assert c.A_est <= e.A_est * 1.1
    assert abs(e.B_est / c.B_est - 1) <= 0.2
    # the certificate brackets the estimate
    assert c.A_est <= e.A_est <= e.B_est <= c.B_est


def test_janssen_off_diagonal_terms():
    # c00 = 1/sqrt 2 and the nearest adjoint neighbour is e^{-2 pi}/sqrt 2
    c00 = A.shifted_inner_product(phi, phi, 0, 0)
    c01 = A.shifted_inner_product(phi, phi, 0, 2)
    assert abs(c00 - 1 / math.sqrt(2)) < 1e-15 and abs(c01 - math.exp(-2 * math.pi) / math.sqrt(2)) < 1e-16


@pytest.mark.parametrize("K", [8, 12, 20])
def test_janssen_inconclusive_at_critical(K):
    c = F.janssen_certify(phi, 1.0, 1.0, K)
    assert isinstance(c, F.Inconclusive) and c.margin <= 0 and not c.certified


def test_janssen_validation():
    with pytest.raises(DomainError):
        F.janssen_certify(phi, 0, 1)
    with pytest.raises(DomainError):
        F.janssen_certify(phi, 0.5, 0.5, K=4)


def test_janssen_tail_is_negligible_and_stable():
    a = F.janssen_certify(phi, 0.5, 0.5, 8)
    b = F.janssen_certify(phi, 0.5, 0.5, 20)
    assert abs(a.A_est - b.A_est) < 1e-12 and abs(a.B_est - b.B_est) < 1e-12


# --- equivalence and sweeps ----------------------------------------------------


def test_equivalence_trivial():
    rep = F.equivalence_check(1.0, La.separable(0.5, 0.5))
    assert abs(rep["ratio"] - 1) < 1e-12 and rep["passed"]


def test_equivalence_rotated():
    assert F.equivalence_check(1.0, La.rotation(0.7) @ La.separable(0.6, 0.9))["passed"]


def test_equivalence_near_critical():
    Q = La.rotation(0.3) @ La.upper_shear(0.5) @ La.separable(0.95, 1.0)
    near = F.equivalence_check(1.0, Q)
    far = F.equivalence_check(1.0, Q * math.sqrt(0.5 / 0.95))
    assert near["passed"]
    assert near["direct"].ratio < far["direct"].ratio and near["canonical"].ratio < far["canonical"].ratio


def test_equivalence_random():
    rng = np.random.default_rng(31)
    for _ in range(5):
        rep = F.equivalence_check(rng.uniform(0.7, 1.4), random_Q(rng, (0.3, 0.9)))
        assert rep["passed"], rep["ratio"]


def test_equivalence_detects_wrong_canonical_form():
    # the check has teeth: a canonical window with the wrong chirp does not reproduce the conditioning
    # (a sign flip of lam is not a mutation: U_{-lam} D mirrors U_lam D, with equal bounds)
    Q = La.rotation(0.5) @ La.upper_shear(2.0) @ La.separable(0.7, 1.0)
    cf = F.canonicalize(1.0, Q)
    D = La.separable(cf.alpha, cf.beta)
    direct = est(phi, Q).ratio
    assert abs(est(A.multiply_chirp(phi, cf.lam), D).ratio / direct - 1) < 1e-6
    assert abs(est(A.multiply_chirp(phi, -cf.lam), D).ratio / direct - 1) < 1e-6
    for wrong in (0.0, 2 * cf.lam):
        assert abs(est(A.multiply_chirp(phi, wrong), D).ratio / direct - 1) > 0.15


def test_equivalence_raw_sampling():
    # without window normalization the pipeline still agrees at moderate shear
    Q = La.rotation(0.7) @ La.upper_shear(0.4) @ La.separable(0.6, 0.9)
    cf = F.canonicalize(1.0, Q)
    a = est(phi, Q, normalize=False).ratio
    b = est(cf.window, La.separable(cf.alpha, cf.beta), normalize=False).ratio
    assert abs(a / b - 1) <= 0.15


def test_equivalence_domain():
    with pytest.raises(DomainError):
        F.equivalence_check(1.0, La.Mat2.identity())


def test_sweep_det():
    rows = F.sweep_det(1.0, La.Mat2.identity(), [0.5, 0.8, 0.95, 1.0, 1.1])
    ratios = [r.ratio for r in rows[:4]]
    assert all(x > y for x, y in zip(ratios, ratios[1:]))
    assert rows[0].certified
    assert not rows[3].certified
    assert rows[4].flag == "density-violating" and rows[4].A_est is None and rows[4].ratio is None


def test_sweep_negative_det_matches_positive():
    rows = F.sweep_det(1.0, La.rotation(0.3), [0.5, -0.5])
    assert abs(rows[0].ratio - rows[1].ratio) < 1e-9


def test_sweep_validation():
    with pytest.raises(DomainError):
        F.sweep_det(1.0, La.separable(1, 2), [0.5])
    with pytest.raises(DomainError):
        F.sweep_det(1.0, La.Mat2.identity(), [0.0])


# --- the shear-rotation identity and the designed window -----------------------


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_row_norm_reading_drops_rotation(lam):
    # L U = diag(gamma, 1/gamma) R_theta, so (phi_gamma, L U D) has the conditioning of (phi, D)
    D = La.separable(math.sqrt(0.5), math.sqrt(0.5))
    d1, d2, th, lp = La.factor_lu_rotation(lam)
    LU = La.lower_shear(lp) @ La.upper_shear(lam)
    gam = math.sqrt(lam * lam + 1)
    assert abs(d1 - gam) < 1e-12
    a = est(A.gaussian(gam), LU @ D).ratio
    assert abs(a / est(phi, D).ratio - 1) <= 0.05
    # with the reciprocal width the rotation stays: (phi_{1/gamma}, L U D) ~ (phi_{1/gamma^2}, R D)
    b = est(A.gaussian(1 / gam), LU @ D).ratio
    assert abs(b / est(A.gaussian(1 / gam**2), La.rotation(th) @ D).ratio - 1) <= 0.05


def test_designed_window_chain():
    # G(h_lam (h_lam' * phi_{1/gamma}), D) ~ G(phi_{1/gamma}, L U D): same bounds up to 1/|lam'|
    d = La.chirp_design(1.0)
    W, *_ = A.product_convolution(d.lam, d.lam_p, d.gamma)
    al = be = math.sqrt(0.5)
    D = La.separable(al, be)
    LU = La.lower_shear(d.lam_p) @ La.upper_shear(d.lam)
    a = est(W, D)
    b = est(A.gaussian(1 / d.gamma), LU @ D)
    assert abs(a.ratio / b.ratio - 1) <= 0.15
    # both sit inside the certified interval of the separable chirped system
    cert = F.janssen_certify(W, al, be, 16)
    assert cert.certified
    k = abs(d.lam_p)
    # bounds of the W system are 1/|lam'| times those of the sheared-lattice system
    for A_w, B_w in ((a.A_est, a.B_est), (b.A_est / k, b.B_est / k)):
        assert cert.A_est <= A_w <= B_w <= cert.B_est


def test_designed_window_raw_sections_converge_together():
    d = La.chirp_design(1.0)
    W, *_ = A.product_convolution(d.lam, d.lam_p, d.gamma)
    D = La.separable(math.sqrt(0.5), math.sqrt(0.5))
    LU = La.lower_shear(d.lam_p) @ La.upper_shear(d.lam)
    gaps = []
    for res in (F.Resolution(6, 512, 12), F.Resolution(10, 1024, 20)):
        a = est(W, D, res, normalize=False).ratio
        b = est(A.gaussian(1 / d.gamma), LU @ D, res, normalize=False).ratio
        gaps.append(abs(a / b - 1))
    assert gaps[1] < gaps[0] and gaps[0] <= 0.15
