import cmath
import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chirpframe import atoms as A
from chirpframe import zak as Z
from chirpframe.errors import ContourError, DomainError

from conftest import finite

phi = A.gaussian()


def theta(z, q, K=None, mode="series"):
    return Z.theta_eval(Z.ThetaParams(z, q), K, mode)[0]


# --- direct Zak series --------------------------------------------------------


def test_zak_phi_origin():
    partial = 1 + 2 * sum(math.exp(-math.pi * k * k) for k in range(1, 10))
    v = Z.zak_direct(phi, 0, 0)
    assert abs(v.value - partial) < 1e-15
    assert abs(v.value - 1.0864348112) < 1e-10
    assert abs(v) == abs(v.value) and complex(v) == v.value


def test_zak_phi_center_zero():
    assert abs(Z.zak_direct(phi, 0.5, 0.5).value) < 1e-15


def test_zak_direct_tail_bound():
    v = Z.zak_direct(A.GaussianAtom(1, 0.25), 0.3, 0.2, K=20)
    assert v.tail < 1e-30
    with pytest.raises(DomainError):
        Z.zak_direct(phi, 0, 0, K=0)


def test_quasi_periodicity_example():
    g = Z.chirped_atom(1.3, 0.8)
    assert abs(Z.zak_direct(g, 0.3, 0.7 - 1).value - Z.zak_direct(g, 0.3, 0.7).value) <= 1e-12


def test_quasi_periodicity_random():
    rng = np.random.default_rng(5)
    for _ in range(20):
        lam, gam = rng.uniform(-2, 2), rng.uniform(0.5, 2)
        g = Z.chirped_atom(lam, gam)
        t, w = rng.uniform(0, 1, 2)
        base = Z.zak_direct(g, t, w).value
        for j in (-2, -1, 1, 3):
            # Z(t - j, w) = e^{-2 pi i j w} Z(t, w);  Z(t, w - j) = Z(t, w)
            assert abs(Z.zak_direct(g, t - j, w).value - cmath.exp(-2j * math.pi * j * w) * base) <= 1e-10
            assert abs(Z.zak_direct(g, t, w - j).value - base) <= 1e-10
            assert abs(Z.zak_theta(lam, gam, t - j, w) - cmath.exp(-2j * math.pi * j * w) * base) <= 1e-10


# --- theta ------------------------------------------------------------------


def test_theta_trivial_q():
    assert theta(3 + 1j, 0) == 1


def test_theta_partial_sum_value():
    # 1 + 2 (q + q^4 + q^9 + q^16) at q = 0.1
    assert abs(theta(1, 0.1) - 1.2002000020000002) < 1e-15


def test_theta_zero_q_03():
    q = 0.3
    assert abs(theta(-q, q, K=40)) <= 1e-12


@pytest.mark.parametrize("q", [0.2, 0.5 * cmath.exp(0.3j)])
@pytest.mark.parametrize("m", [-3, -1, 1, 3])
def test_theta_zeros(q, m):
    assert abs(theta(-(q**m), q)) <= 1e-10
    assert abs(theta(-(q**m), q, mode="product")) <= 1e-10


def test_theta_validation():
    with pytest.raises(DomainError):
        Z.ThetaParams(1, 1)
    with pytest.raises(DomainError):
        Z.ThetaParams(0, 0.5)
    with pytest.raises(DomainError):
        Z.theta_eval(Z.ThetaParams(1, 0.5), mode="bogus")


def test_theta_tails_are_small():
    _, ts = Z.theta_eval(Z.ThetaParams(1.5, 0.5), 60, "series")
    _, tp = Z.theta_eval(Z.ThetaParams(1.5, 0.5), 60, "product")
    assert ts < 1e-100 and tp < 1e-30


def test_series_product_agreement_adaptive():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(50):
        z = rng.uniform(0.5, 2) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        q = rng.uniform(0, 0.8) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        worst = max(worst, abs(theta(z, q) - theta(z, q, mode="product")))
    assert worst <= 1e-12


def test_series_product_agreement_fixed_K60_small_q():
    # at a fixed truncation the product's rounding grows with |q|; for |q| <= 0.6 K=60 is ample
    rng = np.random.default_rng(10)
    for _ in range(50):
        z = rng.uniform(0.5, 2) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        q = rng.uniform(0, 0.6) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        assert abs(theta(z, q, 60) - theta(z, q, 60, "product")) <= 1e-12


@given(st.floats(0.5, 2, **finite), st.floats(0, 6.28, **finite), st.floats(0.01, 0.7, **finite),
       st.floats(0, 6.28, **finite))
def test_theta_functional_equation(r, a, aq, b):
    # Theta(q^2 z, q) = (q z)^{-1} Theta(z, q)
    z, q = r * cmath.exp(1j * a), aq * cmath.exp(1j * b)
    lhs = theta(q * q * z, q)
    rhs = theta(z, q) / (q * z)
    assert abs(lhs - rhs) <= 1e-11 * max(1, abs(rhs))


# --- theta route vs direct series -----------------------------------------------


def test_zak_theta_center_zero():
    assert abs(Z.zak_theta(1, 1, 0.5, 0.5)) <= 1e-12


def test_zak_theta_vs_direct_example():
    g = Z.chirped_atom(2, 0.7)
    assert abs(Z.zak_theta(2, 0.7, 0.2, 0.8) - Z.zak_direct(g, 0.2, 0.8).value) <= 1e-10


def test_zak_theta_vs_direct_random():
    rng = np.random.default_rng(21)
    for _ in range(100):
        lam, gam = rng.uniform(-3, 3), rng.uniform(0.5, 2)
        t, w = rng.uniform(0, 1, 2)
        direct = Z.zak_direct(Z.chirped_atom(lam, gam), t, w).value
        assert abs(Z.zak_theta(lam, gam, t, w) - direct) <= 1e-10


def test_zak_theta_lambda_to_zero():
    for t, w in [(0.1, 0.2), (0.7, 0.4)]:
        assert abs(Z.zak_theta(1e-12, 1, t, w) - Z.zak_direct(phi, t, w).value) <= 1e-10


def test_zak_theta_far_t_recentred():
    a = Z.zak_theta(0.7, 1.1, 5.3, 0.2)
    b = cmath.exp(2j * math.pi * 5 * 0.2) * Z.zak_theta(0.7, 1.1, 0.3, 0.2)
    assert abs(a - b) <= 1e-10


def test_small_gamma_warns():
    with pytest.warns(RuntimeWarning):
        Z.zak_theta(1, 0.05, 0.2, 0.3)


def test_theta_zero_pullback():
    for lam, gam in [(1, 1), (-2, 0.5), (0.5, 2)]:
        t, w = Z.theta_zero_pullback(lam, gam, -1)
        assert (t, w) == (0.5, pytest.approx(0.5))
        q = cmath.exp(-math.pi * complex(gam * gam, lam))
        z = cmath.exp(2 * math.pi * (gam * gam * t + 1j * (w + lam * t)))
        assert abs(z + 1 / q) <= 1e-12 * abs(z)
    with pytest.raises(DomainError):
        Z.theta_zero_pullback(1, 1, 2)


# --- zeros -------------------------------------------------------------------


def test_winding_number_model_functions():
    def f(t, w):
        return (np.asarray(t) - 0.5) + 1j * (np.asarray(w) - 0.5)

    assert Z.winding_number(f, 0.5, 0.5) == 1
    assert Z.winding_number(lambda t, w: np.conj(f(t, w)), 0.5, 0.5) == -1
    assert Z.winding_number(lambda t, w: f(t, w) ** 2, 0.5, 0.5) == 2
    assert Z.winding_number(f, 0.2, 0.2) == 0
    with pytest.raises(ContourError):
        Z.winding_number(f, 0.45, 0.5)  # zero on the contour's right edge


def test_simplicity_constant_model():
    f = lambda t, w: (np.asarray(t) - 0.5) + 1j * (np.asarray(w) - 0.5)  # noqa: E731
    assert abs(Z.simplicity_constant(f, 0.5, 0.5) - 1) < 1e-12
    g = lambda t, w: f(t, w) ** 2  # noqa: E731
    assert Z.simplicity_constant(g, 0.5, 0.5) < 2e-3


@pytest.mark.parametrize("lam,gam", [(1, 1), (-2, 0.5)])
def test_find_zero_examples(lam, gam):
    c = Z.find_zero(lam, gam, 128)
    assert abs(c.t - 0.5) <= 1e-6 and abs(c.omega - 0.5) <= 1e-6
    assert c.winding == 1 and c.simplicity_constant > 0 and c.simple and c.n_zeros == 1
    assert c.search_resolution == 128


def test_find_zero_validation():
    with pytest.raises(DomainError):
        Z.find_zero(1, 1, 32)
    with pytest.raises(DomainError):
        Z.find_zero(1, 0, 64)


def test_zak_grid():
    g = Z.zak_grid(1, 1, 2)
    assert g.shape == (2, 2) and g[1, 1] < 1e-12 and np.all(g[[0, 0, 1], [0, 1, 0]] > 1e-3)
    g3 = Z.zak_grid(1, 1, 3)
    assert g3.min() > 1e-3
    N = 256
    big = Z.zak_grid(1, 1, N)
    assert np.unravel_index(np.argmin(big), big.shape) == (N // 2, N // 2)
    # row index is omega, column index is t
    assert abs(big[10, 30] - abs(Z.zak_theta(1, 1, 30 / N, 10 / N))) < 1e-14


# --- symmetry identities ----------------------------------------------------------


def test_symmetry_real_window():
    rep = Z.symmetry_suite(phi, "real", tol=1e-12)
    assert rep.passed, rep.residuals


def test_symmetry_even_window():
    for gam in (0.5, 1.0, 2.0):
        assert Z.symmetry_suite(A.gaussian(gam), "even").passed


def test_symmetry_odd_window():
    rep = Z.symmetry_suite(lambda x: x * np.exp(-np.pi * x * x), "odd")
    assert rep.passed, rep.residuals


def test_symmetry_eigenfunction():
    assert Z.symmetry_suite(phi, "eigenfunction", 1.0).passed
    # x phi(x) is a Fourier eigenfunction with eigenvalue -i: no centre zero forced
    with pytest.raises(DomainError):
        Z.symmetry_suite(lambda x: x * np.exp(-np.pi * x * x), "eigenfunction", -1j)
    # (4 pi x^2 - 1) phi(x) has eigenvalue -1
    h2 = lambda x: (4 * np.pi * x * x - 1) * np.exp(-np.pi * x * x)  # noqa: E731
    assert Z.symmetry_suite(h2, "eigenfunction", -1.0).passed


def test_odd_window_centre_not_forced():
    # x phi(x) is odd but its eigenvalue is -i; its Zak transform at the centre is nonzero
    v = Z.zak_callable(lambda x: x * np.exp(-np.pi * x * x), 0.5, 0.5)
    assert abs(v) > 1e-3


def test_symmetry_detects_violation():
    # a non-even window declared even must fail
    rep = Z.symmetry_suite(A.GaussianAtom(1, 1, 0.8), "even")
    assert not rep.passed
    with pytest.raises(DomainError):
        Z.symmetry_suite(phi, "sideways")
