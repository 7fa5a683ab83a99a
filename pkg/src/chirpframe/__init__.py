"""Chirped-Gaussian Gabor systems: window algebra, lattice factorizations,
fractional Fourier transforms, Zak/theta zeros and frame-bound estimation."""
from .atoms import (
    Chirp,
    GaussianAtom,
    convolve_chirp,
    dilate,
    evaluate,
    fourier,
    gaussian,
    inner_product,
    l2_norm,
    make_atom,
    multiply_chirp,
    product_convolution,
    tf_shift,
)
from .errors import (
    ChirpFrameError,
    ContourError,
    DegenerateError,
    DomainError,
    GridError,
    MultipleZeroError,
    NoRootError,
    NoZeroError,
    NumericError,
)
from .frames import (
    BoundEstimate,
    LatticeSystem,
    Resolution,
    canonicalize,
    equivalence_check,
    estimate_bounds,
    janssen_certify,
    sweep_det,
)
from .frft import SampledSignal, commutation_phase, frft_atom, frft_numeric
from .lattice import (
    ChirpDesign,
    Mat2,
    chirp_design,
    factor_lu_rotation,
    factor_qr,
    ratio_G,
    solve_lambda,
    window_design,
)
from .zak import ThetaParams, ZeroCertificate, find_zero, symmetry_suite, theta_eval, zak_direct, zak_grid, zak_theta

__version__ = "0.1.0"
