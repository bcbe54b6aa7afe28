"""Exact local fractional calculus on α-polynomials and Mittag-Leffler
functions, with checkers for Hermite-Hadamard type identities and bounds."""

from .alpha import alpha_power, signed_pow
from .convexity import ConvexityReport, Witness, check_generalized_convex
from .errors import (
    ClassClosureError,
    ConvergenceError,
    DegenerateBaseError,
    DomainError,
    ExponentError,
    LFError,
    RecursionDepthError,
    SignChangeError,
    UnsupportedError,
)
from .functions import (
    AlphaPoly,
    Interval,
    MittagLefflerExp,
    compose_affine,
    deriv_alpha,
    evaluate,
    lf_integral,
    monomial,
    parse_function,
)
from .kernels import BACKEND
from .means import MeansRecord, mean_A, mean_Ln, prop1_check
from .special import gamma, gamma_ratio, lgamma, mittag_leffler
from .symterm import LinForm, PiecewiseTermList, PowTerm, integrate_piecewise, integrate_two_form
from .verify import (
    TheoremReport,
    holder_check,
    kernel_constant,
    thm1_residual,
    thm2_residual,
    thm3_check,
    thm4_check,
    thmD_check,
)

__version__ = "0.1.0"
