"""Mittag-Leffler operator, Bazilevic-type classes and numerical checks of
their inclusion, radius and integral-operator bounds on truncated series."""

from .classes import (
    BazilevicParams,
    ClassParams,
    DiskProbe,
    HerglotzMeasure,
    Verdict,
    bazilevic_construct,
    class_functional,
    decompose_Pk,
    herglotz_to_series,
    in_named_subclass,
    in_P_rho,
    in_Pk_rho,
    random_measure,
    solve_functional_inverse,
)
from .errors import ConvergenceError, DomainError, HypothesisError, MLBazError, PoleError
from .ml_operator import (
    IDENTITY,
    OperatorParams,
    apply_operator,
    bernardi,
    check_bernardi_identity,
    check_recurrence,
    ml_multiplier,
)
from .series import TruncatedSeries, derivative_z, divide, evaluate, exp_series, log_series, multiply, power
from .special import QuadratureSpec, gamma, integrate, mittag_leffler
from .theorems import (
    RadiusResult,
    TheoremReport,
    empirical_radius,
    goodman_bounds_check,
    iota,
    radius_r1,
    rho1,
    sharp_function,
    verify,
)

__version__ = "0.1.0"
