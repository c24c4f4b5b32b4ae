"""The Mittag-Leffler coefficient operator and the Bernardi integral operator.

Both operators act diagonally on coefficients:

    E^m f  : a_n  ->  Gamma(beta) (1 + (n-1) lam)**m / Gamma(alpha (n-1) + beta) * a_n
    L_sigma: a_n  ->  (sigma + 1) / (sigma + n) * a_n
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .series import TruncatedSeries, coeff_residual, derivative_z
from .special import loggamma

__all__ = [
    "OperatorParams",
    "IDENTITY",
    "ml_multiplier",
    "multipliers",
    "apply_operator",
    "invert_operator",
    "check_recurrence",
    "bernardi",
    "invert_bernardi",
    "check_bernardi_identity",
]


def _as_complex(value, name: str) -> complex:
    try:
        z = complex(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a number, got {value!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite")
    return z


@dataclass(frozen=True)
class OperatorParams:
    """Parameters ``(m, lam, alpha, beta)`` of the Mittag-Leffler operator.

    ``alpha = 0`` is only accepted together with ``beta = 1`` (the
    Al-Oboudi and Salagean reductions); otherwise ``Re(alpha) > 0``.
    """

    m: int = 0
    lam: float = 1.0
    alpha: complex = 0j
    beta: complex = 1 + 0j

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a non-negative integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        lam = _as_complex(self.lam, "lam")
        if lam.imag != 0 or lam.real < 0:
            raise DomainError(f"lam must be real and >= 0, got {self.lam!r}")
        object.__setattr__(self, "lam", lam.real)
        alpha = _as_complex(self.alpha, "alpha")
        beta = _as_complex(self.beta, "beta")
        if beta.real <= 0:
            raise DomainError("Re(beta) must be positive")
        if alpha == 0:
            if beta != 1:
                raise DomainError("alpha = 0 is only admitted with beta = 1")
        elif alpha.real <= 0:
            raise DomainError("Re(alpha) must be positive (or alpha = 0 with beta = 1)")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def with_m(self, m: int) -> OperatorParams:
        return OperatorParams(m, self.lam, self.alpha, self.beta)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "lambda": self.lam,
            "alpha": [self.alpha.real, self.alpha.imag],
            "beta": [self.beta.real, self.beta.imag],
        }


IDENTITY = OperatorParams(m=0, lam=1.0, alpha=0, beta=1)


def _growth(n: int, p: OperatorParams) -> float:
    # (1 + (n-1) lam)**m by repeated multiplication
    base = 1.0 + (n - 1) * p.lam
    out = 1.0
    for _ in range(p.m):
        out *= base
    return out


def _gamma_ratio(n: int, p: OperatorParams) -> complex:
    if n == 1 or p.alpha == 0:
        return 1 + 0j
    return cmath.exp(loggamma(p.beta) - loggamma(p.alpha * (n - 1) + p.beta))


def ml_multiplier(n: int, p: OperatorParams) -> complex:
    """Coefficient multiplier of ``z**n`` (``n >= 1``); equals 1 at ``n = 1``."""
    if n < 1:
        raise DomainError("multiplier index must be >= 1")
    return _gamma_ratio(n, p) * _growth(n, p)


def multipliers(order: int, p: OperatorParams) -> np.ndarray:
    """Array ``M`` with ``M[n] = ml_multiplier(n)`` for ``n = 1..order``; ``M[0] = 0``."""
    out = np.zeros(order + 1, dtype=complex)
    for n in range(1, order + 1):
        out[n] = ml_multiplier(n, p)
    return out


def _check_class_a(f: TruncatedSeries) -> None:
    if not f.in_class_a():
        raise DomainError("f must satisfy f(0) = 0 and f'(0) = 1")


def apply_operator(f: TruncatedSeries, p: OperatorParams) -> TruncatedSeries:
    """``E^m_{lam,alpha,beta} f`` for ``f`` in class A."""
    _check_class_a(f)
    return TruncatedSeries(f.coeffs * multipliers(f.order, p))


def invert_operator(g: TruncatedSeries, p: OperatorParams) -> TruncatedSeries:
    """The ``f`` in class A with ``apply_operator(f, p) = g``."""
    _check_class_a(g)
    mult = multipliers(g.order, p)
    if np.any(mult[1:] == 0):
        n = int(np.flatnonzero(mult[1:] == 0)[0]) + 1
        raise DomainError(f"operator multiplier vanishes (underflows) at n = {n}")
    out = np.zeros_like(g.coeffs)
    out[1:] = g.coeffs[1:] / mult[1:]
    if not np.all(np.isfinite(out)):
        raise DomainError("inverse operator overflows; lower the series order")
    return TruncatedSeries(out)


def check_recurrence(f: TruncatedSeries, p: OperatorParams) -> float:
    """Residual of ``E^{m+1} f = (1 - lam) E^m f + lam z (E^m f)'``."""
    em = apply_operator(f, p)
    lhs = apply_operator(f, p.with_m(p.m + 1))
    rhs = (1.0 - p.lam) * em + p.lam * derivative_z(em)
    return coeff_residual(rhs, lhs)


def _check_sigma(sigma: float) -> float:
    sigma = float(sigma)
    if not sigma > -1:
        raise DomainError(f"sigma must exceed -1, got {sigma}")
    return sigma


def bernardi(f: TruncatedSeries, sigma: float) -> TruncatedSeries:
    """``L_sigma f(z) = (sigma+1) z**(-sigma) int_0^z t**(sigma-1) f(t) dt``, termwise."""
    sigma = _check_sigma(sigma)
    n = np.arange(f.order + 1)
    scale = np.zeros(f.order + 1)
    scale[1:] = (sigma + 1.0) / (sigma + n[1:])
    return TruncatedSeries(f.coeffs * scale)


def invert_bernardi(g: TruncatedSeries, sigma: float) -> TruncatedSeries:
    """The ``f`` with ``bernardi(f, sigma) = g`` (requires ``g(0) = 0``)."""
    sigma = _check_sigma(sigma)
    if g.coeffs[0] != 0:
        raise DomainError("g(0) must vanish")
    n = np.arange(g.order + 1)
    scale = np.zeros(g.order + 1)
    scale[1:] = (sigma + n[1:]) / (sigma + 1.0)
    return TruncatedSeries(g.coeffs * scale)


def check_bernardi_identity(f: TruncatedSeries, p: OperatorParams, sigma: float) -> float:
    """Residual of ``z (E^m L f)' = (sigma+1) E^m f - sigma E^m L f``."""
    sigma = _check_sigma(sigma)
    eml = apply_operator(bernardi(f, sigma), p)
    lhs = derivative_z(eml)
    rhs = (sigma + 1.0) * apply_operator(f, p) - sigma * eml
    return coeff_residual(rhs, lhs)
