"""Complex Gamma, two-parameter Mittag-Leffler series and 1-D quadrature.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "QuadratureSpec",
    "gamma",
    "loggamma",
    "rgamma",
    "mittag_leffler",
    "integrate",
]

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_POLE_TOL = 1e-12


def _check_pole(z: complex) -> None:
    if abs(z.imag) <= _POLE_TOL and z.real <= _POLE_TOL:
        nearest = round(z.real)
        if abs(z.real - nearest) <= _POLE_TOL:
            raise PoleError(f"Gamma has a pole at z = {nearest}")


def _loggamma_right(z: complex) -> complex:
    # valid for Re z >= 0.5
    z = z - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def loggamma(z: complex) -> complex:
    """Logarithm of Gamma(z), defined up to an additive multiple of 2*pi*i.

    Only ``exp(loggamma(z))`` is meaningful; the branch is not the principal
    log-gamma branch.  Use this for ratios of Gamma values that would
    overflow when computed directly.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    _check_pole(z)
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - _loggamma_right(1.0 - z)
    return _loggamma_right(z)


def gamma(z: complex) -> complex:
    """Gamma function for complex ``z`` (Lanczos, reflection for Re z < 0.5).

    >>> abs(gamma(5) - 24) < 1e-12
    True
    """
    return cmath.exp(loggamma(z))


def rgamma(z: complex) -> complex:
    """Reciprocal Gamma, 1/Gamma(z); zero at the poles of Gamma."""
    try:
        return cmath.exp(-loggamma(z))
    except PoleError:
        return 0j


def mittag_leffler(
    alpha: complex,
    beta: complex,
    z: complex,
    terms: int = 200,
    abs_tol: float = 1e-14,
) -> complex:
    """Partial sum of E_{alpha,beta}(z) = sum_n z**n / Gamma(alpha*n + beta).

    Summation stops once two consecutive terms fall below ``abs_tol``.
    Raises :class:`ConvergenceError` if ``terms`` are used up first.
    """
    alpha, beta, z = complex(alpha), complex(beta), complex(z)
    if alpha.real <= 0 or beta.real <= 0:
        raise DomainError("mittag_leffler requires Re(alpha) > 0 and Re(beta) > 0")
    if terms < 1:
        raise DomainError("terms must be >= 1")

    total = 0j
    zn = 1 + 0j
    small = 0
    term = 0j
    for n in range(terms):
        # log form avoids overflow of Gamma for large alpha*n + beta
        term = zn * cmath.exp(-loggamma(alpha * n + beta)) if zn != 0 else 0j
        total += term
        if abs(term) < abs_tol:
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
        zn *= z
    if abs(term) > abs_tol:
        raise ConvergenceError(
            f"Mittag-Leffler series not converged after {terms} terms "
            f"(last term {abs(term):.3e})"
        )
    return total


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 32
    scheme: str = "gauss-legendre"
    abs_tol: float = 1e-12

    def __post_init__(self):
        if self.node_count < 2:
            raise DomainError("node_count must be >= 2")
        if self.scheme not in ("gauss-legendre", "adaptive-simpson"):
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")
        if not self.abs_tol >= 10 * np.finfo(float).eps:
            raise DomainError("abs_tol must be at least 10 * machine epsilon")


def _sample(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
        return np.broadcast_to(y, x.shape)
    except (TypeError, ValueError):
        return np.array([f(float(t)) for t in x], dtype=float)


def _gauss_legendre(f: Callable, spec: QuadratureSpec, max_panels: int = 1 << 12) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(spec.node_count)

    def composite(panels: int) -> float:
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        y = _sample(f, x).reshape(panels, -1)
        return float(np.sum(half * (y @ weights)))

    panels = 1
    prev = composite(panels)
    while panels < max_panels:
        panels *= 2
        cur = composite(panels)
        if abs(cur - prev) <= spec.abs_tol:
            return cur
        prev = cur
    raise ConvergenceError(f"Gauss-Legendre did not reach abs_tol={spec.abs_tol} with {panels} panels")


def _adaptive_simpson(f: Callable, spec: QuadratureSpec, max_depth: int = 50) -> float:
    def fx(t: float) -> float:
        return float(_sample(f, np.array([t]))[0])

    def simpson(a, fa, b, fb):
        m = 0.5 * (a + b)
        fm = fx(m)
        return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    fa, fb = fx(0.0), fx(1.0)
    m, fm, whole = simpson(0.0, fa, 1.0, fb)
    # explicit stack: (a, fa, b, fb, m, fm, whole, tol, depth)
    stack = [(0.0, fa, 1.0, fb, m, fm, whole, spec.abs_tol, 0)]
    total = 0.0
    while stack:
        a, fa, b, fb, m, fm, whole, tol, depth = stack.pop()
        lm, flm, left = simpson(a, fa, m, fm)
        rm, frm, right = simpson(m, fm, b, fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth:
            raise ConvergenceError("adaptive Simpson exceeded maximum refinement depth")
        stack.append((a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1))
        stack.append((m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1))
    return total


def integrate(f: Callable, spec: QuadratureSpec | None = None) -> float:
    """Integrate a real function over [0, 1].

    ``f`` may be vectorised (called with an array) or scalar.  Endpoint
    singularities must be removed by a substitution on the caller side.
    """
    spec = spec or QuadratureSpec()
    if spec.scheme == "gauss-legendre":
        return _gauss_legendre(f, spec)
    return _adaptive_simpson(f, spec)
