"""Truncated Taylor series about the origin.

A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``z**0 ... z**N``.  Products, quotients, logarithms and powers are all
computed modulo ``z**(N+1)``; nothing beyond the stored order is ever
guessed.
"""

from __future__ import annotations

import numbers
import os

import numpy as np

from .errors import DomainError, OrderMismatchError

__all__ = [
    "DEFAULT_ORDER",
    "default_order",
    "TruncatedSeries",
    "multiply",
    "divide",
    "log_series",
    "exp_series",
    "power",
    "derivative_z",
    "evaluate",
    "evaluate_circle",
    "coeff_residual",
]

DEFAULT_ORDER = 64
_UNIT_TOL = 1e-12


def default_order() -> int:
    """Series order, overridable through the ``ML_BAZ_ORDER`` variable."""
    raw = os.environ.get("ML_BAZ_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise DomainError(f"ML_BAZ_ORDER must be an integer, got {raw!r}") from None
    if order < 1:
        raise DomainError("ML_BAZ_ORDER must be positive")
    return order


class TruncatedSeries:
    """Coefficients ``c[0..N]`` of a power series truncated after ``z**N``."""

    __slots__ = ("coeffs",)
    __array_priority__ = 1000  # so ndarray scalars defer to our __r*__

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=complex).ravel()
        if arr.size == 0:
            raise DomainError("a series needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise DomainError("series coefficients must be finite")
        arr.setflags(write=False)
        self.coeffs = arr

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_poly(cls, coeffs, order: int) -> TruncatedSeries:
        """Pad (or truncate) a coefficient list to the given order."""
        out = np.zeros(order + 1, dtype=complex)
        c = np.asarray(coeffs, dtype=complex).ravel()[: order + 1]
        out[: c.size] = c
        return cls(out)

    @classmethod
    def constant(cls, value: complex, order: int) -> TruncatedSeries:
        return cls.from_poly([value], order)

    @classmethod
    def identity(cls, order: int) -> TruncatedSeries:
        """The function ``f(z) = z``."""
        return cls.from_poly([0, 1], order)

    @classmethod
    def geometric(cls, order: int) -> TruncatedSeries:
        """``1/(1 - z)``."""
        return cls(np.ones(order + 1))

    @classmethod
    def koebe(cls, order: int) -> TruncatedSeries:
        """``z/(1 - z)**2 = z + 2z**2 + 3z**3 + ...``"""
        return cls(np.arange(order + 1, dtype=float))

    # -- basic protocol ---------------------------------------------------
    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.coeffs.size > 6 else ""
        return f"TruncatedSeries(order={self.order}, [{head}{more}])"

    def __call__(self, z):
        return evaluate(self, z)

    def _coerce(self, other) -> np.ndarray | None:
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")
            return other.coeffs
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is not None:
            return TruncatedSeries(self.coeffs + c)
        if isinstance(other, numbers.Number):
            out = self.coeffs.copy()
            out[0] += other
            return TruncatedSeries(out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        if isinstance(other, numbers.Number):
            return TruncatedSeries(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return divide(self, other)
        if isinstance(other, numbers.Number):
            return TruncatedSeries(self.coeffs / other)
        return NotImplemented

    # -- shifts -----------------------------------------------------------
    def div_z(self) -> TruncatedSeries:
        """``f(z)/z`` for a series with ``f(0) = 0``; the order drops by one."""
        if self.order < 1:
            raise DomainError("cannot divide an order-0 series by z")
        if self.coeffs[0] != 0:
            raise DomainError("f(0) must vanish to divide by z")
        return TruncatedSeries(self.coeffs[1:])

    def mul_z(self) -> TruncatedSeries:
        """``z * f(z)``; the order grows by one."""
        return TruncatedSeries(np.concatenate(([0.0], self.coeffs)))

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise DomainError("cannot raise the order of a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def is_normalized(self) -> bool:
        """True when the constant term is 1 (within 1e-12)."""
        return abs(self.coeffs[0] - 1) <= _UNIT_TOL

    def in_class_a(self, tol: float = _UNIT_TOL) -> bool:
        """True for ``f(z) = z + a_2 z**2 + ...``."""
        return self.order >= 1 and abs(self.coeffs[0]) <= tol and abs(self.coeffs[1] - 1) <= tol

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> TruncatedSeries:
        try:
            order = int(data["order"])
            raw = data["coeffs"]
            coeffs = [complex(float(re), float(im)) for re, im in raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed series JSON: {exc}") from None
        if len(coeffs) != order + 1:
            raise DomainError(f"series JSON has {len(coeffs)} coefficients for order {order}")
        return cls(coeffs)


def _same_order(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.order != b.order:
        raise OrderMismatchError(f"orders differ: {a.order} vs {b.order}")
    return a.order


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    n = _same_order(a, b)
    return TruncatedSeries(np.convolve(a.coeffs, b.coeffs)[: n + 1])


def divide(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``a/b`` by forward substitution; needs ``b(0) != 0``."""
    n = _same_order(a, b)
    bc = b.coeffs
    if bc[0] == 0:
        raise DomainError("divisor has zero constant term")
    c = np.zeros(n + 1, dtype=complex)
    ac = a.coeffs
    b0 = bc[0]
    for k in range(n + 1):
        # sum_{j=1..k} b_j c_{k-j}
        acc = np.dot(bc[1 : k + 1], c[k - 1 :: -1]) if k else 0.0
        c[k] = (ac[k] - acc) / b0
    return TruncatedSeries(c)


def _require_unit(a: TruncatedSeries) -> None:
    if not a.is_normalized():
        raise DomainError(f"constant term must be 1, got {a.coeffs[0]}")


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """Principal logarithm of a series with constant term 1."""
    _require_unit(a)
    n = a.order
    ac = a.coeffs
    k = np.arange(n + 1)
    out = np.zeros(n + 1, dtype=complex)
    for m in range(1, n + 1):
        # m L_m = m a_m - sum_{j=1}^{m-1} j L_j a_{m-j}
        acc = np.dot(k[1:m] * out[1:m], ac[m - 1 : 0 : -1]) if m > 1 else 0.0
        out[m] = ac[m] - acc / m
    return TruncatedSeries(out)


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series with zero constant term."""
    if abs(a.coeffs[0]) > _UNIT_TOL:
        raise DomainError(f"constant term must be 0, got {a.coeffs[0]}")
    n = a.order
    ka = np.arange(n + 1) * a.coeffs
    out = np.zeros(n + 1, dtype=complex)
    out[0] = 1.0
    for m in range(1, n + 1):
        # m E_m = sum_{j=1}^{m} j a_j E_{m-j}
        out[m] = np.dot(ka[1 : m + 1], out[m - 1 :: -1]) / m
    return TruncatedSeries(out)


def power(a: TruncatedSeries, t: float) -> TruncatedSeries:
    """Principal power ``a**t`` for real ``t``.

    A constant term other than 1 is factored out and raised with the
    principal branch of the scalar power.
    """
    if isinstance(t, numbers.Complex) and not isinstance(t, numbers.Real):
        raise DomainError("power exponent must be real")
    c0 = complex(a.coeffs[0])
    if c0 == 0:
        raise DomainError("cannot take a fractional power of a series vanishing at 0")
    if abs(c0 - 1) <= _UNIT_TOL:
        unit = a
        scale = 1.0
    else:
        unit = a / c0
        scale = c0**t
    out = exp_series(float(t) * log_series(unit))
    return out if scale == 1.0 else out * scale


def derivative_z(a: TruncatedSeries) -> TruncatedSeries:
    """``z * a'(z)``: coefficient ``n`` becomes ``n * a_n``."""
    return TruncatedSeries(np.arange(a.order + 1) * a.coeffs)


def evaluate(a: TruncatedSeries, z):
    """Horner evaluation of the truncated polynomial (scalar or array ``z``)."""
    result = np.polyval(a.coeffs[::-1], np.asarray(z, dtype=complex))
    return complex(result) if np.ndim(result) == 0 else result


def evaluate_circle(a: TruncatedSeries, r: float, angles: int) -> np.ndarray:
    """Values at ``r * exp(2*pi*i*j/angles)``, ``j = 0..angles-1``.

    Coefficients are folded modulo ``angles`` before an inverse FFT, which
    is exact for any order.
    """
    c = a.coeffs * (float(r) ** np.arange(a.order + 1))
    folded = np.zeros(angles, dtype=complex)
    np.add.at(folded, np.arange(c.size) % angles, c)
    return np.fft.ifft(folded) * angles


def coeff_residual(a, b) -> float:
    """Largest coefficient difference, absolute for ``|b_n| <= 1`` else relative."""
    ac = a.coeffs if isinstance(a, TruncatedSeries) else np.asarray(a, dtype=complex)
    bc = b.coeffs if isinstance(b, TruncatedSeries) else np.asarray(b, dtype=complex)
    if ac.shape != bc.shape:
        raise OrderMismatchError(f"orders differ: {ac.size - 1} vs {bc.size - 1}")
    scale = np.maximum(1.0, np.abs(bc))
    return float(np.max(np.abs(ac - bc) / scale))
