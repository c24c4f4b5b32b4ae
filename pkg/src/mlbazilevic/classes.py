"""Caratheodory-type classes P(rho), P_k(rho) and the Bazilevic-type functional.

Members of ``P_k(rho)`` are generated from discrete signed measures through
the Herglotz kernel.  Membership of an arbitrary series is decided on a
finite grid of circles (:class:`DiskProbe`), so every verdict is a
numerical statement about the truncated polynomial on that grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .ml_operator import IDENTITY, OperatorParams, apply_operator, invert_operator
from .series import TruncatedSeries, divide, evaluate_circle, power

__all__ = [
    "ClassParams",
    "HerglotzMeasure",
    "DiskProbe",
    "Verdict",
    "BazilevicParams",
    "random_measure",
    "herglotz_to_series",
    "in_P_rho",
    "in_Pk_rho",
    "decompose_Pk",
    "class_functional",
    "solve_functional_inverse",
    "bazilevic_construct",
    "in_named_subclass",
    "min_zero_modulus",
]

_MASS_TOL = 1e-12


@dataclass(frozen=True)
class ClassParams:
    """``k >= 2``, ``0 <= rho < 1``, ``theta > 0`` and ``Re(gamma) >= 0``.

    ``gamma = 0`` is admitted because the inclusion ``gamma_1 = 0`` and the
    class ``M(rho)`` use it.
    """

    k: float = 2.0
    rho: float = 0.0
    theta: float = 1.0
    gamma: complex = 1.0

    def __post_init__(self):
        if not self.k >= 2:
            raise DomainError(f"k must be >= 2, got {self.k}")
        if not 0 <= self.rho < 1:
            raise DomainError(f"rho must lie in [0, 1), got {self.rho}")
        if not self.theta > 0:
            raise DomainError(f"theta must be positive, got {self.theta}")
        g = complex(self.gamma)
        if not g.real >= 0 or (g.real == 0 and g.imag != 0):
            raise DomainError(f"Re(gamma) must be positive (or gamma = 0), got {self.gamma}")
        object.__setattr__(self, "k", float(self.k))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "gamma", g.real if g.imag == 0 else g)

    def real_gamma(self) -> float:
        """``gamma`` as a positive real, as the theorem statements require."""
        g = complex(self.gamma)
        if g.imag != 0 or g.real <= 0:
            raise DomainError("this operation requires real gamma > 0")
        return g.real

    def as_dict(self) -> dict:
        g = complex(self.gamma)
        return {"k": self.k, "rho": self.rho, "theta": self.theta, "gamma": [g.real, g.imag]}


@dataclass(frozen=True)
class HerglotzMeasure:
    """Atoms ``(theta_j, w_j)`` of a signed measure with total mass 2.

    The mass-2 normalisation makes the generated function satisfy
    ``p(0) = 1``; its total variation ``sum |w_j|`` is the smallest ``k``
    for which the function lies in ``P_k``.
    """

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(t) % (2 * math.pi), float(w)) for t, w in self.atoms)
        if not atoms:
            raise DomainError("a measure needs at least one atom")
        if not all(math.isfinite(t) and math.isfinite(w) for t, w in atoms):
            raise DomainError("atoms must be finite")
        mass = math.fsum(w for _, w in atoms)
        if abs(mass - 2.0) > _MASS_TOL:
            raise DomainError(f"total mass must be 2, got {mass}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    @property
    def variation(self) -> float:
        return math.fsum(abs(w) for _, w in self.atoms)

    def check_k(self, k: float) -> None:
        """Raise unless the measure generates members of ``P_k``."""
        if self.variation > k + _MASS_TOL:
            raise DomainError(f"total variation {self.variation:.6g} exceeds k = {k}")
        if k <= 2 + _MASS_TOL and np.any(self.weights < 0):
            raise DomainError("negative weights need k > 2")

    def to_json(self) -> dict:
        return {"atoms": [{"theta": t, "w": w} for t, w in self.atoms]}

    @classmethod
    def from_json(cls, data: dict) -> HerglotzMeasure:
        try:
            atoms = [(float(a["theta"]), float(a["w"])) for a in data["atoms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed measure JSON: {exc}") from None
        return cls(tuple(atoms))


@dataclass(frozen=True)
class DiskProbe:
    radii: tuple[float, ...] = (0.5, 0.9, 0.99)
    angles: int = 1024
    margin_tol: float = 1e-6

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise DomainError("probe needs at least one radius")
        if any(not 0 < r < 1 for r in radii):
            raise DomainError("probe radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("probe radii must be strictly increasing")
        if self.angles < 64:
            raise DomainError("probe needs at least 64 angles")
        if not self.margin_tol > 0:
            raise DomainError("margin_tol must be positive")
        object.__setattr__(self, "radii", radii)


@dataclass(frozen=True)
class Verdict:
    verdict: str
    margin: float
    max_integral: float
    per_radius: tuple[float, ...] = field(default=(), compare=False)

    @property
    def is_member(self) -> bool:
        return self.verdict == "member"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "margin": self.margin, "max_integral": self.max_integral}


@dataclass(frozen=True)
class BazilevicParams:
    theta: float
    tau: float
    g: TruncatedSeries
    p: TruncatedSeries


def random_measure(rng: np.random.Generator, k: float, max_atoms: int = 6) -> HerglotzMeasure:
    """Random atomic measure with mass 2 and variation at most ``k``.

    Atom count is uniform on ``1..max_atoms`` and angles are uniform.
    Weights are uniform on ``[0, 1]`` when ``k = 2`` and on ``[-1, 1]``
    otherwise, rescaled to mass 2; draws exceeding variation ``k`` are
    rejected.
    """
    signed = k > 2 + _MASS_TOL
    while True:
        count = int(rng.integers(1, max_atoms + 1))
        thetas = rng.uniform(0.0, 2 * math.pi, count)
        raw = rng.uniform(-1.0 if signed else 0.0, 1.0, count)
        total = raw.sum()
        if total <= 1e-3:
            continue
        w = raw * (2.0 / total)
        # exact mass 2 after rounding
        w[-1] = 2.0 - math.fsum(w[:-1])
        if np.abs(w).sum() <= k:
            return HerglotzMeasure(tuple(zip(thetas.tolist(), w.tolist())))


def herglotz_to_series(mu: HerglotzMeasure, rho: float, order: int) -> TruncatedSeries:
    """``p(z) = 1/2 int (1 + (1-2 rho) z e^{-it}) / (1 - z e^{-it}) dmu(t)`` as a series.

    ``p_0 = 1`` and ``p_n = (1 - rho) sum_j w_j exp(-i n theta_j)``.
    """
    if not 0 <= rho < 1:
        raise DomainError(f"rho must lie in [0, 1), got {rho}")
    n = np.arange(order + 1)
    coeffs = (1.0 - rho) * (np.exp(-1j * np.outer(n, mu.thetas)) @ mu.weights)
    coeffs[0] = 1.0
    return TruncatedSeries(coeffs)


def min_zero_modulus(p: TruncatedSeries) -> float:
    """Smallest modulus of a zero of the truncated polynomial (``inf`` if none)."""
    c = np.trim_zeros(p.coeffs, "b")
    if c.size <= 1:
        return math.inf
    return float(np.abs(np.roots(c[::-1])).min())


def _tail(p: TruncatedSeries, r: float) -> float:
    return float(np.sum(np.abs(p.coeffs))) * r**p.order


def in_P_rho(
    p: TruncatedSeries, rho: float, probe: DiskProbe | None = None, truncation: bool = False
) -> Verdict:
    """Three-valued test of ``Re p > rho`` on the probe circles.

    ``margin`` is the minimum of ``Re p - rho`` over the grid.  With
    ``truncation=True`` the undecided band is widened by ``sum|p_n| r**N``.
    """
    probe = probe or DiskProbe()
    if not p.is_normalized():
        raise DomainError("p(0) must be 1")
    margins, integrals = [], []
    allowance = 0.0
    for r in probe.radii:
        re = evaluate_circle(p, r, probe.angles).real - rho
        margins.append(float(re.min()))
        integrals.append(float(np.abs(re).sum() * (2 * math.pi / probe.angles) / (1.0 - rho)))
        if truncation:
            allowance = max(allowance, _tail(p, r))
    margin = min(margins)
    if margin > probe.margin_tol:
        verdict = "member"
    elif margin < -probe.margin_tol - allowance:
        verdict = "non-member"
    else:
        verdict = "boundary"
    return Verdict(verdict, margin, max(integrals), tuple(margins))


def in_Pk_rho(
    p: TruncatedSeries,
    k: float,
    rho: float,
    probe: DiskProbe | None = None,
    truncation: bool = False,
) -> Verdict:
    """Boundary-integral test ``int |Re p - rho| / (1 - rho) dtheta <= k pi``.

    The integral is the trapezoid sum on each probe circle.  ``margin`` is
    ``min_r (allowed(r) - I(r)) / pi`` where ``allowed = k pi (1 + tol)``,
    plus ``2 pi sum|p_n| r**N / (1 - rho)`` when ``truncation=True``.
    Exceeding the allowance only by the truncation term gives
    ``"boundary"``.
    """
    probe = probe or DiskProbe()
    if not p.is_normalized():
        raise DomainError("p(0) must be 1")
    if not rho < 1:
        raise DomainError("rho must be < 1")
    strict = k * math.pi * (1.0 + probe.margin_tol)
    step = 2 * math.pi / probe.angles
    worst = math.inf
    verdict = "member"
    integrals = []
    for r in probe.radii:
        re = evaluate_circle(p, r, probe.angles).real - rho
        integral = float(np.abs(re).sum() * step / (1.0 - rho))
        integrals.append(integral)
        slack = 2 * math.pi * _tail(p, r) / (1.0 - rho) if truncation else 0.0
        worst = min(worst, (strict + slack - integral) / math.pi)
        if integral > strict + slack:
            verdict = "non-member"
        elif integral > strict and verdict == "member":
            verdict = "boundary"
    return Verdict(verdict, worst, max(integrals), tuple(integrals))


def decompose_Pk(
    mu: HerglotzMeasure, k: float, rho: float, order: int
) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Split ``p = (k/4 + 1/2) p1 - (k/4 - 1/2) p2`` with ``p1, p2`` in ``P(rho)``.

    ``p1`` comes from the positive atoms and ``p2`` from the negative ones,
    each topped up at ``theta = 0`` to mass 2 when the variation is below
    ``k``.  For ``k = 2`` the second function has zero weight and is
    returned as the first.
    """
    mu.check_k(k)
    w = mu.weights
    pos_mass = float(w[w > 0].sum())
    a, b = k / 4 + 0.5, k / 4 - 0.5
    top_up = 2.0 * a - pos_mass
    pos = [(t, wt) for t, wt in mu.atoms if wt > 0]
    neg = [(t, -wt) for t, wt in mu.atoms if wt < 0]
    if top_up > _MASS_TOL:
        pos.append((0.0, top_up))
        neg.append((0.0, top_up))
    p1 = herglotz_to_series(HerglotzMeasure(tuple((t, wt / a) for t, wt in pos)), rho, order)
    if b <= _MASS_TOL:
        return p1, p1
    p2 = herglotz_to_series(HerglotzMeasure(tuple((t, wt / b) for t, wt in neg)), rho, order)
    return p1, p2


def _quotient(f: TruncatedSeries, op: OperatorParams) -> TruncatedSeries:
    return apply_operator(f, op).div_z()


def class_functional(
    f: TruncatedSeries, cp: ClassParams, op: OperatorParams = IDENTITY, direct_power: bool = True
) -> TruncatedSeries:
    """``(1-g) Q**t + g Q1 Q**(t-1)`` with ``Q = E^m f/z``, ``Q1 = E^{m+1} f/z``.

    Here ``t`` is ``cp.theta`` and ``g`` is ``cp.gamma``.  The result has
    order ``f.order - 1``.  ``direct_power=False`` forms ``Q**(t-1)`` as
    ``Q**t / Q`` instead of a single power.
    """
    q = _quotient(f, op)
    q1 = _quotient(f, op.with_m(op.m + 1))
    g = cp.gamma
    qt = power(q, cp.theta)
    qt1 = power(q, cp.theta - 1.0) if direct_power else divide(qt, q)
    return (1 - g) * qt + g * (q1 * qt1)


def solve_functional_inverse(
    target: TruncatedSeries, cp: ClassParams, op: OperatorParams = IDENTITY
) -> TruncatedSeries:
    """Find ``f`` in class A whose class functional equals ``target``.

    The functional equals ``h + (lam gamma / theta) z h'`` with
    ``h = (E^m f/z)**theta``, so ``h_n = target_n / (1 + n lam gamma / theta)``.
    The result has order ``target.order + 1``.
    """
    if not target.is_normalized():
        raise DomainError("target must satisfy p(0) = 1")
    gamma = cp.real_gamma()
    c = op.lam * gamma / cp.theta
    n = np.arange(target.order + 1)
    h = TruncatedSeries(target.coeffs / (1.0 + n * c))
    q = power(h, 1.0 / cp.theta)
    return invert_operator(q.mul_z(), op)


def bazilevic_construct(bp: BazilevicParams, order: int | None = None) -> TruncatedSeries:
    """``f = [theta int_0^z p(t) g(t)**theta t**(-1) dt]**(1/theta)`` for ``tau = 0``."""
    if bp.tau != 0:
        raise DomainError("only tau = 0 is supported (z**(i tau) is not a power series)")
    if not bp.theta > 0:
        raise DomainError("theta must be positive")
    if not bp.g.in_class_a():
        raise DomainError("g must be in class A")
    if not bp.p.is_normalized():
        raise DomainError("p must satisfy p(0) = 1")
    order = bp.g.order if order is None else order
    g_over_z = bp.g.div_z()
    if g_over_z.order < order - 1 or bp.p.order < order - 1:
        raise DomainError("g and p must have at least the requested order")
    s = bp.p.truncate(order - 1) * power(g_over_z.truncate(order - 1), bp.theta)
    n = np.arange(order)
    big_s = TruncatedSeries(bp.theta * s.coeffs / (bp.theta + n))
    return power(big_s, 1.0 / bp.theta).mul_z()


def _derivative(f: TruncatedSeries) -> TruncatedSeries:
    # f'(z), order drops by one
    return TruncatedSeries(np.arange(1, f.order + 1) * f.coeffs[1:])


def in_named_subclass(
    f: TruncatedSeries,
    which: str,
    rho: float = 0.0,
    theta: float = 1.0,
    probe: DiskProbe | None = None,
) -> Verdict:
    """Membership in ``B2(theta, rho)``, ``B3(rho) = S*(rho)``, ``B4(rho) = P'(rho)`` or ``M(rho)``."""
    if not f.in_class_a():
        raise DomainError("f must be in class A")
    q = f.div_z()
    fp = _derivative(f)
    if which == "B2":
        expr = (fp / q) * power(q, theta)
    elif which == "B3":
        expr = fp / q
    elif which == "B4":
        expr = fp
    elif which == "M":
        expr = q
    else:
        raise DomainError(f"unknown subclass {which!r}; use B2, B3, B4 or M")
    return in_P_rho(expr, rho, probe)
