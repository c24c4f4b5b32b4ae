"""Closed-form bounds and randomized verifiers for the inclusion, radius and
integral-operator results on the class ``M^{m,gamma}_{lam,alpha,beta}(k, theta, rho)``.

Every verifier draws its trial inputs from a generator seeded by
``(seed, trial_index)``, so reports do not depend on how trials are
scheduled across worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classes import (
    ClassParams,
    DiskProbe,
    HerglotzMeasure,
    class_functional,
    herglotz_to_series,
    in_Pk_rho,
    min_zero_modulus,
    random_measure,
    solve_functional_inverse,
)
from .errors import DomainError, HypothesisError
from .ml_operator import (
    IDENTITY,
    OperatorParams,
    apply_operator,
    bernardi,
    invert_bernardi,
    invert_operator,
)
from .series import TruncatedSeries, coeff_residual, derivative_z, evaluate_circle, power
from .special import QuadratureSpec, integrate

__all__ = [
    "PARAMETER_BOX",
    "THEOREM_PROBE",
    "TheoremReport",
    "RadiusResult",
    "rho1",
    "radius_r1",
    "iota",
    "sharp_target",
    "sharp_target_quadrature",
    "sharp_function",
    "extremal_function",
    "empirical_radius",
    "goodman_bounds_check",
    "verify",
    "verify_T21",
    "verify_T22",
    "verify_T31",
    "verify_T41",
    "radius_scan",
]

# Ranges sampled by the randomized verifiers.
PARAMETER_BOX = {
    "theta": (0.25, 4.0),
    "gamma": (0.0, 4.0),  # open at 0
    "lambda": (0.0, 2.0),
    "rho": (0.0, 0.9),
    "k": (2, 3, 4),
    "m": (0, 1, 2, 3),
    "alpha_re": (0.5, 2.0),
    "alpha_im": (-0.5, 0.5),
    "beta": (0.5, 2.0),
    "sigma": (-0.9, 3.0),
}

THEOREM_PROBE = DiskProbe(radii=(0.5, 0.9, 0.99), angles=1024, margin_tol=1e-6)

# Targets whose fractional power would branch inside this radius are redrawn.
ZERO_FREE_RADIUS = 0.95
IDENTITY_TOL = 1e-11


@dataclass
class TheoremReport:
    theorem: str
    trials: int
    failures: int
    min_margin: float
    seed: int
    params: dict = field(default_factory=dict)
    max_residual: float = 0.0
    redraws: int = 0

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "failures": self.failures,
            "min_margin": self.min_margin,
            "seed": self.seed,
            "params": self.params,
            "max_residual": self.max_residual,
            "redraws": self.redraws,
        }


@dataclass(frozen=True)
class RadiusResult:
    r_formula: float
    r_empirical: float
    gap: float

    def to_json(self) -> dict:
        return {"r_formula": self.r_formula, "r_empirical": self.r_empirical, "gap": self.gap}


# -- closed forms ----------------------------------------------------------


def rho1(theta: float, rho: float, lam: float, gamma: float) -> float:
    """Order of ``(E^m f/z)**theta`` for ``f`` in the class: ``(2 theta rho + lam gamma)/(2 theta + lam gamma)``."""
    if not theta > 0 or not 0 <= rho < 1 or lam < 0 or gamma < 0:
        raise DomainError("need theta > 0, 0 <= rho < 1, lam >= 0, gamma >= 0")
    lg = lam * gamma
    return (2 * theta * rho + lg) / (2 * theta + lg)


def radius_r1(lam: float, gamma: float, theta: float) -> float:
    """``(lam gamma + theta - sqrt(lam^2 gamma^2 + 2 lam gamma theta)) / theta``.

    Returns 1 in the limit ``lam * gamma = 0``.  The difference is
    rewritten as ``theta / (lam gamma + theta + sqrt(...))`` to avoid
    cancellation when ``lam * gamma`` is large.
    """
    if lam < 0 or gamma < 0 or not theta > 0:
        raise DomainError("need lam >= 0, gamma >= 0, theta > 0")
    lg = lam * gamma
    if lg == 0:
        return 1.0
    return theta / (lg + theta + math.sqrt(lg * lg + 2 * lg * theta))


def _iota1_substituted(exponent: float, quad: QuadratureSpec) -> float:
    # t = u**s gives s u**(s-1) / (1 + u**(s e)); the non-smooth part is
    # u**(s-1 + s e), so a moderate integer s already makes it harmless
    s = min(16, max(1, math.ceil(8.0 / exponent)))

    def integrand(u):
        u = np.asarray(u, dtype=float)
        return s * u ** (s - 1) / (1.0 + u ** (s * exponent))

    return integrate(integrand, quad)


def iota(rho: float, gamma: float, sigma: float, quad: QuadratureSpec | None = None) -> tuple[float, float]:
    """``(iota, iota1)`` with ``iota1 = int_0^1 dt / (1 + t**(gamma/(sigma+1)))``
    and ``iota = rho + (1 - rho)(2 iota1 - 1)``."""
    if not 0 <= rho < 1:
        raise DomainError("rho must lie in [0, 1)")
    if not sigma > -1:
        raise DomainError("sigma must exceed -1")
    exponent = gamma / (sigma + 1.0)
    if not exponent > 0:
        raise DomainError("gamma / (sigma + 1) must be positive")
    quad = quad or QuadratureSpec(node_count=32, abs_tol=1e-13)
    i1 = _iota1_substituted(exponent, quad)
    return rho + (1.0 - rho) * (2.0 * i1 - 1.0), i1


# -- sharp and extremal functions -----------------------------------------


def _c_ratio(cp: ClassParams, op: OperatorParams) -> float:
    lg = op.lam * cp.real_gamma()
    if lg <= 0:
        raise DomainError("the sharp function needs lam * gamma > 0")
    return cp.theta / lg


def sharp_target(cp: ClassParams, op: OperatorParams, order: int) -> TruncatedSeries:
    """Coefficients of ``(E^m f/z)**theta`` for the sharp function.

    Termwise integration of the two-kernel integral gives ``h_0 = 1`` and
    ``h_n = 2 (1-rho) c/(c+n) [(k/4 + 1/2) - (k/4 - 1/2)(-1)**n]`` with
    ``c = theta / (lam gamma)``.
    """
    c = _c_ratio(cp, op)
    n = np.arange(order + 1)
    a, b = cp.k / 4 + 0.5, cp.k / 4 - 0.5
    h = 2.0 * (1.0 - cp.rho) * c / (c + n) * (a - b * (-1.0) ** n)
    h[0] = 1.0
    return TruncatedSeries(h)


def sharp_target_quadrature(z: complex, cp: ClassParams, op: OperatorParams, quad: QuadratureSpec | None = None) -> complex:
    """Evaluate the sharp-function integral at ``z`` by quadrature.

    Substituting ``u = v**q`` with integer ``q`` and ``q c >= 8`` turns
    ``c u**(c-1) du`` into ``c q v**(q c - 1) dv`` and keeps the kernel
    analytic in ``v``.
    """
    c = _c_ratio(cp, op)
    quad = quad or QuadratureSpec(node_count=32, abs_tol=1e-12)
    a, b = cp.k / 4 + 0.5, cp.k / 4 - 0.5
    s = 1.0 - 2.0 * cp.rho
    q = max(1, math.ceil(8.0 / c))

    def kernel(v):
        v = np.asarray(v, dtype=float)
        w = v**q * z
        weight = c * q * v ** (q * c - 1.0)
        return weight * (a * (1 + s * w) / (1 - w) - b * (1 - s * w) / (1 + w))

    re = integrate(lambda v: kernel(v).real, quad)
    im = integrate(lambda v: kernel(v).imag, quad)
    return complex(re, im)


def _from_target(h: TruncatedSeries, theta: float, op: OperatorParams) -> TruncatedSeries:
    # f with (E^m f / z)**theta = h
    return invert_operator(power(h, 1.0 / theta).mul_z(), op)


def sharp_function(cp: ClassParams, op: OperatorParams, order: int) -> TruncatedSeries:
    """The ``f`` in class A (order ``order``) whose ``(E^m f/z)**theta`` is :func:`sharp_target`."""
    return _from_target(sharp_target(cp, op, order - 1), cp.theta, op)


def extremal_function(cp: ClassParams, op: OperatorParams, order: int) -> TruncatedSeries:
    """``f`` with ``(E^m f/z)**theta = (1 + (1 - 2 rho) z)/(1 - z)``.

    This is the point-mass member of ``P(rho)``, the natural extremal
    input for the radius problem.
    """
    h = herglotz_to_series(HerglotzMeasure(((0.0, 2.0),)), cp.rho, order - 1)
    return _from_target(h, cp.theta, op)


def empirical_radius(
    f: TruncatedSeries,
    cp: ClassParams,
    op: OperatorParams = IDENTITY,
    probe: DiskProbe | None = None,
    xtol: float = 1e-7,
    scan_points: int = 200,
) -> RadiusResult:
    """Largest ``r`` at which the class functional of ``f`` passes the ``P_k(rho)`` test.

    The hypothesis ``(E^m f/z)**theta in P_k(rho)`` is checked first on the
    probe.  Radii ``top * j / scan_points`` are tested outward from the
    origin up to the largest probe radius ``top``; the first failure is
    refined by bisection.  Passing everywhere reports ``r_empirical = 1``.
    Both checks include the truncation allowance.
    """
    probe = probe or THEOREM_PROBE
    q = apply_operator(f, op).div_z()
    h = power(q, cp.theta)
    if in_Pk_rho(h, cp.k, cp.rho, probe, truncation=True).verdict == "non-member":
        raise HypothesisError("(E^m f / z)**theta is not in P_k(rho) on the probe")
    g = class_functional(f, cp, op)

    def passes(r: float) -> bool:
        single = DiskProbe((r,), probe.angles, probe.margin_tol)
        return in_Pk_rho(g, cp.k, cp.rho, single, truncation=True).verdict != "non-member"

    r_formula = radius_r1(op.lam, cp.real_gamma(), cp.theta)
    top = probe.radii[-1]
    # the truncation allowance grows with r, so a pass at a large radius
    # says nothing about smaller ones: find the first failing grid radius
    grid = top * np.arange(1, scan_points + 1) / scan_points
    first_fail = next((i for i, r in enumerate(grid) if not passes(float(r))), None)
    if first_fail is None:
        r_emp = 1.0
    else:
        lo = float(grid[first_fail - 1]) if first_fail else 0.0
        hi = float(grid[first_fail])
        while hi - lo > xtol:
            mid = 0.5 * (lo + hi)
            if passes(mid):
                lo = mid
            else:
                hi = mid
        r_emp = lo
    return RadiusResult(r_formula, r_emp, r_emp - r_formula)


def goodman_bounds_check(p: TruncatedSeries, probe: DiskProbe | None = None) -> float:
    """Largest violation of ``|z p'| <= 2r Re p/(1-r^2)`` and ``Re p >= (1-r)/(1+r)``."""
    probe = probe or DiskProbe(radii=(0.3, 0.6, 0.9))
    zp = derivative_z(p)
    worst = 0.0
    for r in probe.radii:
        vals = evaluate_circle(p, r, probe.angles)
        dvals = evaluate_circle(zp, r, probe.angles)
        v1 = np.abs(dvals) - 2 * r * vals.real / (1 - r * r)
        v2 = (1 - r) / (1 + r) - vals.real
        worst = max(worst, float(v1.max()), float(v2.max()))
    return worst


# -- randomized verifiers --------------------------------------------------


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _draw_params(rng: np.random.Generator) -> tuple[ClassParams, OperatorParams]:
    box = PARAMETER_BOX
    k = float(rng.choice(box["k"]))
    rho = rng.uniform(*box["rho"])
    theta = rng.uniform(*box["theta"])
    gamma = box["gamma"][1] * (1.0 - rng.random())  # (0, 4]
    m = int(rng.choice(box["m"]))
    lam = rng.uniform(*box["lambda"])
    alpha = complex(rng.uniform(*box["alpha_re"]), rng.uniform(*box["alpha_im"]))
    beta = rng.uniform(*box["beta"])
    return ClassParams(k, rho, theta, gamma), OperatorParams(m, lam, alpha, beta)


def _draw_target(
    rng: np.random.Generator, cp: ClassParams, op: OperatorParams, order: int
) -> tuple[TruncatedSeries, int]:
    # target in P_k(rho) whose smoothed power-target has no zero in |z| < ZERO_FREE_RADIUS
    c = op.lam * cp.real_gamma() / cp.theta
    n = np.arange(order + 1)
    redraws = 0
    while True:
        mu = random_measure(rng, cp.k)
        p = herglotz_to_series(mu, cp.rho, order)
        h = TruncatedSeries(p.coeffs / (1.0 + n * c))
        if min_zero_modulus(h) >= ZERO_FREE_RADIUS:
            return p, redraws
        redraws += 1


@dataclass(frozen=True)
class _Outcome:
    failed: bool
    margin: float
    residual: float
    redraws: int


def _trial_T21(seed, index, fixed, probe, order) -> _Outcome:
    rng = _rng(seed, index)
    cp, op = fixed if fixed is not None else _draw_params(rng)
    p, redraws = _draw_target(rng, cp, op, order)
    f = solve_functional_inverse(p, cp, op)
    h = power(apply_operator(f, op).div_z(), cp.theta)
    level = rho1(cp.theta, cp.rho, op.lam, cp.real_gamma())
    verdict = in_Pk_rho(h, cp.k, level, probe, truncation=True)
    residual = coeff_residual(class_functional(f, cp, op), p)
    return _Outcome(verdict.verdict == "non-member", verdict.margin, residual, redraws)


def _trial_T22(seed, index, fixed, probe, order) -> _Outcome:
    rng = _rng(seed, index)
    cp, op = fixed if fixed is not None else _draw_params(rng)
    gamma2 = cp.real_gamma()
    gamma1 = gamma2 * rng.random()
    p, redraws = _draw_target(rng, cp, op, order)
    f = solve_functional_inverse(p, cp, op)
    h1 = power(apply_operator(f, op).div_z(), cp.theta)
    h2 = class_functional(f, cp, op)
    cp1 = ClassParams(cp.k, cp.rho, cp.theta, gamma1)
    lhs = class_functional(f, cp1, op)
    t = gamma1 / gamma2
    rhs = (1.0 - t) * h1 + t * h2
    residual = max(coeff_residual(lhs, rhs), coeff_residual(h2, p))
    verdict = in_Pk_rho(lhs, cp.k, cp.rho, probe, truncation=True)
    failed = verdict.verdict == "non-member" or residual > IDENTITY_TOL
    return _Outcome(failed, verdict.margin, residual, redraws)


def _trial_T31(seed, index, fixed, probe, order) -> _Outcome:
    rng = _rng(seed, index)
    cp, op = fixed if fixed is not None else _draw_params(rng)
    # hypothesis target: h itself in P_k(rho) and zero-free
    redraws = 0
    while True:
        h = herglotz_to_series(random_measure(rng, cp.k), cp.rho, order - 1)
        if min_zero_modulus(h) >= ZERO_FREE_RADIUS:
            break
        redraws += 1
    f = _from_target(h, cp.theta, op)
    res = empirical_radius(f, cp, op, probe, xtol=1e-6)
    return _Outcome(res.gap < -1e-3, res.gap, 0.0, redraws)


def _trial_T41(seed, index, fixed, probe, order) -> _Outcome:
    rng = _rng(seed, index)
    if fixed is not None:
        cp, op, sigma = fixed
    else:
        cp, op = _draw_params(rng)
        sigma = rng.uniform(*PARAMETER_BOX["sigma"])
    gamma = cp.real_gamma()
    q = herglotz_to_series(random_measure(rng, cp.k), cp.rho, order - 1)
    n = np.arange(order)
    p = TruncatedSeries(q.coeffs / (1.0 + n * gamma / (sigma + 1.0)))
    f = invert_bernardi(invert_operator(p.mul_z(), op), sigma)
    a = apply_operator(bernardi(f, sigma), op).div_z()
    b = apply_operator(f, op).div_z()
    residual = coeff_residual((1.0 - gamma) * a + gamma * b, q)
    level, _ = iota(cp.rho, gamma, sigma)
    verdict = in_Pk_rho(a, cp.k, level, probe, truncation=True)
    failed = verdict.verdict == "non-member" or residual > IDENTITY_TOL
    return _Outcome(failed, verdict.margin, residual, 0)


_TRIALS: dict[str, Callable[..., _Outcome]] = {
    "T2.1": _trial_T21,
    "T2.2": _trial_T22,
    "T3.1": _trial_T31,
    "T4.1": _trial_T41,
}


def _describe(fixed) -> dict:
    if fixed is None:
        return {"randomized": {k: list(v) for k, v in PARAMETER_BOX.items()}}
    out = {}
    for item in fixed:
        if isinstance(item, ClassParams):
            out.update(item.as_dict())
        elif isinstance(item, OperatorParams):
            out.update(item.as_dict())
        else:
            out["sigma"] = float(item)
    return out


def verify(
    theorem: str,
    trials: int = 200,
    seed: int = 0,
    params=None,
    probe: DiskProbe | None = None,
    order: int = 64,
    workers: int = 1,
) -> TheoremReport:
    """Run one of the randomized verifiers.

    ``params`` fixes ``(ClassParams, OperatorParams)`` (plus ``sigma`` for
    ``T4.1``); ``None`` samples every trial from :data:`PARAMETER_BOX`.
    ``workers > 1`` spreads trials over processes without changing the
    report.
    """
    if theorem not in _TRIALS:
        raise DomainError(f"unknown theorem {theorem!r}; choose from {sorted(_TRIALS)}")
    if trials < 1:
        raise DomainError("trials must be positive")
    probe = probe or THEOREM_PROBE
    fn = _TRIALS[theorem]
    args = [(seed, i, params, probe, order) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(fn, *zip(*args), chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [fn(*a) for a in args]
    desc = _describe(params)
    desc["order"] = order
    desc["probe"] = {"radii": list(probe.radii), "angles": probe.angles, "margin_tol": probe.margin_tol}
    return TheoremReport(
        theorem=theorem,
        trials=trials,
        failures=sum(o.failed for o in outcomes),
        min_margin=min(o.margin for o in outcomes),
        seed=seed,
        params=desc,
        max_residual=max(o.residual for o in outcomes),
        redraws=sum(o.redraws for o in outcomes),
    )


def verify_T21(trials=200, seed=0, params=None, probe=None, order=64, workers=1) -> TheoremReport:
    """``(E^m f/z)**theta in P_k(rho_1)`` for ``f`` built in the class by inversion."""
    return verify("T2.1", trials, seed, params, probe, order, workers)


def verify_T22(trials=200, seed=0, params=None, probe=None, order=64, workers=1) -> TheoremReport:
    """Convex-combination identity and inclusion for ``0 <= gamma_1 < gamma_2``."""
    return verify("T2.2", trials, seed, params, probe, order, workers)


def verify_T31(trials=200, seed=0, params=None, probe=None, order=64, workers=1) -> TheoremReport:
    """Empirical radius never falls more than 1e-3 below ``radius_r1``."""
    return verify("T3.1", trials, seed, params, probe, order, workers)


def verify_T41(trials=200, seed=0, params=None, probe=None, order=64, workers=1) -> TheoremReport:
    """``E^m L_sigma f/z in P_k(iota)`` under the Bernardi hypothesis."""
    return verify("T4.1", trials, seed, params, probe, order, workers)


def radius_scan(
    lamgamma: list[float],
    theta: float = 1.0,
    rho: float = 0.0,
    order: int = 64,
    probe: DiskProbe | None = None,
) -> list[dict]:
    """Rows ``(lamgamma, theta, r_formula, r_empirical, gap)`` for the point-mass extremal."""
    rows = []
    for lg in lamgamma:
        cp = ClassParams(2.0, rho, theta, lg)
        op = OperatorParams(0, 1.0, 0, 1)
        res = empirical_radius(extremal_function(cp, op, order), cp, op, probe)
        rows.append({"lamgamma": lg, "theta": theta, **res.to_json()})
    return rows
