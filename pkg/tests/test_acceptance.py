"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records one pass/fail line, printed in the terminal summary.
"""

import cmath
import math
import subprocess
import sys
import time

import mpmath
import numpy as np
import pytest

from mlbazilevic.classes import ClassParams, DiskProbe, class_functional, herglotz_to_series, HerglotzMeasure, solve_functional_inverse
from mlbazilevic.ml_operator import OperatorParams, apply_operator, bernardi, check_bernardi_identity, check_recurrence, invert_bernardi, invert_operator, ml_multiplier
from mlbazilevic.series import TruncatedSeries, coeff_residual, evaluate_circle
from mlbazilevic.special import gamma, mittag_leffler
from mlbazilevic.theorems import (
    THEOREM_PROBE,
    _draw_params,
    _draw_target,
    empirical_radius,
    iota,
    radius_r1,
    sharp_function,
    verify,
)

from . import acceptance_log
from .conftest import random_class_a

R1 = 2 - math.sqrt(3)


def record(number, ok, detail):
    acceptance_log.LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def random_op(rng):
    return OperatorParams(
        int(rng.integers(0, 4)),
        rng.uniform(0, 2),
        complex(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5)),
        rng.uniform(0.5, 2),
    )


def test_c01_radius_value():
    start = time.perf_counter()
    r = radius_r1(1, 1, 1)
    elapsed = time.perf_counter() - start
    err = abs(r - R1)
    record(1, err <= 1e-12 and elapsed < 1e-3, f"radius_r1(1,1,1)={r:.15f} err={err:.1e} time={elapsed * 1e6:.0f}us")


def test_c02_recurrence():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst = max(check_recurrence(random_class_a(rng, 64), random_op(rng)) for _ in range(100))
    elapsed = time.perf_counter() - start
    record(2, worst <= 1e-12 and elapsed < 1, f"max residual {worst:.2e} over 100 draws, {elapsed:.2f}s")


def test_c03_bernardi_identity():
    rng = np.random.default_rng(3)
    start = time.perf_counter()
    worst = max(
        check_bernardi_identity(random_class_a(rng, 64), random_op(rng), rng.uniform(-0.9, 3)) for _ in range(100)
    )
    elapsed = time.perf_counter() - start
    record(3, worst <= 1e-12 and elapsed < 1, f"max residual {worst:.2e} over 100 draws, {elapsed:.2f}s")


def test_c04_special_cases():
    worst = 0.0
    for m in range(4):
        for lam in (0.0, 0.3, 1.0, 1.7):
            p = OperatorParams(m, lam, 0, 1)
            for n in range(1, 66):
                ref = (1 + (n - 1) * lam) ** m
                worst = max(worst, abs(ml_multiplier(n, p) - ref) / max(1, ref))
        p = OperatorParams(m, 1.0, 0, 1)
        for n in range(1, 66):
            worst = max(worst, abs(ml_multiplier(n, p) - n**m) / max(1, n**m))
    for alpha, beta in [(1, 1), (0.5, 2), (1.3 + 0.2j, 0.9), (2, 0.5 - 0.3j)]:
        p = OperatorParams(0, 1.0, alpha, beta)
        for n in range(1, 66):
            ref = complex(mpmath.gamma(mpmath.mpc(beta)) / mpmath.gamma(mpmath.mpc(alpha) * (n - 1) + mpmath.mpc(beta)))
            worst = max(worst, abs(ml_multiplier(n, p) - ref) / max(1, abs(ref)))
    record(4, worst <= 1e-12, f"max deviation {worst:.2e} for n <= 65")


def run_verifier(number, theorem, extra=None):
    start = time.perf_counter()
    rep = verify(theorem, trials=200, seed=42)
    elapsed = time.perf_counter() - start
    ok = rep.failures == 0 and elapsed < 60 and (extra is None or extra(rep))
    record(
        number,
        ok,
        f"{theorem}: {rep.failures}/200 failures, min margin {rep.min_margin:.2e}, "
        f"max residual {rep.max_residual:.1e}, {elapsed:.1f}s",
    )


def test_c05_theorem_21():
    run_verifier(5, "T2.1")


def test_c06_theorem_22():
    run_verifier(6, "T2.2", lambda rep: rep.max_residual <= 1e-11)


def test_c07_sharpness():
    cp = ClassParams(2, 0, 1, 1)
    op = OperatorParams(0, 1.0, 0, 1)
    start = time.perf_counter()
    f = sharp_function(cp, op, 256)
    res = empirical_radius(f, cp, op, DiskProbe(THEOREM_PROBE.radii, 2048, THEOREM_PROBE.margin_tol))
    elapsed = time.perf_counter() - start
    ok = R1 - 1e-3 <= res.r_empirical <= R1 + 1e-2 and elapsed < 30
    record(7, ok, f"r_empirical={res.r_empirical:.6f}, target {R1:.6f} (-1e-3/+1e-2), {elapsed:.1f}s")


def test_c08_theorem_41():
    start = time.perf_counter()
    order = 2048
    op = OperatorParams(2, 0.5, 0, 1)
    sigma, gam = 0.0, 1.0
    q = herglotz_to_series(HerglotzMeasure(((0.0, 2.0),)), 0.0, order - 1)
    n = np.arange(order)
    p = TruncatedSeries(q.coeffs / (1 + n * gam / (sigma + 1)))
    f = invert_bernardi(invert_operator(p.mul_z(), op), sigma)
    a = apply_operator(bernardi(f, sigma), op).div_z()
    b = apply_operator(f, op).div_z()
    residual = coeff_residual((1 - gam) * a + gam * b, q)
    low = float(evaluate_circle(a, 0.999, 8192).real.min())
    target = 2 * math.log(2) - 1
    rep = verify("T4.1", trials=200, seed=42)
    elapsed = time.perf_counter() - start
    ok = abs(low - target) <= 2e-3 and residual <= 1e-11 and rep.failures == 0 and elapsed < 60
    record(
        8,
        ok,
        f"min Re at r=0.999: {low:.6f} vs {target:.6f}; T4.1 {rep.failures}/200 failures; {elapsed:.1f}s",
    )


def test_c09_special_functions():
    points = [1, 0.5, 1 + 1j, 2.5, 10, 20.5, -0.5, -3.7 + 0.2j, 0.1 + 4j, 7 - 7j, 1e-3, 3j]
    g_err = max(abs(gamma(z) - complex(mpmath.gamma(z))) / abs(complex(mpmath.gamma(z))) for z in points)
    e_err = 0.0
    for r in np.linspace(0, 3, 13):
        for t in np.linspace(0, 2 * math.pi, 25):
            z = r * cmath.exp(1j * t)
            e_err = max(e_err, abs(mittag_leffler(1, 1, z) - cmath.exp(z)))
    i_err = abs(iota(0, 1, 0)[1] - math.log(2))
    ok = g_err <= 1e-12 and e_err <= 1e-10 and i_err <= 1e-10
    record(9, ok, f"gamma rel err {g_err:.1e}, E11-exp err {e_err:.1e}, iota1 err {i_err:.1e}")


def test_c10_round_trip():
    worst = 0.0
    for i in range(100):
        rng = np.random.default_rng([10, i])
        cp, op = _draw_params(rng)
        target, _ = _draw_target(rng, cp, op, 64)
        f = solve_functional_inverse(target, cp, op)
        worst = max(worst, coeff_residual(class_functional(f, cp, op), target))
    record(10, worst <= 1e-11, f"max coefficient residual {worst:.1e} over 100 trials")


def test_c11_determinism():
    def run(workers):
        cmd = [sys.executable, "-m", "mlbazilevic", "verify", "--theorem", "2.2", "--trials", "60", "--seed", "11"]
        return subprocess.run(cmd + ["--workers", str(workers)], capture_output=True, check=True).stdout

    one, two, four = run(1), run(2), run(4)
    record(11, one == two == four and len(one) > 0, f"verify output byte-identical for 1/2/4 workers ({len(one)} bytes)")
