import mpmath
import numpy as np
import pytest

from mlbazilevic.errors import DomainError
from mlbazilevic.ml_operator import (
    IDENTITY,
    OperatorParams,
    apply_operator,
    bernardi,
    check_bernardi_identity,
    check_recurrence,
    invert_bernardi,
    invert_operator,
    ml_multiplier,
    multipliers,
)
from mlbazilevic.series import TruncatedSeries, coeff_residual

from .conftest import random_class_a


def random_params(rng):
    return OperatorParams(
        m=int(rng.integers(0, 4)),
        lam=rng.uniform(0, 2),
        alpha=complex(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5)),
        beta=complex(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5)),
    )


def mp_multiplier(n, p):
    a, b = mpmath.mpc(p.alpha), mpmath.mpc(p.beta)
    val = mpmath.gamma(b) * mpmath.mpf(1 + (n - 1) * p.lam) ** p.m / mpmath.gamma(a * (n - 1) + b)
    return complex(val)


def test_multiplier_examples():
    assert ml_multiplier(1, OperatorParams(3, 1.7, 1.2 + 0.3j, 0.8)) == pytest.approx(1, abs=1e-15)
    assert ml_multiplier(3, OperatorParams(2, 1.0, 0, 1)) == pytest.approx(9, abs=1e-15)
    assert ml_multiplier(3, OperatorParams(1, 0.5, 0, 1)) == pytest.approx(2, abs=1e-15)


def test_multiplier_against_mpmath(rng):
    for _ in range(20):
        p = random_params(rng)
        for n in (1, 2, 5, 17, 40, 65):
            ref = mp_multiplier(n, p)
            assert abs(ml_multiplier(n, p) - ref) <= 1e-12 * max(1, abs(ref))


def test_apply_examples(rng):
    f = random_class_a(rng, 30)
    assert coeff_residual(apply_operator(f, IDENTITY), f) == 0
    g = apply_operator(TruncatedSeries.from_poly([0, 1, 1], 4), OperatorParams(1, 1.0, 0, 1))
    assert coeff_residual(g, TruncatedSeries.from_poly([0, 1, 2], 4)) < 1e-15
    with pytest.raises(DomainError):
        apply_operator(TruncatedSeries.from_poly([1, 1], 3), IDENTITY)


def test_linearity_and_commutation(rng):
    for _ in range(20):
        p = random_params(rng)
        f, g = random_class_a(rng, 40), random_class_a(rng, 40)
        a, b = 0.3 - 0.2j, 0.7 + 0.2j
        combo = apply_operator(a * f + b * g, p)
        assert coeff_residual(combo, a * apply_operator(f, p) + b * apply_operator(g, p)) < 1e-13
        sigma = rng.uniform(-0.9, 3)
        left = apply_operator(bernardi(f, sigma), p)
        right = bernardi(apply_operator(f, p), sigma)
        assert coeff_residual(left, right) < 1e-13


def test_semigroup_in_m(rng):
    for _ in range(20):
        p = random_params(rng)
        q = int(rng.integers(0, 4))
        for n in range(1, 66):
            whole = ml_multiplier(n, p.with_m(p.m + q))
            split = ml_multiplier(n, p) * (1 + (n - 1) * p.lam) ** q
            assert abs(whole - split) <= 1e-13 * max(1, abs(whole))


def test_recurrence(rng):
    f = random_class_a(rng, 64)
    assert check_recurrence(f, OperatorParams(2, 0.0, 1, 1)) == 0
    assert check_recurrence(f, OperatorParams(2, 1.0, 0, 1)) < 1e-14
    assert check_recurrence(f, OperatorParams(1, 0.7, 1.3 + 0.2j, 0.9)) <= 1e-12


def test_inverse_operator(rng):
    for _ in range(10):
        p = random_params(rng)
        f = random_class_a(rng, 40)
        assert coeff_residual(invert_operator(apply_operator(f, p), p), f) < 1e-11


def test_bernardi_examples(rng):
    f = random_class_a(rng, 10)
    lib = bernardi(f, 1.0)
    n = np.arange(11)
    assert np.allclose(lib.coeffs[1:], f.coeffs[1:] * 2 / (1 + n[1:]), atol=1e-15)
    z = TruncatedSeries.identity(6)
    assert coeff_residual(bernardi(z, 2.3), z) == 0
    g = bernardi(TruncatedSeries.from_poly([0, 1, 1], 3), 0.0)
    assert coeff_residual(g, TruncatedSeries.from_poly([0, 1, 0.5], 3)) < 1e-15
    assert coeff_residual(invert_bernardi(bernardi(f, 0.4), 0.4), f) < 1e-13
    with pytest.raises(DomainError):
        bernardi(f, -1.0)


def test_bernardi_against_quadrature(rng):
    # (sigma+1) z**(-sigma) int_0^z t**(sigma-1) f(t) dt along the segment t = s z
    f = random_class_a(rng, 8, scale=0.5)
    for sigma in (0.0, 1.0, 2.5):
        z = 0.4 + 0.3j
        integrand = lambda s: complex(s ** (sigma - 1) * f(s * z)) if s > 0 else 0j
        ref = (sigma + 1) * mpmath.quad(lambda s: mpmath.mpc(integrand(float(s))), [0, 1])
        assert abs(bernardi(f, sigma)(z) - complex(ref)) < 1e-12


def test_bernardi_identity(rng):
    f = TruncatedSeries.identity(10)
    assert check_bernardi_identity(f, IDENTITY, 0.5) == 0
    g = random_class_a(rng, 64)
    assert check_bernardi_identity(g, IDENTITY, 1.0) <= 1e-12
    assert check_bernardi_identity(g, OperatorParams(2, 0.3, 1 + 1j, 2), 2.5) <= 1e-12


def test_params_validation():
    with pytest.raises(DomainError):
        OperatorParams(m=-1)
    with pytest.raises(DomainError):
        OperatorParams(m=1.5)
    with pytest.raises(DomainError):
        OperatorParams(lam=1j)
    with pytest.raises(DomainError):
        OperatorParams(lam=-0.1)
    with pytest.raises(DomainError):
        OperatorParams(alpha=0, beta=2)
    with pytest.raises(DomainError):
        OperatorParams(alpha=-1, beta=1)
    with pytest.raises(DomainError):
        OperatorParams(alpha=1, beta=0)
    assert OperatorParams(1, 1, 1, 1).as_dict() == {"m": 1, "lambda": 1.0, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}


def test_multipliers_array():
    p = OperatorParams(2, 0.5, 1.5, 1.2)
    arr = multipliers(10, p)
    assert arr[0] == 0
    assert all(arr[n] == ml_multiplier(n, p) for n in range(1, 11))
