import numpy as np
import pytest

from oracles import binomial_power, to_complex
from slice_clifford import (
    InvalidArgumentError,
    Multivector,
    PowerSeries,
    alpha_beta,
    characteristic_quadratic,
    is_in_class,
    paravector,
    paravector_power,
    quadratic_counterexample_check,
    sphere_zero_test,
)
from slice_clifford.harness import sphere_root_polynomial
from slice_clifford.slices import random_unit

E = Multivector.basis_vector


def test_characteristic_quadratic():
    assert characteristic_quadratic(2 + 3 * E(3, 1)) == (-4.0, 13.0)
    c1, c0 = characteristic_quadratic(Multivector.scalar(3, 1.5))
    assert (c1, c0) == (-3.0, 2.25)
    rng = np.random.default_rng(0)
    for _ in range(10):
        s = paravector(rng.normal(), rng.normal(size=3))
        c1, c0 = characteristic_quadratic(s)
        assert c1 * c1 - 4 * c0 == pytest.approx(-4 * np.sum(s.vector**2))


def test_is_in_class_examples():
    s = 2 + 3 * E(3, 1)
    assert is_in_class(2 + 3 * E(3, 2), s)
    assert not is_in_class(2 + 2 * E(3, 2), s)
    r = Multivector.scalar(3, 1.7)
    assert is_in_class(r, r)
    assert not is_in_class(r + E(3, 1), r)
    with pytest.raises(InvalidArgumentError):
        is_in_class(Multivector.blade(3, 0b11), s)
    with pytest.raises(InvalidArgumentError):
        is_in_class(s, s, method="other")


def test_membership_methods_agree():
    rng = np.random.default_rng(1)
    for k in range(1000):
        s = paravector(rng.uniform(-1, 1), rng.uniform(-1, 1, 3))
        if k % 2:
            J = random_unit(3, rng)
            x = s.real + float(np.linalg.norm(s.vector)) * J
        else:
            x = paravector(rng.uniform(-1, 1), rng.uniform(-1, 1, 3))
        assert is_in_class(x, s, 1e-10) == is_in_class(x, s, 1e-12, method="norm")


def test_counterexample():
    v = 1 - Multivector.blade(3, 0b111)
    assert quadratic_counterexample_check(v) == pytest.approx(2.0)
    assert quadratic_counterexample_check(paravector(0.4, [1.0, -2.0, 0.5])) <= 1e-12
    # e12 * e12 = -1, scalar part 0, norm 1: residual |-1 + 1| = 0
    e12 = Multivector.blade(3, 0b11)
    assert quadratic_counterexample_check(e12) <= 1e-15


def test_alpha_beta():
    ab = alpha_beta(0.3, 0.7, 0)
    assert (ab.alpha, ab.beta) == (1.0, 0.0)
    ab = alpha_beta(0.3, 0.7, 1)
    assert (ab.alpha, ab.beta) == (0.3, 0.7)
    ab = alpha_beta(0.3, 0.7, 2)
    assert ab.alpha == pytest.approx(0.09 - 0.49) and ab.beta == pytest.approx(0.42)
    rng = np.random.default_rng(2)
    for _ in range(10):
        x0, y0 = rng.uniform(-1, 1, 2)
        for m in range(21):
            ab = alpha_beta(x0, y0, m)
            assert complex(ab.alpha, ab.beta) == pytest.approx(binomial_power(x0, y0, m), abs=1e-12)
            I = random_unit(4, rng)
            p = paravector_power(x0 + y0 * I, m)
            assert to_complex(p, I) == pytest.approx(complex(ab.alpha, ab.beta), abs=1e-12)
    with pytest.raises(InvalidArgumentError):
        alpha_beta(1.0, 1.0, -1)


def test_sphere_unit_sphere_of_x2_plus_1():
    f = PowerSeries(3, [Multivector.scalar(3, 1.0), Multivector.zero(3), Multivector.scalar(3, 1.0)])
    v = sphere_zero_test(f, 0.0, 1.0, E(3, 1), E(3, 2))
    assert v.root1 and v.root2 and v.whole_sphere
    assert v.max_sample_residual <= 1e-12


def test_single_root_is_not_a_sphere():
    c = 1 + E(3, 1)
    f = PowerSeries(3, [-c, Multivector.scalar(3, 1.0)])
    v = sphere_zero_test(f, 1.0, 1.0, E(3, 1), E(3, 2))
    assert v.root1 and not v.root2 and not v.whole_sphere


def test_constructed_sphere_roots():
    rng = np.random.default_rng(3)
    for _ in range(5):
        f, x0, y0, I = sphere_root_polynomial(3, rng)
        v = sphere_zero_test(f, x0, y0, I, -I, tol=1e-10)
        assert v.whole_sphere
        assert v.alpha_sum.norm() <= 1e-9 and v.beta_sum.norm() <= 1e-9
        # the theorem from any two class points, not only the conjugate pair
        J, K = random_unit(3, rng), random_unit(3, rng)
        assert sphere_zero_test(f, x0, y0, J, K, tol=1e-10).whole_sphere


def test_sums_vanish_iff_sphere():
    rng = np.random.default_rng(4)
    f, x0, y0, I = sphere_root_polynomial(3, rng)
    v = sphere_zero_test(f, x0, y0, I, -I)
    assert v.alpha_sum.norm() <= 1e-9 and v.whole_sphere
    g = PowerSeries(3, f.coeffs + _bump(f))
    w = sphere_zero_test(g, x0, y0, I, -I)
    assert w.alpha_sum.norm() > 1e-3 or w.beta_sum.norm() > 1e-3
    assert not w.whole_sphere


def _bump(f):
    out = np.zeros_like(f.coeffs)
    out[0, 0] = 0.1
    return out


def test_sphere_zero_errors():
    f = PowerSeries.monomial(3, 2)
    with pytest.raises(InvalidArgumentError):
        sphere_zero_test(f, 0.0, 1.0, E(3, 1), E(3, 1))
    with pytest.raises(InvalidArgumentError):
        sphere_zero_test(f, 0.0, 0.0, E(3, 1), E(3, 2))
    with pytest.raises(InvalidArgumentError):
        sphere_zero_test(f, 0.0, 1.0, 2 * E(3, 1), E(3, 2))
