import math
import warnings

import numpy as np
import pytest

from oracles import from_complex, to_complex
from slice_clifford import (
    DivisionByZeroError,
    InvalidOperandsError,
    Multivector,
    OperatorParavector,
    SingularKernelError,
    conjugate,
    kernel_closed_form,
    kernel_inverse,
    kernel_series_sum,
    operator_kernel_sum,
    paravector,
    paravector_inverse,
    singularity_probe,
    verify_kernel_identity,
)
from slice_clifford.kernel import MatrixMultivector, kernel_tail_bound
from slice_clifford.series import ConvergenceWarning
from slice_clifford.slices import random_unit

E = Multivector.basis_vector


def rand_pair(rng, ratio=(0.1, 0.5), n=3):
    s = paravector(rng.uniform(-1, 1), rng.uniform(-1, 1, n))
    p = paravector(rng.uniform(-1, 1), rng.uniform(-1, 1, n))
    return p * (rng.uniform(*ratio) * s.norm() / p.norm()), s


def test_p_zero():
    s = 1.5 - 0.5 * E(3, 2) + 2 * E(3, 3)
    zero = Multivector.zero(3)
    assert kernel_series_sum(zero, s, 10).allclose(paravector_inverse(s), atol=1e-15)
    assert kernel_closed_form(zero, s).allclose(paravector_inverse(s), atol=1e-15)
    assert kernel_inverse(zero, s).allclose(s, atol=1e-14)
    assert verify_kernel_identity(zero, s, 5) <= 1e-14


def test_same_slice_matches_complex_geometric_sum():
    rng = np.random.default_rng(0)
    I = random_unit(3, rng)
    zs, zp = 1.3 - 0.4j, 0.2 + 0.3j
    s, p = from_complex(zs, I), from_complex(zp, I)
    N = 30
    want = sum(zp**k * zs ** (-1 - k) for k in range(N))
    assert to_complex(kernel_series_sum(p, s, N), I) == pytest.approx(want, abs=1e-14)
    assert to_complex(kernel_closed_form(p, s), I) == pytest.approx(1 / (zs - zp), abs=1e-14)


def test_noncommuting_example():
    p, s = 0.3 * E(3, 1), 2 * E(3, 2)
    assert not (p * s).allclose(s * p)
    k = kernel_closed_form(p, s)
    assert (kernel_series_sum(p, s, 60) - k).norm() / k.norm() <= 1e-10
    prev = None
    for N in range(5, 12):
        err = (kernel_series_sum(p, s, N) - k).norm()
        if prev is not None:
            assert err / prev == pytest.approx(0.15, rel=1e-6)
        prev = err
    assert kernel_tail_bound(p, s, 2) == pytest.approx(0.15**2)


def test_closed_form_and_inverse_random():
    rng = np.random.default_rng(1)
    for _ in range(50):
        p, s = rand_pair(rng)
        k = kernel_closed_form(p, s)
        assert (kernel_series_sum(p, s, 60) - k).norm() <= 1e-9
        assert (kernel_inverse(p, s) * k).allclose(1.0, atol=1e-10)
    p, s = rand_pair(rng, (0.2, 0.2))
    assert (kernel_inverse(p, s) * kernel_series_sum(p, s, 80)).allclose(1.0, atol=1e-9)


def test_quadratic_vanishes_at_conjugate():
    rng = np.random.default_rng(2)
    for _ in range(20):
        s = paravector(rng.normal(), rng.normal(size=3))
        sb = conjugate(s)
        q = sb * sb - 2 * s.real * sb + float(np.sum(s.coeffs**2))
        assert q.norm() <= 1e-12 * max(1.0, s.norm() ** 2)
        with pytest.raises(SingularKernelError):
            kernel_closed_form(sb, s)
        with pytest.raises(SingularKernelError):
            kernel_inverse(sb, s)


def test_kernel_identity_decay():
    rng = np.random.default_rng(3)
    for _ in range(10):
        p, s = rand_pair(rng)
        r = [verify_kernel_identity(p, s, N) for N in (8, 9, 10)]
        ratio = p.norm() / s.norm()
        assert r[1] / r[0] == pytest.approx(ratio, rel=0.1)
        assert r[2] / r[1] == pytest.approx(ratio, rel=0.1)
        assert verify_kernel_identity(p, s, 60) <= 1e-12
    # real p, real s: scalar identity, residual |p|^N |p - s| / |s|^N
    p, s = Multivector.scalar(3, 0.3), Multivector.scalar(3, 1.2)
    want = 0.3**7 * abs(0.3 - 1.2) / 1.2**7
    assert verify_kernel_identity(p, s, 7) == pytest.approx(want, rel=1e-9)


def test_kernel_errors_and_warnings():
    with pytest.raises(DivisionByZeroError):
        kernel_series_sum(E(3, 1), Multivector.zero(3), 5)
    with pytest.raises(InvalidOperandsError):
        kernel_series_sum(E(2, 1), E(3, 1), 5)
    with pytest.warns(ConvergenceWarning):
        kernel_series_sum(2 * E(3, 1), E(3, 2), 5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        kernel_series_sum(0.5 * E(3, 1), E(3, 2), 5)


def test_singularity_probe():
    s = 1.0 + 2.0 * E(3, 1)
    sb = conjugate(s)
    # off-slice path: the quadratic is exactly -t^2, so stay above the singular threshold
    path = [sb + 10.0**-k * E(3, 2) for k in range(1, 6)]
    rows = singularity_probe(s, path)
    norms = [v for _, v in rows]
    assert all(b > a for a, b in zip(norms, norms[1:]))
    # growth ~ 1/t
    assert norms[-1] * rows[-1][0] == pytest.approx(norms[-2] * rows[-2][0], rel=0.05)
    assert singularity_probe(s, [sb])[0] == (0.0, math.inf)
    fixed = [sb + 0.5 * (math.cos(t) * E(3, 2) + math.sin(t) * E(3, 3)) for t in np.linspace(0, 3, 6)]
    assert max(v for _, v in singularity_probe(s, fixed)) < 100
    r = Multivector.scalar(3, 2.0)
    with pytest.raises(SingularKernelError):
        kernel_closed_form(r, r)


def test_matrix_multivector_product_matches_blockwise():
    rng = np.random.default_rng(4)
    x = Multivector(3, rng.normal(size=8))
    y = Multivector(3, rng.normal(size=8))
    mx, my = MatrixMultivector.from_multivector(x, 2), MatrixMultivector.from_multivector(y, 2)
    prod = (mx * my).coeffs
    np.testing.assert_allclose(prod[:, 0, 0], (x * y).coeffs, atol=1e-14)
    np.testing.assert_allclose(prod[:, 0, 1], 0.0)


def test_operator_scalar_reduction_is_exact():
    rng = np.random.default_rng(5)
    for _ in range(10):
        p, s = rand_pair(rng)
        T = OperatorParavector(tuple(np.array([[c]]) for c in [p.real, *p.vector]))
        op = operator_kernel_sum(T, s, 60).coeffs[:, 0, 0]
        np.testing.assert_array_equal(op, kernel_series_sum(p, s, 60).coeffs)
        assert verify_kernel_identity(T, s, 60) == verify_kernel_identity(p, s, 60)


def test_operator_diagonal_blocks():
    rng = np.random.default_rng(6)
    s = 2.0 + E(3, 1)
    comps = rng.uniform(-0.2, 0.2, (2, 4))
    T = OperatorParavector(tuple(np.diag(comps[:, j]) for j in range(4)))
    total = operator_kernel_sum(T, s, 40).coeffs
    for b in range(2):
        p = paravector(comps[b, 0], comps[b, 1:])
        np.testing.assert_allclose(total[:, b, b], kernel_series_sum(p, s, 40).coeffs, atol=1e-15)


def test_operator_identity_noncommuting():
    rng = np.random.default_rng(7)
    s = 2.0 + E(3, 1)
    for _ in range(5):
        mats = rng.standard_normal((4, 4, 4))
        mats *= 0.2 / np.linalg.norm(mats)
        T = OperatorParavector(tuple(mats))
        assert not np.allclose(mats[1] @ mats[2], mats[2] @ mats[1])
        assert verify_kernel_identity(T, s, 60) <= 1e-8
        a, b = verify_kernel_identity(T, s, 10), verify_kernel_identity(T, s, 20)
        assert b < a


def test_operator_validation():
    with pytest.raises(InvalidOperandsError):
        OperatorParavector((np.eye(2),))
    with pytest.raises(InvalidOperandsError):
        OperatorParavector((np.eye(2), np.eye(3)))
    with pytest.raises(InvalidOperandsError):
        OperatorParavector((np.ones((2, 3)), np.ones((2, 3))))
    T = OperatorParavector((np.eye(2),) * 3)
    with pytest.raises(InvalidOperandsError):
        operator_kernel_sum(T, 2.0 + E(3, 1), 5)
    with pytest.warns(ConvergenceWarning):
        operator_kernel_sum(T, 1.0 + E(2, 1), 5)
