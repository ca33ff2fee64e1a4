"""The noncommutative Cauchy kernel series ``sum p^k s^{-1-k}``.

Besides the paravector case this module carries a small matrix-coefficient
Clifford algebra: ``T = T_0 + T_1 e_1 + ... + T_n e_n`` with ``d x d`` real
matrices, multiplied with the same blade signs but noncommuting coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .clifford import Multivector, blade_sign_table, conjugate, geometric_product, paravector_inverse
from .errors import DivisionByZeroError, InvalidArgumentError, InvalidOperandsError, SingularKernelError
from .series import ConvergenceWarning

DEFAULT_TERMS = 60
SINGULAR_RTOL = 1e-12


def _check_pair(p, s):
    if p.n != s.n:
        raise InvalidOperandsError(f"dimension mismatch: R_{p.n} vs R_{s.n}")
    for v, name in ((p, "p"), (s, "s")):
        if not v.is_paravector():
            raise InvalidArgumentError(f"{name} must be a paravector")


def _inverse_of_s(s):
    if s.norm() == 0.0:
        raise DivisionByZeroError("kernel series needs s != 0")
    return paravector_inverse(s)


def kernel_series_sum(p, s, terms=DEFAULT_TERMS):
    """Partial sum of ``terms`` terms of ``sum p^k s^{-1-k}`` (products in that order)."""
    _check_pair(p, s)
    if terms < 1:
        raise InvalidArgumentError("terms must be >= 1")
    s_inv = _inverse_of_s(s)
    if p.norm() >= s.norm():
        warnings.warn("|p| >= |s|: the kernel series does not converge", ConvergenceWarning, stacklevel=2)
    p_pow = Multivector.scalar(p.n, 1.0)
    s_pow = s_inv
    total = geometric_product(p_pow, s_pow)
    for _ in range(terms - 1):
        p_pow = geometric_product(p_pow, p)
        s_pow = geometric_product(s_pow, s_inv)
        total = total + geometric_product(p_pow, s_pow)
    return total


def kernel_tail_bound(p, s, terms=DEFAULT_TERMS):
    """``(|p|/|s|)^terms``: relative size of the omitted tail."""
    return (p.norm() / s.norm()) ** terms


def _quadratic(p, s):
    # p^2 - 2 p Re[s] + |s|^2, a paravector on the slice plane of p
    s0 = s.real
    return geometric_product(p, p) - 2.0 * s0 * p + float(np.sum(s.coeffs**2))


def kernel_closed_form(p, s):
    """``-(p^2 - 2 p Re[s] + |s|^2)^{-1} (p - conj(s))``."""
    _check_pair(p, s)
    q = _quadratic(p, s)
    scale = p.norm() ** 2 + s.norm() ** 2
    if q.norm() < SINGULAR_RTOL * scale:
        raise SingularKernelError("p lies on the singular class of conj(s)")
    return -geometric_product(paravector_inverse(q), p - conjugate(s))


def kernel_inverse(p, s):
    """``-(p - conj(s))^{-1} (p^2 - 2 p Re[s] + |s|^2)``."""
    _check_pair(p, s)
    diff = p - conjugate(s)
    if diff.norm() < SINGULAR_RTOL * max(1.0, p.norm() + s.norm()):
        raise SingularKernelError("p = conj(s): the kernel inverse does not exist")
    return -geometric_product(paravector_inverse(diff), _quadratic(p, s))


def verify_kernel_identity(p, s, terms=DEFAULT_TERMS):
    """Residual of ``(-|s|^2 - p^2 + 2 p Re[s]) S_N = s + p - 2 Re[s]``.

    ``p`` may be a paravector or an :class:`OperatorParavector`.
    """
    if isinstance(p, OperatorParavector):
        return operator_identity_residual(p, s, terms)
    _check_pair(p, s)
    _inverse_of_s(s)
    s0 = s.real
    s2 = float(np.sum(s.coeffs**2))
    lhs_factor = -s2 - geometric_product(p, p) + 2.0 * s0 * p
    lhs = geometric_product(lhs_factor, kernel_series_sum(p, s, terms))
    return (lhs - (s - 2.0 * s0 + p)).norm()


def singularity_probe(s, path):
    """``(|p - conj(s)|, |closed form|)`` along a path of ``p`` values; singular points give ``inf``."""
    sbar = conjugate(s)
    out = []
    for p in path:
        dist = (p - sbar).norm()
        try:
            value = kernel_closed_form(p, s).norm()
        except SingularKernelError:
            value = math.inf
        out.append((dist, value))
    return out


# -- matrix coefficients ----------------------------------------------------


class MatrixMultivector:
    """Element of R_n with ``d x d`` real matrix blade coefficients, shape ``(2**n, d, d)``."""

    __slots__ = ("n", "d", "coeffs")

    def __init__(self, n, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim != 3 or arr.shape[0] != 1 << n or arr.shape[1] != arr.shape[2]:
            raise InvalidOperandsError(f"expected shape (2**{n}, d, d), got {arr.shape}")
        arr.setflags(write=False)
        self.n = n
        self.d = arr.shape[1]
        self.coeffs = arr

    @classmethod
    def from_multivector(cls, x, d):
        """Embed a real-coefficient multivector as ``x_A * Id`` on every blade."""
        return cls(x.n, x.coeffs[:, None, None] * np.eye(d))

    def _same(self, other):
        if not isinstance(other, MatrixMultivector) or other.n != self.n or other.d != self.d:
            raise InvalidOperandsError("matrix multivectors of different shape")

    def __add__(self, other):
        self._same(other)
        return MatrixMultivector(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._same(other)
        return MatrixMultivector(self.n, self.coeffs - other.coeffs)

    def __neg__(self):
        return MatrixMultivector(self.n, -self.coeffs)

    def scale(self, c):
        return MatrixMultivector(self.n, c * self.coeffs)

    def __mul__(self, other):
        self._same(other)
        table = blade_sign_table(self.n)
        idx = np.arange(1 << self.n)
        out = np.zeros_like(other.coeffs)
        for a in range(1 << self.n):
            xa = self.coeffs[a]
            if not np.any(xa):
                continue
            out[a ^ idx] += table[a][:, None, None] * (xa @ other.coeffs)
        return MatrixMultivector(self.n, out)

    def norm(self):
        """Frobenius norm over all blade coefficients."""
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True)
class OperatorParavector:
    """``T = T_0 + T_1 e_1 + ... + T_n e_n`` with ``d x d`` matrices ``mats[j] = T_j``."""

    mats: tuple

    def __post_init__(self):
        mats = [np.array(m, dtype=float) for m in self.mats]
        if len(mats) < 2:
            raise InvalidOperandsError("need T_0 and at least one vector component")
        shape = mats[0].shape
        if len(shape) != 2 or shape[0] != shape[1]:
            raise InvalidOperandsError("components must be square matrices")
        for m in mats:
            if m.shape != shape:
                raise InvalidOperandsError(f"component shapes differ: {shape} vs {m.shape}")
        object.__setattr__(self, "mats", tuple(mats))

    @property
    def n(self):
        return len(self.mats) - 1

    @property
    def d(self):
        return self.mats[0].shape[0]

    def proxy_norm(self):
        """Frobenius norm of the stacked components (convergence proxy)."""
        return float(np.sqrt(sum(np.sum(m**2) for m in self.mats)))

    def as_multivector(self):
        out = np.zeros((1 << self.n, self.d, self.d))
        out[0] = self.mats[0]
        for j in range(1, self.n + 1):
            out[1 << (j - 1)] = self.mats[j]
        return MatrixMultivector(self.n, out)


def operator_kernel_sum(T, s, terms=DEFAULT_TERMS):
    """``sum_k T^k s^{-1-k}`` with ``s`` a real paravector embedded as ``s_A * Id``."""
    if s.n != T.n:
        raise InvalidOperandsError(f"dimension mismatch: T over R_{T.n}, s in R_{s.n}")
    if terms < 1:
        raise InvalidArgumentError("terms must be >= 1")
    s_inv = _inverse_of_s(s)
    if T.proxy_norm() >= s.norm():
        warnings.warn("operator proxy norm >= |s|: convergence not guaranteed", ConvergenceWarning, stacklevel=2)
    d = T.d
    t = T.as_multivector()
    t_pow = MatrixMultivector.from_multivector(Multivector.scalar(s.n, 1.0), d)
    s_pow = s_inv
    total = t_pow * MatrixMultivector.from_multivector(s_pow, d)
    for _ in range(terms - 1):
        t_pow = t_pow * t
        s_pow = geometric_product(s_pow, s_inv)
        total = total + t_pow * MatrixMultivector.from_multivector(s_pow, d)
    return total


def operator_identity_residual(T, s, terms=DEFAULT_TERMS):
    """Frobenius residual of the operator identity ``(-|s|^2 - T^2 + 2 T Re[s]) S_N = s + T - 2 Re[s]``."""
    d = T.d
    t = T.as_multivector()
    s0 = s.real
    s2 = float(np.sum(s.coeffs**2))
    one = MatrixMultivector.from_multivector(Multivector.scalar(s.n, 1.0), d)
    factor = one.scale(-s2) - t * t + t.scale(2.0 * s0)
    lhs = factor * operator_kernel_sum(T, s, terms)
    rhs = MatrixMultivector.from_multivector(s - 2.0 * s0, d) + t
    return (lhs - rhs).norm()
