"""Power and Laurent series ``sum x^m a_m`` with Clifford coefficients.

Monomials always keep the variable on the left and the coefficient on the
right. Stored series are finite; series built from a coefficient generator
are flagged ``truncated`` and carry a root-test radius estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from .clifford import Multivector, geometric_product, paravector_inverse
from .errors import DivisionByZeroError, InvalidArgumentError, InvalidOperandsError

DEFAULT_ORDER = 64
COMPOSE_ORDER = 32
REAL_COEFF_TOL = 1e-13


class ConvergenceWarning(RuntimeWarning):
    """Evaluation point outside the (estimated) region of convergence."""


def _coeff_array(n, coeffs):
    if isinstance(coeffs, Multivector):
        arr = np.atleast_2d(coeffs.coeffs)
    else:
        items = list(coeffs)
        if items and isinstance(items[0], Multivector):
            for c in items:
                if c.n != n:
                    raise InvalidOperandsError(f"coefficient in R_{c.n}, series in R_{n}")
            arr = np.array([c.coeffs for c in items], dtype=float)
        else:
            arr = np.array(items, dtype=float).reshape(len(items), -1) if items else np.zeros((0, 1 << n))
    if arr.shape[-1] != 1 << n:
        raise InvalidArgumentError(f"coefficients must have {1 << n} blade entries")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("series coefficients must be finite")
    return arr


@dataclass(frozen=True)
class PowerSeries:
    """``sum_{m=0}^{M} x^m a_m``.

    ``coeffs`` is an ``(M + 1, 2**n)`` array; row ``m`` holds ``a_m``. A
    polynomial has ``radius = inf`` and ``truncated = False``.
    """

    n: int
    coeffs: np.ndarray
    radius: float = math.inf
    truncated: bool = False

    def __post_init__(self):
        arr = _coeff_array(self.n, self.coeffs)
        if len(arr) == 0:
            arr = np.zeros((1, 1 << self.n))
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        if not self.radius > 0:
            raise InvalidArgumentError("radius must be positive")

    @classmethod
    def from_generator(cls, n, gen, order=DEFAULT_ORDER):
        """Truncate an infinite series ``m -> a_m`` at ``order`` terms."""
        coeffs = _coeff_array(n, [_as_coeff(n, gen(m)) for m in range(order + 1)])
        draft = cls(n, coeffs, truncated=True)
        return cls(n, coeffs, estimate_radius(draft), True)

    @classmethod
    def monomial(cls, n, m, a=1.0):
        coeffs = np.zeros((m + 1, 1 << n))
        coeffs[m] = _as_coeff(n, a).coeffs
        return cls(n, coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, m):
        if m >= len(self.coeffs):
            return Multivector.zero(self.n)
        return Multivector(self.n, self.coeffs[m])

    def is_real(self, tol=REAL_COEFF_TOL):
        return bool(np.all(np.abs(self.coeffs[:, 1:]) <= tol))

    def __call__(self, x):
        return eval_series(self, x)


def _as_coeff(n, a):
    if isinstance(a, Multivector):
        if a.n != n:
            raise InvalidOperandsError(f"coefficient in R_{a.n}, series in R_{n}")
        return a
    if np.ndim(a) == 0:
        return Multivector.scalar(n, float(a))
    return Multivector(n, a)


@dataclass(frozen=True)
class LaurentSeries:
    """``sum x^m a_m + sum_{m>=1} x^{-m} b_m`` on ``inner_radius < |x| < outer_radius``.

    ``principal`` row ``k`` holds ``b_{k+1}``.
    """

    regular: PowerSeries
    principal: np.ndarray = field(default=None)
    inner_radius: float = 0.0
    outer_radius: float = math.inf

    def __post_init__(self):
        if self.principal is None:
            arr = np.zeros((0, 1 << self.n))
        else:
            arr = _coeff_array(self.n, self.principal)
        arr.setflags(write=False)
        object.__setattr__(self, "principal", arr)

    @property
    def n(self):
        return self.regular.n

    def b(self, m):
        if m < 1 or m > len(self.principal):
            return Multivector.zero(self.n)
        return Multivector(self.n, self.principal[m - 1])

    def __call__(self, x):
        return eval_laurent(self, x)


def _horner(coeffs, x):
    """``sum_m x^m c_m`` as ``c_0 + x (c_1 + x (c_2 + ...))``."""
    acc = np.broadcast_to(coeffs[-1], x.shape + coeffs[-1].shape)
    acc = Multivector(x.n, acc)
    for c in coeffs[-2::-1]:
        acc = geometric_product(x, acc) + Multivector(x.n, c)
    return acc


def _check_region(x, inner, outer):
    r = x.norm()
    if np.any(np.asarray(r) >= outer) or np.any(np.asarray(r) <= inner):
        warnings.warn("evaluation outside the convergence region of the series", ConvergenceWarning, stacklevel=3)


def eval_series(series, x):
    """Evaluate a :class:`PowerSeries` at a (possibly batched) paravector ``x``."""
    if x.n != series.n:
        raise InvalidOperandsError(f"dimension mismatch: series in R_{series.n}, point in R_{x.n}")
    if math.isfinite(series.radius):
        _check_region(x, -1.0, series.radius)
    return _horner(series.coeffs, x)


def eval_laurent(series, x):
    """Regular part at ``x`` plus principal part in powers of ``x^{-1}``."""
    if x.n != series.n:
        raise InvalidOperandsError(f"dimension mismatch: series in R_{series.n}, point in R_{x.n}")
    _check_region(x, series.inner_radius, series.outer_radius)
    value = _horner(series.regular.coeffs, x)
    if len(series.principal) == 0:
        return value
    try:
        inv = paravector_inverse(x)
    except DivisionByZeroError:
        raise DivisionByZeroError("Laurent series with a principal part evaluated at 0") from None
    zero = np.zeros((1, 1 << series.n))
    tail = _horner(np.vstack([zero, series.principal]), inv)
    return value + tail


def s_derivative(series):
    """Termwise derivative ``sum m x^{m-1} a_m``; the radius is unchanged."""
    if series.degree == 0:
        coeffs = np.zeros((1, 1 << series.n))
    else:
        m = np.arange(1, series.degree + 1)[:, None]
        coeffs = m * series.coeffs[1:]
    return PowerSeries(series.n, coeffs, series.radius, series.truncated)


def monogenicity_residual(f, p, h=None):
    """Central-difference estimate of ``(d/dx + I d/dy) f(x + I y) / 2`` at ``p``.

    ``p`` is a :class:`SlicePoint`; ``h`` defaults to ``1e-4 * max(1, |p|)``.
    The imaginary unit multiplies from the left.
    """
    if h is None:
        h = 1e-4 * max(1.0, math.hypot(p.x, p.y))
    if not h > 0:
        raise InvalidArgumentError("step h must be positive")
    I = p.I
    base = p.embed()
    dx = (f(base + h) - f(base - h)) / (2 * h)
    dy = (f(base + h * I) - f(base - h * I)) / (2 * h)
    return (dx + geometric_product(I, dy)) / 2.0


def multiply_real(f, g):
    """Product of a real-coefficient series ``f`` with ``g`` (Cauchy convolution)."""
    if f.n != g.n:
        raise InvalidOperandsError(f"dimension mismatch: R_{f.n} vs R_{g.n}")
    if not f.is_real():
        raise InvalidArgumentError("multiply_real needs a left factor with real coefficients")
    a = f.coeffs[:, 0]
    out = np.zeros((len(a) + len(g.coeffs) - 1, 1 << g.n))
    for i, ai in enumerate(a):
        if ai:
            out[i:i + len(g.coeffs)] += ai * g.coeffs
    return PowerSeries(g.n, out, min(f.radius, g.radius), f.truncated or g.truncated)


def compose_real(f, g, order=COMPOSE_ORDER):
    """``f(g(x))`` for a real-coefficient inner series ``g``, truncated at ``order``.

    Powers of ``g`` are real series, so they commute with ``x`` and can be
    gathered to the left of each ``a_m``.
    """
    if f.n != g.n:
        raise InvalidOperandsError(f"dimension mismatch: R_{f.n} vs R_{g.n}")
    if not g.is_real():
        raise InvalidArgumentError("compose_real needs an inner series with real coefficients")
    b = g.coeffs[:, 0]
    out = np.zeros((order + 1, 1 << f.n))
    power = np.array([1.0])
    dropped = False
    for m in range(f.degree + 1):
        if m:
            full = np.convolve(power, b)
            dropped |= bool(np.any(full[order + 1:]))
            power = full[: order + 1]
        out[: len(power)] += power[:, None] * f.coeffs[m]
    truncated = dropped or f.truncated or g.truncated
    result = PowerSeries(f.n, out, truncated=truncated)
    if truncated:
        return PowerSeries(f.n, out, estimate_radius(result), True)
    return result


def recenter(f, y0):
    """Coefficients of ``f`` in powers of ``(x - y0)`` for real ``y0``.

    The result is a series in the shifted variable: evaluate it at ``x - y0``.
    """
    y0 = float(y0)
    M = f.degree
    out = np.zeros_like(f.coeffs)
    for k in range(M + 1):
        w = np.array([math.comb(m, k) * y0 ** (m - k) for m in range(k, M + 1)])
        out[k] = w @ f.coeffs[k:]
    radius = f.radius - abs(y0) if math.isfinite(f.radius) else math.inf
    if not radius > 0:
        raise InvalidArgumentError("recentering point lies outside the disc of convergence")
    return PowerSeries(f.n, out, radius, f.truncated)


def compose_inversion(f):
    """``f(x^{-1}) = a_0 + sum_{m>=1} x^{-m} a_m``, valid for ``|x| > 1/R``."""
    regular = PowerSeries(f.n, f.coeffs[:1])
    inner = 0.0 if math.isinf(f.radius) else 1.0 / f.radius
    return LaurentSeries(regular, f.coeffs[1:], inner, math.inf)


def extend_holomorphic(complex_coeffs, I):
    """Extend ``sum z^m c_m`` (complex ``c_m``) off L_I by ``c = a + ib -> a + b I``."""
    n = I.n
    rows = [float(np.real(c)) + float(np.imag(c)) * I for c in complex_coeffs]
    return PowerSeries(n, [r.coeffs for r in rows])


def estimate_radius(series):
    """Root-test radius ``1 / limsup |a_m|^(1/m)``.

    An exact polynomial (not ``truncated``) is entire. For truncated series the
    limsup is read off the upper half of the stored coefficients.
    """
    if not series.truncated:
        return math.inf
    norms = np.linalg.norm(series.coeffs, axis=1)
    M = len(norms) - 1
    start = max(1, M // 2)
    tail = norms[start:]
    if not np.any(tail > 0):
        return math.inf
    m = np.arange(start, M + 1)
    with np.errstate(divide="ignore"):
        roots = np.where(tail > 0, tail ** (1.0 / m), 0.0)
    return 1.0 / float(np.max(roots))
