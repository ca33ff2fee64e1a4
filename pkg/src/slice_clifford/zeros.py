"""Sphere classes as zero sets of ``x^2 - 2 Re[s] x + |s|^2`` and sphere zeros of series."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .clifford import Multivector, geometric_product, paravector
from .errors import InvalidArgumentError
from .series import eval_series
from .slices import as_unit, equivalence_class

ZERO_RTOL = 1e-9
CONFIRM_SAMPLES = 100


@dataclass(frozen=True)
class AlphaBeta:
    """Real parts of ``(x0 + y0 I)^m = alpha + I beta``; independent of ``I``."""

    alpha: float
    beta: float


def characteristic_quadratic(s):
    """Coefficients ``(c1, c0)`` of ``x^2 + c1 x + c0`` whose paravector roots are ``[s]``."""
    s0 = s.real
    return -2.0 * s0, s0 * s0 + float(np.sum(s.vector**2))


def quadratic_residual(x, s):
    c1, c0 = characteristic_quadratic(s)
    return (geometric_product(x, x) + c1 * x + c0).norm()


def is_in_class(x, s, tol=1e-10, method="quadratic"):
    """Membership of the paravector ``x`` in ``[s]``.

    ``method="quadratic"`` thresholds the residual of the characteristic
    quadratic; ``method="norm"`` compares ``x0`` with ``s0`` and ``|x|`` with
    ``|s|`` directly.
    """
    if not x.is_paravector():
        raise InvalidArgumentError("class membership is only characterised for paravectors")
    if method == "quadratic":
        return quadratic_residual(x, s) <= tol
    if method == "norm":
        return abs(x.real - s.real) <= tol and abs(x.norm() - s.norm()) <= tol
    raise InvalidArgumentError(f"unknown method {method!r}")


def quadratic_counterexample_check(v):
    """``|v^2 - 2 <v>_0 v + |v|^2|`` for an arbitrary multivector ``v``.

    Vanishes for paravectors; ``1 - e123`` shows it need not vanish otherwise.
    """
    s0 = v.coeffs[0]
    return (geometric_product(v, v) - 2.0 * s0 * v + float(np.sum(v.coeffs**2))).norm()


def alpha_beta(x0, y0, m):
    """Binomial split of ``(x0 + y0 I)^m`` using ``I^2 = -1``."""
    if m < 0:
        raise InvalidArgumentError("alpha_beta needs m >= 0")
    alpha = beta = 0.0
    for i in range(m + 1):
        term = math.comb(m, i) * x0 ** (m - i) * y0**i
        if i % 2 == 0:
            alpha += term if i % 4 == 0 else -term
        else:
            beta += term if i % 4 == 1 else -term
    return AlphaBeta(alpha, beta)


def default_zero_tol(series, x0, y0):
    """``1e-9 * sum |a_m| max(1, |x0| + y0)^m``."""
    scale = max(1.0, abs(x0) + y0)
    norms = np.linalg.norm(series.coeffs, axis=1)
    return ZERO_RTOL * float(np.sum(norms * scale ** np.arange(len(norms))))


@dataclass(frozen=True)
class SphereZeroVerdict:
    root1: bool
    root2: bool
    whole_sphere: bool
    alpha_sum: Multivector
    beta_sum: Multivector
    max_sample_residual: float = math.nan


def sphere_zero_test(series, x0, y0, I1, I2, tol=None, samples=CONFIRM_SAMPLES, seed=0):
    """Check whether zeros at ``x0 + y0 I1`` and ``x0 + y0 I2`` spread to the whole sphere.

    When both points are zeros, ``sum alpha_m a_m`` and ``sum beta_m a_m`` must
    vanish and the series is then confirmed on ``samples`` random points of the
    sphere (residual at most ``10 * tol``).
    """
    as_unit(I1)
    as_unit(I2)
    if not y0 > 0:
        raise InvalidArgumentError("sphere_zero_test needs y0 > 0")
    if tol is None:
        tol = default_zero_tol(series, x0, y0)
    if (I1 - I2).norm() <= tol:
        raise InvalidArgumentError("I1 and I2 must differ (I1 - I2 has to be invertible)")

    n = series.n
    r1 = eval_series(series, x0 + y0 * I1).norm() <= tol
    r2 = eval_series(series, x0 + y0 * I2).norm() <= tol
    ab = [alpha_beta(x0, y0, m) for m in range(series.degree + 1)]
    alphas = np.array([t.alpha for t in ab])
    betas = np.array([t.beta for t in ab])
    alpha_sum = Multivector(n, alphas @ series.coeffs)
    beta_sum = Multivector(n, betas @ series.coeffs)

    whole = False
    worst = math.nan
    if r1 and r2:
        sums_vanish = alpha_sum.norm() <= tol and beta_sum.norm() <= tol
        cls = equivalence_class(x0 + y0 * I1)
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((samples, n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        pts = paravector(np.full(samples, cls.center), cls.radius * g)
        worst = float(np.max(eval_series(series, pts).norm()))
        whole = bool(sums_vanish and worst <= 10.0 * tol)
    return SphereZeroVerdict(bool(r1), bool(r2), whole, alpha_sum, beta_sum, worst)
