"""Trapezoidal contour integrals on circles in a slice plane L_I.

Every integral here has the shape ``sum_k K(z_k) w_k f(z_k)`` over uniform
nodes ``z_k = c + r e^{I theta_k}``; factors are multiplied left to right in
exactly that order. Evaluators ``f`` receive all nodes at once as a batched
:class:`~slice_clifford.clifford.Multivector` and must return a batch of the
same shape (see :func:`pointwise` for scalar-only callables).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .clifford import Multivector, geometric_product, paravector_inverse, paravector_power
from .errors import DegenerateContourError, InvalidArgumentError, InvalidOperandsError, PreconditionError
from .slices import as_unit, slice_unit

DEFAULT_NODES = 256
MIN_NODES = 8
INTERIOR_MARGIN = 1e-3
PLANE_TOL = 1e-12


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``center + radius * e^{I theta}`` in L_I with ``nodes`` uniform nodes."""

    I: Multivector
    center: float = 0.0
    radius: float = 1.0
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        as_unit(self.I)
        if not self.radius > 0:
            raise InvalidArgumentError("contour radius must be positive")
        if int(self.nodes) < MIN_NODES:
            raise InvalidArgumentError(f"contour needs at least {MIN_NODES} nodes")
        object.__setattr__(self, "nodes", int(self.nodes))

    @property
    def n(self):
        return self.I.n

    def points(self, count=None):
        """Nodes ``z_k`` and unit phases ``e^{I theta_k}`` as batched multivectors."""
        count = self.nodes if count is None else count
        theta = 2.0 * math.pi * np.arange(count) / count
        phase = np.cos(theta)[:, None] * Multivector.scalar(self.n, 1.0).coeffs + np.sin(theta)[:, None] * self.I.coeffs
        phase = Multivector(self.n, phase)
        return self.center + self.radius * phase, phase


@dataclass(frozen=True)
class QuadratureReport:
    """Quadrature value at ``node_count`` nodes; ``est_error`` is its distance to the 2N rule."""

    value: Multivector
    node_count: int
    est_error: float


def pointwise(f):
    """Wrap a callable defined on single multivectors so it accepts batches."""

    def batched(x):
        if not x.shape:
            return f(x)
        flat = x.coeffs.reshape(-1, x.coeffs.shape[-1])
        out = np.array([f(Multivector(x.n, row)).coeffs for row in flat])
        return Multivector(x.n, out.reshape(x.shape + (out.shape[-1],)))

    return batched


def on_plane(x, I, tol=PLANE_TOL):
    """True when the paravector ``x`` lies on L_I."""
    vec = x.vector
    along = np.dot(vec, I.vector)
    off = vec - along * I.vector
    return bool(np.linalg.norm(off) <= tol * max(1.0, x.norm()))


def _plane_coords(x, c):
    # (u, v) with x = u + v I; sign of v follows the contour's I
    return x.real, float(np.dot(x.vector, c.I.vector))


def _evaluate(f, z, n):
    values = f(z)
    if not isinstance(values, Multivector):
        raise InvalidArgumentError("evaluator must return a Multivector")
    if values.n != n:
        raise InvalidOperandsError(f"evaluator returned R_{values.n} values on an R_{n} contour")
    if values.shape != z.shape:
        values = Multivector(n, np.broadcast_to(values.coeffs, z.shape + (1 << n,)))
    return values


def _rule(kernel, weight, values):
    terms = geometric_product(geometric_product(kernel, weight), values)
    return Multivector(values.n, np.sum(terms.coeffs, axis=0))


def _refined(c, kernel_fn, f, with_error=True):
    """Apply the rule at N nodes and, for the error estimate, at 2N nodes.

    ``kernel_fn(z)`` gives the left factor. The line element is
    ``dz_I / (2 pi) = -dz I / (2 pi) = (z - c) / N`` after simplification.
    """
    N = c.nodes
    count = 2 * N if with_error else N
    z, phase = c.points(count)
    values = _evaluate(f, z, c.n)
    kernel = kernel_fn(z)
    weight = (c.radius / count) * phase
    fine = _rule(kernel, weight, values)
    if not with_error:
        return QuadratureReport(fine, N, 0.0)
    coarse = _rule(kernel[::2], 2.0 * weight[::2], values[::2])
    return QuadratureReport(coarse, N, (fine - coarse).norm())


def _cauchy_kernel_at(x):
    def kernel(z):
        diff = z - x
        if np.any(np.sum(diff.coeffs**2, axis=-1) == 0.0):
            raise DegenerateContourError("a quadrature node coincides with the evaluation point")
        return paravector_inverse(diff)

    return kernel


def _require_plane(x, c):
    if x.n != c.n:
        raise InvalidOperandsError(f"dimension mismatch: point in R_{x.n}, contour in R_{c.n}")
    if not x.is_paravector():
        raise InvalidArgumentError("evaluation point must be a paravector")
    if not on_plane(x, c.I):
        raise PreconditionError("evaluation point is not on the contour's slice plane")


def contour_for(x, radius, nodes=DEFAULT_NODES, center=0.0):
    """Contour on the slice plane of ``x`` (``I = slice_unit(x)``)."""
    return ContourSpec(slice_unit(x), center, radius, nodes)


def cauchy_eval(f, x, c):
    """Slice Cauchy formula ``(1/2pi) int (z - x)^{-1} dz_I f(z)`` for ``x`` inside ``c``."""
    _require_plane(x, c)
    u, v = _plane_coords(x, c)
    if math.hypot(u - c.center, v) > c.radius * (1.0 - INTERIOR_MARGIN):
        raise PreconditionError("point is not strictly inside the contour disc")
    return _refined(c, _cauchy_kernel_at(x), f)


def annulus_cauchy_eval(f, x, outer, inner):
    """Outer circle integral minus inner circle integral, both centred at 0."""
    _require_plane(x, outer)
    if outer.center != 0.0 or inner.center != 0.0:
        raise PreconditionError("annulus contours must be centred at the origin")
    if not np.allclose(outer.I.coeffs, inner.I.coeffs, atol=PLANE_TOL):
        raise PreconditionError("annulus contours must lie on the same slice plane")
    r = x.norm()
    if not inner.radius < r < outer.radius:
        raise PreconditionError("point is not inside the open annulus")
    kernel = _cauchy_kernel_at(x)
    big = _refined(outer, kernel, f)
    small = _refined(inner, kernel, f)
    return QuadratureReport(big.value - small.value, outer.nodes, big.est_error + small.est_error)


def exterior_cauchy_eval(f, x, a_limit, c):
    """``a - (1/2pi) int (z - x)^{-1} dz_I f(z)`` for ``x`` outside the contour.

    ``a_limit`` is the limit of ``f`` at infinity.
    """
    _require_plane(x, c)
    u, v = _plane_coords(x, c)
    if math.hypot(u - c.center, v) <= c.radius:
        raise PreconditionError("point must lie outside the contour disc")
    inner = _refined(c, _cauchy_kernel_at(x), f)
    return QuadratureReport(a_limit - inner.value, inner.node_count, inner.est_error)


def _require_origin(c):
    if c.center != 0.0:
        raise PreconditionError("coefficient extraction needs a contour centred at 0")


def taylor_coefficient(f, m, c):
    """``a_m = (1/2pi) int z^{-m-1} dz_I f(z)``."""
    if m < 0:
        raise InvalidArgumentError("taylor_coefficient needs m >= 0; use laurent_coefficient")
    _require_origin(c)
    return _refined(c, lambda z: paravector_power(z, -m - 1), f, with_error=False).value


def laurent_coefficient(f, m, c):
    """``b_m = (1/2pi) int z^{m-1} dz_I f(z)`` for ``m >= 1``."""
    if m < 1:
        raise InvalidArgumentError("laurent_coefficient needs m >= 1")
    _require_origin(c)
    return _refined(c, lambda z: paravector_power(z, m - 1), f, with_error=False).value


def closed_curve_integral(f, c):
    """``int dz f(z)`` over the contour with the plain line element ``dz = I (z - c) dtheta``."""
    z, phase = c.points()
    values = _evaluate(f, z, c.n)
    dz = (2.0 * math.pi * c.radius / c.nodes) * geometric_product(c.I, phase)
    return Multivector(c.n, np.sum(geometric_product(dz, values).coeffs, axis=0))


@dataclass(frozen=True)
class EstimateRow:
    order: int
    lhs: float
    rhs: float
    ok: bool


def cauchy_estimate_check(f, r, I, max_order, nodes=DEFAULT_NODES, slack=0.0):
    """Compare ``|a_k|`` with ``M_I / r^k`` for ``k = 0..max_order``.

    ``M_I`` is the largest ``|f|`` over the circle nodes of radius ``r`` in L_I.
    """
    c = ContourSpec(I, 0.0, r, nodes)
    z, _ = c.points()
    bound = float(np.max(_evaluate(f, z, c.n).norm()))
    rows = []
    for k in range(max_order + 1):
        lhs = taylor_coefficient(f, k, c).norm()
        rhs = bound / r**k
        rows.append(EstimateRow(k, lhs, rhs, lhs <= rhs + slack))
    return rows
