"""Seeded verification suites and the report they produce.

Each suite draws its inputs from ``numpy.random.default_rng([seed, suite_id])``
so a suite gives the same numbers whether it runs alone or inside
``verify-all``.
"""

from __future__ import annotations

import csv
from dataclasses import asdict, dataclass, field
import io
import json
import math
import time

import numpy as np

from .clifford import Multivector, conjugate, geometric_product, paravector, paravector_power
from .kernel import (
    OperatorParavector,
    kernel_closed_form,
    kernel_inverse,
    kernel_series_sum,
    operator_kernel_sum,
    verify_kernel_identity,
)
from .quadrature import (
    ContourSpec,
    annulus_cauchy_eval,
    cauchy_estimate_check,
    cauchy_eval,
    closed_curve_integral,
    exterior_cauchy_eval,
    laurent_coefficient,
    taylor_coefficient,
)
from .series import LaurentSeries, PowerSeries, eval_laurent, eval_series, monogenicity_residual, multiply_real
from .slices import SlicePoint, complete_frame, random_unit, split, unsplit
from .zeros import alpha_beta, is_in_class, sphere_zero_test

COMMANDS = ("eval", "verify-cauchy", "verify-split", "verify-kernel", "verify-zeros", "verify-all")
SUITE_IDS = {"verify-split": 1, "verify-cauchy": 2, "verify-kernel": 3, "verify-zeros": 4}

# stencil-limited and rate checks carry their own floor / tolerance
FD_TOL = 1e-6
RATE_TOL = 0.1


@dataclass
class RunConfig:
    command: str = "verify-all"
    n: int = 3
    nodes: int = 256
    terms: int = 60
    tol: float = 1e-8
    seed: int = 42
    input: str | None = None
    output: str | None = None
    format: str = "json"
    at: str | None = None

    def report_fields(self):
        d = asdict(self)
        d.pop("output")
        return d


@dataclass
class CheckRecord:
    name: str
    anchor: str
    residual: float
    tol: float
    passed: bool
    ms: float

    def as_json(self):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
            "ms": self.ms,
        }


@dataclass
class Report:
    config: dict
    checks: list = field(default_factory=list)

    @property
    def summary(self):
        ok = sum(1 for c in self.checks if c.passed)
        return {"pass": ok, "fail": len(self.checks) - ok}

    def to_json(self):
        body = {"config": self.config, "checks": [c.as_json() for c in self.checks], "summary": self.summary}
        return json.dumps(body, indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "anchor", "residual", "tol", "pass", "ms"])
        for c in self.checks:
            writer.writerow([c.name, c.anchor, repr(c.residual), repr(c.tol), c.passed, f"{c.ms:.3f}"])
        return buf.getvalue()


class _Recorder:
    def __init__(self, report):
        self.report = report

    def check(self, name, anchor, tol, fn, below=True):
        start = time.perf_counter()
        residual = float(fn())
        ms = round((time.perf_counter() - start) * 1e3, 3)
        ok = residual <= tol if below else residual >= tol
        if math.isnan(residual):
            ok = False
        self.report.checks.append(CheckRecord(name, anchor, residual, tol, bool(ok), ms))


# -- random inputs ----------------------------------------------------------


def random_multivector(n, rng, scale=1.0):
    return Multivector(n, scale * rng.uniform(-1.0, 1.0, 1 << n))


def random_polynomial(n, rng, degree=8):
    """Coefficients with Euclidean norm at most one."""
    coeffs = rng.standard_normal((degree + 1, 1 << n))
    coeffs *= rng.uniform(0.1, 1.0, (degree + 1, 1)) / np.linalg.norm(coeffs, axis=1, keepdims=True)
    return PowerSeries(n, coeffs)


def random_slice_point(n, rng, rmax, rmin=0.0):
    I = random_unit(n, rng)
    r = rng.uniform(rmin, rmax)
    t = rng.uniform(0.0, 2.0 * math.pi)
    return r * math.cos(t) + r * math.sin(t) * I, I


def random_paravector(n, rng, scale=1.0):
    return paravector(rng.uniform(-scale, scale), rng.uniform(-scale, scale, n))


# -- suites -----------------------------------------------------------------


def suite_split(cfg, rec, rng):
    n = cfg.n

    def roundtrip():
        worst = 0.0
        for _ in range(50):
            frame = complete_frame(random_unit(n, rng))
            v = random_multivector(n, rng)
            worst = max(worst, float(np.max(np.abs((unsplit(split(v, frame), frame) - v).coeffs))))
        return worst

    def relations():
        worst = 0.0
        for _ in range(20):
            basis = complete_frame(random_unit(n, rng)).basis
            for r, a in enumerate(basis):
                for s, b in enumerate(basis):
                    anti = geometric_product(a, b) + geometric_product(b, a) + (2.0 if r == s else 0.0)
                    worst = max(worst, float(np.max(np.abs(anti.coeffs))))
        return worst

    def orthogonal():
        worst = 0.0
        for _ in range(20):
            B = complete_frame(random_unit(n, rng)).change_of_basis
            worst = max(worst, float(np.max(np.abs(B.T @ B - np.eye(len(B))))))
        return worst

    def example_r4():
        frame = complete_frame(Multivector.basis_vector(4, 1))
        v = random_multivector(4, rng)
        comps = split(v, frame)
        worst = 0.0
        for key, value in comps.items():
            mask = sum(1 << (i - 1) for i in key)
            worst = max(worst, abs(value.real - v.coeffs[mask]), abs(value.imag - v.coeffs[mask | 1]))
        return worst

    rec.check("split_roundtrip", "Splitting lemma", cfg.tol, roundtrip)
    rec.check("frame_relations", "orthonormal frame completion", cfg.tol, relations)
    rec.check("change_of_basis_orthogonal", "orthonormal frame completion", cfg.tol, orthogonal)
    rec.check("splitting_example_r4", "Splitting lemma, R_4 grouping example", cfg.tol, example_r4)


def suite_cauchy(cfg, rec, rng, series=None):
    n = cfg.n
    nodes = cfg.nodes

    def polys(count):
        if series is not None:
            return [series]
        return [random_polynomial(n, rng) for _ in range(count)]

    def interior():
        worst = 0.0
        for f in polys(5):
            for _ in range(4):
                x, I = random_slice_point(n, rng, 0.8)
                got = cauchy_eval(f, x, ContourSpec(I, 0.0, 1.0, nodes)).value
                want = eval_series(f, x)
                worst = max(worst, (got - want).norm() / max(want.norm(), np.finfo(float).tiny))
        return worst

    def refinement():
        worst = 0.0
        for f in polys(3):
            x, I = random_slice_point(n, rng, 0.8)
            worst = max(worst, cauchy_eval(f, x, ContourSpec(I, 0.0, 1.0, nodes)).est_error)
        return worst

    def annulus():
        worst = 0.0
        for _ in range(4):
            lau = LaurentSeries(random_polynomial(n, rng, 5), random_polynomial(n, rng, 4).coeffs, 0.0)
            x, I = random_slice_point(n, rng, 1.3, 0.8)
            got = annulus_cauchy_eval(lau, x, ContourSpec(I, 0.0, 2.0, nodes), ContourSpec(I, 0.0, 0.5, nodes))
            worst = max(worst, (got.value - eval_laurent(lau, x)).norm())
        return worst

    def exterior():
        worst = 0.0
        for _ in range(4):
            b = random_polynomial(n, rng, 5).coeffs
            lau = LaurentSeries(PowerSeries(n, b[:1]), b[1:], 0.0)
            x, I = random_slice_point(n, rng, 3.0, 1.5)
            got = exterior_cauchy_eval(lau, x, Multivector(n, b[0]), ContourSpec(I, 0.0, 1.0, nodes))
            worst = max(worst, (got.value - eval_laurent(lau, x)).norm())
        return worst

    def slice_independence():
        worst = 0.0
        for f in polys(3):
            c1 = ContourSpec(random_unit(n, rng), 0.0, 1.0, nodes)
            c2 = ContourSpec(random_unit(n, rng), 0.0, 1.0, nodes)
            for m in range(11):
                worst = max(worst, (taylor_coefficient(f, m, c1) - taylor_coefficient(f, m, c2)).norm())
        return worst

    def laurent_coeffs():
        worst = 0.0
        for y0 in (0.3, -0.5):
            f = lambda z, y0=y0: _shifted_inverse(z, y0)
            c = ContourSpec(random_unit(n, rng), 0.0, 1.0, nodes)
            for m in range(1, 9):
                worst = max(worst, (laurent_coefficient(f, m, c) - y0 ** (m - 1)).norm())
        return worst

    def estimates():
        worst = -math.inf
        for f in polys(3):
            for r in (0.5, 0.9):
                for row in cauchy_estimate_check(f, r, random_unit(n, rng), 10, nodes):
                    worst = max(worst, row.lhs - row.rhs)
        return max(worst, 0.0)

    def zero_integral():
        worst = 0.0
        for f in polys(3):
            c = ContourSpec(random_unit(n, rng), rng.uniform(-0.5, 0.5), rng.uniform(0.3, 1.0), nodes)
            worst = max(worst, closed_curve_integral(f, c).norm())
        return worst

    def monogenic():
        worst = 0.0
        for f in polys(3):
            x, I = random_slice_point(n, rng, 0.9, 0.1)
            p = SlicePoint.from_paravector(x)
            res = monogenicity_residual(lambda z, f=f: eval_series(f, z), p).norm()
            worst = max(worst, res / (1.0 + eval_series(f, x).norm()))
        return worst

    def conjugate_detected():
        # power check: the conjugation map must fail the zero-integral test
        c = ContourSpec(random_unit(n, rng), 0.0, 1.0, nodes)
        return closed_curve_integral(conjugate, c).norm()

    def conjugate_residual():
        x, I = random_slice_point(n, rng, 0.9, 0.1)
        return monogenicity_residual(conjugate, SlicePoint.from_paravector(x)).norm()

    rec.check("cauchy_interior", "Cauchy integral formula", cfg.tol, interior)
    rec.check("cauchy_refinement", "Cauchy integral formula (N vs 2N nodes)", cfg.tol, refinement)
    rec.check("annulus_laurent", "Cauchy formula on an annulus", cfg.tol, annulus)
    rec.check("exterior_cauchy", "Cauchy formula outside a ball", cfg.tol, exterior)
    rec.check("taylor_slice_independence", "series coefficients independent of the slice", cfg.tol, slice_independence)
    rec.check("laurent_coefficients", "Laurent expansion of the shifted inverse", cfg.tol, laurent_coeffs)
    rec.check("cauchy_estimates", "Cauchy estimates", cfg.tol, estimates)
    rec.check("zero_integral", "vanishing integral over closed curves", cfg.tol, zero_integral)
    rec.check("monogenicity_residual", "slice monogenicity of power series", max(cfg.tol, FD_TOL), monogenic)
    rec.check("conjugate_zero_integral", "vanishing integral fails for the conjugation map", 1e-3, conjugate_detected, below=False)
    rec.check("conjugate_residual", "slice monogenicity fails for the conjugation map", 0.5, conjugate_residual, below=False)


def _shifted_inverse(z, y0):
    from .clifford import paravector_inverse

    return paravector_inverse(z - y0)


def suite_kernel(cfg, rec, rng):
    n = cfg.n
    N = cfg.terms

    def pairs(count):
        out = []
        while len(out) < count:
            s = random_paravector(n, rng)
            p = random_paravector(n, rng)
            p = p * (rng.uniform(0.1, 0.5) * s.norm() / p.norm())
            if (geometric_product(p, s) - geometric_product(s, p)).norm() > 1e-6:
                out.append((p, s))
        return out

    def series_vs_closed():
        worst = 0.0
        for p, s in pairs(50):
            k = kernel_closed_form(p, s)
            worst = max(worst, (kernel_series_sum(p, s, N) - k).norm() / k.norm())
        return worst

    def inverse():
        worst = 0.0
        for p, s in pairs(50):
            prod = geometric_product(kernel_inverse(p, s), kernel_closed_form(p, s))
            worst = max(worst, (prod - 1.0).norm())
        return worst

    def identity():
        return max(verify_kernel_identity(p, s, N) for p, s in pairs(20))

    def identity_rate():
        worst = 0.0
        for p, s in pairs(10):
            a = verify_kernel_identity(p, s, 10)
            b = verify_kernel_identity(p, s, 11)
            ratio = p.norm() / s.norm()
            worst = max(worst, abs(b / a - ratio) / ratio)
        return worst

    def operator_identity():
        s = 2.0 + Multivector.basis_vector(n, 1)
        worst = 0.0
        for _ in range(5):
            T = _random_operator(n, 4, 0.2, rng)
            worst = max(worst, verify_kernel_identity(T, s, N))
        return worst

    def scalar_reduction():
        worst = 0.0
        for p, s in pairs(10):
            T = OperatorParavector(tuple(np.array([[c]]) for c in [p.real, *p.vector]))
            op = operator_kernel_sum(T, s, N).coeffs[:, 0, 0]
            worst = max(worst, float(np.max(np.abs(op - kernel_series_sum(p, s, N).coeffs))))
        return worst

    rec.check("kernel_series_vs_closed_form", "closed form of the noncommutative Cauchy kernel series", cfg.tol, series_vs_closed)
    rec.check("kernel_inverse", "inverse of the noncommutative Cauchy kernel series", cfg.tol, inverse)
    rec.check("kernel_identity", "kernel series identity", cfg.tol, identity)
    rec.check("kernel_identity_decay", "kernel series identity (geometric tail |p|/|s|)", RATE_TOL, identity_rate)
    rec.check("operator_kernel_identity", "kernel identity without commuting components", cfg.tol, operator_identity)
    rec.check("operator_scalar_reduction", "kernel identity without commuting components (d = 1)", 0.0, scalar_reduction)


def _random_operator(n, d, proxy, rng):
    mats = rng.standard_normal((n + 1, d, d))
    mats *= proxy / np.linalg.norm(mats)
    return OperatorParavector(tuple(mats))


def sphere_root_polynomial(n, rng, degree=3):
    """``(x^2 - 2 x0 x + x0^2 + y0^2) q(x)`` with ``q`` having coefficients on a random slice."""
    I = random_unit(n, rng)
    x0 = rng.uniform(-1.0, 1.0)
    y0 = rng.uniform(0.2, 1.0)
    quad = PowerSeries(n, [Multivector.scalar(n, x0 * x0 + y0 * y0), Multivector.scalar(n, -2.0 * x0), Multivector.scalar(n, 1.0)])
    q = [rng.uniform(-1, 1) + rng.uniform(-1, 1) * I for _ in range(degree + 1)]
    q = [c / max(1.0, c.norm()) for c in q]
    return multiply_real(quad, PowerSeries(n, q)), x0, y0, I


def suite_zeros(cfg, rec, rng):
    n = cfg.n

    def membership():
        disagree = 0
        for k in range(200):
            s = random_paravector(n, rng)
            if k % 2:
                J = random_unit(n, rng)
                x = s.real + float(np.linalg.norm(s.vector)) * J
            else:
                x = random_paravector(n, rng)
            disagree += is_in_class(x, s, 1e-10) != is_in_class(x, s, 1e-12, method="norm")
        return disagree

    def alpha_beta_power():
        worst = 0.0
        for _ in range(10):
            I = random_unit(n, rng)
            x0, y0 = rng.uniform(-1, 1, 2)
            for m in range(13):
                ab = alpha_beta(x0, y0, m)
                worst = max(worst, (paravector_power(x0 + y0 * I, m) - (ab.alpha + ab.beta * I)).norm())
        return worst

    def sphere_zeros():
        worst = 0.0
        for _ in range(5):
            f, x0, y0, I = sphere_root_polynomial(n, rng)
            v = sphere_zero_test(f, x0, y0, I, -I, tol=cfg.tol, seed=int(rng.integers(2**31)))
            if not v.whole_sphere:
                return math.inf
            worst = max(worst, v.max_sample_residual, v.alpha_sum.norm(), v.beta_sum.norm())
        return worst

    def single_root_control():
        hits = 0
        for _ in range(5):
            I = random_unit(n, rng)
            c = rng.uniform(-1, 1) + rng.uniform(0.2, 1.0) * I
            f = PowerSeries(n, [-c, Multivector.scalar(n, 1.0)])
            x0, y0 = c.real, float(np.linalg.norm(c.vector))
            hits += sphere_zero_test(f, x0, y0, I, random_unit(n, rng), tol=cfg.tol).whole_sphere
            hits += sphere_zero_test(f, x0, y0, I, -I, tol=cfg.tol).whole_sphere
        return hits

    rec.check("class_membership", "quadratic equation of an equivalence class", 0.0, membership)
    rec.check("alpha_beta", "binomial split of slice powers", cfg.tol, alpha_beta_power)
    rec.check("sphere_zeros", "sphere zeros of power series", cfg.tol, sphere_zeros)
    rec.check("single_root_control", "sphere zeros of power series (control)", 0.0, single_root_control)


SUITES = {
    "verify-split": suite_split,
    "verify-cauchy": suite_cauchy,
    "verify-kernel": suite_kernel,
    "verify-zeros": suite_zeros,
}


def run_suites(cfg, series=None):
    """Run the suites selected by ``cfg.command`` and return the :class:`Report`."""
    report = Report(cfg.report_fields())
    rec = _Recorder(report)
    names = list(SUITES) if cfg.command == "verify-all" else [cfg.command]
    for name in names:
        rng = np.random.default_rng([cfg.seed, SUITE_IDS[name]])
        if name == "verify-cauchy":
            SUITES[name](cfg, rec, rng, series=series)
        else:
            SUITES[name](cfg, rec, rng)
    return report
