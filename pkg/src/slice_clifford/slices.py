"""Unit 1-vectors, slice planes L_I, frame completion and the splitting map."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .clifford import Multivector, geometric_product, grades, paravector
from .errors import InvalidArgumentError, InvalidOperandsError

REAL_AXIS_RTOL = 1e-13
PIVOT_TOL = 1e-8


def unit_vector(comps):
    """Normalise ``comps`` and return the unit 1-vector ``sum comps_i e_i``."""
    comps = np.asarray(comps, dtype=float)
    length = np.linalg.norm(comps)
    if comps.ndim != 1 or length == 0.0:
        raise InvalidArgumentError("unit_vector needs a nonzero component vector")
    return paravector(0.0, comps / length)


def as_unit(I, tol=1e-10):
    """Validate that ``I`` is a unit 1-vector; return it unchanged."""
    if I.shape:
        raise InvalidArgumentError("expected a single unit 1-vector")
    off = I.coeffs[grades(I.n) != 1]
    if np.any(np.abs(off) > tol) or abs(np.linalg.norm(I.vector) - 1.0) > tol:
        raise InvalidArgumentError("expected a unit 1-vector (element of the sphere S)")
    return I


def slice_unit(x, default=None):
    """The imaginary unit ``I_x`` of a paravector.

    ``x_vec / |x_vec|`` off the real axis; on it, ``default`` (``e1`` unless
    given), since any unit works there.
    """
    vec = x.vector
    length = np.linalg.norm(vec)
    if length <= REAL_AXIS_RTOL * max(1.0, abs(x.real)):
        return Multivector.basis_vector(x.n, 1) if default is None else as_unit(default)
    return paravector(0.0, vec / length)


@dataclass(frozen=True)
class SlicePoint:
    """The point ``x + I y`` of the plane L_I, stored with ``y >= 0``."""

    I: Multivector
    x: float
    y: float

    def __post_init__(self):
        if self.y < 0:
            object.__setattr__(self, "I", -self.I)
            object.__setattr__(self, "y", -self.y)
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    @classmethod
    def from_paravector(cls, p, default=None):
        I = slice_unit(p, default)
        return cls(I, p.real, float(np.linalg.norm(p.vector)))

    def embed(self):
        return self.x + self.y * self.I


@dataclass(frozen=True)
class SliceFrame:
    """Orthonormal 1-vectors ``I_1..I_n`` with their blades ``I_A``.

    ``blades[A]`` is ``I_A`` for the frame bitmask ``A`` (bit ``r`` means
    ``I_{r+1}``). ``change_of_basis`` maps standard blade coordinates to
    ``I_A`` coordinates; it is orthogonal.
    """

    basis: tuple
    blades: Multivector
    change_of_basis: np.ndarray

    @property
    def n(self):
        return self.blades.n

    def subsets(self):
        """Keys of :func:`split`: subsets of ``{2..n}`` as ascending tuples."""
        rest = range(2, self.n + 1)
        return [c for k in range(self.n) for c in combinations(rest, k)]


def _gram_schmidt(first, n, rng):
    frame = [first / np.linalg.norm(first)]
    candidates = list(np.eye(n))
    while len(frame) < n:
        if candidates:
            v = candidates.pop(0)
        else:
            v = rng.standard_normal(n)
        w = v.copy()
        for _ in range(2):
            for q in frame:
                w -= np.dot(w, q) * q
        length = np.linalg.norm(w)
        if length > PIVOT_TOL:
            frame.append(w / length)
    return frame


def frame_from_vectors(vectors):
    """Assemble a :class:`SliceFrame` from orthonormal component vectors."""
    n = len(vectors)
    basis = tuple(paravector(0.0, v) for v in vectors)
    size = 1 << n
    cols = np.zeros((size, size))
    for mask in range(size):
        blade = Multivector.scalar(n, 1.0)
        for r in range(n):
            if mask >> r & 1:
                blade = geometric_product(blade, basis[r])
        cols[mask] = blade.coeffs
    # row A is I_A in standard coordinates; orthonormal rows make this the coordinate map
    return SliceFrame(basis, Multivector(n, cols), cols.copy())


def complete_frame(I1, seed=None):
    """Complete the unit 1-vector ``I1`` to an orthonormal frame by Gram-Schmidt.

    The seed vectors are ``e_1..e_n`` in order, skipping those nearly dependent
    on what is already in the frame; random vectors from ``seed`` are a
    fallback that standard seeds never actually need.
    """
    as_unit(I1)
    rng = np.random.default_rng(seed)
    return frame_from_vectors(_gram_schmidt(np.asarray(I1.vector), I1.n, rng))


def split(value, frame):
    """Splitting-lemma components of ``value`` w.r.t. ``frame``.

    Returns ``{A: F_A}`` with ``value = sum_A (Re F_A + Im F_A I_1) I_A`` and
    ``A`` ranging over subsets of ``{2..n}``. ``F_A`` is a complex number, or a
    complex array for batched input.
    """
    if value.n != frame.n:
        raise InvalidOperandsError(f"dimension mismatch: R_{value.n} vs frame of R_{frame.n}")
    g = value.coeffs @ frame.change_of_basis.T
    out = {}
    for key in frame.subsets():
        mask = sum(1 << (i - 1) for i in key)
        comp = g[..., mask] + 1j * g[..., mask | 1]
        out[key] = complex(comp) if np.ndim(comp) == 0 else comp
    return out


def unsplit(components, frame):
    """Inverse of :func:`split`."""
    keys = frame.subsets()
    missing = [k for k in keys if k not in components]
    if missing:
        raise InvalidArgumentError(f"missing split component(s) {missing}")
    shape = np.shape(components[()])
    g = np.zeros(shape + (1 << frame.n,))
    for key in keys:
        mask = sum(1 << (i - 1) for i in key)
        comp = np.asarray(components[key], dtype=complex)
        g[..., mask] = comp.real
        g[..., mask | 1] = comp.imag
    return Multivector(frame.n, g @ frame.change_of_basis)


@dataclass(frozen=True)
class SphereClass:
    """The class ``[s] = {x : x0 = s0, |x| = |s|}``: an (n-1)-sphere of radius ``|s_vec|``."""

    center: float
    radius: float
    n: int

    def point(self, I):
        return self.center + self.radius * I


def equivalence_class(s):
    return SphereClass(float(s.real), float(np.linalg.norm(s.vector)), s.n)


def sphere_sample(c, count, seed=None):
    """``count`` points of the class, uniform on the sphere, as a batched Multivector."""
    if count < 1:
        raise InvalidArgumentError("count must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, c.n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return paravector(np.full(count, c.center), c.radius * g)


def random_unit(n, rng):
    """Uniform sample of the unit sphere S of 1-vectors."""
    g = rng.standard_normal(n)
    return paravector(0.0, g / np.linalg.norm(g))
