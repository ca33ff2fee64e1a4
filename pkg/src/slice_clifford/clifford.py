"""Dense arithmetic in the real Clifford algebra R_n.

Blades are indexed by bitmask: bit ``i`` set means generator ``e_{i+1}`` is
present, so mask ``0b101`` is ``e1 e3``. Generators square to -1.

A :class:`Multivector` may carry leading batch axes (coefficient array of shape
``(..., 2**n)``); every operation broadcasts over them. This is what lets a
contour quadrature evaluate a series at all nodes in one call.
"""

from __future__ import annotations

from functools import lru_cache
from numbers import Real

import numpy as np

from .errors import DivisionByZeroError, InvalidArgumentError, InvalidOperandsError

MAX_GENERATORS = 12


@lru_cache(maxsize=None)
def _popcount_table(n):
    masks = np.arange(1 << n)
    counts = np.zeros(1 << n, dtype=np.int64)
    for bit in range(n):
        counts += (masks >> bit) & 1
    return counts


@lru_cache(maxsize=None)
def blade_sign_table(n):
    """Sign of ``e_A e_B`` as an int8 matrix indexed ``[A, B]``.

    The product equals ``sign[A, B] * e_{A xor B}``. The sign counts the
    transpositions needed to sort the concatenated generator string plus one
    factor of -1 per shared generator.
    """
    size = 1 << n
    pop = _popcount_table(n)
    a = np.arange(size)[:, None]
    b = np.arange(size)[None, :]
    swaps = np.zeros((size, size), dtype=np.int64)
    for j in range(n):
        swaps += ((b >> j) & 1) * pop[a >> (j + 1)]
    swaps += pop[a & b]
    table = np.where(swaps % 2 == 0, 1, -1).astype(np.int8)
    table.setflags(write=False)
    return table


def grades(n):
    """Grade of every blade mask of R_n."""
    return _popcount_table(n)


def blade_name(mask):
    """``'e13'`` style name of a blade mask; ``''`` for the scalar blade."""
    if mask == 0:
        return ""
    idx = [str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1]
    if any(len(i) > 1 for i in idx):
        return "e" + ",".join(idx)
    return "e" + "".join(idx)


class Multivector:
    """Element (or array of elements) of R_n with dense blade coefficients.

    Instances are immutable; the coefficient array is flagged read-only.
    """

    __slots__ = ("n", "coeffs")
    __array_priority__ = 1000

    def __init__(self, n, coeffs):
        if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_GENERATORS:
            raise InvalidArgumentError(f"generator count must be in 1..{MAX_GENERATORS}, got {n!r}")
        arr = np.array(coeffs, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != 1 << n:
            raise InvalidArgumentError(f"expected trailing axis of length {1 << n}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidArgumentError("multivector coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n, shape=()):
        return cls(n, np.zeros(tuple(shape) + (1 << n,)))

    @classmethod
    def scalar(cls, n, value):
        value = np.asarray(value, dtype=float)
        out = np.zeros(value.shape + (1 << n,))
        out[..., 0] = value
        return cls(n, out)

    @classmethod
    def blade(cls, n, mask, value=1.0):
        if not 0 <= mask < 1 << n:
            raise InvalidArgumentError(f"blade mask {mask} out of range for n={n}")
        out = np.zeros(1 << n)
        out[mask] = value
        return cls(n, out)

    @classmethod
    def basis_vector(cls, n, i):
        """The generator ``e_i`` (1-based)."""
        if not 1 <= i <= n:
            raise InvalidArgumentError(f"generator index {i} out of range 1..{n}")
        return cls.blade(n, 1 << (i - 1))

    @classmethod
    def from_blades(cls, n, blades):
        """Build from a mapping ``{generator index tuple or mask: value}``."""
        out = np.zeros(1 << n)
        for key, value in blades.items():
            if isinstance(key, (int, np.integer)):
                mask = int(key)
            else:
                key = tuple(key)
                if any(b <= a for a, b in zip(key, key[1:])):
                    raise InvalidArgumentError(f"blade index tuple {key} must be strictly ascending")
                mask = 0
                for i in key:
                    if not 1 <= i <= n:
                        raise InvalidArgumentError(f"generator index {i} out of range 1..{n}")
                    mask |= 1 << (i - 1)
            out[mask] += value
        return cls(n, out)

    # -- array protocol -----------------------------------------------------

    @property
    def shape(self):
        """Batch shape (empty for a single element)."""
        return self.coeffs.shape[:-1]

    def __len__(self):
        if not self.shape:
            raise TypeError("single Multivector has no length")
        return self.shape[0]

    def __getitem__(self, item):
        if not self.shape:
            raise TypeError("single Multivector is not indexable; use .coeffs")
        if not isinstance(item, tuple):
            item = (item,)
        return Multivector(self.n, self.coeffs[item + (Ellipsis, slice(None))])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    # -- parts --------------------------------------------------------------

    @property
    def real(self):
        """Scalar part as a float (or array of floats)."""
        s = self.coeffs[..., 0]
        return float(s) if s.ndim == 0 else s.copy()

    @property
    def vector(self):
        """1-vector components ``(x_1, ..., x_n)``."""
        return self.coeffs[..., [1 << i for i in range(self.n)]].copy()

    def grade(self, k):
        return grade_project(self, k)

    def norm(self):
        """Euclidean norm of the coefficient vector (``|x|`` for paravectors)."""
        v = np.linalg.norm(self.coeffs, axis=-1)
        return float(v) if v.ndim == 0 else v

    def is_paravector(self, tol=1e-12):
        high = self.coeffs[..., grades(self.n) > 1]
        scale = np.maximum(1.0, np.linalg.norm(self.coeffs, axis=-1))
        return bool(np.all(np.linalg.norm(high, axis=-1) <= tol * scale))

    def allclose(self, other, atol=1e-12, rtol=0.0):
        other = _coerce(other, self.n)
        _check_same_n(self, other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=rtol))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Multivector(self.n, -self.coeffs)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return other
        _check_same_n(self, other)
        return Multivector(self.n, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return other
        _check_same_n(self, other)
        return Multivector(self.n, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (Real, np.ndarray)):
            return Multivector(self.n, self.coeffs * np.asarray(other, dtype=float)[..., None])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Real, np.ndarray)):
            return Multivector(self.n, np.asarray(other, dtype=float)[..., None] * self.coeffs)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Real, np.ndarray)):
            return Multivector(self.n, self.coeffs / np.asarray(other, dtype=float)[..., None])
        return NotImplemented

    def __repr__(self):
        if self.shape:
            return f"Multivector(n={self.n}, shape={self.shape})"
        return f"Multivector(n={self.n}, {format_multivector(self)})"


def format_multivector(x, precision=12):
    """Human readable ``1 + 2e1 - 0.5e13`` rendering of a single multivector."""
    terms = []
    for mask, c in enumerate(x.coeffs):
        if c == 0:
            continue
        mag = f"{abs(c):.{precision}g}"
        name = blade_name(mask)
        body = name if (name and mag == "1") else mag + name
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _coerce(value, n):
    if isinstance(value, Multivector):
        return value
    if isinstance(value, Real):
        return Multivector.scalar(n, float(value))
    return NotImplemented


def _check_same_n(a, b):
    if a.n != b.n:
        raise InvalidOperandsError(f"dimension mismatch: R_{a.n} vs R_{b.n}")


def geometric_product(a, b):
    """Clifford product ``a b`` (broadcast over batch axes)."""
    _check_same_n(a, b)
    return Multivector(a.n, _gp(a.coeffs, b.coeffs, a.n))


def _gp(x, y, n):
    table = blade_sign_table(n)
    idx = np.arange(1 << n)
    out = np.zeros(np.broadcast_shapes(x.shape, y.shape))
    for a in range(1 << n):
        xa = x[..., a]
        if not np.any(xa):
            continue
        out[..., a ^ idx] += (table[a] * xa[..., None]) * y
    return out


def grade_project(a, k):
    """Keep only the blades of grade ``k``."""
    if not 0 <= k <= a.n:
        raise InvalidArgumentError(f"grade {k} out of range 0..{a.n}")
    return Multivector(a.n, np.where(grades(a.n) == k, a.coeffs, 0.0))


def inner_wedge(a, b, tol=1e-12):
    """Split the product of two 1-vectors into ``(<a, b>, a ^ b)``.

    The scalar part is ``(ab + ba) / 2`` (so ``<e1, e1> = -1``) and the wedge
    is the bivector ``(ab - ba) / 2``.
    """
    _check_same_n(a, b)
    for v in (a, b):
        off = v.coeffs[..., grades(v.n) != 1]
        if np.any(np.abs(off) > tol * max(1.0, float(np.max(np.abs(v.coeffs))))):
            raise InvalidArgumentError("inner_wedge expects pure 1-vectors")
    ab = geometric_product(a, b)
    ba = geometric_product(b, a)
    sym = (ab + ba) / 2.0
    return sym.real, (ab - ba) / 2.0


def paravector(x0, vec):
    """Build ``x0 + sum_i vec[i] e_{i+1}``; ``n`` is ``len(vec)`` (trailing axis)."""
    vec = np.asarray(vec, dtype=float)
    n = vec.shape[-1]
    x0 = np.asarray(x0, dtype=float)
    shape = np.broadcast_shapes(x0.shape, vec.shape[:-1])
    out = np.zeros(shape + (1 << n,))
    out[..., 0] = x0
    for i in range(n):
        out[..., 1 << i] = vec[..., i]
    return Multivector(n, out)


def _require_paravector(x, what):
    if not x.is_paravector(tol=1e-12):
        raise InvalidArgumentError(f"{what} expects a paravector (grades 0 and 1 only)")


def conjugate(x):
    """Clifford conjugation; on paravectors ``x0 + x`` maps to ``x0 - x``.

    Blades of grade ``k`` pick up the sign ``(-1)**k * (-1)**(k(k-1)/2)``.
    """
    g = grades(x.n)
    sign = np.where(((g * (g + 1)) // 2) % 2 == 0, 1.0, -1.0)
    return Multivector(x.n, x.coeffs * sign)


def paravector_inverse(x):
    """``x^{-1} = conj(x) / |x|^2`` for a nonzero paravector."""
    _require_paravector(x, "paravector_inverse")
    norm2 = np.sum(x.coeffs**2, axis=-1)
    if np.any(norm2 == 0.0):
        raise DivisionByZeroError("inverse of the zero paravector")
    return Multivector(x.n, conjugate(x).coeffs / norm2[..., None])


def paravector_power(x, m):
    """``x**m`` by repeated left-to-right products; negative ``m`` uses the inverse."""
    m = int(m)
    _require_paravector(x, "paravector_power")
    if m == 0:
        return Multivector.scalar(x.n, np.ones(x.shape))
    base = x if m > 0 else paravector_inverse(x)
    out = base
    for _ in range(abs(m) - 1):
        out = geometric_product(out, base)
    return out
