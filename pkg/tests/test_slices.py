import itertools

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from slice_clifford import (
    InvalidArgumentError,
    InvalidOperandsError,
    Multivector,
    SlicePoint,
    complete_frame,
    equivalence_class,
    paravector,
    slice_unit,
    sphere_sample,
    split,
    unit_vector,
    unsplit,
)
from slice_clifford.slices import as_unit, random_unit
from slice_clifford.zeros import quadratic_residual

E = Multivector.basis_vector


def test_unit_vector_and_validation():
    I = unit_vector([3.0, 0.0, 4.0])
    np.testing.assert_allclose(I.vector, [0.6, 0.0, 0.8])
    assert (I * I).allclose(-1.0)
    with pytest.raises(InvalidArgumentError):
        unit_vector([0.0, 0.0])
    with pytest.raises(InvalidArgumentError):
        as_unit(1 + E(3, 1))
    with pytest.raises(InvalidArgumentError):
        as_unit(2 * E(3, 1))


def test_slice_unit():
    assert slice_unit(2 + 3 * E(3, 2)).allclose(E(3, 2))
    assert slice_unit(Multivector.scalar(3, 5.0)).allclose(E(3, 1))
    assert slice_unit(Multivector.scalar(3, 5.0), default=E(3, 3)).allclose(E(3, 3))
    I = slice_unit(E(3, 1) + E(3, 2))
    np.testing.assert_allclose(I.vector, [2**-0.5, 2**-0.5, 0.0])
    assert (I * I).allclose(-1.0)


def test_slice_point_roundtrip():
    rng = np.random.default_rng(0)
    for _ in range(20):
        I = random_unit(4, rng)
        p = SlicePoint(I, rng.normal(), abs(rng.normal()) + 0.1)
        assert slice_unit(p.embed()).allclose(I, atol=1e-14)
        q = SlicePoint.from_paravector(p.embed())
        assert q.x == pytest.approx(p.x) and q.y == pytest.approx(p.y)
    flipped = SlicePoint(E(3, 1), 1.0, -2.0)
    assert flipped.y == 2.0 and flipped.I.allclose(-E(3, 1))
    assert flipped.embed().allclose(1 - 2 * E(3, 1))


def test_complete_frame_standard():
    frame = complete_frame(E(4, 1))
    for r, I in enumerate(frame.basis, start=1):
        assert I.allclose(E(4, r))
    np.testing.assert_allclose(frame.change_of_basis, np.eye(16), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_frame_relations(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        frame = complete_frame(random_unit(n, rng))
        for (r, a), (s, b) in itertools.product(enumerate(frame.basis), repeat=2):
            anti = a * b + b * a
            assert anti.allclose(-2.0 if r == s else 0.0, atol=1e-10)
        B = frame.change_of_basis
        np.testing.assert_allclose(B.T @ B, np.eye(1 << n), atol=1e-10)


def test_frame_diagonal_start_gram():
    I1 = unit_vector([1.0, 1.0, 0.0])
    frame = complete_frame(I1)
    assert frame.basis[0].allclose(I1)
    gram = np.array([[(a * b).real for b in frame.basis] for a in frame.basis])
    np.testing.assert_allclose(gram, -np.eye(3), atol=1e-12)


def test_change_of_basis_columns():
    rng = np.random.default_rng(1)
    frame = complete_frame(random_unit(3, rng))
    for A in range(8):
        coords = frame.blades[A].coeffs @ frame.change_of_basis.T
        np.testing.assert_allclose(coords, np.eye(8)[A], atol=1e-12)


def test_split_r4_grouping():
    frame = complete_frame(E(4, 1))
    rng = np.random.default_rng(2)
    v = Multivector(4, rng.normal(size=16))
    comps = split(v, frame)
    assert len(comps) == 8
    for key, F in comps.items():
        mask = sum(1 << (i - 1) for i in key)
        assert F == complex(v.coeffs[mask], v.coeffs[mask | 1])
    # (f_2 + f_12 I_1) I_2 term, rebuilt from products
    term = (comps[(2,)].real + comps[(2,)].imag * E(4, 1)) * E(4, 2)
    assert term.allclose(v.coeffs[0b10] * E(4, 2) + v.coeffs[0b11] * Multivector.blade(4, 0b11))


def test_split_on_slice_plane():
    rng = np.random.default_rng(3)
    I = random_unit(3, rng)
    frame = complete_frame(I)
    comps = split(0.7 - 1.2 * I, frame)
    assert comps[()] == pytest.approx(0.7 - 1.2j)
    for key, F in comps.items():
        if key:
            assert abs(F) < 1e-14


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 4]))
def test_split_roundtrip_property(seed, n):
    rng = np.random.default_rng(seed)
    frame = complete_frame(random_unit(n, rng))
    v = Multivector(n, rng.normal(size=1 << n))
    back = unsplit(split(v, frame), frame)
    assert np.max(np.abs(back.coeffs - v.coeffs)) <= 1e-12
    comps = {k: complex(*rng.normal(size=2)) for k in frame.subsets()}
    again = split(unsplit(comps, frame), frame)
    for k in comps:
        assert abs(again[k] - comps[k]) <= 1e-12


def test_split_batched_and_unsplit_errors():
    rng = np.random.default_rng(4)
    frame = complete_frame(random_unit(3, rng))
    v = Multivector(3, rng.normal(size=(5, 8)))
    comps = split(v, frame)
    assert comps[()].shape == (5,)
    assert unsplit(comps, frame).allclose(v, atol=1e-12)
    assert unsplit({k: 0j for k in frame.subsets()}, frame).allclose(0.0)
    assert unsplit({k: (2 + 3j if k == () else 0j) for k in frame.subsets()}, frame).allclose(2 + 3 * frame.basis[0])
    with pytest.raises(InvalidArgumentError):
        unsplit({(): 1j}, frame)
    with pytest.raises(InvalidOperandsError):
        split(E(4, 1), frame)


def test_equivalence_class_and_samples():
    c = equivalence_class(Multivector.scalar(3, 3.0))
    assert (c.center, c.radius) == (3.0, 0.0)
    pts = sphere_sample(c, 4, seed=0)
    assert pts.allclose(Multivector.scalar(3, np.full(4, 3.0)))
    s = 2 + 3 * E(3, 1)
    c = equivalence_class(s)
    assert (c.center, c.radius) == (2.0, 3.0)
    assert c.point(E(3, 2)).allclose(2 + 3 * E(3, 2))
    pts = sphere_sample(c, 50, seed=1)
    np.testing.assert_allclose(pts.real, 2.0)
    np.testing.assert_allclose(np.linalg.norm(pts.vector, axis=1), 3.0, atol=1e-14)
    for p in pts:
        assert quadratic_residual(p, s) < 1e-12
    with pytest.raises(InvalidArgumentError):
        sphere_sample(c, 0)


def test_frame_is_deterministic():
    I = unit_vector([0.2, -0.5, 0.1, 0.9])
    a = complete_frame(I, seed=3)
    b = complete_frame(I, seed=3)
    np.testing.assert_array_equal(a.change_of_basis, b.change_of_basis)
    assert paravector(0.0, a.basis[0].vector).allclose(I)
