from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projconst import (
    DegenerateFunctionalError,
    DiagonalIsometry,
    DomainError,
    ExtendedVector,
    HyperplaneFunctional,
    clip_to_ball,
    conjugate_functional,
    conjugate_vector,
    normalize,
    operator_norm,
    pairing,
    sign_normalize,
)

F = Fraction


class TestNormalize:
    def test_pure_scaling_atomic(self):
        f = normalize([2, 2, 2], 0, True)
        assert f.h == (F(1, 3),) * 3
        assert f.gamma == 0 and f.singular_attains

    def test_pure_singular(self):
        f = normalize([], 5, False)
        assert f.gamma == 1 and f.singular_attains is False

    def test_mixed(self):
        f = normalize([1, 1], 2, False)
        assert f.h == (F(1, 4), F(1, 4)) and f.gamma == F(1, 2)

    def test_float_input(self):
        f = normalize([2.0, 2.0], 4.0, False)
        assert f.h == (0.25, 0.25) and f.gamma == 0.5

    def test_degenerate(self):
        with pytest.raises(DegenerateFunctionalError, match="degenerate functional"):
            normalize([0, 0], 0)

    def test_negative_gamma(self):
        with pytest.raises(DomainError):
            normalize([1], -1)

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=8), st.integers(0, 50))
    def test_fixed_point_exact(self, h, gamma):
        if not any(h) and gamma == 0:
            return
        f = normalize(h, gamma, False)
        assert f.norm == 1
        assert normalize(f.h, f.gamma, False) == f

    @given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=8),
           st.floats(0, 10, allow_nan=False))
    def test_float_normalization_and_near_idempotence(self, h, gamma):
        if sum(abs(x) for x in h) + gamma < 1e-6:
            return
        f = normalize(h, gamma)
        assert f.is_normalized
        g = normalize(f.h, f.gamma)
        assert all(abs(a - b) <= 1e-15 for a, b in zip(f.h, g.h))


def test_gamma_zero_forces_attains_flag():
    assert HyperplaneFunctional((0.5, 0.5), 0, False).singular_attains is True


def test_vector_invariants():
    with pytest.raises(DomainError):
        ExtendedVector((), 0.5, 1.0)
    with pytest.raises(DomainError):
        ExtendedVector((), -1.0, 0.0)
    y = ExtendedVector((2, -3), 1, 1)
    assert y.sup_norm == 3


def test_feasibility_against_non_attaining_part():
    f = HyperplaneFunctional((), 1.0, False)
    assert not ExtendedVector((), 1.0, 1.0).feasible_for(f)
    assert ExtendedVector((), 1.5, 1.0).feasible_for(f)
    assert ExtendedVector((), 1.0, 1.0).feasible_for(HyperplaneFunctional((), 1.0, True))


class TestSignNormalize:
    def test_real(self):
        f, T = sign_normalize(HyperplaneFunctional((F(-1, 3), F(1, 3), F(-1, 3))))
        assert f.h == (F(1, 3),) * 3
        assert T.signs == (-1, 1, -1)

    def test_already_nonnegative(self):
        f0 = HyperplaneFunctional((0.25, 0.25), 0.5, False)
        f, T = sign_normalize(f0)
        assert f == f0 and T.signs == (1, 1)

    def test_complex(self):
        h = (0.5j, 0.5)
        f, T = sign_normalize(HyperplaneFunctional(h))
        assert f.h == (0.5, 0.5)
        assert T.signs == (-1j, 1)
        # derived: a_i h_i = |h_i| coordinatewise
        assert [a * x for a, x in zip(T.signs, h)] == [0.5, 0.5]

    def test_zero_coefficient_gets_sign_one(self):
        _, T = sign_normalize(HyperplaneFunctional((0.0, -1.0)))
        assert T.signs == (1, -1)

    def test_isometry_must_be_unimodular(self):
        with pytest.raises(DomainError):
            DiagonalIsometry((2.0,))


class TestConjugateVector:
    def test_componentwise(self):
        z = conjugate_vector(DiagonalIsometry((-1, 1)), ExtendedVector((2, 3), 0, 0))
        assert z.y == (-2, 3) and z.t == 0

    def test_identity(self):
        y = ExtendedVector((0.3, -0.7), 0.2, 0.1)
        assert conjugate_vector(DiagonalIsometry((1, 1)), y) == y

    def test_pairing_preserved(self):
        f = HyperplaneFunctional((-0.5, -0.5))
        y = ExtendedVector((-1, -1))
        g, T = sign_normalize(f)
        z = conjugate_vector(T, y)
        assert g.h == (0.5, 0.5) and z.y == (1, 1)
        assert pairing(f, y) == pairing(g, z) == 1

    def test_complex_pairing_preserved(self):
        f = HyperplaneFunctional((0.5j, 0.5))
        y = ExtendedVector((-1j, 1.0))
        g, T = sign_normalize(f)
        assert pairing(f, y) == 1
        assert pairing(g, conjugate_vector(T, y)) == 1

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            conjugate_vector(DiagonalIsometry((1,)), ExtendedVector((1, 2)))


class TestClip:
    def test_clip(self):
        y = clip_to_ball(ExtendedVector((2, -3), 1, 1))
        assert y == ExtendedVector((1, -1), 1, 1)

    def test_in_ball_unchanged(self):
        y = ExtendedVector((0.5, -0.5), 0.3, 0)
        assert clip_to_ball(y) == y

    def test_boundary(self):
        assert clip_to_ball(ExtendedVector((1, 1, 1.0001), 1, 0)).y == (1, 1, 1)

    def test_tail_too_large(self):
        with pytest.raises(DomainError):
            clip_to_ball(ExtendedVector((0.0,), 1.5, 1.0))

    @given(st.lists(st.floats(-5, 5, allow_nan=False), max_size=8),
           st.floats(0, 1), st.floats(-1, 1))
    def test_idempotent_and_shrinking(self, prefix, t, s_frac):
        y = ExtendedVector(prefix, t, s_frac * t)
        z = clip_to_ball(y)
        assert clip_to_ball(z) == z
        assert all(abs(b) <= abs(a) for a, b in zip(y.y, z.y))
        assert z.sup_norm <= 1
        assert (z.t, z.s) == (y.t, y.s)


@settings(max_examples=200)
@given(st.data())
def test_isometry_invariance_of_norm(data):
    m = data.draw(st.integers(0, 6))
    weights = data.draw(st.lists(st.integers(0, 20), min_size=m, max_size=m))
    signs = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=m, max_size=m))
    gamma = data.draw(st.integers(0 if any(weights) else 1, 20))
    f = normalize([s * w for s, w in zip(signs, weights)], gamma, True)
    # y pairing to 1: pick free entries, fix the pairing with the tail or an active coordinate
    prefix = [F(data.draw(st.integers(-30, 30)), 10) for _ in range(m)]
    partial = sum(h * v for h, v in zip(f.h, prefix))
    if f.gamma > 0:
        s = (1 - partial) / f.gamma
        y = ExtendedVector(prefix, abs(s) + F(data.draw(st.integers(0, 5)), 10), s)
    else:
        k = max(range(m), key=lambda j: abs(f.h[j]))
        prefix[k] += (1 - partial) / f.h[k]
        y = ExtendedVector(prefix, F(data.draw(st.integers(0, 5)), 10), 0)
    g, T = sign_normalize(f)
    z = conjugate_vector(T, y)
    assert operator_norm(g, z).norm == operator_norm(f, y).norm
    assert conjugate_functional(T, f) == g
