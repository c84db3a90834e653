import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from noisy_grover.linalg import (
    dagger,
    hermitian_min_eigenvalue,
    kron,
    partial_trace,
    trace,
)

from .conftest import random_density

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]])
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1, -1])


def test_kron_examples():
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(kron(SX, SX), np.fliplr(np.eye(4)))
    np.testing.assert_array_equal(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))


def test_kron_shape_and_blocks(rng):
    a = rng.normal(size=(2, 3))
    b = rng.normal(size=(4, 5))
    k = kron(a, b)
    assert k.shape == (8, 15)
    for i in range(2):
        for j in range(3):
            np.testing.assert_array_equal(k[4 * i:4 * i + 4, 5 * j:5 * j + 5], a[i, j] * b)


def test_dagger_examples():
    np.testing.assert_array_equal(dagger(I2), I2)
    np.testing.assert_array_equal(dagger(SY), SY)
    np.testing.assert_array_equal(dagger([[0, 1], [0, 0]]), [[0, 0], [1, 0]])


def test_trace_examples(rng):
    assert trace(np.eye(4)) == 4
    assert trace(SZ) == 0
    psi = rng.normal(size=5) + 1j * rng.normal(size=5)
    psi /= np.linalg.norm(psi)
    assert abs(trace(np.outer(psi, psi.conj())) - 1) < 1e-12


def test_trace_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        trace(np.ones((2, 3)))


def test_non_finite_rejected():
    with pytest.raises(ValueError, match="non-finite"):
        dagger([[np.nan, 0], [0, 1]])


def test_partial_trace_product_state(rng):
    ra = random_density(2, rng)
    rb = random_density(4, rng)
    np.testing.assert_allclose(partial_trace(np.kron(ra, rb), 2, 4, keep="A"), ra, atol=1e-14)
    np.testing.assert_allclose(partial_trace(np.kron(ra, rb), 2, 4, keep="B"), rb, atol=1e-14)


def test_partial_trace_bell_state_locks_index_convention():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(phi, phi)
    np.testing.assert_allclose(partial_trace(rho, 2, 2, keep="A"), np.eye(2) / 2)
    np.testing.assert_allclose(partial_trace(rho, 2, 2, keep="B"), np.eye(2) / 2)


def test_partial_trace_hand_summation():
    np.testing.assert_allclose(
        partial_trace(np.diag([0.5, 0, 0, 0.5]), 2, 2, keep="B"), np.diag([0.5, 0.5])
    )


def test_partial_trace_asymmetric_convention():
    # |0><0| on A (dim 2) tensored with |2><2| on B (dim 3): composite index 0*3 + 2 = 2.
    rho = np.zeros((6, 6))
    rho[2, 2] = 1
    np.testing.assert_array_equal(partial_trace(rho, 2, 3, keep="A"), np.diag([1, 0]))
    np.testing.assert_array_equal(partial_trace(rho, 2, 3, keep="B"), np.diag([0, 0, 1]))


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError, match="does not split"):
        partial_trace(np.eye(4), 2, 3)
    with pytest.raises(ValueError, match="keep"):
        partial_trace(np.eye(4), 2, 2, keep="C")


def test_min_eigenvalue_examples():
    assert hermitian_min_eigenvalue(np.eye(3)) == pytest.approx(1, abs=1e-12)
    assert hermitian_min_eigenvalue(SZ) == pytest.approx(-1, abs=1e-12)
    assert hermitian_min_eigenvalue(np.diag([0.25, 0.75])) == pytest.approx(0.25, abs=1e-12)


def test_min_eigenvalue_rejects_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        hermitian_min_eigenvalue([[0, 1], [0, 0]])


def _charpoly(a):
    """Faddeev-LeVerrier: coefficients of det(x I - a), highest degree first."""
    d = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    for k in range(1, d + 1):
        m = a @ m + coeffs[-1] * np.eye(d)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


@pytest.mark.parametrize("d", [2, 4])
def test_min_eigenvalue_matches_characteristic_polynomial(d, rng):
    for _ in range(25):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        h = (g + g.conj().T) / 2
        if d == 2:
            tr, det = np.trace(h).real, np.linalg.det(h).real
            expected = tr / 2 - np.sqrt(tr**2 / 4 - det)
        else:
            expected = np.min(np.roots(_charpoly(h)).real)
        assert abs(hermitian_min_eigenvalue(h) - expected) < 1e-8


small_ints = arrays(np.int64, st.tuples(st.integers(1, 3), st.integers(1, 3)),
                    elements=st.integers(-5, 5))


@given(small_ints, small_ints, small_ints)
def test_kron_associative(a, b, c):
    np.testing.assert_array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


square = st.integers(1, 4).flatmap(
    lambda n: arrays(np.complex128, (n, n),
                     elements=st.complex_numbers(max_magnitude=10, allow_nan=False,
                                                 allow_infinity=False))
)


@given(square, square)
def test_trace_multiplicative_under_kron(a, b):
    assert abs(trace(kron(a, b)) - trace(a) * trace(b)) <= 1e-12 * max(1.0, np.abs(a).sum() * np.abs(b).sum())


@given(square)
def test_dagger_involution(a):
    np.testing.assert_array_equal(dagger(dagger(a)), a)


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_partial_trace_preserves_trace(da, db, seed):
    rho = random_density(da * db, np.random.default_rng(seed))
    for keep in ("A", "B"):
        assert abs(trace(partial_trace(rho, da, db, keep=keep)) - trace(rho)) < 1e-12
