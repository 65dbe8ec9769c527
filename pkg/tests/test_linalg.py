import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trisep.errors import BadDimension, NotHermitian
from trisep.faces import rho_p
from trisep.linalg import (
    PARTIES,
    Tolerances,
    basis_ket,
    eigen_rank,
    hermitian_eigh,
    hermitian_eigenvalues,
    hs_vectorize,
    is_hermitian,
    is_psd,
    kron,
    partial_transpose,
    projector,
    rank,
    sigma_on,
)
from trisep.products import eta_family
from trisep.witness import make_witness
from trisep.xstate import XState, to_dense

from conftest import random_density, random_hermitian

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def complex_arrays(shape):
    return st.tuples(arrays(float, shape, elements=finite), arrays(float, shape, elements=finite)).map(
        lambda t: t[0] + 1j * t[1]
    )


def test_kron_trivial():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))


@settings(max_examples=50, deadline=None)
@given(complex_arrays((2, 2)), complex_arrays((2, 2)), complex_arrays((2, 2)))
def test_kron_associative(a, b, c):
    left = kron(kron(a, b), c)
    right = kron(a, kron(b, c))
    assert np.allclose(left, right, rtol=0, atol=1e-9)
    assert np.allclose(kron(a, b, c), left, rtol=0, atol=1e-9)


@pytest.mark.parametrize(
    "h, expected",
    [
        (np.diag([3.0, 1.0]), [1.0, 3.0]),
        ([[0, 1], [1, 0]], [-1.0, 1.0]),
    ],
)
def test_eigenvalues_small(h, expected):
    assert np.allclose(hermitian_eigenvalues(h), expected, atol=1e-14)


def test_eigenvalues_rho_p_unit_point():
    w = hermitian_eigenvalues(to_dense(rho_p((1, 1, 1), 1.0)))
    s = 1 / math.sqrt(2)
    assert np.allclose(w, [1 - s] * 4 + [1 + s] * 4, atol=1e-13)


def test_eigh_reconstructs(rng):
    for _ in range(20):
        h = random_hermitian(rng)
        w, v = hermitian_eigh(h)
        assert np.all(np.diff(w) >= 0)
        assert np.allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-12)
        assert np.allclose(v.conj().T @ v, np.eye(8), atol=1e-12)
        assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues([[0, 1], [0, 0]])


def test_eigenvalues_reject_non_square():
    with pytest.raises(BadDimension):
        hermitian_eigenvalues(np.zeros((2, 3)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(PARTIES))
def test_spectrum_invariant_under_bit_flip(seed, party):
    h = random_hermitian(np.random.default_rng(seed))
    s = sigma_on(party)
    assert np.allclose(hermitian_eigenvalues(s @ h @ s), hermitian_eigenvalues(h), atol=1e-10)


def test_rank_examples():
    assert rank(np.eye(8)) == 8
    assert rank(make_witness("W", 1.0).dense()) == 8
    cols = np.array([e.tensor() for e in eta_family((1, 1, 1))]).T
    assert rank(cols) == 8


def test_rank_rectangular_and_empty():
    m = np.array([[1, 2, 3], [2, 4, 6]], dtype=float)
    assert rank(m) == 1
    assert rank(np.zeros((0, 3))) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6), st.integers(0, 6))
def test_rank_of_adjoint_and_transpose(seed, n, m, k):
    rng = np.random.default_rng(seed)
    k = min(k, n, m)
    a = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    b = rng.normal(size=(k, m)) + 1j * rng.normal(size=(k, m))
    mat = a @ b
    r = rank(mat)
    assert r == k
    assert rank(mat.conj().T) == r
    assert rank(mat.T) == r


def test_eigen_rank_projector():
    assert eigen_rank(projector(basis_ket("010"))) == 1


@pytest.mark.parametrize(
    "h, expected",
    [
        (np.diag([1.0, 0.0]), True),
        ([[0, 1], [1, 0]], False),
    ],
)
def test_is_psd_examples(h, expected):
    assert is_psd(h) is expected


def test_rho_p_is_psd(rng):
    for q, r in rng.uniform(0.3, 3.0, size=(10, 2)):
        assert is_psd(to_dense(rho_p((q * r, q, r), 1.0)))


def test_is_psd_tolerance_is_relative():
    h = np.diag([-5e-7, 1000.0])
    assert is_psd(h)
    assert not is_psd(h, Tolerances(tol_psd=1e-12))


def test_partial_transpose_examples():
    assert np.array_equal(partial_transpose(np.eye(8), "A"), np.eye(8))
    k = projector(basis_ket("010"))
    assert np.array_equal(partial_transpose(k, "C"), k)
    x = XState(np.arange(4.0), np.arange(4.0, 8.0), [1, 2j, 3, 4 - 1j])
    expected = XState(x.a, x.b, x.c[[2, 3, 0, 1]])
    assert np.array_equal(partial_transpose(to_dense(x), "B"), to_dense(expected))


@pytest.mark.parametrize("party", PARTIES)
def test_partial_transpose_involution_and_trace(rng, party):
    rho = random_density(rng)
    pt = partial_transpose(rho, party)
    assert np.array_equal(partial_transpose(pt, party), rho)
    assert math.isclose(np.trace(pt).real, 1.0, abs_tol=1e-14)
    assert is_hermitian(pt)


def test_partial_transpose_all_parties_is_full_transpose(rng):
    rho = random_density(rng)
    pt = rho
    for p in PARTIES:
        pt = partial_transpose(pt, p)
    assert np.array_equal(pt, rho.T)


def test_partial_transpose_rejects_wrong_shape():
    with pytest.raises(BadDimension):
        partial_transpose(np.eye(4), "A")
    with pytest.raises(ValueError):
        partial_transpose(np.eye(8), "D")


def test_hs_vectorize_is_isometric_up_to_weights(rng):
    a, b = random_hermitian(rng), random_hermitian(rng)
    va, vb = hs_vectorize(a), hs_vectorize(b)
    assert va.shape == (64,)
    # off-diagonal coordinates count twice in the trace inner product
    w = np.concatenate([np.ones(8), 2 * np.ones(56)])
    assert math.isclose(np.sum(w * va * vb), np.trace(a @ b).real, rel_tol=1e-12)


def test_tolerances_validated():
    with pytest.raises(ValueError):
        Tolerances(tol_rank=-1.0)
