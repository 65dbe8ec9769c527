import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisep.errors import NotHermitian, NotXShaped
from trisep.faces import RHO_P_ANTI, average_of, rho_p
from trisep.linalg import PARTIES, is_psd, kron, partial_transpose, sigma_on
from trisep.products import eta_family
from trisep.witness import SQRT8, make_witness
from trisep.xstate import (
    XState,
    bitflip_conjugate_x,
    from_dense,
    partial_transpose_x,
    to_dense,
    x_psd_check,
    x_rank,
)

real = st.floats(-5, 5, allow_nan=False)
vec4 = st.lists(real, min_size=4, max_size=4)
xstates = st.builds(
    lambda a, b, cr, ci: XState(a, b, np.array(cr) + 1j * np.array(ci)), vec4, vec4, vec4, vec4
)


def test_identity():
    assert np.array_equal(to_dense(XState(np.ones(4), np.ones(4), np.zeros(4))), np.eye(8))


def test_witness_matrix_at_unit_u():
    d = make_witness("W", 1.0).dense()
    assert d[3, 3] == SQRT8 and d[4, 4] == SQRT8
    assert np.count_nonzero(d.diagonal()) == 2
    assert list(d[np.arange(8), 7 - np.arange(8)].real) == [1, 1, -1, 1, 1, -1, 1, 1]


def test_trace_and_arithmetic():
    x = XState([1, 2, 3, 4], [5, 6, 7, 8], [1j, 0, 0, 0])
    assert x.trace == 36.0
    assert math.isclose(np.trace(to_dense(x)).real, x.trace)
    y = 2 * x + x
    assert y == XState(3 * x.a, 3 * x.b, 3 * x.c)


def test_arrays_are_read_only():
    x = XState(np.zeros(4), np.zeros(4), np.zeros(4))
    with pytest.raises(ValueError):
        x.a[0] = 1.0


def test_bad_length():
    with pytest.raises(ValueError):
        XState([1, 2, 3], [1, 2, 3, 4], [0, 0, 0, 0])


@settings(max_examples=60, deadline=None)
@given(xstates)
def test_dense_round_trip(x):
    assert from_dense(to_dense(x)) == x


def test_from_dense_of_eta_average():
    p = (2.0, 0.5, 4.0)
    x = from_dense(average_of(eta_family(p)))
    assert x.allclose(rho_p(p, 1.0), atol=1e-12)
    assert np.allclose(x.c, RHO_P_ANTI, atol=1e-13)


def test_from_dense_rejects_plus_state():
    plus = np.full((2, 2), 0.5)
    with pytest.raises(NotXShaped):
        from_dense(kron(plus, np.eye(4)))


def test_from_dense_rejects_non_hermitian():
    m = np.zeros((8, 8), dtype=complex)
    m[0, 7] = 1.0
    with pytest.raises(NotHermitian):
        from_dense(m)


@settings(max_examples=60, deadline=None)
@given(xstates, st.sampled_from(PARTIES))
def test_partial_transpose_matches_generic(x, party):
    assert np.array_equal(to_dense(partial_transpose_x(x, party)), partial_transpose(to_dense(x), party))


@settings(max_examples=60, deadline=None)
@given(xstates, st.sampled_from(PARTIES))
def test_involutions(x, party):
    assert partial_transpose_x(partial_transpose_x(x, party), party) == x
    assert bitflip_conjugate_x(bitflip_conjugate_x(x, party), party) == x


@settings(max_examples=60, deadline=None)
@given(xstates, st.sampled_from(PARTIES))
def test_bitflip_matches_generic(x, party):
    s = sigma_on(party)
    assert np.allclose(to_dense(bitflip_conjugate_x(x, party)), s @ to_dense(x) @ s, rtol=0, atol=1e-13)


def test_gamma_a_on_witness_antidiagonal():
    x = XState(np.zeros(4), np.zeros(4), [1, 1, -1, 1])
    assert np.array_equal(partial_transpose_x(x, "A").c, [1, -1, 1, 1])


def test_gamma_c_on_rho_p():
    x = rho_p((1, 1, 1), 1.0)
    expected = np.array([-1, -1, -1, 1]) / math.sqrt(2)
    assert np.allclose(partial_transpose_x(x, "C").c, expected, atol=1e-15)


@pytest.mark.parametrize("u", [0.5, 1.0, 3.0])
def test_bitflip_of_gamma_a_gives_w_a(u):
    w = make_witness("W", u).x
    got = bitflip_conjugate_x(partial_transpose_x(w, "A"), "A")
    assert got.allclose(make_witness("W_A", u).x, atol=1e-15)


def test_ghz_diagonal():
    assert XState([1, 2, 3, 4], [1, 2, 3, 4], [0.5, -0.5, 0, 0]).is_ghz_diagonal()
    assert not XState([1, 2, 3, 4], [1, 2, 3, 4], [0.5j, 0, 0, 0]).is_ghz_diagonal()
    assert not XState([1, 2, 3, 4], [4, 3, 2, 1], [0, 0, 0, 0]).is_ghz_diagonal()


def test_psd_examples():
    assert x_psd_check(XState(np.ones(4), np.ones(4), np.ones(4)))
    assert not x_psd_check(make_witness("W", 1.0).x)
    assert x_psd_check(rho_p((3.0, 0.5, 2.0), 3.0 / (0.5 * 2.0)))


def test_psd_check_agrees_with_spectrum(rng):
    disagreements = 0
    for _ in range(1000):
        a = rng.uniform(-0.2, 1, 4)
        b = rng.uniform(-0.2, 1, 4)
        c = (rng.normal(size=4) + 1j * rng.normal(size=4)) * 0.5
        x = XState(a, b, c)
        disagreements += x_psd_check(x) != is_psd(to_dense(x))
    assert disagreements == 0


def test_x_rank():
    assert x_rank(XState(np.ones(4), np.ones(4), np.ones(4))) == 4
    assert x_rank(rho_p((1, 1, 1), 1.0)) == 8
    assert x_rank(make_witness("W", 1.0).x) == 8
