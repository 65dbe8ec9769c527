import math

import numpy as np
import pytest

from trisep.errors import BadParameter
from trisep.faces import (
    CLASSICAL_SLOTS,
    ETA_SLOTS,
    RHO_P_ANTI,
    average_of,
    classical_column,
    coefficient_matrix,
    decompose,
    degenerate_facet,
    eta_average,
    expected_coefficient_matrix,
    facet_weights,
    maximal_facet,
    mixed_facet,
    random_interior_weights,
    rho_p,
    rho_sub_averages,
    simplex_check,
    span_rank,
    subset_span_report,
    ten_state_basis,
)
from trisep.linalg import rank
from trisep.products import TRIPLES, eta_family, omega
from trisep.xstate import XState, to_dense

TRIPLE_NAMES = sorted(TRIPLES)


@pytest.fixture(scope="module")
def wab():
    return ten_state_basis("WAB", 1.0)


@pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
def test_rho_p_closed_form(u):
    expected = XState((1 / u, u, 1 / u, u), (u, 1 / u, u, 1 / u), RHO_P_ANTI)
    assert rho_p((1, 1, 1 / u), u).allclose(expected, atol=1e-14)
    assert rho_p((u, 1, 1), u).allclose(XState([u] * 4, [1 / u] * 4, RHO_P_ANTI), atol=1e-14)


def test_rho_p_warns_off_surface():
    with pytest.warns(UserWarning):
        rho_p((1, 1, 1), 2.0)


def test_eta_average_matches_numeric(rng):
    for p in rng.uniform(0.2, 5.0, size=(10, 3)):
        assert np.allclose(to_dense(eta_average(p)), average_of(eta_family(p)), atol=1e-12)


def test_sub_averages():
    r9, r10 = rho_sub_averages((1, 1, 1), 1.0)
    assert np.allclose(r9.c, [omega(5), omega(3), omega(7), omega(5)])
    assert np.allclose(r10.c, [omega(3), omega(5), omega(1), omega(3)])
    assert np.allclose(to_dense(r9), average_of(eta_family((1, 1, 1))[:4]), atol=1e-13)
    assert rank(to_dense(r9)) == 4
    with pytest.raises(BadParameter):
        rho_sub_averages((1, 1, 1), 3.0)


@pytest.mark.parametrize("label", TRIPLE_NAMES)
@pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
def test_simplex(label, u):
    b = ten_state_basis(label, u)
    assert simplex_check(b)
    assert np.allclose([np.trace(s).real for s in b.states], 1.0)


def test_simplex_fails_with_duplicate(wab):
    states = list(wab.states)
    states[3] = states[2]
    dup = wab.__class__(wab.triple, wab.u, wab.vectors, states, wab.gram.copy(), wab.coords.copy())
    dup.coords[3] = dup.coords[2]
    dup.gram[3] = dup.gram[2]
    assert not simplex_check(dup)


@pytest.mark.parametrize("label", TRIPLE_NAMES)
def test_decompose_round_trip(label, rng):
    b = ten_state_basis(label, 2.0)
    for _ in range(20):
        w = random_interior_weights(rng)
        cert = decompose(b.state(w), b)
        assert cert.verdict == cert.IN_FACE
        assert np.max(np.abs(cert.weights - w)) <= 1e-8
        assert cert.residual <= 1e-10


@pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
def test_decompose_face_centre(u):
    b = ten_state_basis("WAB", u)
    d = to_dense(rho_p((1, 1, 1 / u), u))
    cert = decompose(d / np.trace(d).real, b)
    assert np.allclose(cert.weights[list(CLASSICAL_SLOTS)], 0, atol=1e-12)
    assert np.allclose(cert.weights[list(ETA_SLOTS)], 1 / 8, atol=1e-12)


def test_decompose_beyond_maximal_face(wab):
    rho0 = wab.state(np.full(10, 0.1))
    rho1 = wab.state(facet_weights(10, maximal_facet(wab, 0)))
    t = 1.05
    cert = decompose((1 - t) * rho0 + t * rho1, wab)
    assert cert.verdict == cert.ENTANGLED
    assert int(np.sum(cert.weights < 0)) == 1


def test_decompose_off_hyperplane(wab):
    cert = decompose(np.eye(8) / 8, wab)
    assert cert.verdict == cert.OFF
    assert cert.residual > 1e-3


def test_certificate_to_dict(wab):
    d = decompose(wab.state(np.full(10, 0.1)), wab).to_dict(wab.names)
    assert d["verdict"] == "in_face_separable"
    assert len(d["weights"]) == len(d["names"]) == 10


def test_weights_helpers(rng):
    w = random_interior_weights(rng)
    assert math.isclose(w.sum(), 1.0) and w.min() >= 0.01
    with pytest.raises(BadParameter):
        random_interior_weights(rng, n=10, floor=0.2)
    f = facet_weights(10, [1, 2, 3], rng)
    assert np.count_nonzero(f) == 3 and math.isclose(f.sum(), 1.0)


@pytest.mark.parametrize("conj", [None, "A", "B", "C"])
@pytest.mark.parametrize("u", [0.25, 1.0, 4.0])
def test_coefficient_matrix(conj, u):
    got = coefficient_matrix(u, conj)
    assert np.max(np.abs(got - expected_coefficient_matrix(conj))) <= 1e-10
    assert np.max(np.abs(got[:4, :4])) <= 1e-12
    assert np.max(np.abs(got[4:, 4:])) <= 1e-12


@pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
def test_classical_replacement_columns(u):
    first = u * np.array([omega(k) for k in (3, 7, 3, 7, 5, 1, 5, 1)])
    second = np.array([omega(k) for k in (6, 2, 6, 2, 2, 6, 2, 6)])
    assert np.allclose(classical_column(u, "010"), first, atol=1e-14)
    assert np.allclose(classical_column(u, "101"), second, atol=1e-14)


@pytest.mark.parametrize("label", TRIPLE_NAMES)
def test_spanning(label):
    rep = subset_span_report(ten_state_basis(label, 1.0))
    assert rep.all_nine_span
    assert max(rep.eight_ranks("same_half")) <= 7
    assert min(rep.eight_ranks("mixed")) == 8


def test_spanning_examples(wab):
    vecs = wab.vectors
    assert span_rank(vecs[1:]) == 8
    assert span_rank([vecs[i] for i in degenerate_facet(wab)]) <= 7
    assert span_rank([vecs[i] for i in mixed_facet(wab)]) == 8
