"""PPT tests and PPT-entangled states beyond the ten-state face.

A line from a face interior point through a point ``rho_1`` of the face keeps
all partial transposes positive for a while past ``t = 1`` when ``rho_1`` is in
the interior of the PPT set. Past ``t = 1`` the decomposition has a negative
weight while the witness pairings stay zero, which certifies entanglement.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BadEndpoints, EmptyFacet, NotAState
from .faces import decompose, facet_weights
from .linalg import (
    DEFAULT_TOL,
    PARTIES,
    as_matrix,
    eigen_rank,
    hermitian_eigenvalues,
    is_hermitian,
    is_psd,
    partial_transpose,
    rank,
)

T_CAP = 64.0


def _is_state(rho, tol):
    return is_hermitian(rho, tol) and is_psd(rho, tol) and abs(np.trace(rho).real - 1.0) <= 1e-8


def is_ppt(rho, tol=DEFAULT_TOL):
    """All three partial transposes of a three-qubit state are PSD."""
    m = as_matrix(rho)
    if not _is_state(m, tol):
        raise NotAState("input is not a Hermitian PSD matrix of unit trace")
    return all(is_psd(partial_transpose(m, p), tol) for p in PARTIES)


def in_ppt_set(rho, tol=DEFAULT_TOL):
    """Like :func:`is_ppt` but returns False instead of raising for non-states."""
    m = as_matrix(rho)
    if not is_psd(m, tol):
        return False
    return all(is_psd(partial_transpose(m, p), tol) for p in PARTIES)


def min_ppt_eigenvalue(rho, tol=DEFAULT_TOL):
    """Smallest eigenvalue over the state and its three partial transposes."""
    m = as_matrix(rho)
    mats = [m] + [partial_transpose(m, p) for p in PARTIES]
    return min(float(hermitian_eigenvalues(x, tol)[0]) for x in mats)


@dataclass
class SegmentResult:
    t_star: float
    probe_states: list = field(default_factory=list)  # (t, ppt, certificate)
    witness_values: list = field(default_factory=list)  # (t, pairing with the witness sum)
    t_max: float = T_CAP

    def to_dict(self, names=None):
        return {
            "t_star": self.t_star,
            "t_max": self.t_max,
            "probes": [
                {"t": t, "ppt": ppt, "certificate": cert.to_dict(names)} for t, ppt, cert in self.probe_states
            ],
            "witness_values": [{"t": t, "value": v} for t, v in self.witness_values],
        }


def segment_point(rho0, rho1, t):
    return (1.0 - t) * rho0 + t * rho1


def extend_segment(rho0, rho1, basis, t_max=T_CAP, bisect_tol=1e-8, n_probes=4, tol=DEFAULT_TOL):
    """Largest ``t >= 1`` with ``(1 - t) rho0 + t rho1`` PPT, found by bisection.

    The upper bracket starts at 2 and doubles until PPT fails or ``t_max`` is
    reached. Certificates are attached at ``n_probes`` points in ``(1, t_star]``.
    """
    r0 = as_matrix(rho0)
    r1 = as_matrix(rho1)
    c0 = decompose(r0, basis)
    c1 = decompose(r1, basis)
    if c0.verdict != c0.IN_FACE or c1.verdict != c1.IN_FACE:
        raise BadEndpoints("both endpoints must be states in the face")
    if float(c0.weights.min()) < 0.01 - 1e-12:
        raise BadEndpoints("rho0 must be interior (all weights >= 0.01)")
    if not in_ppt_set(r1, tol):
        raise BadEndpoints("rho1 is not PPT")

    def ppt_at(t):
        return in_ppt_set(segment_point(r0, r1, t), tol)

    lo = 1.0
    hi = min(2.0, t_max)
    while ppt_at(hi):
        lo = hi
        if hi >= t_max:
            break
        hi = min(2.0 * hi, t_max)
    if lo < hi:
        while hi - lo > bisect_tol:
            mid = 0.5 * (lo + hi)
            if ppt_at(mid):
                lo = mid
            else:
                hi = mid
    t_star = lo

    result = SegmentResult(t_star=t_star, t_max=t_max)
    wsum = sum(w.dense() for w in basis.witnesses())
    ts = [1.0]
    if t_star > 1.0:
        ts += list(1.0 + (t_star - 1.0) * np.arange(1, n_probes + 1) / n_probes)
    for t in ts:
        rt = segment_point(r0, r1, t)
        cert = decompose(rt, basis)
        result.probe_states.append((float(t), bool(in_ppt_set(rt, tol)), cert))
        result.witness_values.append((float(t), float(np.sum(rt * wsum).real)))
    return result


def certify_ppt_entangled(rho, basis, tol=DEFAULT_TOL):
    """Certificate for ``rho`` when it is PPT, on the witness hyperplanes, and outside the face.

    Returns ``None`` unless all three conditions hold.
    """
    cert = decompose(rho, basis)
    if cert.verdict != cert.ENTANGLED:
        return None
    if not in_ppt_set(rho, tol):
        return None
    if float(cert.weights.min()) >= -1e-8:
        return None
    return cert


@dataclass
class BoundaryReport:
    facet: tuple
    names: list
    rank: int
    partial_transpose_ranks: dict
    weights: list
    length: int

    @property
    def full_ranks(self):
        return self.rank == 8 and all(r == 8 for r in self.partial_transpose_ranks.values())

    def to_dict(self):
        return {
            "facet": list(self.facet),
            "names": self.names,
            "rank": self.rank,
            "partial_transpose_ranks": self.partial_transpose_ranks,
            "weights": self.weights,
            "length": self.length,
            "full_ranks": self.full_ranks,
        }


def boundary_state_report(basis, facet, tol=DEFAULT_TOL):
    """Ranks and decomposition of the barycenter of a facet.

    The declared length is the facet size; it is exact because the face is a
    simplex, so the decomposition found is the only one.
    """
    facet = tuple(sorted(set(int(i) for i in facet)))
    if not facet:
        raise EmptyFacet("facet must contain at least one basis index")
    w = facet_weights(len(basis), facet)
    rho = basis.state(w)
    cert = decompose(rho, basis)
    pt_ranks = {p: eigen_rank(partial_transpose(rho, p), tol) for p in PARTIES}
    return BoundaryReport(
        facet=facet,
        names=[basis.names[i] for i in facet],
        rank=eigen_rank(rho, tol),
        partial_transpose_ranks=pt_ranks,
        weights=[float(x) for x in cert.weights],
        length=int(np.sum(cert.weights > 1e-8)),
    )


def vectors_rank(basis, facet, tol=DEFAULT_TOL):
    """Rank of the product vectors indexed by ``facet``."""
    vecs = np.array([basis.vectors[i].tensor() for i in facet]).T
    return rank(vecs, tol)

