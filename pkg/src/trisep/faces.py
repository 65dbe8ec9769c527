"""Ten-state faces: simplex structure, unique decompositions and spanning analysis.

Each witness triple kills exactly ten product vectors. Their trace-one
projectors are linearly independent, so the dual face is a 9-simplex and
every state in it has one decomposition, recovered here by solving the
10x10 Gram system.
"""

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, SingularGram
from .linalg import DEFAULT_TOL, as_matrix, hs_vectorize, rank
from .products import (
    _as_triple,
    classical,
    unscaled_eta_table,
    omega,
    partial_conjugate,
    surface_value,
    triple_kill_set,
    triple_spec,
    triple_witnesses,
    zeta_table,
)
from .witness import check_u, pairing
from .xstate import XState

INV_SQRT2 = 1.0 / math.sqrt(2.0)
RHO_P_ANTI = (-INV_SQRT2, -INV_SQRT2, INV_SQRT2, -INV_SQRT2)
CLASSICAL_SLOTS = (0, 1)
ETA_SLOTS = tuple(range(2, 10))

# verdict thresholds for decompose()
RESIDUAL_TOL = 1e-8
WEIGHT_TOL = 1e-8
HYPERPLANE_TOL = 1e-8


def _on_s(p, u, rel=1e-9):
    return abs(surface_value(p, "S") - u) <= rel * u


def rho_p(p, u):
    """``X(a_p, b_p, (-1, -1, 1, -1)/sqrt 2)``, the average of ``eta_1(p)..eta_8(p)`` for ``p`` on ``S``."""
    u = check_u(u)
    p = _as_triple(p)
    if not _on_s(p, u):
        warnings.warn(f"{p} is not on the surface S for u={u}; the closed form is not an eta average there")
    pp, q, r = p
    a = (pp * pp / u, q * q * u, r * r * u, u)
    b = (u / (pp * pp), 1.0 / (q * q * u), 1.0 / (r * r * u), 1.0 / u)
    return XState(a, b, RHO_P_ANTI)


def eta_average(p):
    """Closed form of ``(1/8) sum_j |eta_j(p)><eta_j(p)|`` valid for every ``p``."""
    pp, q, r = _as_triple(p)
    a = (pp * q * r, pp * q / r, pp * r / q, pp / (q * r))
    b = (1.0 / (pp * q * r), r / (pp * q), q / (pp * r), q * r / pp)
    return XState(a, b, RHO_P_ANTI)


def average_of(vectors):
    """``(1/n) sum |v><v|`` over product vectors, unnormalized."""
    ts = np.array([v.tensor() for v in vectors])
    return ts.T @ ts.conj() / len(ts)


def rho_sub_averages(p, u):
    """The common X-parts of ``eta_1..eta_4`` and of ``eta_5..eta_8``."""
    u = check_u(u)
    p = _as_triple(p)
    if not _on_s(p, u):
        raise BadParameter(f"{p} is not on the surface S for u={u}")
    x = rho_p(p, u)
    r9 = XState(x.a, x.b, (omega(5), omega(3), omega(7), omega(5)))
    r10 = XState(x.a, x.b, (omega(3), omega(5), omega(1), omega(3)))
    return r9, r10


@dataclass(frozen=True, eq=False)
class TenStateBasis:
    triple: str
    u: float
    vectors: list
    states: list
    gram: np.ndarray
    coords: np.ndarray  # 10 x 64 real coordinates of the states

    def __len__(self):
        return len(self.states)

    @property
    def names(self):
        return [v.name for v in self.vectors]

    def witnesses(self):
        return triple_witnesses(self.triple, self.u)

    def state(self, weights):
        """``sum_k w_k rho_k``."""
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(self.states),):
            raise ValueError(f"expected {len(self.states)} weights, got shape {w.shape}")
        return np.tensordot(w, np.array(self.states), axes=1)


def _basis_from(triple, u, vectors):
    states = [v.projector() for v in vectors]
    coords = np.array([hs_vectorize(s) for s in states])
    # Tr(rho_k rho_l) = |<v_k|v_l>|^2 for unit vectors
    units = np.array([v.normalized() for v in vectors])
    gram = np.abs(units.conj() @ units.T) ** 2
    return TenStateBasis(triple, u, list(vectors), states, gram, coords)


def ten_state_basis(triple, u):
    spec = triple_spec(triple)
    u = check_u(u)
    return _basis_from(spec.label, u, triple_kill_set(spec, u))


def simplex_check(basis, tol=DEFAULT_TOL):
    """True iff the states are linearly independent as real Hermitian matrices."""
    n = len(basis)
    by_coords = rank(basis.coords, tol) == n
    by_gram = rank(basis.gram, tol) == n
    return by_coords and by_gram


@dataclass(frozen=True)
class DecompositionCertificate:
    weights: np.ndarray
    residual: float
    hyperplane_values: tuple
    verdict: str
    trace: float = 1.0

    IN_FACE = "in_face_separable"
    ENTANGLED = "certified_entangled"
    OFF = "off_hyperplane"

    def to_dict(self, names=None):
        d = {
            "weights": [float(w) for w in self.weights],
            "residual": float(self.residual),
            "hyperplane_values": [float(h) for h in self.hyperplane_values],
            "verdict": self.verdict,
            "trace": float(self.trace),
        }
        if names is not None:
            d["names"] = list(names)
        return d


def decompose(rho, basis):
    """Unique coefficients of ``rho`` over the ten face states, with a verdict.

    ``certified_entangled`` is sound for states: a separable state orthogonal to
    all three witnesses lies in the face, so it has a nonnegative exact
    decomposition.
    """
    m = as_matrix(rho)
    states = np.array(basis.states)
    v = np.einsum("kij,ji->k", states, m).real
    if rank(basis.gram) < len(basis):
        raise SingularGram("ten-state Gram matrix is singular")
    w = np.linalg.solve(basis.gram, v)
    residual = float(np.linalg.norm(m - np.tensordot(w, states, axes=1)))
    hyper = tuple(pairing(wt, m) for wt in basis.witnesses())
    exact = residual <= RESIDUAL_TOL and float(w.min()) >= -WEIGHT_TOL
    if exact:
        verdict = DecompositionCertificate.IN_FACE
    elif all(abs(h) <= HYPERPLANE_TOL for h in hyper):
        verdict = DecompositionCertificate.ENTANGLED
    else:
        verdict = DecompositionCertificate.OFF
    return DecompositionCertificate(w, residual, hyper, verdict, float(np.trace(m).real))


def random_interior_weights(rng, n=10, floor=0.01):
    """Flat Dirichlet weights, each at least ``floor``, summing to one."""
    if floor * n >= 1.0:
        raise BadParameter("floor too large for a probability vector")
    return floor + (1.0 - floor * n) * rng.dirichlet(np.ones(n))


def facet_weights(n_total, support, rng=None, floor=0.01):
    """Interior point of the facet spanned by ``support``: positive there, zero elsewhere."""
    support = sorted(set(support))
    w = np.zeros(n_total)
    if rng is None:
        w[support] = 1.0 / len(support)
    else:
        w[support] = random_interior_weights(rng, len(support), floor)
    return w


# --- coefficient matrix ---------------------------------------------------


def coefficient_matrix(u, conjugation=None):
    """``L[i, j] = <zeta_i | eta_j>`` for the unscaled vectors.

    With ``conjugation`` set to a party, both families are partially
    conjugated in that slot first.
    """
    zetas = zeta_table(u)
    etas = unscaled_eta_table(u)
    if conjugation:
        zetas = [partial_conjugate(z, conjugation) for z in zetas]
        etas = [partial_conjugate(e, conjugation) for e in etas]
    Z = np.array([z.tensor() for z in zetas])
    E = np.array([e.tensor() for e in etas])
    return Z.conj() @ E.T


_PM = {
    None: ((1, -1, -1, -1), (-1, 1, -1, -1), (-1, -1, 1, -1), (-1, -1, -1, 1)),
    "A": ((-1, 1, -1, -1), (1, -1, -1, -1), (-1, -1, -1, 1), (-1, -1, 1, -1)),
    "B": ((-1, -1, 1, -1), (-1, -1, -1, 1), (1, -1, -1, -1), (-1, 1, -1, -1)),
    "C": ((-1, -1, -1, 1), (-1, -1, 1, -1), (-1, 1, -1, -1), (1, -1, -1, -1)),
}


def expected_coefficient_matrix(conjugation=None):
    """Block form ``[[0, K], [conj(K), 0]]`` with the expected sign patterns."""
    key = conjugation.upper() if conjugation else None
    phase = omega(3) if key is None else omega(-3)
    k = 2.0 * math.sqrt(2.0) * phase * np.array(_PM[key], dtype=np.complex128)
    out = np.zeros((8, 8), dtype=np.complex128)
    out[:4, 4:] = k
    out[4:, :4] = k.conj()
    return out


# --- spanning analysis ----------------------------------------------------


def _vector_matrix(vectors, conjugation=None):
    if conjugation:
        vectors = [partial_conjugate(v, conjugation) for v in vectors]
    return np.array([v.tensor() for v in vectors]).T


def span_rank(vectors, conjugation=None, tol=DEFAULT_TOL):
    return rank(_vector_matrix(vectors, conjugation), tol)


@dataclass
class SpanReport:
    triple: str
    u: float
    nine: list  # (conjugation, dropped name, rank)
    eight: list  # (dropped names, kind, rank)

    @property
    def all_nine_span(self):
        return all(r == 8 for _, _, r in self.nine)

    def eight_ranks(self, kind):
        return [r for _, k, r in self.eight if k == kind]


def subset_span_report(basis, conjugations=(None, "A", "B", "C"), tol=DEFAULT_TOL):
    """Ranks of every nine-vector subset, and of the eight-vector sets containing both classical vectors.

    Eight-vector sets drop two eta vectors; ``kind`` records whether both come
    from ``eta_1..eta_4`` or both from ``eta_5..eta_8`` (``same_half``) or one
    from each (``mixed``).
    """
    vecs = basis.vectors
    nine = []
    for conj in conjugations:
        for k in range(len(vecs)):
            subset = [v for i, v in enumerate(vecs) if i != k]
            nine.append((conj, vecs[k].name, span_rank(subset, conj, tol)))
    eight = []
    first = ETA_SLOTS[:4]
    for i, j in itertools.combinations(ETA_SLOTS, 2):
        subset = [v for k, v in enumerate(vecs) if k not in (i, j)]
        same = (i in first) == (j in first)
        eight.append(((vecs[i].name, vecs[j].name), "same_half" if same else "mixed", span_rank(subset, None, tol)))
    return SpanReport(basis.triple, basis.u, nine, eight)


def degenerate_facet(basis):
    """Indices of the facet ``{|c0>, |c1>, eta_3..eta_8}`` (two of ``eta_1..eta_4`` dropped)."""
    return tuple(i for i in range(len(basis)) if i not in (ETA_SLOTS[0], ETA_SLOTS[1]))


def mixed_facet(basis):
    """Indices of ``{eta_2, eta_3, eta_4, |c0>, eta_6, eta_7, eta_8, |c1>}``."""
    return tuple(i for i in range(len(basis)) if i not in (ETA_SLOTS[0], ETA_SLOTS[4]))


def eta_facet(basis):
    return ETA_SLOTS


def maximal_facet(basis, dropped=0):
    return tuple(i for i in range(len(basis)) if i != dropped)


def classical_column(u, bits):
    """``<zeta_i | bits>`` for a classical vector replacing one eta column."""
    zetas = zeta_table(u)
    v = classical(bits).tensor()
    return np.array([np.vdot(z.tensor(), v) for z in zetas])

