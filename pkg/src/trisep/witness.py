"""The positive bilinear map on 2x2 matrices, its Choi matrix and derived witnesses.

Witness ``W(u)`` is the Choi matrix of the map with ``s = sqrt(8)*u`` and
``t = sqrt(8)/u`` (``s`` lands on basis slot 100, ``t`` on slot 011).
``W_A, W_B, W_C`` are obtained as ``sigma_P W^{Gamma_P} sigma_P`` and keep
the anti-diagonal ``(1, 1, -1, 1)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, BadParameter, NonRealPairing, ZeroVector
from .linalg import DEFAULT_TOL, _check_three_qubit, kron
from .xstate import XState, bitflip_conjugate_x, partial_transpose_x, to_dense

SQRT8 = math.sqrt(8.0)
ANTI_DIAGONAL = (1.0, 1.0, -1.0, 1.0)
LABELS = ("W", "W_A", "W_B", "W_C")

_ALIASES = {"W": "W", "WA": "W_A", "W_A": "W_A", "WB": "W_B", "W_B": "W_B", "WC": "W_C", "W_C": "W_C"}


def check_u(u):
    u = float(u)
    if not (u > 0.0 and math.isfinite(u)):
        raise BadParameter(f"u must be a positive finite real, got {u!r}")
    return u


def canonical_label(label):
    key = str(label).upper().replace("-", "_")
    if key not in _ALIASES:
        raise BadParameter(f"unknown witness label {label!r}")
    return _ALIASES[key]


@dataclass(frozen=True)
class BilinearMapPhi:
    """The map with ``s*t = 8``, parameterized by ``u > 0``."""

    u: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "u", check_u(self.u))

    @property
    def s(self):
        return SQRT8 * self.u

    @property
    def t(self):
        return SQRT8 / self.u

    def __call__(self, x, y):
        return phi_apply(self, x, y)


def phi_apply(phi, x, y):
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != (2, 2) or y.shape != (2, 2):
        raise BadDimension("phi acts on pairs of 2x2 matrices")
    x11, x12, x21, x22 = x[0, 0], x[0, 1], x[1, 0], x[1, 1]
    y11, y12, y21, y22 = y[0, 0], y[0, 1], y[1, 0], y[1, 1]
    return np.array(
        [
            [phi.s * x22 * y11, x12 * y12 - x12 * y21 + x21 * y12 + x21 * y21],
            [x12 * y12 + x12 * y21 - x21 * y12 + x21 * y21, phi.t * x11 * y22],
        ],
        dtype=np.complex128,
    )


def _unit(i, j):
    e = np.zeros((2, 2), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def choi(phi):
    """``sum |i1><j1| (x) |i2><j2| (x) phi(|i1><j1|, |i2><j2|)`` over matrix units."""
    out = np.zeros((8, 8), dtype=np.complex128)
    for i1 in range(2):
        for j1 in range(2):
            for i2 in range(2):
                for j2 in range(2):
                    e1, e2 = _unit(i1, j1), _unit(i2, j2)
                    out += kron(e1, e2, phi_apply(phi, e1, e2))
    return out


@dataclass(frozen=True)
class Witness:
    x: XState
    u: float
    label: str

    def dense(self):
        return to_dense(self.x)

    def __add__(self, other):
        if not isinstance(other, Witness):
            return NotImplemented
        if self.u != other.u:
            raise BadParameter("cannot add witnesses built at different u")
        return Witness(self.x + other.x, self.u, f"{self.label}+{other.label}")


def make_witness(label, u):
    """Closed-form witness matrices ``W``, ``W_A``, ``W_B``, ``W_C`` at parameter ``u``."""
    u = check_u(u)
    label = canonical_label(label)
    lo, hi = SQRT8 / u, SQRT8 * u
    a = np.zeros(4)
    b = np.zeros(4)
    if label == "W":
        a[3], b[3] = lo, hi
    elif label == "W_A":
        a[0], b[0] = hi, lo
    elif label == "W_B":
        a[1], b[1] = lo, hi
    else:
        a[2], b[2] = lo, hi
    return Witness(XState(a, b, ANTI_DIAGONAL), u, label)


def derived_witness(u, party):
    """``sigma_P W^{Gamma_P} sigma_P`` computed through the X-state calculus."""
    w = make_witness("W", u)
    x = bitflip_conjugate_x(partial_transpose_x(w.x, party), party)
    return Witness(x, w.u, f"W_{party.upper()}")


def witness_sum(labels, u):
    ws = [make_witness(lbl, u) for lbl in labels]
    total = ws[0]
    for w in ws[1:]:
        total = total + w
    return total


def _as_dense(w):
    if isinstance(w, Witness):
        return w.dense()
    if isinstance(w, XState):
        return to_dense(w)
    return _check_three_qubit(w)


def pairing(w, rho, tol=DEFAULT_TOL):
    """``Tr(rho W^T)``, checked to be real."""
    wm = _as_dense(w)
    rm = _check_three_qubit(rho)
    # Tr(rho W^T) = sum_ij rho_ij W_ij
    val = complex(np.sum(rm * wm))
    if abs(val.imag) > tol.tol_zero:
        raise NonRealPairing(f"pairing has imaginary part {val.imag:.3e}")
    return val.real


def _tensor(xi):
    if hasattr(xi, "tensor"):
        return xi.tensor()
    v = np.asarray(xi, dtype=np.complex128).reshape(-1)
    if v.shape != (8,):
        raise BadDimension("three-qubit vector must have 8 entries")
    return v


def kill_test(w, xi):
    """``<conj(xi)| W |conj(xi)> / <xi|xi>``; the witness kills ``xi`` when this vanishes."""
    v = _tensor(xi)
    nrm = np.vdot(v, v).real
    if nrm == 0.0:
        raise ZeroVector("cannot test the zero vector")
    vb = np.conj(v)
    return float(np.vdot(vb, _as_dense(w) @ vb).real / nrm)


def kill_values(w, vectors):
    """Vectorized :func:`kill_test` over the rows of an ``(n, 8)`` array."""
    v = np.asarray(vectors, dtype=np.complex128)
    wm = _as_dense(w)
    vb = np.conj(v)
    num = np.einsum("ni,ij,nj->n", v, wm, vb).real
    return num / np.einsum("ni,ni->n", vb, v).real
