"""Small dense complex linear algebra with explicit tolerances.

Matrices are plain ``complex128`` numpy arrays. Three-qubit operators use the
lexicographic basis ``000, 001, ..., 111``, i.e. index ``4*i_A + 2*i_B + i_C``.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import jacobi_eigh, pivot_rank
from .errors import BadDimension, NotHermitian

PARTIES = ("A", "B", "C")

SIGMA = np.array([[0, 1], [1, 0]], dtype=np.complex128)
I2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    ``tol_rank`` and ``tol_psd`` are relative to the scale of the matrix being
    tested (see :func:`rank` and :func:`is_psd`); ``tol_sym`` and ``tol_zero``
    are absolute.
    """

    tol_sym: float = 1e-10
    tol_rank: float = 1e-9
    tol_psd: float = 1e-9
    tol_zero: float = 1e-9

    def __post_init__(self):
        for name in ("tol_sym", "tol_rank", "tol_psd", "tol_zero"):
            if not getattr(self, name) >= 0.0:
                raise ValueError(f"{name} must be nonnegative")


DEFAULT_TOL = Tolerances()


def as_matrix(m):
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadDimension(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def check_party(party):
    p = str(party).upper()
    if p not in PARTIES:
        raise ValueError(f"party must be one of {PARTIES}, got {party!r}")
    return p


def hermitian_defect(m):
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(m, tol=DEFAULT_TOL):
    return hermitian_defect(m) <= tol.tol_sym


def _require_hermitian(h, tol):
    a = as_matrix(h)
    defect = hermitian_defect(a)
    if defect > tol.tol_sym:
        raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {tol.tol_sym:.1e}")
    return a


def kron(*factors):
    out = np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=np.complex128))
    return out


def hermitian_eigh(h, tol=DEFAULT_TOL):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix by cyclic Jacobi."""
    a = _require_hermitian(h, tol)
    # symmetrize so the rotations see an exactly Hermitian input
    a = 0.5 * (a + a.conj().T)
    return jacobi_eigh(a)


def hermitian_eigenvalues(h, tol=DEFAULT_TOL):
    return hermitian_eigh(h, tol)[0]


def rank_threshold(m, tol=DEFAULT_TOL):
    a = np.asarray(m)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    return tol.tol_rank * max(1.0, scale)


def rank(m, tol=DEFAULT_TOL):
    """Number of pivots above ``tol_rank * max(1, max|m_ij|)`` under partial pivoting.

    Accepts rectangular input.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise BadDimension(f"expected a 2-d array, got shape {a.shape}")
    if a.size == 0:
        return 0
    return int(pivot_rank(a, rank_threshold(a, tol)))


def eigen_rank(h, tol=DEFAULT_TOL):
    """Count of eigenvalues above the :func:`rank` threshold (Hermitian input)."""
    w = hermitian_eigenvalues(h, tol)
    return int(np.sum(np.abs(w) > rank_threshold(h, tol)))


def is_psd(h, tol=DEFAULT_TOL):
    w = hermitian_eigenvalues(h, tol)
    return bool(w[0] >= -tol.tol_psd * max(1.0, float(w[-1])))


def _check_three_qubit(rho):
    a = as_matrix(rho)
    if a.shape != (8, 8):
        raise BadDimension(f"three-qubit operator must be 8x8, got {a.shape}")
    return a


def partial_transpose(rho, party):
    """Transpose the indices of one qubit of an 8x8 operator."""
    a = _check_three_qubit(rho)
    axis = PARTIES.index(check_party(party))
    t = a.reshape(2, 2, 2, 2, 2, 2)
    t = np.swapaxes(t, axis, axis + 3)
    return np.ascontiguousarray(t.reshape(8, 8))


def sigma_on(party):
    """Bit flip acting on one qubit of three."""
    idx = PARTIES.index(check_party(party))
    factors = [I2, I2, I2]
    factors[idx] = SIGMA
    return kron(*factors)


def basis_ket(bits):
    """Computational basis vector from a bit string such as ``"010"``."""
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(bits, 2)] = 1.0
    return v


def projector(v, normalize=True):
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    p = np.outer(v, v.conj())
    if normalize:
        p /= np.vdot(v, v).real
    return p


def hs_vectorize(h):
    """Real coordinates of a Hermitian matrix (diagonal, Re and Im of the strict upper triangle)."""
    a = np.asarray(h, dtype=np.complex128)
    n = a.shape[0]
    iu = np.triu_indices(n, 1)
    return np.concatenate([a.diagonal().real, a[iu].real, a[iu].imag])
