"""X-shaped three-qubit matrices.

``X(a, b, c)`` is supported on the diagonal and anti-diagonal of the 8x8
lexicographic basis: ``a_1..a_4`` fill diagonal slots 0..3, ``b_4..b_1`` fill
slots 4..7 (reversed), and ``c_k`` sits at ``(k-1, 8-k)`` with its conjugate
mirrored below the diagonal.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotXShaped
from .linalg import DEFAULT_TOL, _check_three_qubit, check_party, hermitian_defect, rank

_UPPER = np.arange(4)
_ANTI = 7 - _UPPER
_OFF_PATTERN = np.ones((8, 8), dtype=bool)
_OFF_PATTERN[np.arange(8), np.arange(8)] = False
_OFF_PATTERN[np.arange(8), 7 - np.arange(8)] = False


@dataclass(frozen=True, eq=False)
class XState:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _vec4(self.a, float))
        object.__setattr__(self, "b", _vec4(self.b, float))
        object.__setattr__(self, "c", _vec4(self.c, complex))

    def __eq__(self, other):
        if not isinstance(other, XState):
            return NotImplemented
        return (
            np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
            and np.array_equal(self.c, other.c)
        )

    __hash__ = None

    def allclose(self, other, atol=1e-12):
        return (
            np.allclose(self.a, other.a, rtol=0, atol=atol)
            and np.allclose(self.b, other.b, rtol=0, atol=atol)
            and np.allclose(self.c, other.c, rtol=0, atol=atol)
        )

    @property
    def trace(self):
        return float(self.a.sum() + self.b.sum())

    def dense(self):
        return to_dense(self)

    def blocks(self):
        """The four 2x2 blocks ``[[a_i, c_i], [conj(c_i), b_i]]``."""
        return [
            np.array([[self.a[i], self.c[i]], [np.conj(self.c[i]), self.b[i]]], dtype=np.complex128)
            for i in range(4)
        ]

    def is_ghz_diagonal(self, atol=0.0):
        return bool(
            np.allclose(self.a, self.b, rtol=0, atol=atol)
            and np.all(np.abs(self.c.imag) <= atol)
        )

    def __add__(self, other):
        return XState(self.a + other.a, self.b + other.b, self.c + other.c)

    def __mul__(self, k):
        k = float(k)
        return XState(k * self.a, k * self.b, k * self.c)

    __rmul__ = __mul__

    def __repr__(self):
        return f"XState(a={self.a.tolist()}, b={self.b.tolist()}, c={self.c.tolist()})"


def _vec4(v, kind):
    arr = np.array(v, dtype=np.float64 if kind is float else np.complex128).reshape(-1)
    if arr.shape != (4,):
        raise ValueError(f"X-state component must have 4 entries, got {arr.shape}")
    arr.flags.writeable = False
    return arr


def to_dense(x):
    d = np.zeros((8, 8), dtype=np.complex128)
    d[_UPPER, _UPPER] = x.a
    d[_ANTI, _ANTI] = x.b
    d[_UPPER, _ANTI] = x.c
    d[_ANTI, _UPPER] = np.conj(x.c)
    return d


def from_dense(rho, tol=DEFAULT_TOL):
    """Read ``(a, b, c)`` off an X-shaped Hermitian matrix; refuses off-pattern mass."""
    m = _check_three_qubit(rho)
    defect = hermitian_defect(m)
    if defect > tol.tol_sym:
        raise NotHermitian(f"Hermiticity defect {defect:.3e}")
    scale = max(1.0, float(np.max(np.abs(m))))
    off = float(np.max(np.abs(m[_OFF_PATTERN])))
    if off > tol.tol_zero * scale:
        raise NotXShaped(f"off-pattern entry of magnitude {off:.3e}")
    diag_im = float(np.max(np.abs(m.diagonal().imag)))
    if diag_im > tol.tol_zero:
        raise NotXShaped(f"diagonal imaginary part {diag_im:.3e}")
    return XState(m[_UPPER, _UPPER].real, m[_ANTI, _ANTI].real, m[_UPPER, _ANTI])


def partial_transpose_x(x, party):
    c = x.c
    p = check_party(party)
    if p == "A":
        c = np.conj(c[::-1])
    elif p == "B":
        c = c[[2, 3, 0, 1]]
    else:
        c = c[[1, 0, 3, 2]]
    return XState(x.a, x.b, c)


def bitflip_conjugate_x(x, party):
    """``sigma_P X sigma_P`` in closed form."""
    p = check_party(party)
    if p == "A":
        return XState(x.b[::-1], x.a[::-1], np.conj(x.c[::-1]))
    perm = [2, 3, 0, 1] if p == "B" else [1, 0, 3, 2]
    return XState(x.a[perm], x.b[perm], x.c[perm])


def x_psd_check(x, tol=DEFAULT_TOL):
    """Closed-form positivity: each 2x2 block has nonnegative diagonal and determinant."""
    ab = x.a * x.b
    det = ab - np.abs(x.c) ** 2
    return bool(
        np.all(x.a >= -tol.tol_psd)
        and np.all(x.b >= -tol.tol_psd)
        and np.all(det >= -tol.tol_psd * np.maximum(1.0, ab))
    )


def x_rank(x, tol=DEFAULT_TOL):
    """Sum of the ranks of the four 2x2 blocks."""
    return sum(rank(blk, tol) for blk in x.blocks())
