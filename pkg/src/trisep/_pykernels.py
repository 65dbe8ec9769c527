"""Pure-Python reference kernels.

Same algorithms as the compiled ``_kernels`` extension, written with
per-rotation numpy row/column updates. Used when the extension is not
built, or when ``TRISEP_PURE_PYTHON=1`` is set.
"""

import math

import numpy as np

MAX_SWEEPS = 100


def jacobi_eigh(h, rel_tol=1e-14):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(w, u)`` with eigenvalues ascending and eigenvectors in the
    columns of ``u``. Iterates until the off-diagonal Frobenius mass drops
    below ``rel_tol * ||h||_F``.
    """
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    u = np.eye(n, dtype=np.complex128)
    norm = math.sqrt(float(np.sum(a.real**2 + a.imag**2)))
    if n < 2 or norm == 0.0:
        w = a.diagonal().real.copy()
        order = np.argsort(w, kind="stable")
        return w[order], u[:, order]
    target = rel_tol * norm
    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        off = math.sqrt(2.0 * off)
        if off < target:
            break
        # threshold sweep: early passes skip elements that are already small
        thresh = 0.2 * off / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0 or r < thresh:
                    continue
                ph = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # V = diag(1, conj(ph)) @ [[c, s], [-s, c]] on the (p, q) plane
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * np.conj(ph) * cq
                a[:, q] = s * cp + c * np.conj(ph) * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * ph * rq
                a[q, :] = s * rp + c * ph * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                up = u[:, p].copy()
                uq = u[:, q].copy()
                u[:, p] = c * up - s * np.conj(ph) * uq
                u[:, q] = s * up + c * np.conj(ph) * uq
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], u[:, order]


def pivot_rank(m, thresh):
    """Rank by Gaussian elimination with partial pivoting.

    A pivot counts when its magnitude exceeds ``thresh``.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    rows, cols = a.shape
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        k = row + int(np.argmax(np.abs(a[row:, col])))
        piv = a[k, col]
        if abs(piv) <= thresh:
            continue
        if k != row:
            a[[row, k], :] = a[[k, row], :]
        a[row + 1 :, col:] -= np.outer(a[row + 1 :, col] / piv, a[row, col:])
        rank += 1
        row += 1
    return rank
