import os
import subprocess
import sys

import numpy as np
import pytest

from trisep import _pykernels
from trisep._backend import BACKEND

from conftest import random_hermitian

try:
    from trisep import _kernels
except ImportError:
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")


def test_backend_name():
    assert BACKEND in ("cython", "python")


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_python_eigh(rng, n):
    h = random_hermitian(rng, n)
    w, v = _pykernels.jacobi_eigh(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-12)


def test_python_eigh_diagonal_input():
    w, v = _pykernels.jacobi_eigh(np.diag([3.0, -1.0, 2.0]).astype(complex))
    assert list(w) == [-1.0, 2.0, 3.0]


def test_python_rank(rng):
    a = rng.normal(size=(8, 3)) @ rng.normal(size=(3, 6))
    assert _pykernels.pivot_rank(a.astype(complex), 1e-9) == 3


@needs_ext
def test_kernels_agree(rng):
    for n in (2, 4, 8):
        for _ in range(10):
            h = np.ascontiguousarray(random_hermitian(rng, n))
            w_py, _ = _pykernels.jacobi_eigh(h)
            w_cy, v_cy = _kernels.jacobi_eigh(h)
            assert np.allclose(w_py, w_cy, atol=1e-12)
            assert np.allclose(v_cy @ np.diag(w_cy) @ v_cy.conj().T, h, atol=1e-12)
    for k in range(5):
        m = np.ascontiguousarray((rng.normal(size=(8, k)) @ rng.normal(size=(k, 7))).astype(complex))
        assert _kernels.pivot_rank(m, 1e-9) == _pykernels.pivot_rank(m, 1e-9) == k


def test_forced_pure_python():
    env = dict(os.environ, TRISEP_PURE_PYTHON="1")
    code = "import trisep; print(trisep.BACKEND); from trisep.verify import check_simplex; print(check_simplex().passed)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.split() == ["python", "True"]
