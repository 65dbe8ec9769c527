"""Time the compiled kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--n 8] [--repeat 5] [--number 200]
"""

import argparse
import timeit

import numpy as np

from trisep import _pykernels

try:
    from trisep import _kernels
except ImportError:
    _kernels = None


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = np.ascontiguousarray(m + m.conj().T)
    k = max(1, n // 2)
    r = rng.normal(size=(n, k)) @ rng.normal(size=(k, n))
    return h, np.ascontiguousarray(r.astype(np.complex128))


def _best(stmt, repeat, number):
    return min(timeit.repeat(stmt, repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args(argv)

    h, r = _inputs(args.n)
    rows = [
        ("jacobi_eigh", lambda mod: mod.jacobi_eigh(h)),
        ("pivot_rank", lambda mod: mod.pivot_rank(r, 1e-9)),
    ]
    print(f"{'kernel':<12} {'python [us]':>12} {'cython [us]':>12} {'speedup':>8}")
    for name, call in rows:
        t_py = _best(lambda: call(_pykernels), args.repeat, args.number) * 1e6
        if _kernels is None:
            print(f"{name:<12} {t_py:12.1f} {'n/a':>12} {'n/a':>8}")
            continue
        t_cy = _best(lambda: call(_kernels), args.repeat, args.number) * 1e6
        print(f"{name:<12} {t_py:12.1f} {t_cy:12.1f} {t_py / t_cy:7.1f}x")
    t_np = _best(lambda: np.linalg.eigvalsh(h), args.repeat, args.number) * 1e6
    print(f"{'(numpy eigvalsh reference)':<26} {t_np:.1f} us")


if __name__ == "__main__":
    main()
