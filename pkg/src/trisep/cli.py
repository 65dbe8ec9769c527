"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 bad arguments or
malformed input, 3 input data that is not an acceptable state.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import BadEndpoints, BadParameter, BadTriple, NotAState, NotHermitian, TrisepError
from .faces import (
    decompose,
    degenerate_facet,
    eta_average,
    eta_facet,
    facet_weights,
    maximal_facet,
    mixed_facet,
    ten_state_basis,
)
from .linalg import DEFAULT_TOL, Tolerances, hermitian_defect
from .pptlab import extend_segment
from .products import TRIPLES, TripleP, triple_spec
from .xstate import to_dense

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3
U_MIN, U_MAX = 1.0 / 16.0, 16.0


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


# --- matrix files ---------------------------------------------------------


def matrix_to_json(m):
    m = np.asarray(m, dtype=np.complex128)
    return {"dim": int(m.shape[0]), "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(obj):
    try:
        dim = int(obj["dim"])
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj.get("im", np.zeros((dim, dim))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix object: {exc}") from exc
    if dim != 8 or re.shape != (8, 8) or im.shape != (8, 8):
        raise UsageError(f"expected an 8x8 matrix, got dim={dim}, re {re.shape}, im {im.shape}")
    m = re + 1j * im
    if not np.all(np.isfinite(m)):
        raise UsageError("matrix has non-finite entries")
    return m


def read_matrix(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(obj, dict) and "matrix" in obj:
        obj = obj["matrix"]
    return matrix_from_json(obj)


def _emit(payload, json_out):
    text = json.dumps(payload, indent=2)
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)


# --- argument helpers -----------------------------------------------------


def _u(value):
    try:
        u = float(value)
    except ValueError as exc:
        raise UsageError(f"--u must be a number, got {value!r}") from exc
    if not (U_MIN <= u <= U_MAX):
        raise UsageError(f"--u must lie in [1/16, 16], got {u}")
    return u


def _weights(text, n=10):
    try:
        w = np.array([float(x) for x in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"weights must be comma-separated numbers: {exc}") from exc
    if w.shape != (n,):
        raise UsageError(f"expected {n} weights, got {w.size}")
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
        raise UsageError("weights must be nonnegative and sum to 1")
    return w


def _tol(args):
    if args.tol is None:
        return DEFAULT_TOL
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    return Tolerances(tol_rank=args.tol, tol_psd=args.tol, tol_zero=args.tol)


FACETS = {
    "maximal": maximal_facet,
    "eta": eta_facet,
    "degenerate": degenerate_facet,
    "mixed": mixed_facet,
}


# --- commands -------------------------------------------------------------


def cmd_verify_all(args):
    from .verify import verify_all

    u = _u(args.u)
    report = verify_all(u, seed=args.seed, include_search=not args.skip_search)
    for c in report.checks:
        print(c.line(), file=sys.stderr)
    _emit(report.to_dict(), args.json_out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_construct(args):
    u = _u(args.u)
    spec = triple_spec(args.triple)
    basis = ten_state_basis(spec, u)
    if args.weights is not None:
        if any(v is not None for v in (args.p, args.q, args.r)):
            raise UsageError("give either --weights or --p/--q/--r, not both")
        w = _weights(args.weights)
        rho = basis.state(w)
        payload = {"source": "weights", "weights": w.tolist(), "names": basis.names}
    else:
        if any(v is None for v in (args.p, args.q, args.r)):
            raise UsageError("construct needs --weights or all of --p, --q, --r")
        p = TripleP(args.p, args.q, args.r)
        x = eta_average(p)
        scale = x.trace
        rho = to_dense(x) / scale
        target = spec.point(u)
        on_face = all(math.isclose(a, b, rel_tol=1e-12) for a, b in zip(p, target))
        payload = {
            "source": "eta_average",
            "p": [p.p, p.q, p.r],
            "on_face": on_face,
            "x": {"a": x.a.tolist(), "b": x.b.tolist(), "c_re": x.c.real.tolist(), "c_im": x.c.imag.tolist()},
            "trace_scale": scale,
        }
    payload = {"tool": "trisep", "version": __version__, "triple": spec.label, "u": u, **payload}
    payload["matrix"] = matrix_to_json(rho)
    _emit(payload, args.json_out)
    return EXIT_OK


def cmd_decompose(args):
    u = _u(args.u)
    if not args.input:
        raise UsageError("decompose needs --input")
    rho = read_matrix(args.input)
    tol = _tol(args)
    if hermitian_defect(rho) > tol.tol_sym:
        raise DataError("input matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise DataError(f"input matrix has trace {np.trace(rho).real:.6g}, expected 1")
    basis = ten_state_basis(args.triple, u)
    cert = decompose(rho, basis)
    payload = {"tool": "trisep", "version": __version__, "triple": basis.triple, "u": u}
    payload["certificate"] = cert.to_dict(basis.names)
    _emit(payload, args.json_out)
    return EXIT_OK


def cmd_extend(args):
    u = _u(args.u)
    basis = ten_state_basis(args.triple, u)
    n = len(basis)
    w0 = _weights(args.w0, n) if args.w0 else np.full(n, 1.0 / n)
    if args.w1 and args.facet:
        raise UsageError("give either --w1 or --facet, not both")
    if args.w1:
        w1 = _weights(args.w1, n)
    elif args.facet:
        w1 = facet_weights(n, FACETS[args.facet](basis))
    else:
        raise UsageError("extend needs --w1 or --facet")
    if not args.t_max >= 1.0:
        raise UsageError("--t-max must be at least 1")
    seg = extend_segment(basis.state(w0), basis.state(w1), basis, t_max=args.t_max, tol=_tol(args))
    payload = {"tool": "trisep", "version": __version__, "triple": basis.triple, "u": u}
    payload["w0"] = w0.tolist()
    payload["w1"] = w1.tolist()
    payload["segment"] = seg.to_dict(basis.names)
    _emit(payload, args.json_out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="trisep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--u", default="1", help="witness parameter, 1/16 <= u <= 16 (default 1)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=float, default=None, help="override rank/PSD/zero tolerances")
    common.add_argument("--json-out", default=None, help="also write the JSON output to this path")
    triple = argparse.ArgumentParser(add_help=False)
    triple.add_argument("--triple", default="WAB", choices=sorted(TRIPLES))

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", parents=[common], help="run every check for all four triples")
    p.add_argument("--skip-search", action="store_true", help="skip the randomized kill-set search")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("construct", parents=[common, triple], help="build a face state")
    p.add_argument("--weights", help="ten comma-separated weights summing to 1")
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--r", type=float)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decompose", parents=[common, triple], help="decompose a state over the face")
    p.add_argument("--input", help="matrix JSON file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("extend", parents=[common, triple], help="extend a segment past the face")
    p.add_argument("--w0", help="weights of the interior start point (default uniform)")
    p.add_argument("--w1", help="weights of the face point to pass through")
    p.add_argument("--facet", choices=sorted(FACETS), help="use the barycenter of a preset facet as the face point")
    p.add_argument("--t-max", type=float, default=64.0)
    p.set_defaults(func=cmd_extend)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BadParameter, BadTriple) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, NotAState, NotHermitian, BadEndpoints) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except TrisepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
