"""Numerical checks of the structural results, with pinned tolerances.

Each ``check_*`` function returns a :class:`CheckRecord`; ``verify_all`` runs
them for one ``u`` and collects a :class:`Report`.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .faces import (
    average_of,
    coefficient_matrix,
    decompose,
    degenerate_facet,
    eta_average,
    expected_coefficient_matrix,
    facet_weights,
    maximal_facet,
    random_interior_weights,
    rho_p,
    simplex_check,
    subset_span_report,
    ten_state_basis,
)
from .linalg import PARTIES, partial_transpose, rank, sigma_on
from .pptlab import extend_segment, is_ppt
from .products import (
    TRIPLES,
    SurfaceId,
    eta_family,
    random_product_vectors,
    search_common_kills,
    surface_point,
    triple_kill_set,
    triple_witness_sum,
    triple_witnesses,
)
from .witness import LABELS, BilinearMapPhi, choi, kill_test, kill_values, make_witness, pairing
from .xstate import XState, bitflip_conjugate_x, partial_transpose_x, to_dense

U_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)
U_KILL = (0.5, 1.0, 2.0)

TOL_CHOI = 1e-14
TOL_XCALC = 1e-13
TOL_KILL = 1e-10
TOL_RHO_P = 1e-10
TOL_WEIGHTS = 1e-8
TOL_RESIDUAL = 1e-10
TOL_COEFF = 1e-10
TOL_HYPERPLANE = 1e-10
T_STAR_MARGIN = 1e-4
T_STAR_DEGENERATE = 1e-6


@dataclass
class CheckRecord:
    name: str
    passed: bool
    measured: dict
    tolerance: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] {self.name}: {shown}"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


@dataclass
class Report:
    version: str
    u: float
    seed: int
    triples: list
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "tool": "trisep",
            "version": self.version,
            "u": self.u,
            "seed": self.seed,
            "triples": self.triples,
            "checks": [asdict(c) for c in self.checks],
            "overall": "pass" if self.passed else "fail",
        }


def random_xstates(rng, n):
    out = []
    for _ in range(n):
        a = rng.normal(size=4)
        b = rng.normal(size=4)
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        out.append(XState(a, b, c))
    return out


# 1
def check_choi(u_values=U_GRID):
    worst = 0.0
    for u in u_values:
        diff = choi(BilinearMapPhi(u)) - make_witness("W", u).dense()
        worst = max(worst, float(np.max(np.abs(diff))))
    return CheckRecord(
        "choi_matches_closed_form_W", worst <= TOL_CHOI, {"max_abs_diff": worst, "u_values": list(u_values)}, {"abs": TOL_CHOI}
    )


# 2
def check_x_calculus(n=1000, seed=42):
    rng = np.random.default_rng(seed)
    sig = {p: sigma_on(p) for p in PARTIES}
    worst_pt = worst_bf = 0.0
    for x in random_xstates(rng, n):
        d = to_dense(x)
        for p in PARTIES:
            worst_pt = max(worst_pt, float(np.max(np.abs(to_dense(partial_transpose_x(x, p)) - partial_transpose(d, p)))))
            worst_bf = max(worst_bf, float(np.max(np.abs(to_dense(bitflip_conjugate_x(x, p)) - sig[p] @ d @ sig[p]))))
    ok = worst_pt <= TOL_XCALC and worst_bf <= TOL_XCALC
    return CheckRecord(
        "x_calculus_matches_generic",
        ok,
        {"partial_transpose_max_diff": worst_pt, "bitflip_max_diff": worst_bf, "samples": n},
        {"abs": TOL_XCALC},
    )


# 3
def check_kill_sets(u_values=U_KILL, n_random=10_000, seed=42):
    worst_kill = 0.0
    for u in u_values:
        for t in TRIPLES:
            for w in triple_witnesses(t, u):
                for v in triple_kill_set(t, u):
                    worst_kill = max(worst_kill, abs(kill_test(w, v)))
    rng = np.random.default_rng(seed)
    samples = random_product_vectors(rng, n_random)
    min_random = math.inf
    for u in u_values:
        for lbl in LABELS:
            min_random = min(min_random, float(kill_values(make_witness(lbl, u), samples).min()))
    ok = worst_kill <= TOL_KILL and min_random >= -TOL_KILL
    return CheckRecord(
        "kill_sets_and_block_positivity",
        ok,
        {"max_abs_kill_value": worst_kill, "min_random_kill_value": min_random, "samples": n_random},
        {"kill_abs": TOL_KILL, "positivity_floor": -TOL_KILL},
    )


def random_points_on_s(rng, u, n, lo=0.25, hi=4.0):
    s = SurfaceId("S", u)
    qs = np.exp(rng.uniform(math.log(lo), math.log(hi), n))
    rs = np.exp(rng.uniform(math.log(lo), math.log(hi), n))
    return [surface_point(s, q, r) for q, r in zip(qs, rs)]


# 4
def check_rho_p(u_values=U_GRID, n=50, seed=42):
    rng = np.random.default_rng(seed)
    worst = 0.0
    min_rank = 8
    for u in u_values:
        for p in random_points_on_s(rng, u, n):
            x = rho_p(p, u)
            d = to_dense(x)
            avg = average_of(eta_family(p))
            worst = max(worst, float(np.linalg.norm(d - avg)))
            ranks = [rank(d)] + [rank(partial_transpose(d, q)) for q in PARTIES]
            min_rank = min(min_rank, *ranks)
    ok = worst <= TOL_RHO_P and min_rank == 8
    return CheckRecord(
        "rho_p_formula_and_full_ranks",
        ok,
        {"max_frobenius_diff": worst, "min_rank": min_rank, "samples_per_u": n},
        {"frobenius": TOL_RHO_P, "rank": 8},
    )


# 5
def check_simplex(u_values=U_GRID):
    ranks = {}
    ok = True
    for t in TRIPLES:
        for u in u_values:
            b = ten_state_basis(t, u)
            r = rank(b.coords)
            ranks[f"{t}@{u:g}"] = r
            ok = ok and r == 10 and simplex_check(b)
    return CheckRecord("ten_states_affinely_independent", ok, {"min_rank": min(ranks.values())}, {"rank": 10})


# 6
def check_unique_decomposition(u_values=(1.0,), n=100, seed=42):
    rng = np.random.default_rng(seed)
    worst_w = worst_res = 0.0
    for u in u_values:
        for t in TRIPLES:
            b = ten_state_basis(t, u)
            for _ in range(n):
                w = random_interior_weights(rng)
                cert = decompose(b.state(w), b)
                worst_w = max(worst_w, float(np.max(np.abs(cert.weights - w))))
                worst_res = max(worst_res, cert.residual)
    ok = worst_w <= TOL_WEIGHTS and worst_res <= TOL_RESIDUAL
    return CheckRecord(
        "unique_decomposition",
        ok,
        {"max_weight_error": worst_w, "max_residual": worst_res, "samples_per_triple": n},
        {"weights": TOL_WEIGHTS, "residual": TOL_RESIDUAL},
    )


# 7
def check_coefficient_matrix(u_values=U_GRID):
    worst = 0.0
    for u in u_values:
        for conj in (None, "A", "B", "C"):
            worst = max(worst, float(np.max(np.abs(coefficient_matrix(u, conj) - expected_coefficient_matrix(conj)))))
    return CheckRecord("coefficient_matrix_patterns", worst <= TOL_COEFF, {"max_abs_diff": worst}, {"abs": TOL_COEFF})


# 8
def check_spanning(u_values=(1.0,)):
    nine_min = 8
    same_half_max = 0
    mixed_min = 8
    for u in u_values:
        for t in TRIPLES:
            rep = subset_span_report(ten_state_basis(t, u))
            nine_min = min(nine_min, min(r for _, _, r in rep.nine))
            same_half_max = max(same_half_max, max(rep.eight_ranks("same_half")))
            mixed_min = min(mixed_min, min(rep.eight_ranks("mixed")))
    ok = nine_min == 8 and same_half_max <= 7 and mixed_min == 8
    return CheckRecord(
        "nine_subset_spanning",
        ok,
        {"nine_subset_min_rank": nine_min, "degenerate_eight_max_rank": same_half_max, "mixed_eight_min_rank": mixed_min},
        {"nine": 8, "degenerate_max": 7, "mixed": 8},
    )


# 9
def check_hyperplane(u_values=(1.0,), n_random=20, seed=42):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for u in u_values:
        for t, spec in TRIPLES.items():
            b = ten_state_basis(t, u)
            wsum = triple_witness_sum(t, u)
            states = list(b.states)
            states += [b.state(random_interior_weights(rng)) for _ in range(n_random)]
            centre = to_dense(eta_average(spec.point(u)))
            states.append(centre / np.trace(centre).real)
            for s in states:
                worst = max(worst, abs(pairing(wsum, s)))
    return CheckRecord("face_states_on_hyperplane", worst <= TOL_HYPERPLANE, {"max_abs_pairing": worst}, {"abs": TOL_HYPERPLANE})


# 10
def check_ppt_entanglement(u_values=(1.0,)):
    t_max_face = math.inf
    t_degen = 0.0
    certified = True
    for u in u_values:
        for t in TRIPLES:
            b = ten_state_basis(t, u)
            rho0 = b.state(np.full(len(b), 1.0 / len(b)))
            rho1 = b.state(facet_weights(len(b), maximal_facet(b, 0)))
            seg = extend_segment(rho0, rho1, b)
            t_max_face = min(t_max_face, seg.t_star)
            t_probe = 0.5 * (1.0 + seg.t_star)
            rho_t = (1.0 - t_probe) * rho0 + t_probe * rho1
            cert = decompose(rho_t, b)
            certified = certified and (
                cert.verdict == cert.ENTANGLED
                and is_ppt(rho_t)
                and float(cert.weights.min()) < -1e-8
                and all(abs(h) <= 1e-8 for h in cert.hyperplane_values)
            )
            rho1d = b.state(facet_weights(len(b), degenerate_facet(b)))
            t_degen = max(t_degen, extend_segment(rho0, rho1d, b).t_star)
    ok = t_max_face > 1.0 + T_STAR_MARGIN and certified and t_degen <= 1.0 + T_STAR_DEGENERATE
    return CheckRecord(
        "ppt_entangled_extension",
        ok,
        {"min_t_star_maximal_face": t_max_face, "certified_entangled": certified, "max_t_star_degenerate": t_degen},
        {"t_star_min": 1.0 + T_STAR_MARGIN, "t_star_degenerate_max": 1.0 + T_STAR_DEGENERATE},
    )


def check_kill_search(u, seed=42, n_samples=20_000, n_starts=10):
    """Every numerically found common kill matches a listed member."""
    worst = 1.0
    found = 0
    for t in TRIPLES:
        hits = search_common_kills(t, u, n_samples=n_samples, n_starts=n_starts, seed=seed)
        found += len(hits)
        if hits:
            worst = min(worst, min(o for _, _, o in hits))
    ok = found > 0 and worst >= 1.0 - 1e-6
    return CheckRecord("kill_set_search_consistency", ok, {"zeros_found": found, "min_overlap": worst}, {"overlap": 1.0 - 1e-6})


def verify_all(u=1.0, seed=42, include_search=True):
    u = float(u)
    checks = [
        check_choi((u,)),
        check_x_calculus(seed=seed),
        check_kill_sets((u,), seed=seed),
        check_rho_p((u,), seed=seed),
        check_simplex((u,)),
        check_unique_decomposition((u,), seed=seed),
        check_coefficient_matrix((u,)),
        check_spanning((u,)),
        check_hyperplane((u,), seed=seed),
        check_ppt_entanglement((u,)),
    ]
    if include_search:
        checks.append(check_kill_search(u, seed=seed))
    return Report(__version__, u, seed, sorted(TRIPLES), checks)
