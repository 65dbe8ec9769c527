"""Three-qubit product vectors and the kill-sets of the four witnesses.

The non-classical members of every kill-set are ``eta(p, Lambda_j)``: a
product of ``(p, alpha)``, ``(q, beta)``, ``(r, gamma)`` scaled by
``(pqr)^(-1/2)``, with ``(p, q, r)`` on a surface fixed by the witness and
``Lambda_j`` one of eight phase triples built from ``omega = exp(i pi/4)``.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter, BadTriple, ZeroVector
from .linalg import DEFAULT_TOL, SIGMA, check_party, kron
from .witness import canonical_label, check_u, kill_test, kill_values, make_witness, witness_sum

OMEGA = cmath.exp(1j * math.pi / 4)


def omega(k):
    """``omega**k`` reduced mod 8 so exact powers stay exact."""
    return OMEGA ** (k % 8)


def _slot(v):
    a = np.array(v, dtype=np.complex128).reshape(-1)
    if a.shape != (2,):
        raise ValueError("each tensor factor must be a 2-vector")
    if not np.any(a):
        raise ZeroVector("tensor factor is zero")
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ProductVector:
    """``scale * |x> (x) |y> (x) |z>``."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    scale: complex = 1.0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for attr in ("x", "y", "z"):
            object.__setattr__(self, attr, _slot(getattr(self, attr)))

    @property
    def factors(self):
        return (self.x, self.y, self.z)

    def tensor(self):
        return self.scale * kron(self.x, self.y, self.z).reshape(-1)

    def norm2(self):
        return float(abs(self.scale) ** 2 * np.prod([np.vdot(f, f).real for f in self.factors]))

    def normalized(self):
        v = self.tensor()
        return v / math.sqrt(np.vdot(v, v).real)

    def projector(self):
        v = self.normalized()
        return np.outer(v, v.conj())

    def partial_conjugate(self, party):
        return partial_conjugate(self, party)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"ProductVector({label}{self.x.tolist()} (x) {self.y.tolist()} (x) {self.z.tolist()})"


def classical(bits):
    """Computational basis product vector, e.g. ``classical("010")``."""
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise ValueError(f"expected three bits, got {bits!r}")
    e = [np.eye(2)[int(b)] for b in bits]
    return ProductVector(*e, name=f"|{bits}>")


@dataclass(frozen=True)
class TripleP:
    p: float
    q: float
    r: float

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = float(getattr(self, name))
            if not (v > 0.0 and math.isfinite(v)):
                raise BadParameter(f"{name} must be positive, got {v!r}")
            object.__setattr__(self, name, v)

    def __iter__(self):
        return iter((self.p, self.q, self.r))


@dataclass(frozen=True)
class PhaseTriple:
    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = complex(getattr(self, name))
            if abs(abs(v) - 1.0) > 1e-12:
                raise BadParameter(f"{name} must be unimodular, |{name}| = {abs(v)!r}")
            object.__setattr__(self, name, v)

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma))

    def conj(self):
        return PhaseTriple(self.alpha.conjugate(), self.beta.conjugate(), self.gamma.conjugate())


# sign patterns of Lambda_1..Lambda_4 on (omega^3, omega^1, omega^7)
_LAMBDA_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def lambda_table():
    first = [PhaseTriple(sa * omega(3), sb * omega(1), sc * omega(7)) for sa, sb, sc in _LAMBDA_SIGNS]
    return first + [lam.conj() for lam in first]


def _as_triple(p):
    return p if isinstance(p, TripleP) else TripleP(*p)


def eta(p, lam, index=None):
    p = _as_triple(p)
    alpha, beta, gamma = lam
    name = f"eta_{index}" if index is not None else "eta"
    return ProductVector(
        (p.p, alpha), (p.q, beta), (p.r, gamma), scale=(p.p * p.q * p.r) ** -0.5, name=name
    )


def eta_family(p):
    """``eta_1(p), ..., eta_8(p)``."""
    return [eta(p, lam, j + 1) for j, lam in enumerate(lambda_table())]


def partial_conjugate(xi, party):
    """Replace the chosen tensor factor by ``sigma @ conj(factor)``."""
    idx = "ABC".index(check_party(party))
    factors = list(xi.factors)
    factors[idx] = SIGMA @ np.conj(factors[idx])
    return ProductVector(*factors, scale=np.conj(xi.scale), name=f"{xi.name}_{party.upper()}" if xi.name else "")


def ray_overlap(a, b):
    """``|<a|b>|`` after normalizing both; equals 1 iff the vectors agree up to scale and phase."""
    va = a.tensor() if isinstance(a, ProductVector) else np.asarray(a, dtype=np.complex128).reshape(-1)
    vb = b.tensor() if isinstance(b, ProductVector) else np.asarray(b, dtype=np.complex128).reshape(-1)
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cannot compare with the zero vector")
    return float(abs(np.vdot(va, vb)) / (na * nb))


def same_ray(a, b, tol=1e-9):
    return ray_overlap(a, b) >= 1.0 - tol


# --- surfaces -------------------------------------------------------------

SURFACES = ("S", "S_A", "S_B", "S_C")


def _surface_name(s):
    key = str(s).upper().replace("-", "_")
    if key in ("SA", "SB", "SC"):
        key = key[0] + "_" + key[1]
    if key not in SURFACES:
        raise BadParameter(f"unknown surface {s!r}")
    return key


@dataclass(frozen=True)
class SurfaceId:
    name: str
    u: float

    def __post_init__(self):
        object.__setattr__(self, "name", _surface_name(self.name))
        object.__setattr__(self, "u", check_u(self.u))


def surface_value(p, surface):
    """The monomial that equals ``u`` on the surface."""
    p, q, r = _as_triple(p)
    name = _surface_name(surface)
    if name == "S":
        return p / (q * r)
    if name == "S_A":
        return 1.0 / (p * q * r)
    if name == "S_B":
        return p * q / r
    return p * r / q


def surface_membership(p, s, tol=1e-12):
    return abs(surface_value(p, s.name) - s.u) <= tol * s.u


def surface_point(s, q, r):
    """The point of surface ``s`` with the given ``q`` and ``r``."""
    q, r = float(q), float(r)
    if s.name == "S":
        p = s.u * q * r
    elif s.name == "S_A":
        p = 1.0 / (s.u * q * r)
    elif s.name == "S_B":
        p = s.u * r / q
    else:
        p = s.u * q / r
    return TripleP(p, q, r)


# --- zero-entry families --------------------------------------------------

# "_01" stands for {|x> (x) |0> (x) |1>}: the free slot is marked "_"
ZERO_ENTRY_FAMILIES = {
    "W": ("_01", "_10", "0_0", "1_1", "00_", "11_"),
    "W_A": ("_01", "_10", "1_0", "0_1", "10_", "01_"),
    "W_B": ("_11", "_00", "0_0", "1_1", "01_", "10_"),
    "W_C": ("_00", "_11", "0_1", "1_0", "00_", "11_"),
}


def zero_entry_vector(pattern, free):
    factors = []
    for ch in pattern:
        factors.append(free if ch == "_" else np.eye(2)[int(ch)])
    return ProductVector(*factors, name=pattern)


# --- triple kill-sets -----------------------------------------------------


@dataclass(frozen=True)
class TripleSpec:
    label: str
    witnesses: tuple
    classical_bits: tuple

    def point(self, u):
        """The unique ``(p, q, r)`` on all three surfaces of the triple."""
        u = check_u(u)
        return {
            "WAB": TripleP(1.0, 1.0, 1.0 / u),
            "WBC": TripleP(u, 1.0, 1.0),
            "WCA": TripleP(1.0, 1.0 / u, 1.0),
            "ABC": TripleP(u, 1.0 / u, 1.0 / u),
        }[self.label]

    def surfaces(self, u):
        return tuple(SurfaceId("S" if w == "W" else "S_" + w[-1], u) for w in self.witnesses)


TRIPLES = {
    "WAB": TripleSpec("WAB", ("W", "W_A", "W_B"), ("010", "101")),
    "WBC": TripleSpec("WBC", ("W", "W_B", "W_C"), ("000", "111")),
    "WCA": TripleSpec("WCA", ("W", "W_C", "W_A"), ("001", "110")),
    "ABC": TripleSpec("ABC", ("W_A", "W_B", "W_C"), ("011", "100")),
}


def triple_spec(triple):
    if isinstance(triple, TripleSpec):
        return triple
    if isinstance(triple, (tuple, list)):
        labels = {canonical_label(t) for t in triple}
        for spec in TRIPLES.values():
            if set(spec.witnesses) == labels and len(triple) == 3:
                return spec
        raise BadTriple(f"no kill-set is defined for witnesses {tuple(triple)!r}")
    key = str(triple).upper()
    if key not in TRIPLES:
        raise BadTriple(f"unknown triple {triple!r}; expected one of {sorted(TRIPLES)}")
    return TRIPLES[key]


def triple_witnesses(triple, u):
    return [make_witness(lbl, u) for lbl in triple_spec(triple).witnesses]


def triple_witness_sum(triple, u):
    return witness_sum(triple_spec(triple).witnesses, u)


def triple_kill_set(triple, u, tol=DEFAULT_TOL):
    """The ten product vectors killed by all three witnesses: two classical, then ``eta_1..eta_8``."""
    spec = triple_spec(triple)
    u = check_u(u)
    vectors = [classical(b) for b in spec.classical_bits] + eta_family(spec.point(u))
    for w in triple_witnesses(spec, u):
        for v in vectors:
            val = kill_test(w, v)
            if abs(val) > tol.tol_zero:
                raise ArithmeticError(f"{w.label} does not kill {v.name}: {val:.3e}")
    return vectors


# --- unscaled vectors for the coefficient matrix -------------------------


def unscaled_eta_table(u):
    """``eta_1..eta_8`` at ``(1, 1, 1/u)`` without the ``(pqr)^(-1/2)`` factor."""
    u = check_u(u)
    out = []
    for j, (a, b, c) in enumerate(lambda_table()):
        out.append(ProductVector((1.0, a), (1.0, b), (1.0 / u, c), name=f"eta_{j + 1}"))
    return out


def zeta_table(u):
    """``zeta_1..zeta_8``: the eta phases with the middle sign flipped and third slot ``(u, .)``."""
    u = check_u(u)
    first = []
    for j, (sa, sb, sc) in enumerate(_LAMBDA_SIGNS):
        first.append(
            ProductVector((1.0, sa * omega(3)), (1.0, -sb * omega(1)), (u, sc * omega(7)), name=f"zeta_{j + 1}")
        )
    rest = [
        ProductVector(np.conj(z.x), np.conj(z.y), np.conj(z.z), name=f"zeta_{j + 5}") for j, z in enumerate(first)
    ]
    return first + rest


# --- randomized consistency probe -----------------------------------------


def random_product_vectors(rng, n):
    """``(n, 8)`` array of random product tensors with complex Gaussian factors."""
    f = rng.standard_normal((n, 3, 2)) + 1j * rng.standard_normal((n, 3, 2))
    return np.einsum("ni,nj,nk->nijk", f[:, 0], f[:, 1], f[:, 2]).reshape(n, 8)


def _params_to_vector(theta):
    f = (theta[0::2] + 1j * theta[1::2]).reshape(3, 2)
    return np.einsum("i,j,k->ijk", f[0], f[1], f[2]).reshape(8)


def search_common_kills(triple, u, n_samples=100_000, n_starts=40, seed=42, accept=1e-11):
    """Look for product vectors killed by all three witnesses of a triple.

    Draws ``n_samples`` random product vectors, keeps the ``n_starts`` with the
    smallest pairing against the triple's witness sum, and polishes each by
    local minimization. Returns the polished vectors whose pairing falls below
    ``accept`` together with the index of the nearest kill-set member and the
    overlap with it.
    """
    from scipy.optimize import minimize

    spec = triple_spec(triple)
    u = check_u(u)
    wsum = triple_witness_sum(spec, u).dense()
    members = triple_kill_set(spec, u)
    rng = np.random.default_rng(seed)
    cand = random_product_vectors(rng, n_samples)
    vals = kill_values(wsum, cand)
    starts = np.argsort(vals)[:n_starts]

    def objective(theta):
        v = _params_to_vector(theta)
        vb = np.conj(v)
        return float((np.vdot(vb, wsum @ vb) / np.vdot(v, v)).real)

    found = []
    for k in starts:
        # recover factor parameters of the k-th sample by regenerating its factors
        theta0 = _factor_params(cand[k])
        res = minimize(objective, theta0, method="BFGS", options={"gtol": 1e-12, "maxiter": 2000})
        v = _params_to_vector(res.x)
        val = kill_values(wsum, v[None, :])[0]
        if val > accept:
            continue
        overlaps = [ray_overlap(v, m) for m in members]
        j = int(np.argmax(overlaps))
        found.append((v, j, overlaps[j]))
    return found


def _factor_params(v):
    """Factor a product tensor into three 2-vectors (up to scale), as 12 reals."""
    t = np.asarray(v).reshape(2, 2, 2)
    idx = np.unravel_index(np.argmax(np.abs(t)), t.shape)
    i, j, k = idx
    x = t[:, j, k]
    y = t[i, :, k] / t[i, j, k]
    z = t[i, j, :] / t[i, j, k]
    f = np.concatenate([x, y, z])
    f = f / np.abs(f).max()
    out = np.empty(12)
    out[0::2] = f.real
    out[1::2] = f.imag
    return out
