"""Carathéodory-class data and its map into the generator class.

A function p with p(0) = 1 and Re p > 0 on the unit disk is a mixture of
Möbius kernels (1 + e^{iθ}z)/(1 - e^{iθ}z) against a probability measure
on the circle.  Finite atomic measures give exact coefficients

    p_n = 2 Σ_k λ_k e^{i n θ_k},        |p_n| <= 2,

and members f(z) = z + Σ a_n z^n of the filtration class, defined by
Re(β f(z)/z + (1-β) f'(z)) > 0, correspond to p through

    (n - (n-1)β) a_n = p_{n-1},         n = 2, 3, ...

Everything here is an immutable value; all operations are pure, so the
module is safe for concurrent use.  The sampler takes an explicit seed and
owns no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintInfeasibleError, DomainError, LengthError

TWO_PI = 2.0 * np.pi

#: weights of a measure must sum to 1 within this tolerance
WEIGHT_SUM_TOL = 1e-12

#: eigenvalue tolerance for the Toeplitz positivity test
PSD_TOL = 1e-10

#: resampling cap for the constrained sampler
CONSTRAINT_RETRY_CAP = 100


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaParam:
    """Validated filtration parameter, a dimensionless number in [0, 1].

    β = 0 gives bounded-turning functions (Re f' > 0); β = 1 gives the full
    subclass f(z) = z p(z).  Operations that divide by (1 - β) state in
    their own contracts whether β = 1 is admitted.
    """

    beta: float

    def __post_init__(self):
        b = float(self.beta)
        if not np.isfinite(b) or not 0.0 <= b <= 1.0:
            raise DomainError(f"beta must lie in [0, 1], got {self.beta!r}")
        object.__setattr__(self, "beta", b)


def as_beta(value: float | BetaParam) -> BetaParam:
    """Coerce a float or BetaParam to a validated BetaParam."""
    if isinstance(value, BetaParam):
        return value
    return BetaParam(float(value))


def coeff_denominator(beta: float | BetaParam, n: int) -> float:
    """The coefficient denominator n - (n-1)β, positive for every n >= 1."""
    return n - (n - 1) * as_beta(beta).beta


@dataclass(frozen=True)
class HerglotzMeasure:
    """Finite atomic probability measure on the circle.

    Atoms are (theta, weight) pairs with theta in [0, 2π) and nonnegative
    weights summing to 1 (within 1e-12).  The induced coefficients
    p_n = 2 Σ λ_k e^{inθ_k} automatically satisfy |p_n| <= 2.
    """

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.atoms:
            raise DomainError("a measure needs at least one atom")
        cleaned = []
        total = 0.0
        for theta, weight in self.atoms:
            w = float(weight)
            if w < -1e-15:
                raise DomainError(f"negative atom weight {weight!r}")
            w = max(w, 0.0)
            cleaned.append((float(theta) % TWO_PI, w))
            total += w
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise DomainError(f"atom weights sum to {total!r}, expected 1")
        object.__setattr__(self, "atoms", tuple(cleaned))

    @classmethod
    def from_arrays(cls, thetas, weights) -> "HerglotzMeasure":
        return cls(tuple(zip((float(t) for t in thetas), (float(w) for w in weights))))

    @property
    def thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])


@dataclass(frozen=True)
class LiberaTriple:
    """Parameters (p1, x, z) of the two-step Carathéodory parametrization.

    |p1| <= 2 and |x|, |z| <= 1.  The classical expansion formulas below
    presume the rotation-normalized case of real p1; complex p1 is stored
    but callers own the rotation reduction.
    """

    p1: complex
    x: complex
    z: complex

    def __post_init__(self):
        if abs(self.p1) > 2.0 + 1e-12:
            raise DomainError(f"|p1| must be <= 2, got {abs(self.p1)!r}")
        for name, val in (("x", self.x), ("z", self.z)):
            if abs(val) > 1.0 + 1e-12:
                raise DomainError(f"|{name}| must be <= 1, got {abs(val)!r}")
        object.__setattr__(self, "p1", complex(self.p1))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "z", complex(self.z))


@dataclass(frozen=True)
class CoeffSeq:
    """Finite coefficient sequence a_2 .. a_M of a class member.

    a_1 = 1 is implicit (normalized class).  Sequences produced by
    to_abeta_coeffs respect |a_n| <= 2/(n - (n-1)β) + 1e-12; directly
    constructed sequences are not re-checked.
    """

    beta: BetaParam
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "beta", as_beta(self.beta))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        """Highest coefficient index M held by the sequence."""
        return len(self.coeffs) + 1

    def a(self, n: int) -> complex:
        """Coefficient a_n, with the normalization a_1 = 1."""
        if n == 1:
            return 1.0 + 0.0j
        if not 2 <= n <= self.order:
            raise LengthError(f"a_{n} not available (sequence holds a_2..a_{self.order})")
        return self.coeffs[n - 2]


# ---------------------------------------------------------------------------
# coefficient machinery
# ---------------------------------------------------------------------------


def _atom_pcoeffs(thetas: np.ndarray, weights: np.ndarray, order: int) -> np.ndarray:
    """Batched p_1..p_order for atom arrays of shape (samples, atoms)."""
    phases = np.exp(1j * np.asarray(thetas, dtype=float))
    w = np.asarray(weights, dtype=float)
    out = np.empty((phases.shape[0], order), dtype=complex)
    cur = np.ones_like(phases)
    for n in range(order):
        cur = cur * phases
        out[:, n] = 2.0 * (w * cur).sum(axis=1)
    return out


def carath_coeffs(mu: HerglotzMeasure, M: int) -> list[complex]:
    """Coefficients p_1..p_M of the Carathéodory function induced by `mu`.

    p_n = 2 Σ_k λ_k e^{inθ_k}; the triangle inequality gives |p_n| <= 2.
    """
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    row = _atom_pcoeffs(mu.thetas[None, :], mu.weights[None, :], M)[0]
    return [complex(v) for v in row]


def libera_expand(t: LiberaTriple) -> tuple[complex, complex]:
    """Expand (p1, x, z) into (p2, p3).

        2 p2 = p1^2 + x (4 - p1^2)
        4 p3 = p1^3 + 2 x p1 (4 - p1^2) - x^2 p1 (4 - p1^2)
               + 2 z (1 - |x|^2)(4 - p1^2)

    For real p1 in [-2, 2] the results are valid Carathéodory coefficients
    with |p2|, |p3| <= 2.
    """
    p1, x, z = t.p1, t.x, t.z
    s = 4.0 - p1 * p1
    p2 = 0.5 * (p1 * p1 + x * s)
    p3 = 0.25 * (p1**3 + 2.0 * x * p1 * s - x * x * p1 * s + 2.0 * z * (1.0 - abs(x) ** 2) * s)
    return p2, p3


def psd_check(p, tol: float = PSD_TOL) -> bool:
    """Carathéodory–Toeplitz positivity test for candidate p_1..p_M.

    Builds the (M+1)x(M+1) Hermitian Toeplitz matrix with diagonal 2 and
    superdiagonals p_1..p_M and checks its eigenvalues are >= -tol.
    """
    p = list(p)
    if not p:
        raise DomainError("psd_check needs at least p_1")
    first_row = np.concatenate(([2.0 + 0.0j], np.asarray(p, dtype=complex)))
    m = first_row.size
    idx = np.subtract.outer(np.arange(m), np.arange(m))
    mat = np.where(idx <= 0, first_row[-idx], np.conj(first_row[idx]))
    eigs = np.linalg.eigvalsh(mat)
    return bool(eigs.min() >= -tol)


def to_abeta_coeffs(beta: float | BetaParam, p) -> CoeffSeq:
    """Map p_1..p_{M-1} to the coefficient sequence a_2..a_M.

    a_n = p_{n-1} / (n - (n-1)β).  Callers own the positivity of the input
    (psd_check); each output coefficient is checked against the class
    bound 2/(n - (n-1)β) + 1e-12.
    """
    bp = as_beta(beta)
    coeffs = []
    for k, pk in enumerate(p, start=1):
        n = k + 1
        den = coeff_denominator(bp, n)
        a = complex(pk) / den
        if abs(a) > 2.0 / den + 1e-12:
            raise DomainError(f"|a_{n}| = {abs(a)!r} exceeds the class bound {2.0 / den!r}")
        coeffs.append(a)
    return CoeffSeq(bp, tuple(coeffs))


# ---------------------------------------------------------------------------
# sampler
# ---------------------------------------------------------------------------


def _free_atoms(rng: np.random.Generator, count: int, k: int):
    thetas = rng.uniform(0.0, TWO_PI, size=(count, k))
    weights = rng.dirichlet(np.ones(k), size=count)
    return thetas, weights


def _compensated_atoms(rng: np.random.Generator, count: int, k: int, target):
    """Draw K free atoms plus a conjugate pair that pins p_1 to `target`.

    `target` is a scalar or per-row array.  The free block carries total
    weight α <= (1 - |target|/2)/2, which keeps the pair angle solvable;
    the pair weights absorb Im(p_1) exactly.  Returns (thetas, weights, ok)
    where rows with ok=False need a redraw (the imaginary-part compensation
    would have needed a negative weight).
    """
    target = np.broadcast_to(np.asarray(target, dtype=float), (count,))
    thetas, weights = _free_atoms(rng, count, k)
    alpha_cap = 0.5 * (1.0 - 0.5 * np.abs(target))
    alpha = rng.uniform(0.0, 1.0, size=count) * alpha_cap

    first_moment = (weights * np.exp(1j * thetas)).sum(axis=1)
    pair_total = 1.0 - alpha
    cos_phi = np.clip((0.5 * target - alpha * first_moment.real) / pair_total, -1.0, 1.0)
    sin_phi = np.sqrt(np.clip(1.0 - cos_phi**2, 0.0, None))
    resid_imag = alpha * first_moment.imag
    with np.errstate(divide="ignore", invalid="ignore"):
        pair_diff = np.where(sin_phi > 0.0, -resid_imag / np.where(sin_phi > 0.0, sin_phi, 1.0), 0.0)
    ok = (np.abs(pair_diff) <= pair_total) & ((sin_phi > 0.0) | (np.abs(resid_imag) <= 1e-14))

    phi = np.arccos(cos_phi)
    out_thetas = np.concatenate([thetas, phi[:, None], (TWO_PI - phi[:, None]) % TWO_PI], axis=1)
    pair_hi = 0.5 * (pair_total + pair_diff)
    pair_lo = 0.5 * (pair_total - pair_diff)
    out_weights = np.concatenate([alpha[:, None] * weights, pair_hi[:, None], pair_lo[:, None]], axis=1)
    out_weights = np.clip(out_weights, 0.0, None)
    out_weights /= out_weights.sum(axis=1, keepdims=True)
    return out_thetas, out_weights, ok


def _sample_atoms(rng: np.random.Generator, count: int, k: int, target=None):
    """Batched atom draws; retries constrained rows up to the cap.

    `target` may be None (free draw), a scalar, or a per-row array of real
    p_1 targets.
    """
    if target is None:
        return _free_atoms(rng, count, k)
    target = np.broadcast_to(np.asarray(target, dtype=float), (count,)).copy()
    thetas, weights, ok = _compensated_atoms(rng, count, k, target)
    retries = 0
    while not ok.all():
        retries += 1
        if retries > CONSTRAINT_RETRY_CAP:
            raise ConstraintInfeasibleError(
                f"could not realize the p1 target for {int((~ok).sum())} draw(s) "
                f"after {CONSTRAINT_RETRY_CAP} retries"
            )
        bad = np.flatnonzero(~ok)
        t2, w2, ok2 = _compensated_atoms(rng, bad.size, k, target[bad])
        thetas[bad], weights[bad], ok[bad] = t2, w2, ok2
    return thetas, weights


def sample_measure(rng_seed: int, K: int, target_p1: float | None = None) -> HerglotzMeasure:
    """Draw a seeded random atomic measure with K free atoms.

    With `target_p1` set (a real number in [-2, 2]) the induced p_1 is real
    and equals the target within 1e-9: a compensating conjugate atom pair is
    appended, its weights chosen to cancel Im(p_1) and shift Re(p_1).
    Raises ConstraintInfeasibleError if the compensation keeps requiring a
    negative weight after the retry cap.
    """
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    if target_p1 is not None and not -2.0 <= target_p1 <= 2.0:
        raise DomainError(f"target p1 must lie in [-2, 2], got {target_p1!r}")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    thetas, weights = _sample_atoms(rng, 1, K, target_p1)
    return HerglotzMeasure.from_arrays(thetas[0], weights[0])


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def eval_f(beta: float | BetaParam, mu: HerglotzMeasure, z: complex, tol: float = 1e-12) -> complex:
    """Evaluate the class member generated by `mu` at z, |z| < 1.

    Each kernel integrates to a rotated copy of the extremal function, so
    for atomic measures f(z) = Σ_k λ_k e^{-iθ_k} f̃(e^{iθ_k} z) exactly.
    β = 1 degenerates the integral representation; there f(z) = z p(z).
    """
    b = as_beta(beta).beta
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"|z| must be < 1, got {abs(z)!r}")
    if z == 0:
        return 0.0 + 0.0j
    if b == 1.0:
        kernels = (1.0 + np.exp(1j * mu.thetas) * z) / (1.0 - np.exp(1j * mu.thetas) * z)
        return complex(z * (mu.weights * kernels).sum())

    from .extremal import ftilde_eval  # deferred: extremal builds on this module

    total = 0.0 + 0.0j
    for theta, weight in mu.atoms:
        if weight == 0.0:
            continue
        rot = np.exp(1j * theta)
        total += weight * np.conj(rot) * ftilde_eval(b, rot * z, tol).value
    return complex(total)
