"""Closed-form theorem bounds as functions of (β, n, μ, N, p).

Every bound is finite and continuous on β in [0, 1].  The registry at the
bottom ties each bound to its extremal witness; `evaluate` tags the result
SHARP_VERIFIED only when the witness actually reproduces the bound value
to 1e-9, ATTAINMENT_OPEN when a witness exists but falls short, and
SHARP_CLAIMED when no closed-form witness is checkable for the requested
parameters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from . import functionals
from .carath import BetaParam, CoeffSeq, as_beta, coeff_denominator, to_abeta_coeffs
from .errors import DomainError
from .extremal import ExtremalId, extremal_coeffs, ftilde_eval

#: piecewise split point of the Hermitian upper bound, root of 9β² - 20β + 10
BETA_SPLIT = (10.0 - math.sqrt(10.0)) / 9.0

#: attainment tolerance for the SHARP_VERIFIED tag
ATTAINMENT_TOL = 1e-9


class SharpStatus(enum.Enum):
    SHARP_CLAIMED = "sharp-claimed"
    SHARP_VERIFIED = "sharp-verified"
    ATTAINMENT_OPEN = "attainment-open"


@dataclass(frozen=True)
class BoundValue:
    theorem_id: str
    value: float
    sharp: SharpStatus


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def coeff_bound(beta: float | BetaParam, n: int) -> float:
    """|a_n| <= 2/(n - (n-1)β), n >= 2."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    return 2.0 / coeff_denominator(beta, n)


def hankel_mu_bound(beta: float | BetaParam, n: int, mu: float) -> float:
    """|a_n a_{n+2} - mu a_{n+1}^2| <= 4/(σ_n σ_{n+2}) + 4 mu/σ_{n+1}^2, mu >= 0."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if mu < 0:
        raise DomainError(f"mu must be >= 0, got {mu}")
    sn = coeff_denominator(beta, n)
    sn1 = coeff_denominator(beta, n + 1)
    sn2 = coeff_denominator(beta, n + 2)
    return 4.0 / (sn * sn2) + 4.0 * mu / sn1**2


def hankel2_bound(beta: float | BetaParam, n: int) -> float:
    """The mu = 1 case in collected rational form; identical to hankel_mu_bound(β, n, 1)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    b = as_beta(beta).beta
    num = 4.0 * ((2 * n * n - 1) * b * b - (4 * n * n + 4 * n - 2) * b + 2 * n * n + 4 * n + 1)
    den = (
        coeff_denominator(b, n)
        * coeff_denominator(b, n + 2)
        * coeff_denominator(b, n + 1) ** 2
    )
    return num / den


def zalcman_bound(beta: float | BetaParam) -> float:
    """|a_2 a_3 - a_4| <= 2/(4 - 3β)."""
    return 2.0 / (4.0 - 3.0 * as_beta(beta).beta)


def toeplitz2_bound(beta: float | BetaParam, n: int) -> float:
    """|a_n^2 - a_{n+1}^2| <= 4 (1/σ_n^2 + 1/σ_{n+1}^2), n >= 1."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return 4.0 * (1.0 / coeff_denominator(beta, n) ** 2 + 1.0 / coeff_denominator(beta, n + 1) ** 2)


def toeplitz3_abs_bound(beta: float | BetaParam) -> float:
    """|1 - 2a_2^2 + 2a_2^2 a_3 - a_3^2| <= (4β⁴-28β³+101β²-196β+140)/((3-2β)²(β-2)²)."""
    b = as_beta(beta).beta
    num = 4 * b**4 - 28 * b**3 + 101 * b**2 - 196 * b + 140
    return num / ((3.0 - 2.0 * b) ** 2 * (b - 2.0) ** 2)


def hermitian_t31_upper(beta: float | BetaParam) -> float:
    """Piecewise upper bound of the Hermitian determinant.

    1 for β <= (10-√10)/9, else (4β⁴-28β³+37β²-4β-4)/((3-2β)²(2-β)²);
    the two branches meet continuously at the split point.
    """
    b = as_beta(beta).beta
    if b <= BETA_SPLIT:
        return 1.0
    num = 4 * b**4 - 28 * b**3 + 37 * b**2 - 4 * b - 4
    return num / ((3.0 - 2.0 * b) ** 2 * (2.0 - b) ** 2)


def hermitian_t31_lower(beta: float | BetaParam) -> float:
    """Lower bound 1 - (4β-9)/(β⁴-4β³+2β²+8β-8)."""
    b = as_beta(beta).beta
    den = b**4 - 4 * b**3 + 2 * b**2 + 8 * b - 8
    if den >= -1e-9:  # stays in [-8, -1] on [0, 1]; defensive only
        raise ArithmeticError(f"lower-bound denominator degenerate at beta={b}")
    return 1.0 - (4.0 * b - 9.0) / den


def coeff_diff_bound(beta: float | BetaParam, n: int, N: int, p: float) -> float:
    """Bound for |a_{n+1}^N - a_n^N| over members with real p_1 = p.

    With σ = (n - (n-1)β)^N and μ = (n+1 - nβ)^N:

        β in [0,1):  2(σ^n - μ^n)(2^{N-1}σ² + 2^{N-1}μ² - σμ p^N)
                     / ((σ-μ) σ μ^{n+1})  +  σ^n |2^N μ - σ p^N| / (σ μ^{n+1})
        β = 1:       2^N sqrt(2 - 2^{1-N} p^N) / σ

    Sharp at p = 2 for β < 1 (where the expression collapses to
    2^N (μ-σ)/(σμ)) and at p = -2, odd N, for β = 1.
    """
    b = as_beta(beta).beta
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not -2.0 <= p <= 2.0:
        raise DomainError(f"p must lie in [-2, 2], got {p!r}")
    pN = float(p) ** N
    if b == 1.0:
        radicand = 2.0 - 2.0 ** (1 - N) * pN
        if radicand < 0.0:  # impossible for p in [-2, 2]; defensive only
            raise DomainError(f"negative radicand {radicand!r}")
        return 2.0**N * math.sqrt(radicand)
    sig = coeff_denominator(b, n) ** N
    mu = coeff_denominator(b, n + 1) ** N
    try:
        first = (
            2.0
            * (sig**n - mu**n)
            * (2.0 ** (N - 1) * sig**2 + 2.0 ** (N - 1) * mu**2 - sig * mu * pN)
            / ((sig - mu) * sig * mu ** (n + 1))
        )
        second = sig**n * abs(2.0**N * mu - sig * pN) / (sig * mu ** (n + 1))
    except OverflowError:  # mu^{n+1} leaves float range for large n*N
        raise DomainError(f"bound overflows double precision at n={n}, N={N}") from None
    value = first + second
    if not math.isfinite(value):
        raise DomainError(f"bound overflows double precision at n={n}, N={N}")
    return value


def growth_envelope(beta: float | BetaParam, r: float) -> tuple[float, float]:
    """Sharp modulus envelope (-f̃(-r), f̃(r)) for |f| on |z| = r < 1."""
    b = as_beta(beta).beta
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    if r == 0.0:
        return (0.0, 0.0)
    lower = -ftilde_eval(b, -r).value.real
    upper = ftilde_eval(b, r).value.real
    return (lower, upper)


def re_fz_envelope(beta: float | BetaParam, r: float) -> tuple[float, float]:
    """Sharp envelope of Re(f(z)/z) on |z| = r: the growth envelope scaled by 1/r."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    lower, upper = growth_envelope(beta, r)
    return (lower / r, upper / r)


# ---------------------------------------------------------------------------
# registry with witness attainment
# ---------------------------------------------------------------------------

COEFF = "coeff"
HANKEL_MU = "hankel-mu"
H2 = "h2"
ZALCMAN_23 = "zalcman"
T2N = "t2n"
T31_ABS = "t31-abs"
T31_UPPER = "t31-upper"
T31_LOWER = "t31-lower"
COEFF_DIFF = "coeff-diff"


def _minus_ftilde_of_minus_z(beta: BetaParam, M: int) -> CoeffSeq:
    # -f̃(-z): the kernel rotated to θ = π, p_k = 2(-1)^k, with p_1 = -2
    return to_abeta_coeffs(beta, [2.0 * (-1.0) ** k for k in range(1, M)])


def _witness_coeff(beta, n):
    seq = extremal_coeffs(ExtremalId.FTILDE, beta, n)
    return abs(seq.a(n))


def _witness_hankel(beta, n, mu):
    seq = extremal_coeffs(ExtremalId.FTILDE1, beta, n + 2)
    return abs(functionals.hankel2(seq, n, mu))


def _witness_zalcman(beta):
    seq = extremal_coeffs(ExtremalId.FTILDE2, beta, 4)
    return abs(functionals.zalcman(seq, 2, 3))


def _witness_t2n(beta, n):
    seq = extremal_coeffs(ExtremalId.FTILDE1, beta, n + 1)
    return abs(functionals.hermitian_t2n(seq, n))


def _witness_t31_abs(beta):
    seq = extremal_coeffs(ExtremalId.FTILDE1, beta, 3)
    return abs(functionals.toeplitz3(seq))


def _witness_t31_upper(beta):
    # the identity map attains 1; the principal extremal attains the rational branch
    seq = extremal_coeffs(ExtremalId.FTILDE, beta, 3)
    return max(1.0, functionals.hermitian_t31(seq))


def _witness_t31_lower(beta):
    seq = extremal_coeffs(ExtremalId.FTILDE3, beta, 3)
    return functionals.hermitian_t31(seq)


def _witness_coeff_diff(beta, n, N, p):
    b = as_beta(beta).beta
    if b < 1.0 and p == 2.0:
        seq = extremal_coeffs(ExtremalId.FTILDE, beta, n + 1)
    elif b == 1.0 and p == -2.0 and N % 2 == 1:
        seq = _minus_ftilde_of_minus_z(as_beta(beta), n + 1)
    else:
        return None
    return abs(functionals.coeff_diff_power(seq, n, N))


@dataclass(frozen=True)
class TheoremSpec:
    theorem_id: str
    params: tuple[str, ...]
    bound: Callable
    witness: Callable  # same signature as bound; may return None


THEOREMS: dict[str, TheoremSpec] = {
    t.theorem_id: t
    for t in (
        TheoremSpec(COEFF, ("n",), coeff_bound, _witness_coeff),
        TheoremSpec(HANKEL_MU, ("n", "mu"), hankel_mu_bound, _witness_hankel),
        TheoremSpec(H2, ("n",), hankel2_bound, lambda beta, n: _witness_hankel(beta, n, 1.0)),
        TheoremSpec(ZALCMAN_23, (), zalcman_bound, _witness_zalcman),
        TheoremSpec(T2N, ("n",), toeplitz2_bound, _witness_t2n),
        TheoremSpec(T31_ABS, (), toeplitz3_abs_bound, _witness_t31_abs),
        TheoremSpec(T31_UPPER, (), hermitian_t31_upper, _witness_t31_upper),
        TheoremSpec(T31_LOWER, (), hermitian_t31_lower, _witness_t31_lower),
        TheoremSpec(COEFF_DIFF, ("n", "N", "p"), coeff_diff_bound, _witness_coeff_diff),
    )
}


def evaluate(theorem_id: str, beta: float | BetaParam, **params) -> BoundValue:
    """Evaluate a registered bound and tag its measured sharpness status."""
    try:
        spec = THEOREMS[theorem_id]
    except KeyError:
        raise DomainError(f"unknown theorem id {theorem_id!r}") from None
    missing = [name for name in spec.params if name not in params]
    if missing:
        raise DomainError(f"{theorem_id} needs parameter(s) {missing}")
    args = {name: params[name] for name in spec.params}
    value = spec.bound(beta, **args)
    attained = spec.witness(beta, **args)
    if attained is None:
        sharp = SharpStatus.SHARP_CLAIMED
    elif abs(attained - value) <= ATTAINMENT_TOL:
        sharp = SharpStatus.SHARP_VERIFIED
    else:
        sharp = SharpStatus.ATTAINMENT_OPEN
    return BoundValue(theorem_id, float(value), sharp)
