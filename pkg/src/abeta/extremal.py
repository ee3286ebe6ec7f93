"""Extremal functions of the class: values and coefficient streams.

The principal extremal function is the kernel average

    f̃(z) = z (-1 + 2 H(z)),    H(z) = Σ_{k>=0} b/(b+k) z^k,  b = 1/(1-β),

equivalently H is the Gauss hypergeometric function with parameter column
(1, b; b+1), and f̃(z) = z + Σ_{n>=2} 2/(n - (n-1)β) z^n.  Special cases:
β = 0 gives f̃(z) = -z - 2 log(1-z); β = 1 gives f̃(z) = z(1+z)/(1-z).

Evaluation strategy: truncated series with an explicit geometric tail
bound for |z| <= 0.95, adaptive quadrature of the kernel integral

    f̃(z) = z b ∫_0^1 u^{b-1} (1+zu)/(1-zu) du

otherwise (the substitution u = t^{1-β} removes the algebraic endpoint
behavior of the raw t-integral).  Three more extremal witnesses appear in
the sharpness statements: the quarter-rotation f̃_1, the cube-symmetric
f̃_2 generated by (1+z^3)/(1-z^3), and f̃_3 generated by
(1-z^2)/(1 - cz + z^2) with c = sqrt((2β²-8β+7)/(2-β²)) <= 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .carath import BetaParam, CoeffSeq, as_beta, coeff_denominator, to_abeta_coeffs
from .errors import DomainError

#: |z| above which series evaluation hands over to quadrature
SWITCH_RADIUS = 0.95

_EPS = float(np.finfo(float).eps)


class ExtremalId(enum.Enum):
    FTILDE = "ftilde"
    FTILDE1 = "ftilde1"
    FTILDE2 = "ftilde2"
    FTILDE3 = "ftilde3"


@dataclass(frozen=True)
class EvalResult:
    """A certified evaluation: value, an absolute error bound, and the route."""

    value: complex
    abs_error_bound: float
    method: str  # "SERIES" | "QUADRATURE"


def ftilde_coeff(beta: float | BetaParam, n: int) -> float:
    """Series coefficient 2/(n - (n-1)β) of the principal extremal, n >= 2."""
    if n < 2:
        raise DomainError(f"coefficient index must be >= 2, got {n} (a_1 = 1)")
    return 2.0 / coeff_denominator(beta, n)


def _series_eval(b: float, z: complex, tol: float) -> EvalResult:
    # Coefficients are nonincreasing in n, so the tail after order n is at
    # most c_{n+1} |z|^{n+1} / (1 - |z|).
    az = abs(z)
    total = z
    zpow = z
    n = 1
    tail = 0.0
    while True:
        n += 1
        zpow = zpow * z
        total += (2.0 / (n - (n - 1) * b)) * zpow
        tail = (2.0 / ((n + 1) - n * b)) * az ** (n + 1) / (1.0 - az)
        if tail <= tol:
            break
        if n > 20000:
            raise ArithmeticError("series evaluation failed to meet tolerance")
    return EvalResult(complex(total), tail, "SERIES")


def _quad_eval(b: float, z: complex, tol: float) -> EvalResult:
    bb = 1.0 / (1.0 - b)

    def kernel(u: float) -> complex:
        zu = z * u
        return bb * u ** (bb - 1.0) * (1.0 + zu) / (1.0 - zu)

    epsabs = 0.25 * tol / max(abs(z), 0.1)
    re, re_err = quad(lambda u: kernel(u).real, 0.0, 1.0, epsabs=epsabs, epsrel=1e-13, limit=300)
    if z.imag == 0.0:
        im, im_err = 0.0, 0.0
    else:
        im, im_err = quad(lambda u: kernel(u).imag, 0.0, 1.0, epsabs=epsabs, epsrel=1e-13, limit=300)
    value = z * complex(re, im)
    return EvalResult(value, abs(z) * (re_err + im_err), "QUADRATURE")


def ftilde_eval(beta: float | BetaParam, z: complex, tol: float = 1e-12) -> EvalResult:
    """Evaluate the principal extremal f̃ at z, |z| <= 1 and z != 1.

    β = 1 uses the closed form z(1+z)/(1-z); otherwise the series route is
    taken for |z| <= 0.95 and the kernel quadrature beyond.
    """
    b = as_beta(beta).beta
    z = complex(z)
    if z == 1.0:
        raise DomainError("z = 1 is the boundary pole of the extremal")
    if abs(z) > 1.0 + 1e-14:
        raise DomainError(f"|z| must be <= 1, got {abs(z)!r}")
    if b == 1.0:
        value = z * (1.0 + z) / (1.0 - z)
        return EvalResult(value, 8.0 * _EPS * (abs(value) + 1.0), "SERIES")
    if abs(z) <= SWITCH_RADIUS:
        return _series_eval(b, z, tol)
    return _quad_eval(b, z, tol)


def ftilde_at_minus1(beta: float | BetaParam) -> float:
    """Boundary value f̃(-1) <= 0, by quadrature of the smooth kernel integral.

    f̃(-1) = -b ∫_0^1 u^{b-1} (1-u)/(1+u) du; at β = 1 the value is 0.
    """
    b = as_beta(beta).beta
    if b == 1.0:
        return 0.0
    bb = 1.0 / (1.0 - b)
    val, _err = quad(
        lambda u: bb * u ** (bb - 1.0) * (1.0 - u) / (1.0 + u),
        0.0,
        1.0,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=300,
    )
    return -val


def _euler_collapse(partials: np.ndarray) -> float:
    v = partials
    while v.size > 1:
        v = 0.5 * (v[:-1] + v[1:])
    return float(v[0])


def ftilde_at_minus1_series(beta: float | BetaParam, tol: float = 1e-10) -> float:
    """Alternating-series route to f̃(-1), kept independent of the quadrature.

    f̃(-1) = -1 + Σ_{k>=0} (-1)^k c_{k+2} with c_n = 2/(n - (n-1)β); the
    partial sums are accelerated by repeated pairwise averaging (the Euler
    transform), which also tames the slow decay near β = 1.
    """
    b = as_beta(beta).beta
    for m in (24, 48, 96, 192):
        terms = np.array([(-1.0) ** k * 2.0 / ((k + 2.0) - (k + 1.0) * b) for k in range(m)])
        partials = np.cumsum(terms)
        est = _euler_collapse(partials)
        check = _euler_collapse(partials[: m - 3])
        if abs(est - check) <= 0.25 * tol:
            return -1.0 + est
    raise ArithmeticError(f"alternating-series acceleration stalled at beta={b}")


def _ftilde3_pcoeffs(beta: float, order: int) -> list[float]:
    """p_1..p_order of (1-z^2)/(1 - cz + z^2) by power-series long division."""
    c = np.sqrt((2.0 * beta**2 - 8.0 * beta + 7.0) / (2.0 - beta**2))
    if c > 2.0:
        raise DomainError(f"generator parameter c = {c!r} leaves the class (needs c <= 2)")
    # q_k = n_k + c q_{k-1} - q_{k-2}, numerator coefficients n_0 = 1, n_2 = -1
    q = [1.0, c]
    for k in range(2, order + 1):
        nk = -1.0 if k == 2 else 0.0
        q.append(nk + c * q[k - 1] - q[k - 2])
    return q[1 : order + 1]


def extremal_coeffs(which: ExtremalId, beta: float | BetaParam, M: int) -> CoeffSeq:
    """Coefficients a_2..a_M of one of the four extremal witnesses.

    FTILDE:  a_n = 2/(n - (n-1)β)
    FTILDE1: a_n = 2 i^{n-1}/(n - (n-1)β)
    FTILDE2: generated by (1+z^3)/(1-z^3), i.e. p_{3k} = 2, else 0
    FTILDE3: generated by (1-z^2)/(1 - cz + z^2), p-series by long division
    """
    bp = as_beta(beta)
    if M < 2:
        raise DomainError(f"M must be >= 2, got {M}")
    order = M - 1
    if which is ExtremalId.FTILDE:
        p = [2.0] * order
    elif which is ExtremalId.FTILDE1:
        p = [2.0 * 1j**k for k in range(1, order + 1)]
    elif which is ExtremalId.FTILDE2:
        p = [2.0 if k % 3 == 0 else 0.0 for k in range(1, order + 1)]
    elif which is ExtremalId.FTILDE3:
        p = _ftilde3_pcoeffs(bp.beta, order)
    else:  # pragma: no cover - exhaustive enum
        raise DomainError(f"unknown extremal id {which!r}")
    return to_abeta_coeffs(bp, p)
