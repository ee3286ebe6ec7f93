"""Coefficient functionals on a finite coefficient sequence.

Signed/complex values are returned; callers take the modulus where a
theorem bounds it.  The Hermitian determinant is real by construction and
is bounded on both sides, so it stays signed.  a_1 = 1 throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .carath import CoeffSeq


class FunctionalKind(enum.Enum):
    H2 = "h2"
    T2N = "t2n"
    T31_TOEPLITZ = "t31-toeplitz"
    T31_HERMITIAN = "t31-hermitian"
    ZALCMAN = "zalcman"
    COEFF_DIFF = "coeff-diff"


@dataclass(frozen=True)
class FunctionalValue:
    kind: FunctionalKind
    value: complex  # real-valued for T31_HERMITIAN
    params: dict = field(default_factory=dict)


def hankel2(a: CoeffSeq, n: int, mu: float = 1.0) -> complex:
    """a_n a_{n+2} - mu a_{n+1}^2 (mu = 1 is the 2x2 Hankel determinant)."""
    return a.a(n) * a.a(n + 2) - mu * a.a(n + 1) ** 2


def toeplitz3(a: CoeffSeq) -> complex:
    """Third-order constant-diagonal determinant 1 - 2a_2^2 + 2a_2^2 a_3 - a_3^2."""
    a2, a3 = a.a(2), a.a(3)
    return 1.0 - 2.0 * a2 * a2 + 2.0 * a2 * a2 * a3 - a3 * a3


def hermitian_t31(a: CoeffSeq) -> float:
    """Hermitian third-order determinant 1 - 2|a_2|^2 + 2 Re(a_2^2 conj(a_3)) - |a_3|^2."""
    a2, a3 = a.a(2), a.a(3)
    return float(1.0 - 2.0 * abs(a2) ** 2 + 2.0 * (a2 * a2 * a3.conjugate()).real - abs(a3) ** 2)


def hermitian_t2n(a: CoeffSeq, n: int) -> complex:
    """Second-order determinant a_n^2 - a_{n+1}^2 (no conjugation enters the bound)."""
    return a.a(n) ** 2 - a.a(n + 1) ** 2


def zalcman(a: CoeffSeq, n: int, m: int) -> complex:
    """Signed generalized Zalcman functional a_n a_m - a_{n+m-1}."""
    return a.a(n) * a.a(m) - a.a(n + m - 1)


def coeff_diff_power(a: CoeffSeq, n: int, N: int) -> complex:
    """Successive-coefficient power difference a_{n+1}^N - a_n^N."""
    return a.a(n + 1) ** N - a.a(n) ** N


def evaluate(kind: FunctionalKind, a: CoeffSeq, **params) -> FunctionalValue:
    """Dispatch a functional by kind; params as each functional requires."""
    if kind is FunctionalKind.H2:
        value = hankel2(a, params["n"], params.get("mu", 1.0))
    elif kind is FunctionalKind.T2N:
        value = hermitian_t2n(a, params["n"])
    elif kind is FunctionalKind.T31_TOEPLITZ:
        value = toeplitz3(a)
    elif kind is FunctionalKind.T31_HERMITIAN:
        value = hermitian_t31(a)
    elif kind is FunctionalKind.ZALCMAN:
        value = zalcman(a, params.get("n", 2), params.get("m", 3))
    elif kind is FunctionalKind.COEFF_DIFF:
        value = coeff_diff_power(a, params["n"], params["N"])
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unknown functional kind {kind!r}")
    return FunctionalValue(kind, value, dict(params))
