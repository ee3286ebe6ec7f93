"""Numerical library for a one-parameter class of holomorphic semigroup generators.

Members f(z) = z + Σ a_n z^n satisfy Re(β f(z)/z + (1-β) f'(z)) > 0 on the
unit disk for a filtration parameter β in [0, 1].  The package evaluates
the sharp coefficient-functional bounds of the class (Hankel, Toeplitz,
Hermitian-Toeplitz, Zalcman, successive-difference powers), its growth
envelopes, and the Bohr / Bohr-Rogosinski radii, and verifies each bound
empirically over seeded Carathéodory samples.
"""

from .bounds import (
    BoundValue,
    SharpStatus,
    coeff_bound,
    coeff_diff_bound,
    growth_envelope,
    hankel2_bound,
    hankel_mu_bound,
    hermitian_t31_lower,
    hermitian_t31_upper,
    re_fz_envelope,
    toeplitz2_bound,
    toeplitz3_abs_bound,
    zalcman_bound,
)
from .carath import (
    BetaParam,
    CoeffSeq,
    HerglotzMeasure,
    LiberaTriple,
    as_beta,
    carath_coeffs,
    coeff_denominator,
    eval_f,
    libera_expand,
    psd_check,
    sample_measure,
    to_abeta_coeffs,
)
from .errors import (
    AbetaError,
    ConstraintInfeasibleError,
    DomainError,
    LengthError,
    LimitError,
    NoRootError,
)
from .extremal import (
    EvalResult,
    ExtremalId,
    extremal_coeffs,
    ftilde_at_minus1,
    ftilde_at_minus1_series,
    ftilde_coeff,
    ftilde_eval,
)
from .functionals import (
    FunctionalKind,
    FunctionalValue,
    coeff_diff_power,
    hankel2,
    hermitian_t2n,
    hermitian_t31,
    toeplitz3,
    zalcman,
)
from .radii import (
    RadiusResult,
    bohr_radius,
    distance_lower,
    radius_curve,
    rogosinski_radius,
)
from .verify import (
    GrowthReport,
    T31LowerSurfaceReport,
    VerifyReport,
    run_registry,
    scan_zalcman_surface,
    verify_bound,
    verify_growth,
    verify_t31_lower_surface,
)

__version__ = "0.1.0"
