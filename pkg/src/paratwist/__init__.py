"""Quadratic twists of paramodular Siegel cusp forms, coefficient by coefficient.

The main entry points are :func:`a_chi` and :func:`a_chi_symbolic`, which
express a Fourier coefficient of the twist through coefficients of the
original form.  Supporting modules cover binary quadratic forms, quadratic
character sums, roots of quadratics modulo p^2, coefficient tables and Maass
lifts.
"""

from .charsum import (
    CyclotomicInt,
    GaussSymbolic,
    QuadChar,
    chi_rational,
    gauss_bruteforce,
    gauss_chi,
    gauss_trivial,
    legendre,
    sum_chi_quadratic,
    sum_mm,
    sum_ms,
)
from .coeffs import CoeffTable, LinearForm, emit, ingest, lookup, lookup_symbolic
from .errors import *  # noqa: F401,F403
from .maass import (
    JacobiCoeffs,
    MaassLinearForm,
    curated_sweep,
    maass_coeff,
    maass_table,
    verify_maass_vanishing,
)
from .qform import (
    HalfIntegralForm,
    RationalMatrix2,
    content,
    discriminant4,
    in_ANplus,
    reduce_gl2z,
    transform,
)
from .quadsolve import QuadPoly, inv_mod, roots_mod_p2, satisfies_R, sqrt_mod
from .twist import (
    CaseLabel,
    TwistContext,
    TwistReport,
    a_chi,
    a_chi_symbolic,
    classify,
    f_S,
    required_support,
    symmetry_defect,
)

__version__ = "0.1.0"
