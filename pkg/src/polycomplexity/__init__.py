"""Spreading and complexity measures of the Rakhmanov densities of the
classical orthogonal polynomials (Hermite, Laguerre, Jacobi)."""

from .complexity import (
    ComplexityReport,
    cfs_asymptotic,
    clmc_hermite_asymptotic,
    cramer_rao,
    fisher_shannon,
    lmc,
    n1_asymptotic,
    report,
    w2_hermite_asymptotic,
)
from .errors import IntegrationError, NumericallyDivergentError, ParameterDomainError
from .measures import (
    EntropicProfile,
    MeasureValue,
    SpreadLengths,
    disequilibrium,
    disequilibrium_jacobi_bell,
    disequilibrium_jacobi_sd,
    disequilibrium_laguerre_bell,
    disequilibrium_laguerre_lauricella,
    entropic_moment_numeric,
    fisher_closed,
    fisher_numeric,
    lengths,
    renyi_profile,
    shannon_entropy_numeric,
    variance_closed,
    variance_numeric,
)
from .orthopoly import (
    GaussRule,
    PolynomialFamily,
    RakhmanovDensity,
    evaluate,
    gauss_rule,
    hermite,
    integrate_against_weight,
    jacobi,
    laguerre,
    poly_value,
    recurrence_coefficients,
    zeros,
)
from .specfun import (
    LauricellaFA4Spec,
    SeriesValue,
    SrivastavaDaoustSpec,
    gauss_2f1_terminating,
    lauricella_fa4,
    log_gamma,
    partial_bell,
    pochhammer,
    srivastava_daoust_f4,
)

__version__ = "0.1.0"
