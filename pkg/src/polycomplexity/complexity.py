"""Composite complexity measures and their large-degree asymptotic laws.

The three composites multiply two single measures each:
Cramer-Rao F*V, Fisher-Shannon F*N_1^2/(2 pi e), LMC W_2*N_1.  Asymptotic
evaluators are separate, explicitly labeled operations; they are never
substituted silently for exact or numeric values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import measures
from .errors import IntegrationError, ParameterDomainError
from .measures import DEFAULT_TOL, MeasureValue
from .orthopoly import HERMITE, JACOBI, LAGUERRE, PolynomialFamily, RakhmanovDensity

_E = math.e
_PI = math.pi


def cramer_rao(density: RakhmanovDensity) -> MeasureValue:
    """C_CR = F * V from the closed forms; +inf on divergent Fisher branches."""
    f = measures.fisher_closed(density)
    v = measures.variance_closed(density)
    return MeasureValue(f.value * v, "closed-form", f.condition_flag)


def fisher_shannon(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL) -> MeasureValue:
    """C_FS = F * exp(2 S) / (2 pi e) with closed-form F and numeric S."""
    f = measures.fisher_closed(density)
    if math.isinf(f.value):
        return MeasureValue(math.inf, "closed-form")
    s = measures.shannon_entropy_numeric(density, tol=tol)
    return MeasureValue(f.value * math.exp(2.0 * s) / (2.0 * _PI * _E), "numeric", f.condition_flag)


def lmc(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL) -> MeasureValue:
    """C_LMC = W_2 * exp(S) with the default disequilibrium path and numeric S."""
    w2 = measures.disequilibrium(density, tol=tol)
    s = measures.shannon_entropy_numeric(density, tol=tol)
    return MeasureValue(w2.value * math.exp(s), "numeric", w2.condition_flag)


def n1_asymptotic(family: PolynomialFamily) -> Callable[[int], float]:
    """Leading-order Shannon length for n >> 1, as a function of n:
    Hermite (pi/e) sqrt(2n); Laguerre 2 pi n / e; Jacobi pi/e."""
    if family.kind == HERMITE:
        return lambda n: (_PI / _E) * math.sqrt(2.0 * n)
    if family.kind == LAGUERRE:
        return lambda n: 2.0 * _PI * n / _E
    return lambda n: _PI / _E


def w2_hermite_asymptotic(n: int) -> float:
    """Leading term 2 pi^-2 (2n)^{-1/2} ln n of the Hermite disequilibrium;
    the O(1) correction inside the parenthesis is dropped."""
    if n < 1:
        raise ParameterDomainError("asymptotic form needs n >= 1")
    return 2.0 * _PI ** -2 / math.sqrt(2.0 * n) * math.log(n)


def clmc_hermite_asymptotic(n: int) -> float:
    """Leading term (2 / (pi e)) ln n of the Hermite LMC complexity."""
    if n < 1:
        raise ParameterDomainError("asymptotic form needs n >= 1")
    return 2.0 / (_PI * _E) * math.log(n)


def cfs_asymptotic(family: PolynomialFamily, n: int) -> MeasureValue:
    """Leading-order Fisher-Shannon complexity for n >> 1, per branch; +inf
    where the Fisher information diverges.  The Jacobi (alpha > 1, beta = 0)
    branch follows by the same reflection symmetry as the Fisher closed form.
    """
    if n < 1:
        raise ParameterDomainError("asymptotic form needs n >= 1")
    if family.kind == HERMITE:
        return MeasureValue((4.0 * _PI / _E ** 3) * n ** 2, "asymptotic")
    if family.kind == LAGUERRE:
        al = family.alpha
        if al == 0.0:
            return MeasureValue((8.0 * _PI / _E ** 3) * n ** 3, "asymptotic")
        if al > 1.0:
            return MeasureValue(
                4.0 * al / (al * al - 1.0) * (_PI / _E ** 3) * n ** 3, "asymptotic"
            )
        return MeasureValue(math.inf, "asymptotic")
    al, be = family.alpha, family.beta
    if al == 0.0 and be == 0.0:
        return MeasureValue((2.0 * _PI / _E ** 3) * n ** 3, "asymptotic")
    if al == 0.0 and be > 1.0:
        return MeasureValue(
            0.25 * (_PI / _E ** 3) * (1.0 / (be + 1.0) + 4.0 + 1.0 / (be - 1.0)) * n ** 3,
            "asymptotic",
        )
    if be == 0.0 and al > 1.0:
        return MeasureValue(
            0.25 * (_PI / _E ** 3) * (1.0 / (al + 1.0) + 4.0 + 1.0 / (al - 1.0)) * n ** 3,
            "asymptotic",
        )
    if al > 1.0 and be > 1.0:
        return MeasureValue(
            0.5
            * (_PI / _E ** 3)
            * (be / (be * be - 1.0) + al / (al * al - 1.0))
            * n ** 3,
            "asymptotic",
        )
    return MeasureValue(math.inf, "asymptotic")


@dataclass
class ComplexityReport:
    """All single and composite measures of one density, each tagged with
    how it was obtained.  Entries that could not be computed are absent and
    explained in ``failures``."""

    family: PolynomialFamily
    degree: int
    variance: MeasureValue | None = None
    fisher: MeasureValue | None = None
    shannon_entropy: MeasureValue | None = None
    w2: MeasureValue | None = None
    n1: MeasureValue | None = None
    c_cr: MeasureValue | None = None
    c_fs: MeasureValue | None = None
    c_lmc: MeasureValue | None = None
    failures: dict[str, str] = field(default_factory=dict)

    ENTRY_NAMES = ("variance", "fisher", "shannon_entropy", "w2", "n1", "c_cr", "c_fs", "c_lmc")

    def entries(self) -> dict[str, MeasureValue | None]:
        return {name: getattr(self, name) for name in self.ENTRY_NAMES}


def report(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL) -> ComplexityReport:
    """Aggregate every measure with its method tag; partial results carry the
    failing entries' error causes instead of fabricated values."""
    rep = ComplexityReport(family=density.family, degree=density.degree)
    rep.variance = MeasureValue(measures.variance_closed(density), "closed-form")
    rep.fisher = measures.fisher_closed(density)
    rep.c_cr = MeasureValue(rep.fisher.value * rep.variance.value, "closed-form")
    try:
        s = measures.shannon_entropy_numeric(density, tol=tol)
        rep.shannon_entropy = MeasureValue(s, "numeric")
        rep.n1 = MeasureValue(math.exp(s), "numeric")
    except IntegrationError as exc:
        rep.failures["shannon_entropy"] = str(exc)
        rep.failures["n1"] = "shannon entropy unavailable"
    try:
        rep.w2 = measures.disequilibrium(density, tol=tol)
    except ParameterDomainError as exc:
        rep.failures["w2"] = str(exc)
    if rep.fisher is not None and math.isinf(rep.fisher.value):
        rep.c_fs = MeasureValue(math.inf, "closed-form")
    elif rep.shannon_entropy is not None:
        rep.c_fs = MeasureValue(
            rep.fisher.value * math.exp(2.0 * rep.shannon_entropy.value) / (2.0 * _PI * _E),
            "numeric",
            rep.fisher.condition_flag,
        )
    else:
        rep.failures["c_fs"] = "shannon entropy unavailable"
    if rep.w2 is not None and rep.n1 is not None:
        rep.c_lmc = MeasureValue(
            rep.w2.value * rep.n1.value, "numeric", rep.w2.condition_flag
        )
    else:
        rep.failures["c_lmc"] = rep.failures.get("w2", "shannon entropy unavailable")
    return rep
