"""Single (non-composite) spreading measures of Rakhmanov densities.

Closed forms where the source families have them (variance, Fisher
information, the two combinatorial disequilibrium representations), plus
quadrature oracles for everything: exact reduced-weight Gauss rules for
polynomial-times-weight integrands, and adaptive quadrature with zero
splitting and endpoint/tail transforms for entropies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .doubledouble import DD
from .errors import IntegrationError, NumericallyDivergentError, ParameterDomainError
from .orthopoly import (
    HERMITE,
    JACOBI,
    LAGUERRE,
    PolynomialFamily,
    RakhmanovDensity,
    gauss_rule,
    hermite,
    jacobi,
    laguerre,
    poly_value,
    weight_log_derivative,
    weight_value,
    zeros,
)
from .quadrature import integrate_adaptive
from .specfun import (
    ILL_CONDITION_RATIO,
    LauricellaFA4Spec,
    SrivastavaDaoustSpec,
    _bell_table,
    _gauss_2f1_dd,
    lauricella_fa4,
    srivastava_daoust_f4,
)

#: largest degree for which the Bell-polynomial disequilibrium is the default
#: path; beyond it cancellation growth makes the combinatorial forms
#: unreliable and the exact Gauss oracle takes over.
COMBINATORIAL_MAX_DEGREE = 12

DEFAULT_TOL = 1e-9

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class MeasureValue:
    """A scalar measure: finite value or +inf, how it was obtained, and
    whether its source sum was flagged ill-conditioned."""

    value: float
    method: str  # "closed-form" | "numeric" | "asymptotic"
    condition_flag: bool = False

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class EntropicProfile:
    q: float
    w_q: float
    r_q: float
    n_q: float


@dataclass(frozen=True)
class SpreadLengths:
    std_dev: float
    shannon_length: float
    fisher_length: MeasureValue


# ---------------------------------------------------------------------------
# closed forms


def variance_closed(density: RakhmanovDensity) -> float:
    fam, n = density.family, density.degree
    if fam.kind == HERMITE:
        return n + 0.5
    if fam.kind == LAGUERRE:
        al = fam.alpha
        return 2.0 * n * n + 2.0 * (al + 1.0) * n + al + 1.0
    return _jacobi_variance(n, fam.alpha, fam.beta)


def _jacobi_variance(n, a, b):
    s = 2 * n + a + b
    first = (
        4 * (n + 1) * (n + a + 1) * (n + b + 1) * (n + a + b + 1)
        / ((s + 1) * (s + 2) ** 2 * (s + 3))
    )
    if n == 0:
        return first
    second = 4 * n * (n + a) * (n + b) * (n + a + b) / ((s - 1) * s ** 2 * (s + 1))
    return first + second


def fisher_closed(density: RakhmanovDensity) -> MeasureValue:
    """Piecewise closed-form Fisher information; +inf exactly on the
    divergent parameter regions.

    The Jacobi (alpha > 1, beta = 0) branch is filled in through the exact
    x -> -x reflection, which swaps the two parameters.
    """
    fam, n = density.family, density.degree
    if fam.kind == HERMITE:
        return MeasureValue(4.0 * n + 2.0, "closed-form")
    if fam.kind == LAGUERRE:
        al = fam.alpha
        if al == 0.0:
            return MeasureValue(4.0 * n + 1.0, "closed-form")
        if al > 1.0:
            return MeasureValue(((2 * n + 1) * al + 1.0) / (al * al - 1.0), "closed-form")
        return MeasureValue(math.inf, "closed-form")
    al, be = fam.alpha, fam.beta
    if al == 0.0 and be == 0.0:
        return MeasureValue(float(2 * n * (n + 1) * (2 * n + 1)), "closed-form")
    if al == 0.0 and be > 1.0:
        return MeasureValue(_jacobi_fisher_edge(n, be), "closed-form")
    if be == 0.0 and al > 1.0:
        return MeasureValue(_jacobi_fisher_edge(n, al), "closed-form")
    if al > 1.0 and be > 1.0:
        return MeasureValue(_jacobi_fisher_interior(n, al, be), "closed-form")
    return MeasureValue(math.inf, "closed-form")


def _jacobi_fisher_edge(n, b):
    return (2 * n + b + 1) / 4.0 * (
        n * n / (b + 1) + n + (4 * n + 1) * (n + b + 1) + (n + 1) ** 2 / (b - 1)
    )


def _jacobi_fisher_interior(n, a, b):
    return (2 * n + a + b + 1) / (4 * (n + a + b - 1)) * (
        n * (n + a + b - 1) * ((n + a) / (b + 1) + 2 + (n + b) / (a + 1))
        + (n + 1) * (n + a + b) * ((n + a) / (b - 1) + 2 + (n + b) / (a - 1))
    )


# ---------------------------------------------------------------------------
# quadrature pieces: support split at polynomial zeros, endpoint-local
# coordinates where the weight is singular, exponential maps on tails


def _interior_piece(density, core, need_logd, a, b):
    fam = density.family

    def f(x):
        p, dp = poly_value(density, x)
        w = weight_value(fam, x)
        wl = weight_log_derivative(fam, x) if need_logd else None
        return core(x, w, p, dp, wl)

    return f, a, b


def _tail_piece(density, core, need_logd, anchor, side):
    # t in (0, 1], x = anchor -/+ ln t; integral over dx equals
    # int_0^1 g(x(t)) / t dt on either side.
    fam = density.family
    sgn = -1.0 if side == "right" else 1.0

    def f(t):
        x = anchor + sgn * np.log(t)
        p, dp = poly_value(density, x)
        w = weight_value(fam, x)
        wl = weight_log_derivative(fam, x) if need_logd else None
        return core(x, w, p, dp, wl) / t

    return f, 0.0, 1.0


def _jacobi_endpoint_piece(density, core, need_logd, inner, side):
    # local coordinate = distance to the +/-1 endpoint, so the weight factor
    # (1 -/+ x)^alpha is evaluated without cancellation
    al, be = density.family.alpha, density.family.beta

    if side == "right":
        def f(t):
            x = 1.0 - t
            p, dp = poly_value(density, x)
            w = np.exp(al * np.log(t) + be * np.log(2.0 - t))
            wl = (be / (2.0 - t) - al / t) if need_logd else None
            return core(x, w, p, dp, wl)

        return f, 0.0, 1.0 - inner

    def f(s):
        x = s - 1.0
        p, dp = poly_value(density, s - 1.0)
        w = np.exp(al * np.log(2.0 - s) + be * np.log(s))
        wl = (be / s - al / (2.0 - s)) if need_logd else None
        return core(x, w, p, dp, wl)

    return f, 0.0, 1.0 + inner


def _density_pieces(density, core, need_logd=False):
    fam, n = density.family, density.degree
    zs = list(zeros(density))
    pieces = []
    if fam.kind == HERMITE:
        left = zs[0] if zs else 0.0
        right = zs[-1] if zs else 0.0
        pieces.append(_tail_piece(density, core, need_logd, left, "left"))
        for a, b in zip(zs, zs[1:]):
            pieces.append(_interior_piece(density, core, need_logd, a, b))
        pieces.append(_tail_piece(density, core, need_logd, right, "right"))
    elif fam.kind == LAGUERRE:
        # with no zeros, split at the weight's mean so the tail map has an anchor
        right = zs[-1] if zs else fam.alpha + 1.0
        cuts = [0.0] + (zs if zs else [right])
        for a, b in zip(cuts, cuts[1:]):
            pieces.append(_interior_piece(density, core, need_logd, a, b))
        pieces.append(_tail_piece(density, core, need_logd, right, "right"))
    else:
        left_inner = zs[0] if zs else 0.0
        right_inner = zs[-1] if zs else 0.0
        pieces.append(_jacobi_endpoint_piece(density, core, need_logd, left_inner, "left"))
        for a, b in zip(zs, zs[1:]):
            pieces.append(_interior_piece(density, core, need_logd, a, b))
        pieces.append(_jacobi_endpoint_piece(density, core, need_logd, right_inner, "right"))
    return pieces


def _entropy_core(x, w, p, dp, wl):
    rho = w * p * p
    out = np.zeros_like(rho)
    pos = rho > 0.0
    out[pos] = -rho[pos] * np.log(rho[pos])
    return out


def _fisher_core(x, w, p, dp, wl):
    return w * (p * wl + 2.0 * dp) ** 2


def _power_core(q):
    def core(x, w, p, dp, wl):
        return (w * p * p) ** q

    return core


# ---------------------------------------------------------------------------
# numeric oracles


def variance_numeric(density: RakhmanovDensity) -> float:
    """<x^2> - <x>^2 via the exact same-weight Gauss moment rule."""
    fam, n = density.family, density.degree
    rule = gauss_rule(fam, n + 2)
    p, _ = poly_value(density, rule.nodes)
    p2 = p * p
    m1 = math.fsum(rule.weights * rule.nodes * p2)
    m2 = math.fsum(rule.weights * rule.nodes ** 2 * p2)
    return m2 - m1 * m1


def fisher_numeric(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL,
                   max_panels: int = 6000) -> float:
    """int rho'^2 / rho via the reduced integrand (w' p + 2 w p')^2 / w,
    integrated adaptively.  On the families' divergent parameter regions the
    refinement budget runs out and the failure is reported as numerically
    divergent; this oracle cannot certify divergence, only fail to converge.
    """
    pieces = _density_pieces(density, _fisher_core, need_logd=True)
    try:
        value, _ = integrate_adaptive(pieces, atol=tol, rtol=tol, max_panels=max_panels)
    except IntegrationError as exc:
        raise NumericallyDivergentError(
            f"Fisher integral numerically divergent (no convergence): {exc}",
            estimate=exc.estimate,
            error_estimate=exc.error_estimate,
        ) from exc
    return value


def shannon_entropy_numeric(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL) -> float:
    """S = -int rho ln rho, split at the zeros of p_n where ln rho has its
    logarithmic singularities; unbounded ends are mapped through the
    exponential substitution x = z -/+ ln t."""
    pieces = _density_pieces(density, _entropy_core)
    value, _ = integrate_adaptive(pieces, atol=tol, max_panels=max(6000, 40 * len(pieces)))
    return value


def _check_moment_domain(fam: PolynomialFamily, q: float):
    if fam.kind == LAGUERRE and q * fam.alpha <= -1.0:
        raise ParameterDomainError(
            f"entropic moment diverges at x=0: q*alpha = {q * fam.alpha} <= -1"
        )
    if fam.kind == JACOBI:
        if q * fam.alpha <= -1.0:
            raise ParameterDomainError(
                f"entropic moment diverges at x=1: q*alpha = {q * fam.alpha} <= -1"
            )
        if q * fam.beta <= -1.0:
            raise ParameterDomainError(
                f"entropic moment diverges at x=-1: q*beta = {q * fam.beta} <= -1"
            )


def _wq_terms(rule, p: np.ndarray, q: int) -> float:
    # w * p^{2q} as (w^{1/q} p^2)^q: the bracketed factor stays near the
    # density scale, avoiding overflow of p^{2q} against an underflowing w
    return math.fsum((rule.weights ** (1.0 / q) * p * p) ** q)


def _wq_exact_integer(density: RakhmanovDensity, q: int) -> float:
    """W_q for integer q via a single Gauss rule in the reduced weight:
    w(x)^q is itself a (rescaled) member weight, and p_n^{2q} is a
    polynomial, so the rule is exact up to rounding."""
    fam, n = density.family, density.degree
    order = q * n + 1
    if fam.kind == HERMITE:
        rule = gauss_rule(hermite(), order)
        rt = math.sqrt(float(q))
        p, _ = poly_value(density, rule.nodes / rt)
        return _wq_terms(rule, p, q) / rt
    if fam.kind == LAGUERRE:
        rule = gauss_rule(laguerre(q * fam.alpha), order)
        p, _ = poly_value(density, rule.nodes / q)
        return math.exp(-(q * fam.alpha + 1.0) * math.log(float(q))) * _wq_terms(rule, p, q)
    rule = gauss_rule(jacobi(q * fam.alpha, q * fam.beta), order)
    p, _ = poly_value(density, rule.nodes)
    return _wq_terms(rule, p, q)


def entropic_moment_numeric(density: RakhmanovDensity, q: float, *,
                            tol: float = DEFAULT_TOL) -> float:
    """W_q = int rho^q.  Integer q uses the exact reduced-weight Gauss rule;
    non-integer q uses endpoint-aware adaptive quadrature."""
    if not q > 0.0:
        raise ParameterDomainError(f"entropic moment order must be positive, got {q}")
    fam = density.family
    _check_moment_domain(fam, q)
    if float(q).is_integer():
        return _wq_exact_integer(density, int(q))
    pieces = _density_pieces(density, _power_core(q))
    value, _ = integrate_adaptive(pieces, atol=tol)
    return value


def renyi_profile(density: RakhmanovDensity, q: float, *,
                  tol: float = DEFAULT_TOL) -> EntropicProfile:
    """(W_q, R_q, N_q); the q -> 1 limit returns the Shannon entries."""
    if q == 1.0:
        s = shannon_entropy_numeric(density, tol=tol)
        return EntropicProfile(q=1.0, w_q=1.0, r_q=s, n_q=math.exp(s))
    w = entropic_moment_numeric(density, q, tol=tol)
    r = math.log(w) / (1.0 - q)
    return EntropicProfile(q=q, w_q=w, r_q=r, n_q=math.exp(r))


# ---------------------------------------------------------------------------
# disequilibrium W_2: combinatorial representations and default path


def _require_diseq_alpha(name: str, value: float):
    if not value > -0.5:
        raise ParameterDomainError(f"disequilibrium is defined for {name} > -1/2, got {value}")


def _poch_dd(a: float, k: int) -> DD:
    out = DD(1.0)
    for j in range(k):
        out = out * (a + j)
    return out


def _condition_flag(ksum: DD, max_term: float) -> bool:
    value = abs(float(ksum))
    return max_term > ILL_CONDITION_RATIO * value if value != 0.0 else max_term > 0.0


def disequilibrium_laguerre_lauricella(n: int, alpha: float) -> MeasureValue:
    """W_2 of the Laguerre density via the terminating four-variate
    Lauricella F_A series at arguments (1/2, 1/2, 1/2, 1/2)."""
    _require_diseq_alpha("alpha", alpha)
    spec = LauricellaFA4Spec(
        a=2.0 * alpha + 1.0,
        b=(float(-n),) * 4,
        c=(alpha + 1.0,) * 4,
        x=(0.5,) * 4,
    )
    sv = lauricella_fa4(spec)
    log_pre = (
        2.0 * (gammaln(n + 1.0) - gammaln(alpha + n + 1.0))
        + gammaln(2.0 * alpha + 1.0)
        - (2.0 * alpha + 1.0) * _LN2
        + 4.0 * (gammaln(n + alpha + 1.0) - gammaln(n + 1.0) - gammaln(alpha + 1.0))
    )
    return MeasureValue(math.exp(log_pre) * sv.value, "closed-form", sv.ill_conditioned)


def disequilibrium_laguerre_bell(n: int, alpha: float) -> MeasureValue:
    """W_2 of the Laguerre density as the Bell-polynomial sum over k = 0..4n.

    The common scale sqrt(Gamma(n+alpha+1)/n!)/Gamma(alpha+1) of the Taylor
    coefficients is pulled out (Bell polynomials are homogeneous of degree 4
    in their arguments) so the cancellation-prone part runs entirely on
    Pochhammer/binomial rationals in double-double arithmetic.
    """
    _require_diseq_alpha("alpha", alpha)
    # reduced Taylor coefficients e_t = (-1)^t C(n,t) / (alpha+1)_t
    e = []
    poch = DD(1.0)
    for t in range(n + 1):
        if t > 0:
            poch = poch * (alpha + t)
        e.append(DD.from_int((-1) ** t * math.comb(n, t)) / poch)
    args = []
    fact = DD(1.0)
    for j in range(1, 4 * n + 2):
        fact = fact * j
        args.append(fact * e[j - 1] if j - 1 <= n else DD(0.0))
    table = _bell_table(4 * n + 4, 4, args)
    ksum = DD(0.0)
    max_term = 0.0
    coef = DD(1.0)  # (2a+1)_k 2^{-k} 24/(k+4)! , normalized to 1 at k=0
    for k in range(4 * n + 1):
        term = coef * table[k + 4][4]
        ksum = ksum + term
        max_term = max(max_term, abs(float(term)))
        coef = coef * (2.0 * alpha + 1.0 + k) / (2.0 * (k + 5))
    log_g = 0.5 * (gammaln(n + alpha + 1.0) - gammaln(n + 1.0)) - gammaln(alpha + 1.0)
    log_scale = 4.0 * log_g + gammaln(2.0 * alpha + 1.0) - (2.0 * alpha + 1.0) * _LN2
    return MeasureValue(
        math.exp(log_scale) * float(ksum), "closed-form", _condition_flag(ksum, max_term)
    )


def disequilibrium_jacobi_sd(n: int, alpha: float, beta: float) -> MeasureValue:
    """W_2 of the Jacobi density via the norm constants d and the terminating
    four-variate Srivastava-Daoust series at unit arguments."""
    _require_diseq_alpha("alpha", alpha)
    _require_diseq_alpha("beta", beta)
    spec = SrivastavaDaoustSpec(
        A=2.0 * alpha + 1.0,
        B=2.0 * alpha + 2.0 * beta + 2.0,
        b=(float(-n),) * 4,
        b2=(alpha + beta + n + 1.0,) * 4,
        c=(alpha + 1.0,) * 4,
        x=(1.0,) * 4,
    )
    sv = srivastava_daoust_f4(spec)
    # d_0^{(2a,2b)} with (2a+2b+1)Gamma(2a+2b+1) folded into Gamma(2a+2b+2)
    log_d0 = (
        (2.0 * alpha + 2.0 * beta + 1.0) * _LN2
        + gammaln(2.0 * alpha + 1.0)
        + gammaln(2.0 * beta + 1.0)
        - gammaln(2.0 * alpha + 2.0 * beta + 2.0)
    )
    log_dn = (
        (alpha + beta + 1.0) * _LN2
        + gammaln(alpha + n + 1.0)
        + gammaln(beta + n + 1.0)
        - gammaln(n + 1.0)
        - math.log(alpha + beta + 2.0 * n + 1.0)
        - gammaln(alpha + beta + n + 1.0)
    )
    log_binom = gammaln(n + alpha + 1.0) - gammaln(n + 1.0) - gammaln(alpha + 1.0)
    log_pre = log_d0 - 2.0 * log_dn + 4.0 * log_binom
    return MeasureValue(math.exp(log_pre) * sv.value, "closed-form", sv.ill_conditioned)


def disequilibrium_jacobi_bell(n: int, alpha: float, beta: float) -> MeasureValue:
    """W_2 of the Jacobi density as the Bell-polynomial sum, with the
    endpoint integrals I(k, 2, alpha, beta) reduced to terminating 2F1 sums
    at z = 2 (finite despite |z| > 1 because -k terminates them)."""
    _require_diseq_alpha("alpha", alpha)
    _require_diseq_alpha("beta", beta)
    abn1 = alpha + beta + n + 1.0
    # reduced coefficients e_t = sum_i (-1)^{i-t} C(n,i) C(i,t)
    #   (a+b+n+1)_i / (2^i (a+1)_i); the i-independent Gamma-ratio scale is
    #   factored into log_g below
    e = []
    for t in range(n + 1):
        s = DD.from_int(math.comb(n, t)) * _poch_dd(abn1, t) / (_poch_dd(alpha + 1.0, t) * float(2 ** t))
        acc = s
        for i in range(t, n):
            s = s * (-(n - i) * (abn1 + i)) / (2.0 * (i + 1 - t) * (alpha + 1.0 + i))
            acc = acc + s
        e.append(acc)
    args = []
    fact = DD(1.0)
    for j in range(1, 4 * n + 2):
        fact = fact * j
        args.append(fact * e[j - 1] if j - 1 <= n else DD(0.0))
    table = _bell_table(4 * n + 4, 4, args)
    ksum = DD(0.0)
    max_term = 0.0
    coef = DD(1.0)  # (-1)^k 24/(k+4)! normalized to 1 at k=0
    for k in range(4 * n + 1):
        f21 = _gauss_2f1_dd(k, 1.0 + 2.0 * beta, 2.0 + 2.0 * (alpha + beta), 2.0)
        term = coef * table[k + 4][4] * f21
        ksum = ksum + term
        max_term = max(max_term, abs(float(term)))
        coef = coef * (-1.0) / (k + 5.0)
    log_g = (
        0.5
        * (
            gammaln(alpha + n + 1.0)
            + math.log(2.0 * n + alpha + beta + 1.0)
            - gammaln(n + 1.0)
            - (alpha + beta + 1.0) * _LN2
            - gammaln(alpha + beta + n + 1.0)
            - gammaln(n + beta + 1.0)
        )
        + gammaln(alpha + beta + n + 1.0)
        - gammaln(alpha + 1.0)
    )
    log_ci = (
        (1.0 + 2.0 * alpha + 2.0 * beta) * _LN2
        + gammaln(2.0 * alpha + 1.0)
        + gammaln(2.0 * beta + 1.0)
        - gammaln(2.0 * alpha + 2.0 * beta + 2.0)
    )
    return MeasureValue(
        math.exp(4.0 * log_g + log_ci) * float(ksum),
        "closed-form",
        _condition_flag(ksum, max_term),
    )


def disequilibrium(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Default W_2 path: Bell representation up to COMBINATORIAL_MAX_DEGREE
    for Laguerre/Jacobi, exact Gauss quadrature beyond and for Hermite (which
    has no known general-n closed form)."""
    fam, n = density.family, density.degree
    if fam.kind == HERMITE:
        return MeasureValue(_wq_exact_integer(density, 2), "numeric")
    if fam.kind == LAGUERRE:
        _require_diseq_alpha("alpha", fam.alpha)
        if n <= COMBINATORIAL_MAX_DEGREE:
            return disequilibrium_laguerre_bell(n, fam.alpha)
        return MeasureValue(_wq_exact_integer(density, 2), "numeric")
    _require_diseq_alpha("alpha", fam.alpha)
    _require_diseq_alpha("beta", fam.beta)
    if n <= COMBINATORIAL_MAX_DEGREE:
        return disequilibrium_jacobi_bell(n, fam.alpha, fam.beta)
    return MeasureValue(_wq_exact_integer(density, 2), "numeric")


def lengths(density: RakhmanovDensity, *, tol: float = DEFAULT_TOL) -> SpreadLengths:
    """(standard deviation, Shannon length, Fisher length).

    When the closed-form Fisher information is +inf the Fisher length is
    undefined; it is reported as 0 with the condition flag set, never as a
    silent 0.
    """
    v = variance_numeric(density)
    s = shannon_entropy_numeric(density, tol=tol)
    f = fisher_closed(density)
    if math.isinf(f.value):
        dx = MeasureValue(0.0, "closed-form", condition_flag=True)
    elif f.value == 0.0:
        dx = MeasureValue(math.inf, "closed-form")
    else:
        dx = MeasureValue(1.0 / math.sqrt(f.value), "closed-form")
    return SpreadLengths(std_dev=math.sqrt(v), shannon_length=math.exp(s), fisher_length=dx)
