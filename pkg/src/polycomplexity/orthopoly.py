"""Orthonormal classical polynomials, Rakhmanov densities, and Gauss rules.

Everything downstream (measures, complexities, validation oracles) sits on
this module: three-term recurrences normalized so that
``int p_j p_k w = delta_jk``, polynomial zeros via the symmetric tridiagonal
eigenproblem, and Golub-Welsch quadrature rules for the same weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .errors import IntegrationError, ParameterDomainError

HERMITE = "hermite"
LAGUERRE = "laguerre"
JACOBI = "jacobi"


@dataclass(frozen=True)
class PolynomialFamily:
    """Weight-function family: Hermite, Laguerre(alpha), or Jacobi(alpha, beta).

    Doubles as the descriptor of a Gauss-rule weight kind, since the rules
    used here are always attached to one of these weights.
    """

    kind: str
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.kind == HERMITE:
            if self.alpha is not None or self.beta is not None:
                raise ParameterDomainError("hermite takes no parameters")
        elif self.kind == LAGUERRE:
            if self.alpha is None or self.beta is not None:
                raise ParameterDomainError("laguerre takes exactly one parameter alpha")
            if not self.alpha > -1.0:
                raise ParameterDomainError(f"laguerre requires alpha > -1, got {self.alpha}")
        elif self.kind == JACOBI:
            if self.alpha is None or self.beta is None:
                raise ParameterDomainError("jacobi takes parameters alpha and beta")
            if not (self.alpha > -1.0 and self.beta > -1.0):
                raise ParameterDomainError(
                    f"jacobi requires alpha > -1 and beta > -1, got ({self.alpha}, {self.beta})"
                )
        else:
            raise ParameterDomainError(f"unknown family kind {self.kind!r}")

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == HERMITE:
            return (-math.inf, math.inf)
        if self.kind == LAGUERRE:
            return (0.0, math.inf)
        return (-1.0, 1.0)

    @property
    def symmetric(self) -> bool:
        """True when the weight is even about the support midpoint."""
        return self.kind == HERMITE or (self.kind == JACOBI and self.alpha == self.beta)

    def weight_mass(self) -> float:
        """Zeroth moment of the weight, computed through log-gamma."""
        if self.kind == HERMITE:
            return math.sqrt(math.pi)
        if self.kind == LAGUERRE:
            return math.exp(gammaln(self.alpha + 1.0))
        a, b = self.alpha, self.beta
        return math.exp(
            (a + b + 1.0) * math.log(2.0) + gammaln(a + 1.0) + gammaln(b + 1.0) - gammaln(a + b + 2.0)
        )


def hermite() -> PolynomialFamily:
    return PolynomialFamily(HERMITE)


def laguerre(alpha: float) -> PolynomialFamily:
    return PolynomialFamily(LAGUERRE, alpha=float(alpha))


def jacobi(alpha: float, beta: float) -> PolynomialFamily:
    return PolynomialFamily(JACOBI, alpha=float(alpha), beta=float(beta))


@dataclass(frozen=True)
class RakhmanovDensity:
    """Unit-mass density rho(x) = w(x) p_n(x)^2 on the family's support."""

    family: PolynomialFamily
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ParameterDomainError(f"degree must be a nonnegative integer, got {self.degree}")


@lru_cache(maxsize=512)
def _recurrence_arrays(family: PolynomialFamily, n_max: int):
    """a[0..n_max], b[0..n_max] of the orthonormal recurrence.

    x p_k = b[k+1] p_{k+1} + a[k] p_k + b[k] p_{k-1}; b[0] is unused and
    stored as 0.
    """
    if n_max < 0:
        raise ParameterDomainError("n_max must be >= 0")
    k = np.arange(n_max + 1, dtype=float)
    if family.kind == HERMITE:
        a = np.zeros(n_max + 1)
        b = np.sqrt(k / 2.0)
    elif family.kind == LAGUERRE:
        al = family.alpha
        a = 2.0 * k + al + 1.0
        b = np.sqrt(k * (k + al))
    else:
        al, be = family.alpha, family.beta
        a = np.empty(n_max + 1)
        a[0] = (be - al) / (al + be + 2.0)
        if n_max >= 1:
            kk = k[1:]
            a[1:] = (be * be - al * al) / ((2.0 * kk + al + be) * (2.0 * kk + al + be + 2.0))
        bsq = np.zeros(n_max + 1)
        if n_max >= 1:
            bsq[1] = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be) ** 2 * (3.0 + al + be))
        if n_max >= 2:
            kk = k[2:]
            s = 2.0 * kk + al + be
            bsq[2:] = 4.0 * kk * (kk + al) * (kk + be) * (kk + al + be) / (s * s * (s * s - 1.0))
        b = np.sqrt(bsq)
    b[0] = 0.0
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def recurrence_coefficients(family: PolynomialFamily, n_max: int) -> list[tuple[float, float]]:
    """(a_k, b_k) pairs for k = 0..n_max of the orthonormal recurrence."""
    a, b = _recurrence_arrays(family, n_max)
    return [(float(ak), float(bk)) for ak, bk in zip(a, b)]


def _check_support_closure(family: PolynomialFamily, x: np.ndarray):
    lo, hi = family.support
    if np.any(x < lo) or np.any(x > hi):
        raise ParameterDomainError(f"evaluation point outside the closure of the support ({lo}, {hi})")


def _check_weight_endpoints(family: PolynomialFamily, x: np.ndarray):
    # endpoints where the weight diverges must stay strictly interior
    if family.kind == LAGUERRE and family.alpha < 0.0 and np.any(x == 0.0):
        raise ParameterDomainError("x = 0 not allowed for laguerre with alpha < 0 (weight diverges)")
    if family.kind == JACOBI:
        if family.alpha < 0.0 and np.any(x == 1.0):
            raise ParameterDomainError("x = 1 not allowed for jacobi with alpha < 0 (weight diverges)")
        if family.beta < 0.0 and np.any(x == -1.0):
            raise ParameterDomainError("x = -1 not allowed for jacobi with beta < 0 (weight diverges)")


def poly_value(density: RakhmanovDensity, x):
    """Orthonormal p_n(x) and p_n'(x) by upward recurrence.

    The derivative comes from the differentiated recurrence run alongside,
    not from finite differences.  Accepts scalars or arrays.  Laguerre values
    carry the classical (-1)^n leading sign so that e.g. the orthonormal
    degree-1 polynomial is 1 - x.
    """
    fam, n = density.family, density.degree
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    _check_support_closure(fam, xa)
    a, b = _recurrence_arrays(fam, max(n, 1))
    p0 = 1.0 / math.sqrt(fam.weight_mass())
    p_prev = np.zeros_like(xa)
    p = np.full_like(xa, p0)
    dp_prev = np.zeros_like(xa)
    dp = np.zeros_like(xa)
    for k in range(n):
        p_next = ((xa - a[k]) * p - b[k] * p_prev) / b[k + 1]
        dp_next = (p + (xa - a[k]) * dp - b[k] * dp_prev) / b[k + 1]
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
    if fam.kind == LAGUERRE and n % 2 == 1:
        p = -p
        dp = -dp
    if scalar:
        return float(p[0]), float(dp[0])
    return p, dp


def weight_value(family: PolynomialFamily, x):
    """w(x) on the closure of the support, evaluated in log form where the
    direct power product could over/underflow."""
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    _check_support_closure(family, xa)
    _check_weight_endpoints(family, xa)
    if family.kind == HERMITE:
        w = np.exp(-xa * xa)
    elif family.kind == LAGUERRE:
        al = family.alpha
        w = np.zeros_like(xa)
        pos = xa > 0.0
        w[pos] = np.exp(al * np.log(xa[pos]) - xa[pos])
        if al == 0.0:
            w[~pos] = 1.0
    else:
        al, be = family.alpha, family.beta
        w = np.zeros_like(xa)
        interior = (xa > -1.0) & (xa < 1.0)
        xi = xa[interior]
        w[interior] = np.exp(al * np.log1p(-xi) + be * np.log1p(xi))
        if al == 0.0:
            w[xa == 1.0] = 2.0 ** be
        if be == 0.0:
            w[xa == -1.0] = 2.0 ** al
    if scalar:
        return float(w[0])
    return w


def weight_log_derivative(family: PolynomialFamily, x):
    """w'(x)/w(x); finite only strictly inside the support for Laguerre/Jacobi."""
    xa = np.asarray(x, dtype=float)
    if family.kind == HERMITE:
        out = -2.0 * xa
    elif family.kind == LAGUERRE:
        out = family.alpha / xa - 1.0
    else:
        out = family.beta / (1.0 + xa) - family.alpha / (1.0 - xa)
    return out


def evaluate(density: RakhmanovDensity, x):
    """(p_n(x), p_n'(x), rho(x)) with rho = w p_n^2."""
    p, dp = poly_value(density, x)
    w = weight_value(density.family, x)
    return p, dp, w * p * p


@lru_cache(maxsize=2048)
def zeros(density: RakhmanovDensity) -> tuple[float, ...]:
    """The n simple zeros of p_n, ascending; eigenvalues of the Jacobi matrix."""
    n = density.degree
    if n == 0:
        return ()
    a, b = _recurrence_arrays(density.family, n)
    vals = eigh_tridiagonal(a[:n], b[1:n], eigvals_only=True)
    return tuple(float(v) for v in vals)


@dataclass(frozen=True)
class GaussRule:
    """Nodes/weights integrating f against the weight of ``weight_kind``."""

    nodes: np.ndarray
    weights: np.ndarray
    weight_kind: PolynomialFamily
    order: int

    def integrate(self, f) -> float:
        fx = np.asarray(f(self.nodes), dtype=float)
        if not np.all(np.isfinite(fx)):
            bad = self.nodes[~np.isfinite(fx)][0]
            raise IntegrationError(f"integrand non-finite at quadrature node x = {bad}")
        return math.fsum(self.weights * fx)


def _poly_and_christoffel(family: PolynomialFamily, m: int, x: np.ndarray):
    """p_m(x), p_m'(x), and sum_{k<m} p_k(x)^2 (the inverse Christoffel
    function) by the orthonormal recurrence."""
    a, b = _recurrence_arrays(family, m)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(family.weight_mass()))
    dp_prev = np.zeros_like(x)
    dp = np.zeros_like(x)
    ssq = p * p
    for k in range(m):
        p_next = ((x - a[k]) * p - b[k] * p_prev) / b[k + 1]
        dp_next = (p + (x - a[k]) * dp - b[k] * dp_prev) / b[k + 1]
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
        if k < m - 1:
            ssq = ssq + p * p
    return p, dp, ssq


@lru_cache(maxsize=512)
def gauss_rule(weight_kind: PolynomialFamily, order: int) -> GaussRule:
    """Golub-Welsch rule of the given order; exact on degree <= 2*order - 1.

    Nodes are tridiagonal eigenvalues polished by two Newton steps on p_m;
    weights come from the Christoffel function 1/sum_k p_k(x_i)^2, which
    keeps full relative accuracy even where the weight decays below the
    absolute noise floor of the eigenvector approach.
    """
    if order < 1:
        raise ParameterDomainError("quadrature order must be >= 1")
    a, b = _recurrence_arrays(weight_kind, order)
    if order == 1:
        nodes = np.array([a[0]])
    else:
        nodes = eigh_tridiagonal(a[:order], b[1:order], eigvals_only=True)
    for _ in range(2):
        pm, dpm, _ = _poly_and_christoffel(weight_kind, order, nodes)
        nodes = nodes - pm / dpm
    _, _, ssq = _poly_and_christoffel(weight_kind, order, nodes)
    weights = 1.0 / ssq
    if weight_kind.symmetric:
        # enforce the exact node/weight symmetry of an even weight
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return GaussRule(nodes=nodes, weights=weights, weight_kind=weight_kind, order=order)


def integrate_against_weight(weight_kind: PolynomialFamily, f, order: int) -> float:
    """sum_i w_i f(x_i) for the order-point rule of the named weight."""
    return gauss_rule(weight_kind, order).integrate(f)
