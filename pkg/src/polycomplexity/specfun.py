"""Terminating combinatorial and hypergeometric kernels.

Partial Bell polynomials, terminating Gauss 2F1, the four-variate Lauricella
F_A series, and the four-variate Srivastava-Daoust series.  All quadruple
sums run in double-double arithmetic with incremental rational term updates:
the alternating terms cancel so violently that plain doubles lose every
digit well before the terminating indices reach practical sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .doubledouble import DD
from .errors import ParameterDomainError

#: a series result is flagged ill-conditioned when max|term| / |sum| exceeds this
ILL_CONDITION_RATIO = 1e12


@dataclass(frozen=True)
class SeriesValue:
    """Value of a terminating series plus its cancellation diagnostics."""

    value: float
    ill_conditioned: bool
    max_term: float

    def __float__(self) -> float:
        return self.value


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0.0:
        raise ParameterDomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(a: float, k: int) -> float:
    """(a)_k = a (a+1) ... (a+k-1) as a sign-tracked running product."""
    if not isinstance(k, int) or k < 0:
        raise ParameterDomainError(f"pochhammer order must be a nonnegative integer, got {k}")
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def _bell_table(m: int, l: int, a: Sequence):
    """DP table B[i][j] of partial Bell polynomials over the given arguments.

    Works for any argument type supporting + and * with ints (floats or DD).
    B[i][j] only consults a_1..a_{i-j+1}, so one table serves every smaller
    (i, j) with the same leading arguments.
    """
    zero, one = 0.0 * a[0], 1.0 + 0.0 * a[0]
    B = [[zero] * (l + 1) for _ in range(m + 1)]
    B[0][0] = one
    for i in range(1, m + 1):
        for j in range(1, min(l, i) + 1):
            acc = zero
            for t in range(1, i - j + 2):
                if t <= len(a):
                    acc = acc + math.comb(i - 1, t - 1) * a[t - 1] * B[i - t][j - 1]
            B[i][j] = acc
    return B


def partial_bell(m: int, l: int, a: Sequence[float]) -> float:
    """Partial exponential Bell polynomial B_{m,l}(a_1, ..., a_{m-l+1}).

    Uses the binomial recurrence
    B_{m,l} = sum_j C(m-1, j-1) a_j B_{m-j,l-1}, accumulated in
    double-double arithmetic.
    """
    if not (isinstance(m, int) and m >= 1):
        raise ParameterDomainError(f"m must be a positive integer, got {m}")
    if not (isinstance(l, int) and 1 <= l <= m):
        raise ParameterDomainError(f"l must satisfy 1 <= l <= m, got {l}")
    if len(a) != m - l + 1:
        raise ParameterDomainError(f"need exactly m - l + 1 = {m - l + 1} arguments, got {len(a)}")
    table = _bell_table(m, l, [DD(float(v)) for v in a])
    return float(table[m][l])


def _gauss_2f1_dd(k: int, b: float, c: float, z: float) -> DD:
    term = DD(1.0)
    total = DD(1.0)
    for j in range(k):
        num = DD.from_product(float(j - k), b + j) * z
        den = DD.from_product(c + j, float(j + 1))
        term = term * num / den
        total = total + term
    return total


def gauss_2f1_terminating(k: int, b: float, c: float, z: float) -> float:
    """2F1(-k, b; c; z) as its finite sum of k+1 terms."""
    if not (isinstance(k, int) and k >= 0):
        raise ParameterDomainError(f"k must be a nonnegative integer, got {k}")
    cr = round(c)
    if c == cr and -int(cr) in range(0, k):
        raise ParameterDomainError(f"denominator Pochhammer (c)_j hits zero for c = {c}, k = {k}")
    return float(_gauss_2f1_dd(k, b, c, z))


def _as_terminating_index(value: float) -> int | None:
    r = round(value)
    if value == r and r <= 0:
        return -int(r)
    return None


def _check_denominator(c: float, name: str):
    r = round(c)
    if c == r and r <= 0:
        raise ParameterDomainError(f"{name} parameter {c} is a nonpositive integer")


@dataclass(frozen=True)
class LauricellaFA4Spec:
    """F_A^(4)(a; b_1..b_4; c_1..c_4; x_1..x_4), terminating: all b_i in {0,-1,-2,...}."""

    a: float
    b: tuple[float, float, float, float]
    c: tuple[float, float, float, float]
    x: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.b) != 4 or len(self.c) != 4 or len(self.x) != 4:
            raise ParameterDomainError("b, c, x must each have four entries")
        for bi in self.b:
            if _as_terminating_index(bi) is None:
                raise ParameterDomainError(f"nonterminating numerator parameter b = {bi}")
        for ci in self.c:
            _check_denominator(ci, "denominator")

    @property
    def terminating_indices(self) -> tuple[int, int, int, int]:
        return tuple(_as_terminating_index(bi) for bi in self.b)


@dataclass(frozen=True)
class SrivastavaDaoustSpec:
    """F^{1:2;2;2;2}_{1:1;1;1;1} with joint pair (A; B), per-variable numerator
    pairs (b_i, b2_i) of which at least one is a nonpositive integer, and
    per-variable denominators c_i."""

    A: float
    B: float
    b: tuple[float, float, float, float]
    b2: tuple[float, float, float, float]
    c: tuple[float, float, float, float]
    x: tuple[float, float, float, float]

    def __post_init__(self):
        for seq, n in ((self.b, "b"), (self.b2, "b2"), (self.c, "c"), (self.x, "x")):
            if len(seq) != 4:
                raise ParameterDomainError(f"{n} must have four entries")
        for bi, b2i in zip(self.b, self.b2):
            if _as_terminating_index(bi) is None and _as_terminating_index(b2i) is None:
                raise ParameterDomainError(f"numerator pair ({bi}, {b2i}) does not terminate")
        for ci in self.c:
            _check_denominator(ci, "denominator")
        _check_denominator(self.B, "joint denominator")

    @property
    def terminating_indices(self) -> tuple[int, int, int, int]:
        out = []
        for bi, b2i in zip(self.b, self.b2):
            cands = [v for v in (_as_terminating_index(bi), _as_terminating_index(b2i)) if v is not None]
            out.append(min(cands))
        return tuple(out)


def _quad_series(ns, joint_num, joint_den, var_num, var_den, xs, term_order):
    """Terminating quadruple hypergeometric sum in double-double arithmetic.

    Term T(k1..k4) = prod(A)_K / prod(B)_K * prod_i [prod(nu)_{k_i} x_i^{k_i} /
    (prod(de)_{k_i} k_i!)], K = k1+k2+k3+k4.  Terms are generated in
    lexicographic order by one rational update factor each; ``term_order =
    'reverse'`` re-accumulates the same terms backwards (a cancellation
    diagnostic, not a speed path).
    """
    if term_order not in ("forward", "reverse"):
        raise ValueError(f"unknown term order {term_order!r}")

    def factor(i: int, k_before: int, K_before: float) -> DD:
        num = DD(1.0)
        for p in joint_num:
            num = num * (p + K_before)
        for p in var_num[i]:
            num = num * (p + k_before)
        num = num * xs[i]
        den = DD.from_product(float(k_before + 1), 1.0)
        for p in joint_den:
            den = den * (p + K_before)
        for p in var_den[i]:
            den = den * (p + k_before)
        return num / den

    total = DD(0.0)
    max_term = 0.0
    terms: list[DD] | None = [] if term_order == "reverse" else None

    def emit(depth: int, K: int, t: DD):
        nonlocal total, max_term
        if depth == 4:
            if terms is None:
                total = total + t
                mag = abs(float(t))
                if mag > max_term:
                    max_term = mag
            else:
                terms.append(t)
            return
        emit(depth + 1, K, t)
        ti = t
        for kd in range(ns[depth]):
            ti = ti * factor(depth, kd, float(K + kd))
            emit(depth + 1, K + kd + 1, ti)

    emit(0, 0, DD(1.0))
    if terms is not None:
        for t in reversed(terms):
            total = total + t
            mag = abs(float(t))
            if mag > max_term:
                max_term = mag
    value = float(total)
    ill = max_term > ILL_CONDITION_RATIO * abs(value) if value != 0.0 else max_term > 0.0
    return SeriesValue(value=value, ill_conditioned=ill, max_term=max_term)


def lauricella_fa4(spec: LauricellaFA4Spec, term_order: str = "forward") -> SeriesValue:
    """Terminating four-variate Lauricella F_A series."""
    ns = spec.terminating_indices
    return _quad_series(
        ns,
        joint_num=(spec.a,),
        joint_den=(),
        var_num=tuple((bi,) for bi in spec.b),
        var_den=tuple((ci,) for ci in spec.c),
        xs=spec.x,
        term_order=term_order,
    )


def srivastava_daoust_f4(spec: SrivastavaDaoustSpec, term_order: str = "forward") -> SeriesValue:
    """Terminating four-variate Srivastava-Daoust series with one joint
    numerator/denominator pair and two numerator parameters per variable."""
    ns = spec.terminating_indices
    return _quad_series(
        ns,
        joint_num=(spec.A,),
        joint_den=(spec.B,),
        var_num=tuple((bi, b2i) for bi, b2i in zip(spec.b, spec.b2)),
        var_den=tuple((ci,) for ci in spec.c),
        xs=spec.x,
        term_order=term_order,
    )
