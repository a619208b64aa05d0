"""Invariant suites behind the ``validate`` command and the acceptance tests.

Each check returns a CheckResult with the achieved error so failures are
diagnosable from the CLI output alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import complexity, measures
from .errors import IntegrationError
from .orthopoly import (
    RakhmanovDensity,
    hermite,
    jacobi,
    laguerre,
    poly_value,
    weight_log_derivative,
    weight_value,
    zeros,
)
from .quadrature import integrate_adaptive


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    achieved: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.name}: achieved={self.achieved:.3e} tol={self.tolerance:.3e}"
        if self.detail:
            out += f" ({self.detail})"
        return out


def _grid_families(coarse: bool):
    lag_alphas = (0.0, 2.0) if coarse else (0.0, 2.0, 5.0)
    jac_params = ((0.0, 0.0), (2.0, 2.0)) if coarse else tuple(
        (a, b) for a in (0.0, 2.0, 5.0) for b in (0.0, 2.0, 5.0)
    )
    fams = [hermite()]
    fams += [laguerre(a) for a in lag_alphas]
    fams += [jacobi(a, b) for a, b in jac_params]
    return fams


def check_closed_vs_numeric(n_max: int = 20, coarse: bool = False) -> list[CheckResult]:
    """Closed-form variance/Fisher against the quadrature oracles, on the
    standard parameter grid; Fisher only on its finite branches."""
    results = []
    for fam in _grid_families(coarse):
        worst_v = 0.0
        worst_f = 0.0
        degrees = range(0, n_max + 1, 2 if coarse else 1)
        for n in degrees:
            d = RakhmanovDensity(fam, n)
            vc = measures.variance_closed(d)
            vn = measures.variance_numeric(d)
            worst_v = max(worst_v, abs(vc - vn) / abs(vc))
            fc = measures.fisher_closed(d)
            if math.isfinite(fc.value) and fc.value > 0.0:
                fn = measures.fisher_numeric(d)
                worst_f = max(worst_f, abs(fc.value - fn) / abs(fc.value))
        tag = _family_tag(fam)
        results.append(CheckResult(f"variance closed-vs-numeric {tag} n<={n_max}", worst_v <= 1e-9, worst_v, 1e-9))
        results.append(CheckResult(f"fisher closed-vs-numeric {tag} n<={n_max}", worst_f <= 1e-6, worst_f, 1e-6))
    return results


def _family_tag(fam) -> str:
    if fam.kind == "hermite":
        return "hermite"
    if fam.kind == "laguerre":
        return f"laguerre(a={fam.alpha:g})"
    return f"jacobi(a={fam.alpha:g},b={fam.beta:g})"


def check_representations(n_max: int = 8, coarse: bool = False) -> list[CheckResult]:
    """Bell vs Lauricella/Srivastava-Daoust vs q=2 quadrature, pairwise."""
    results = []
    pair_tol, quad_tol = 1e-10, 1e-9
    lag_alphas = (0.0, 2.5) if coarse else (0.0, 1.0, 2.5)
    worst_pair = worst_quad = 0.0
    for alpha in lag_alphas:
        for n in range(min(n_max, 8) + 1):
            bell = measures.disequilibrium_laguerre_bell(n, alpha).value
            laur = measures.disequilibrium_laguerre_lauricella(n, alpha).value
            quad = measures.entropic_moment_numeric(RakhmanovDensity(laguerre(alpha), n), 2)
            worst_pair = max(worst_pair, abs(bell - laur) / abs(quad))
            worst_quad = max(worst_quad, abs(bell - quad) / abs(quad), abs(laur - quad) / abs(quad))
    results.append(CheckResult("laguerre W2 bell-vs-lauricella", worst_pair <= pair_tol, worst_pair, pair_tol))
    results.append(CheckResult("laguerre W2 combinatorial-vs-quadrature", worst_quad <= quad_tol, worst_quad, quad_tol))
    jac_vals = (0.0, 2.0) if coarse else (0.0, 1.0, 2.0)
    worst_pair = worst_quad = 0.0
    for a in jac_vals:
        for b in jac_vals:
            for n in range(min(n_max, 6) + 1):
                bell = measures.disequilibrium_jacobi_bell(n, a, b).value
                sd = measures.disequilibrium_jacobi_sd(n, a, b).value
                quad = measures.entropic_moment_numeric(RakhmanovDensity(jacobi(a, b), n), 2)
                worst_pair = max(worst_pair, abs(bell - sd) / abs(quad))
                worst_quad = max(worst_quad, abs(bell - quad) / abs(quad), abs(sd - quad) / abs(quad))
    results.append(CheckResult("jacobi W2 bell-vs-srivastava-daoust", worst_pair <= pair_tol, worst_pair, pair_tol))
    results.append(CheckResult("jacobi W2 combinatorial-vs-quadrature", worst_quad <= quad_tol, worst_quad, quad_tol))
    return results


def check_asymptotics() -> list[CheckResult]:
    """Ratio-trend checks of the large-n laws against the numeric pipeline."""
    results = []
    for fam, tag in ((hermite(), "hermite"), (laguerre(2.0), "laguerre(a=2)")):
        asym = complexity.n1_asymptotic(fam)
        r = {}
        for n in (20, 100):
            s = measures.shannon_entropy_numeric(RakhmanovDensity(fam, n))
            r[n] = abs(math.exp(s) / asym(n) - 1.0)
        results.append(
            CheckResult(
                f"N1 asymptotic ratio decreasing {tag}",
                r[100] < r[20],
                r[100],
                r[20],
                detail=f"|r-1|: n=20 {r[20]:.4f} -> n=100 {r[100]:.4f}",
            )
        )
        results.append(CheckResult(f"N1 asymptotic ratio at n=100 {tag}", r[100] <= 0.1, r[100], 0.1))
    s = measures.shannon_entropy_numeric(RakhmanovDensity(jacobi(2.0, 2.0), 100))
    dev = abs(math.exp(s) / (math.pi / math.e) - 1.0)
    results.append(CheckResult("N1 asymptotic jacobi(2,2) n=100", dev <= 0.1, dev, 0.1))
    for n in (50, 100):
        d = RakhmanovDensity(hermite(), n)
        clmc = measures.disequilibrium(d).value * math.exp(measures.shannon_entropy_numeric(d))
        asym = complexity.clmc_hermite_asymptotic(n)
        dev = abs(clmc / asym - 1.0)
        results.append(CheckResult(f"hermite C_LMC vs asymptote n={n}", dev <= 0.25, dev, 0.25))
    return results


# ---------------------------------------------------------------------------
# scaling-invariance oracle: the numeric pipeline applied to the rescaled
# density rho_lam(x) = lam * rho(lam x), written as transformed integrands in
# the original variable


def scaled_numeric_complexities(density: RakhmanovDensity, lam: float, *, tol: float = 1e-10):
    """(C_CR, C_FS, C_LMC) of the rescaled density, all factors numeric."""
    fam = density.family

    def piece_set(core, need_logd=False):
        return measures._density_pieces(density, core, need_logd)

    def integrate(core, need_logd=False, rtol=0.0):
        pieces = piece_set(core, need_logd)
        value, _ = integrate_adaptive(pieces, atol=tol, rtol=rtol, max_panels=20000)
        return value

    # moments of rho_lam via u = lam x
    m1 = integrate(lambda x, w, p, dp, wl: (x / lam) * w * p * p)
    m2 = integrate(lambda x, w, p, dp, wl: (x / lam) ** 2 * w * p * p, rtol=tol)
    variance = m2 - m1 * m1

    fisher = integrate(
        lambda x, w, p, dp, wl: lam * lam * w * (p * wl + 2.0 * dp) ** 2,
        need_logd=True,
        rtol=tol,
    )

    def entropy_core(x, w, p, dp, wl):
        rho = w * p * p
        out = np.zeros_like(rho)
        pos = rho > 0.0
        rl = lam * rho[pos]
        out[pos] = -rho[pos] * np.log(rl)
        return out

    entropy = integrate(entropy_core)
    w2 = integrate(lambda x, w, p, dp, wl: lam * (w * p * p) ** 2)
    n1 = math.exp(entropy)
    c_cr = fisher * variance
    c_fs = fisher * n1 * n1 / (2.0 * math.pi * math.e)
    c_lmc = w2 * n1
    return c_cr, c_fs, c_lmc


def check_scaling_invariance(densities, lams=(0.5, 2.0, 10.0), tol_rel: float = 1e-8) -> list[CheckResult]:
    results = []
    for d in densities:
        base = scaled_numeric_complexities(d, 1.0)
        worst = 0.0
        for lam in lams:
            scaled = scaled_numeric_complexities(d, lam)
            for b, s in zip(base, scaled):
                worst = max(worst, abs(s - b) / abs(b))
        tag = f"{_family_tag(d.family)} n={d.degree}"
        results.append(CheckResult(f"complexity scaling invariance {tag}", worst <= tol_rel, worst, tol_rel))
    return results


SUITES = {
    "closed-vs-numeric": check_closed_vs_numeric,
    "representations": check_representations,
    "asymptotics": check_asymptotics,
}


def run_suite(name: str, n_max: int | None = None, coarse: bool = False) -> list[CheckResult]:
    if name == "all":
        out = []
        for key in ("closed-vs-numeric", "representations", "asymptotics"):
            out.extend(run_suite(key, n_max=n_max, coarse=coarse))
        return out
    if name == "closed-vs-numeric":
        return check_closed_vs_numeric(n_max=n_max or 20, coarse=coarse)
    if name == "representations":
        return check_representations(n_max=n_max or 8, coarse=coarse)
    if name == "asymptotics":
        return check_asymptotics()
    raise ValueError(f"unknown validation suite {name!r}")
