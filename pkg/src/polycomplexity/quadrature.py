"""Globally adaptive Gauss quadrature over a list of integration pieces.

Each piece is an integrand on a finite interval in its own local coordinate
(callers map tails and singular endpoints into such coordinates first).
A worst-first interval queue is refined until the summed error estimate,
|G31 - G15| per panel, meets the tolerance.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import IntegrationError

_X15, _W15 = leggauss(15)
_X31, _W31 = leggauss(31)

Integrand = Callable[[np.ndarray], np.ndarray]


def _panel(f: Integrand, a: float, b: float) -> tuple[float, float]:
    h = 0.5 * (b - a)
    c = 0.5 * (a + b)
    lo = h * float(np.dot(_W15, np.asarray(f(c + h * _X15), dtype=float)))
    hi = h * float(np.dot(_W31, np.asarray(f(c + h * _X31), dtype=float)))
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise IntegrationError(f"integrand non-finite on panel [{a}, {b}]")
    return hi, abs(hi - lo)


def integrate_adaptive(
    pieces: list[tuple[Integrand, float, float]],
    *,
    atol: float = 1e-9,
    rtol: float = 0.0,
    max_panels: int = 6000,
) -> tuple[float, float]:
    """Integrate the summed pieces; returns (value, error_estimate).

    Raises IntegrationError carrying the achieved estimate when the panel
    budget runs out or panels shrink to rounding width before the target
    ``atol + rtol*|value|`` is met.
    """
    heap: list = []
    done: list[tuple[float, float]] = []  # unsplittable panels (value, err)
    seq = 0
    for f, a, b in pieces:
        if not a < b:
            raise ValueError(f"empty integration piece [{a}, {b}]")
        val, err = _panel(f, a, b)
        heapq.heappush(heap, (-err, seq, a, b, val, err, f))
        seq += 1

    def exact_totals():
        vals = [item[4] for item in heap] + [v for v, _ in done]
        errs = [item[5] for item in heap] + [e for _, e in done]
        return math.fsum(vals), math.fsum(errs)

    total, err_total = exact_totals()
    npanels = len(pieces)
    while True:
        if err_total <= atol + rtol * abs(total):
            total, err_total = exact_totals()  # running sums may have drifted
            if err_total <= atol + rtol * abs(total):
                return total, err_total
        if not heap:
            total, err_total = exact_totals()
            raise IntegrationError(
                f"all panels at rounding width; achieved error {err_total:.3e} "
                f"exceeds tolerance {atol + rtol * abs(total):.3e}",
                estimate=total,
                error_estimate=err_total,
            )
        if npanels >= max_panels:
            total, err_total = exact_totals()
            raise IntegrationError(
                f"tolerance {atol + rtol * abs(total):.3e} not reached after "
                f"{npanels} panels (achieved {err_total:.3e})",
                estimate=total,
                error_estimate=err_total,
            )
        _, _, a, b, val, err, f = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        width_floor = 16.0 * np.finfo(float).eps * max(abs(a), abs(b)) + 1e-320
        if (b - a) <= width_floor or mid <= a or mid >= b:
            # cannot split further in double precision; keep as-is
            done.append((val, err))
            continue
        total -= val
        err_total -= err
        for lo_, hi_ in ((a, mid), (mid, b)):
            v, e = _panel(f, lo_, hi_)
            heapq.heappush(heap, (-e, seq, lo_, hi_, v, e, f))
            seq += 1
            total += v
            err_total += e
        npanels += 1
