"""Built-in boundary-oscillation shear whose derivative growth is unbounded
relative to the normal-chain ceiling.

The map is f(z1, z2) = (z1 + z2^2 h(z2), z2) with h(zeta) = exp(i/(1-zeta)^3).
On the real radius h has unit modulus, so f maps (0, r) to a bounded point
(|f(0, r)| = r sqrt(1+r^2) < sqrt(2)), yet

    ||df(0, r)|| >= 3 r^2/(1-r)^4 - (1 + 2r) >= 2 r^2/(1-r)^4   on r in (1/2, 1),

so the ratio ||df(0, r)|| (1-r)^3 diverges like 1/(1-r) while every map
embeddable into a normal Loewner chain keeps that ratio below the ceiling 4.
divergence_scan tabulates the ratio over a radius grid and issues a verdict
against 4*C_report.

The modulus of h is evaluated as exp(Re i/(1-zeta)^3) with the phase handled
by the C library's sine/cosine argument reduction, so |h(r)| = 1 holds to
machine precision arbitrarily close to r = 1; magnitude comparisons route
through the log-magnitude evaluator log|g| = 2 log|zeta| - Im(1/(1-zeta)^3)
and plain evaluation is refused beyond the double-overflow threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DomainError
from .growth import shear_opnorm
from .series import DiskFunction
from .shear import ShearingMap

BUILTIN_NAME = "counterexample"

# Ratio ceiling obeyed by every normal-chain embeddable map: (1+sqrt(r))^2 <= 4.
RATIO_CEILING = 4.0

VERDICT_AFFIRMATIVE = (
    "no constant C satisfies opnorm(df(0,r)) <= 4*C/(1-r)^3 over this grid"
)
VERDICT_INSUFFICIENT_GRID = "insufficient grid"


def _g_raw(z):
    return z * z * np.exp(1j / (1.0 - z) ** 3)


def _deriv_raw(z):
    return (2.0 * z + 3j * z * z / (1.0 - z) ** 4) * np.exp(1j / (1.0 - z) ** 3)


def _log_abs_raw(z):
    with np.errstate(divide="ignore"):
        return 2.0 * np.log(np.abs(z)) - np.imag(1.0 / (1.0 - z) ** 3)


def _deriv_log_abs_raw(z):
    with np.errstate(divide="ignore"):
        pref = np.log(np.abs(2.0 * z + 3j * z * z / (1.0 - z) ** 4))
    return pref - np.imag(1.0 / (1.0 - z) ** 3)


def counterexample_disk_function() -> DiskFunction:
    return DiskFunction(
        eval_raw=_g_raw,
        deriv_raw=_deriv_raw,
        log_abs_raw=_log_abs_raw,
        deriv_log_abs_raw=_deriv_log_abs_raw,
        coefficients=None,
        label=BUILTIN_NAME,
    )


def counterexample_map() -> ShearingMap:
    return ShearingMap(counterexample_disk_function())


def unit_modulus_check(r_values: Sequence[float]) -> float:
    """Max over the grid of ||h(r)| - 1| for h = exp(i/(1-r)^3); the exponent
    is purely imaginary on the real radius, so the deviation is pure rounding."""
    rs = np.asarray([float(r) for r in r_values], dtype=float)
    if rs.size == 0:
        raise ConfigError("r grid must be nonempty")
    if np.any(rs <= 0.0) or np.any(rs >= 1.0):
        raise DomainError("r values must lie in (0, 1)")
    h = np.exp(1j / (1.0 - rs) ** 3)
    return float(np.max(np.abs(np.abs(h) - 1.0)))


def ce_lower_bound(r: float) -> float:
    """Certified lower bound 3 r^2/(1-r)^4 - (1+2r) for ||df(0, r)||, valid
    on r in (1/2, 1) where it also dominates 2 r^2/(1-r)^4."""
    r = float(r)
    if not (0.5 < r < 1.0):
        raise DomainError(f"lower bound is only claimed on (1/2, 1), got r = {r!r}")
    return 3.0 * r * r / (1.0 - r) ** 4 - (1.0 + 2.0 * r)


def simplified_lower_bound(r: float) -> float:
    """Weaker companion bound 2 r^2/(1-r)^4 on the same range."""
    r = float(r)
    if not (0.5 < r < 1.0):
        raise DomainError(f"lower bound is only claimed on (1/2, 1), got r = {r!r}")
    return 2.0 * r * r / (1.0 - r) ** 4


def divergence_ratio(r: float) -> float:
    """||df(0, r)|| (1 - r)^3; below 4 for every normal-chain embeddable map,
    divergent for this one."""
    r = float(r)
    if not (0.0 < r < 1.0):
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    return shear_opnorm(counterexample_map(), (0.0j, r)) * (1.0 - r) ** 3


def radial_image_bound(r: float) -> float:
    """||f(0, r)|| computed from the map itself; equals r sqrt(1+r^2) < sqrt(2)
    because |h(r)| = 1."""
    r = float(r)
    if not (0.0 < r < 1.0):
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    w1, w2 = counterexample_map().eval((0.0j, r))
    return math.hypot(abs(w1), abs(w2))


@dataclass(frozen=True)
class DivergenceRecord:
    """One radius of a divergence scan.  ratio = opnorm * (1-r)^3; ceiling is
    the constant 4 that normal-chain embeddable maps cannot exceed."""

    r: float
    opnorm: float
    lower_bound: float
    simplified_bound: float
    ratio: float
    ceiling: float = RATIO_CEILING

    def __post_init__(self):
        if self.opnorm < self.lower_bound:
            raise DomainError(
                f"opnorm {self.opnorm!r} fell below its certified lower bound "
                f"{self.lower_bound!r} at r = {self.r!r}"
            )


@dataclass(frozen=True)
class DivergenceScan:
    records: tuple[DivergenceRecord, ...]
    verdict: str
    affirmative: bool
    c_report: float


DEFAULT_R_GRID = (0.6, 0.7, 0.8, 0.9, 0.95, 0.99)


def divergence_scan(
    r_grid: Sequence[float] | None = None,
    c_report: float = 10.0,
    workers: int = 1,
) -> DivergenceScan:
    """Tabulate opnorm, the certified lower bounds and the ratio over a
    strictly increasing grid in (1/2, 1); the verdict is affirmative when the
    ratio is monotone increasing and exceeds 4*C_report at the grid tail.
    A single-point grid yields the withheld verdict "insufficient grid"."""
    rs = [float(r) for r in (r_grid if r_grid is not None else DEFAULT_R_GRID)]
    if not rs:
        raise ConfigError("r grid must be nonempty")
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ConfigError(f"r grid must be strictly increasing, got {rs!r}")
    if rs[0] <= 0.5 or rs[-1] >= 1.0:
        raise ConfigError(f"r grid must lie inside (1/2, 1), got {rs!r}")
    c_report = float(c_report)
    if c_report < 1.0:
        raise ConfigError(f"C_report must be >= 1, got {c_report!r}")
    f = counterexample_map()

    def record(r: float) -> DivergenceRecord:
        opnorm = shear_opnorm(f, (0.0j, r))
        return DivergenceRecord(
            r=r,
            opnorm=opnorm,
            lower_bound=ce_lower_bound(r),
            simplified_bound=simplified_lower_bound(r),
            ratio=opnorm * (1.0 - r) ** 3,
        )

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = tuple(pool.map(record, rs))
    else:
        records = tuple(record(r) for r in rs)

    if len(records) < 2:
        return DivergenceScan(records, VERDICT_INSUFFICIENT_GRID, False, c_report)
    monotone = all(b.ratio > a.ratio for a, b in zip(records, records[1:]))
    exceeded = records[-1].ratio > RATIO_CEILING * c_report
    if monotone and exceeded:
        return DivergenceScan(records, VERDICT_AFFIRMATIVE, True, c_report)
    if not monotone:
        verdict = "not affirmative: ratio is not monotone increasing over this grid"
    else:
        verdict = (
            f"not affirmative: ratio {records[-1].ratio!r} at the grid tail "
            f"does not exceed 4*C_report = {RATIO_CEILING * c_report!r}"
        )
    return DivergenceScan(records, verdict, False, c_report)
