"""Core types for power series on the unit disk and points of the unit ball.

A disk function is a holomorphic g on the open unit disk normalized by
g(0) = g'(0) = 0.  The coefficient-backed representation stores the Taylor
coefficients a_2..a_M (indices 0 and 1 are structurally absent) together with
an optional bound on the weighted tail sum_{k>M} k|a_k|.  Closed-form
representations carry evaluators only; coefficient functionals then report a
distinguished non-finite state instead of guessing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ConfigError,
    DomainError,
    NormalizationError,
    OverflowRefusalError,
)

# Plain (non-log) evaluation is refused beyond this log-magnitude; doubles
# overflow at e^709.78, and the margin keeps downstream products finite.
OVERFLOW_LOG_THRESHOLD = 700.0

_COEFF_START = 2


def require_finite_complex(value, what: str = "value") -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{what} must be finite, got {z!r}")
    return z


def require_disk_point(zeta, what: str = "zeta") -> complex:
    z = require_finite_complex(zeta, what)
    if abs(z) >= 1.0:
        raise DomainError(f"{what} must lie in the open unit disk, got |{what}| = {abs(z)!r}")
    return z


@dataclass(frozen=True)
class BallPoint:
    """A point (z1, z2) of the open unit ball |z1|^2 + |z2|^2 < 1 in C^2."""

    z1: complex
    z2: complex

    def __post_init__(self):
        object.__setattr__(self, "z1", require_finite_complex(self.z1, "z1"))
        object.__setattr__(self, "z2", require_finite_complex(self.z2, "z2"))
        if self.norm_sq >= 1.0:
            raise DomainError(
                f"point must lie in the open unit ball, got |z|^2 = {self.norm_sq!r}"
            )

    @property
    def norm_sq(self) -> float:
        return abs(self.z1) ** 2 + abs(self.z2) ** 2

    def as_tuple(self) -> tuple[complex, complex]:
        return (self.z1, self.z2)


def as_ball_point(point) -> BallPoint:
    """Coerce a BallPoint or 2-sequence of complex numbers, validating."""
    if isinstance(point, BallPoint):
        return point
    z1, z2 = point
    return BallPoint(z1, z2)


@dataclass(frozen=True)
class CoefficientSeries:
    """Taylor coefficients a_2..a_M of a normalized disk function.

    tail_bound semantics:
      * None     -- the coefficients are the whole series (exact polynomial);
      * x >= 0   -- the stored coefficients are a truncation and
                    sum_{k>M} k|a_k| <= x (x = inf declares an unbounded,
                    non-finite tail).
    """

    coeffs: tuple[complex, ...]
    tail_bound: float | None = None

    def __post_init__(self):
        cs = tuple(
            require_finite_complex(a, f"coefficient a_{k + _COEFF_START}")
            for k, a in enumerate(self.coeffs)
        )
        object.__setattr__(self, "coeffs", cs)
        if self.tail_bound is not None:
            tb = float(self.tail_bound)
            if math.isnan(tb) or tb < 0.0:
                raise DomainError(f"tail_bound must be >= 0, got {tb!r}")
            object.__setattr__(self, "tail_bound", tb)

    @property
    def start(self) -> int:
        return _COEFF_START

    @property
    def max_index(self) -> int:
        """Largest stored index M (1 when no coefficients are stored)."""
        return _COEFF_START - 1 + len(self.coeffs)

    def coefficient(self, k: int) -> complex:
        """a_k for any k >= 2 (0 beyond the stored range)."""
        if k < _COEFF_START:
            raise DomainError(f"coefficient index must be >= {_COEFF_START}, got {k}")
        i = k - _COEFF_START
        return self.coeffs[i] if i < len(self.coeffs) else 0.0j


def _horner(coeffs: tuple[complex, ...], z):
    # sum_{k=2..M} a_k z^k  ==  z^2 * (a_2 + z*(a_3 + ...)), scalar or ndarray
    p = 0.0 * z
    for a in reversed(coeffs):
        p = p * z + a
    return p * z * z


def _horner_deriv(coeffs: tuple[complex, ...], z):
    # sum_{k=2..M} k a_k z^(k-1)  ==  z * (2 a_2 + z*(3 a_3 + ...))
    p = 0.0 * z
    for k in range(len(coeffs) + _COEFF_START - 1, _COEFF_START - 1, -1):
        p = p * z + k * coeffs[k - _COEFF_START]
    return p * z


def series_eval(series: CoefficientSeries, zeta) -> complex:
    """Evaluate the stored polynomial part at a point of the open disk."""
    z = require_disk_point(zeta)
    return complex(_horner(series.coeffs, z))


def series_deriv_eval(series: CoefficientSeries, zeta) -> complex:
    """Evaluate the derivative of the stored polynomial part."""
    z = require_disk_point(zeta)
    return complex(_horner_deriv(series.coeffs, z))


def coeff_sum_s1(series: CoefficientSeries) -> float:
    """sum_k k|a_k| plus the declared tail bound; inf marks a non-finite sum."""
    total = math.fsum(
        k * abs(a) for k, a in enumerate(series.coeffs, start=_COEFF_START)
    )
    if series.tail_bound is not None:
        total += series.tail_bound
    return total


def coeff_sum_s2(series: CoefficientSeries) -> float:
    """sum_k (k-1)|a_k| plus the declared tail bound (a valid upper bound,
    since (k-1)|a_k| <= k|a_k|); inf marks a non-finite sum."""
    total = math.fsum(
        (k - 1) * abs(a) for k, a in enumerate(series.coeffs, start=_COEFF_START)
    )
    if series.tail_bound is not None:
        total += series.tail_bound
    return total


def tail_sum(series: CoefficientSeries, n: int) -> float:
    """Upper bound for sum_{k>N} k|a_k|: the stored terms past N plus the
    declared tail bound (which covers every index past M >= N)."""
    if n < 1:
        raise DomainError(f"N must be >= 1, got {n}")
    total = math.fsum(
        k * abs(a)
        for k, a in enumerate(series.coeffs, start=_COEFF_START)
        if k > n
    )
    if series.tail_bound is not None:
        total += series.tail_bound
    return total


def re_inner(u, v) -> float:
    """Re<u, v> with conjugation on the second argument."""
    u1, u2 = u.as_tuple() if isinstance(u, BallPoint) else u
    v1, v2 = v.as_tuple() if isinstance(v, BallPoint) else v
    return (complex(u1) * complex(v1).conjugate()
            + complex(u2) * complex(v2).conjugate()).real


@dataclass(frozen=True)
class DiskFunction:
    """A normalized holomorphic function on the unit disk.

    The raw callables are array-capable and unguarded; the public eval/deriv
    methods validate the point and refuse (typed error) when the value's
    log-magnitude exceeds OVERFLOW_LOG_THRESHOLD.  coefficients is None for
    closed-form representations without coefficient access.
    """

    eval_raw: Callable = field(repr=False)
    deriv_raw: Callable = field(repr=False)
    log_abs_raw: Callable = field(repr=False)
    deriv_log_abs_raw: Callable | None = field(default=None, repr=False)
    coefficients: CoefficientSeries | None = None
    label: str = ""

    def __post_init__(self):
        g0 = complex(self.eval_raw(0.0j))
        dg0 = complex(self.deriv_raw(0.0j))
        if abs(g0) > 1e-12 or abs(dg0) > 1e-12:
            raise NormalizationError(
                f"disk function must satisfy g(0) = g'(0) = 0, "
                f"got g(0) = {g0!r}, g'(0) = {dg0!r}"
            )

    def eval(self, zeta) -> complex:
        z = require_disk_point(zeta)
        la = float(self.log_abs_raw(z))
        if la > OVERFLOW_LOG_THRESHOLD:
            raise OverflowRefusalError(
                f"|g({z!r})| has log-magnitude {la!r} > {OVERFLOW_LOG_THRESHOLD}; "
                f"use the log-magnitude evaluator"
            )
        return complex(self.eval_raw(z))

    def deriv(self, zeta) -> complex:
        z = require_disk_point(zeta)
        if self.deriv_log_abs_raw is not None:
            la = float(self.deriv_log_abs_raw(z))
            if la > OVERFLOW_LOG_THRESHOLD:
                raise OverflowRefusalError(
                    f"|g'({z!r})| has log-magnitude {la!r} > {OVERFLOW_LOG_THRESHOLD}; "
                    f"refusing plain evaluation"
                )
        value = complex(self.deriv_raw(z))
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise OverflowRefusalError(f"|g'({z!r})| overflows double precision")
        return value

    def log_abs(self, zeta) -> float:
        """log|g(zeta)|, overflow-safe; -inf at zeros of g."""
        z = require_disk_point(zeta)
        return float(self.log_abs_raw(z))


def disk_function_from_series(series: CoefficientSeries, label: str = "") -> DiskFunction:
    coeffs = series.coeffs

    def eval_raw(z):
        return _horner(coeffs, z)

    def deriv_raw(z):
        return _horner_deriv(coeffs, z)

    def log_abs_raw(z):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(_horner(coeffs, z)))

    return DiskFunction(
        eval_raw=eval_raw,
        deriv_raw=deriv_raw,
        log_abs_raw=log_abs_raw,
        coefficients=series,
        label=label,
    )


def disk_function_from_callables(
    eval_raw: Callable,
    deriv_raw: Callable,
    log_abs_raw: Callable,
    deriv_log_abs_raw: Callable | None = None,
    label: str = "",
) -> DiskFunction:
    """Wrap closed-form evaluators (no coefficient access)."""
    return DiskFunction(
        eval_raw=eval_raw,
        deriv_raw=deriv_raw,
        log_abs_raw=log_abs_raw,
        deriv_log_abs_raw=deriv_log_abs_raw,
        coefficients=None,
        label=label,
    )


def parse_series_spec(text: str, source: str = "<string>") -> CoefficientSeries:
    """Parse the series-spec format: an object with `start` (must be 2),
    `coeffs` as a list of [re, im] pairs for k = 2..M, and an optional
    nonnegative `tail_bound`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{source}: invalid series spec at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{source}: series spec must be an object, got {type(doc).__name__}")
    unknown = sorted(set(doc) - {"start", "coeffs", "tail_bound"})
    if unknown:
        raise ConfigError(f"{source}: unexpected series-spec fields {unknown}")
    if "start" not in doc:
        raise ConfigError(f"{source}: series spec is missing `start`")
    if doc["start"] != _COEFF_START:
        raise ConfigError(f"{source}: `start` must be {_COEFF_START}, got {doc['start']!r}")
    raw = doc.get("coeffs", [])
    if not isinstance(raw, list):
        raise ConfigError(f"{source}: `coeffs` must be a list of [re, im] pairs")
    coeffs = []
    for i, pair in enumerate(raw):
        k = i + _COEFF_START
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ConfigError(f"{source}: coefficient a_{k} must be a [re, im] pair, got {pair!r}")
        coeffs.append(complex(pair[0], pair[1]))
    tb = doc.get("tail_bound")
    if tb is not None:
        if not isinstance(tb, (int, float)) or isinstance(tb, bool):
            raise ConfigError(f"{source}: `tail_bound` must be a number, got {tb!r}")
        if float(tb) < 0.0 or math.isnan(float(tb)):
            raise ConfigError(f"{source}: `tail_bound` must be >= 0, got {tb!r}")
        tb = float(tb)
    try:
        return CoefficientSeries(tuple(coeffs), tb)
    except (DomainError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_series_spec(path) -> CoefficientSeries:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_series_spec(fh.read(), source=str(path))


def dump_series_spec(series: CoefficientSeries) -> str:
    doc: dict = {
        "start": _COEFF_START,
        "coeffs": [[a.real, a.imag] for a in series.coeffs],
    }
    if series.tail_bound is not None:
        doc["tail_bound"] = series.tail_bound
    return json.dumps(doc, indent=2) + "\n"
