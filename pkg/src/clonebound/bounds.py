"""Closed-form error curves for two-state N-to-L cloning.

Every curve takes the single-particle overlap z together with the input and
output copy counts. Each one is implemented twice: a z-form evaluated from
powers of z, and an angle form (suffix ``_from_angles``) evaluated through the
arccos parametrization. The pairs are algebraically identical and the suites
cross-check them; the z-forms are rearranged where the textbook expression
loses precision in doubles (ratios of 1 - z**m near z = 1, and the difference
of two near-unit terms in the symmetric curve at small z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hilbert import DegeneratePairError

__all__ = [
    "UndefinedRatioError",
    "power_sum",
    "one_minus_pow",
    "geometric_ratio",
    "overlap_angle",
    "re_lower_bound",
    "re_lower_bound_from_angles",
    "ae_lower_bound",
    "ae_lower_bound_from_angles",
    "re_symmetric",
    "re_symmetric_from_angles",
    "f_rel_diff",
    "f_rel_diff_from_angles",
    "LimitCheck",
    "AsymptoticReport",
    "asymptotic_checks",
]


class UndefinedRatioError(ValueError):
    """The relative-difference curve is undefined where its denominator vanishes."""


def _validate_counts(n_in: int, n_out: int) -> None:
    if not isinstance(n_in, (int,)) or not isinstance(n_out, (int,)):
        raise ValueError("copy counts must be integers")
    if n_in < 1:
        raise ValueError(f"input copy count must be >= 1, got {n_in}")
    if n_out <= n_in:
        raise ValueError(f"output count {n_out} must exceed input count {n_in}")


def _validate_overlap(z: float, upper: float = 1.0) -> float:
    z = float(z)
    if not 0.0 <= z <= upper:
        raise ValueError(f"overlap must lie in [0, {upper}], got {z!r}")
    return z


def power_sum(x: float, m: int) -> float:
    """sum of x**k for k = 0 .. m-1, evaluated by Horner's scheme."""
    acc = 1.0
    for _ in range(int(m) - 1):
        acc = acc * x + 1.0
    return acc


def one_minus_pow(x: float, m: int) -> float:
    """1 - x**m as (1 - x) * power_sum(x, m).

    The factored form is uniformly accurate on [0, 1]: the subtraction 1 - x
    is exact for x >= 0.5 and benign below, so no digits are lost as x
    approaches 1, where the direct form cancels catastrophically.
    """
    return (1.0 - x) * power_sum(x, m)


def geometric_ratio(x: float, m_num: int, m_den: int) -> float:
    """(1 - x**m_num) / (1 - x**m_den), finite at x = 1.

    The common 1 - x factor cancels algebraically, leaving a ratio of
    geometric sums with no subtraction at all.
    """
    return power_sum(x, m_num) / power_sum(x, m_den)


def overlap_angle(z: float, count: int) -> float:
    """arccos(z**count): the separation angle of count-fold product states."""
    power = min(1.0, float(z) ** int(count))
    return math.acos(power)


def re_lower_bound(z: float, n_in: int, n_out: int) -> float:
    """Least achievable relative error: z**N - z**L * sqrt((1-z**2N)/(1-z**2L)).

    Continuous on [0, 1]; at z = 1 the geometric-sum ratio gives the limiting
    value 1 - sqrt(N/L) directly.
    """
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    # squared powers are taken by doubling the exponent, not by squaring z
    # first: 1 - fl(z*z) magnifies the rounding of the square near z = 1
    ratio = geometric_ratio(z, 2 * n_in, 2 * n_out)
    return z**n_in - z**n_out * math.sqrt(ratio)


def re_lower_bound_from_angles(z: float, n_in: int, n_out: int) -> float:
    """Angle form of re_lower_bound: sin(delta_L - delta_N) / sin(delta_L)."""
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    if z >= 1.0:
        return 1.0 - math.sqrt(n_in / n_out)
    d_in = overlap_angle(z, n_in)
    d_out = overlap_angle(z, n_out)
    return math.sin(d_out - d_in) / math.sin(d_out)


def ae_lower_bound(z: float, n_in: int, n_out: int) -> float:
    """Least achievable absolute error: z**N sqrt(1-z**2L) - z**L sqrt(1-z**2N)."""
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    s_out = math.sqrt(one_minus_pow(z, 2 * n_out))
    s_in = math.sqrt(one_minus_pow(z, 2 * n_in))
    return z**n_in * s_out - z**n_out * s_in


def ae_lower_bound_from_angles(z: float, n_in: int, n_out: int) -> float:
    """Angle form of ae_lower_bound: sin(delta_L - delta_N)."""
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    return math.sin(overlap_angle(z, n_out) - overlap_angle(z, n_in))


def _require_distinct(z: float) -> None:
    if z >= 1.0:
        raise DegeneratePairError(
            "the symmetric relative error is undefined at z = 1"
        )


def re_symmetric(z: float, n_in: int, n_out: int) -> float:
    """Relative error of the symmetric coplanar cloner.

    Equals sqrt(2) * [ (1-z**(N+L))/(1-z**2L) - sqrt((1-z**2N)/(1-z**2L)) ]**0.5.
    The bracket is evaluated as (A - B) = (A**2 - B**2)/(A + B), whose
    numerator collapses exactly to (z**N - z**L)**2 / (1-z**2L)**2, so no
    catastrophic cancellation occurs anywhere in [0, 1).
    """
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    _require_distinct(z)
    term_a = geometric_ratio(z, n_in + n_out, 2 * n_out)
    term_b = math.sqrt(geometric_ratio(z, 2 * n_in, 2 * n_out))
    gap = z**n_in * one_minus_pow(z, n_out - n_in)
    span = one_minus_pow(z, 2 * n_out)
    bracket = (gap / span) ** 2 / (term_a + term_b)
    return math.sqrt(2.0 * bracket)


def re_symmetric_from_angles(z: float, n_in: int, n_out: int) -> float:
    """Angle form: 2 sin((delta_L - delta_N)/2) / sin(delta_L)."""
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    _require_distinct(z)
    d_in = overlap_angle(z, n_in)
    d_out = overlap_angle(z, n_out)
    return 2.0 * math.sin(0.5 * (d_out - d_in)) / math.sin(d_out)


def f_rel_diff(z: float, n_in: int, n_out: int) -> float:
    """Relative gap (RE_sym - RE_min) / RE_min between the two cloner curves."""
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    _require_distinct(z)
    floor = re_lower_bound(z, n_in, n_out)
    if floor < 1e-12:
        raise UndefinedRatioError(
            f"relative difference undefined where the lower bound vanishes (z = {z!r})"
        )
    return (re_symmetric(z, n_in, n_out) - floor) / floor


def f_rel_diff_from_angles(z: float, n_in: int, n_out: int) -> float:
    """Angle form of f_rel_diff: 1/cos((delta_L - delta_N)/2) - 1."""
    _validate_counts(n_in, n_out)
    z = _validate_overlap(z)
    _require_distinct(z)
    if z <= 0.0:
        raise UndefinedRatioError("relative difference undefined at z = 0")
    half = 0.5 * (overlap_angle(z, n_out) - overlap_angle(z, n_in))
    return 1.0 / math.cos(half) - 1.0


@dataclass(frozen=True)
class LimitCheck:
    label: str
    observed: float
    expected: float
    gap: float
    passed: bool


@dataclass(frozen=True)
class AsymptoticReport:
    checks: tuple[LimitCheck, ...]
    passed: bool


def asymptotic_checks(
    n_in: int,
    l_max: int,
    z_samples=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8),
    tol: float = 1e-6,
) -> AsymptoticReport:
    """Verify the two limiting regimes of the relative-error lower bound.

    For each sampled z the curve must sit within tol of z**N at L = l_max and
    approach it monotonically from below along a doubling chain of L values.
    Approaching z = 1 the curve must agree with 1 - sqrt(N/L) within tol.
    """
    if l_max <= n_in:
        raise ValueError(f"l_max must exceed n_in, got {l_max} <= {n_in}")
    checks = []

    for z in z_samples:
        chain = []
        n_out = n_in + 1
        while n_out < l_max:
            chain.append(n_out)
            n_out *= 2
        chain.append(l_max)
        values = [re_lower_bound(z, n_in, n) for n in chain]
        monotone = all(a <= b + 1e-15 for a, b in zip(values, values[1:]))
        gap = abs(values[-1] - z**n_in)
        checks.append(
            LimitCheck(
                label=f"L-limit z={z}",
                observed=values[-1],
                expected=z**n_in,
                gap=gap,
                passed=monotone and gap <= tol,
            )
        )

    near_one = 1.0 - 1e-8
    n_out = n_in + 1
    while n_out <= l_max:
        expected = 1.0 - math.sqrt(n_in / n_out)
        observed = re_lower_bound(near_one, n_in, n_out)
        gap = abs(observed - expected)
        checks.append(
            LimitCheck(
                label=f"z-limit L={n_out}",
                observed=observed,
                expected=expected,
                gap=gap,
                passed=gap <= tol,
            )
        )
        n_out *= 2

    return AsymptoticReport(
        checks=tuple(checks), passed=all(c.passed for c in checks)
    )
