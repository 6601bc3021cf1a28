"""The three nested constraint families on a correlation vector.

Each family bounds the same four expressions, built by giving a minus sign
to exactly one of the four correlations:

    bell        |±e11 ± e12 ± e21 ± e22| <= 2          (exact, rational)
    quantum     |±asin e11 ± ... ± asin e22| <= pi     (tolerance eps)
    tsirelson   |±e11 ± e12 ± e21 ± e22| <= 2*sqrt(2)  (tolerance eps)

bell implies quantum implies tsirelson; the checkers stay independent so
that nesting is observable, not baked in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .distributions import CorrelationVector
from .errors import DomainError

FAMILY_BELL = "bell"
FAMILY_QUANTUM = "quantum"
FAMILY_TSIRELSON = "tsirelson"
FAMILIES = (FAMILY_BELL, FAMILY_QUANTUM, FAMILY_TSIRELSON)

DEFAULT_EPSILON = 1e-9

# one minus sign, rotating over the four positions
_SIGN_PATTERNS = (
    (1, 1, 1, -1),
    (1, 1, -1, 1),
    (1, -1, 1, 1),
    (-1, 1, 1, 1),
)

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class FamilyReport:
    family: str
    satisfied: bool
    max_lhs: Union[Fraction, float]
    bound: Union[Fraction, float]
    tight: bool


def _as_vector(c) -> CorrelationVector:
    if isinstance(c, CorrelationVector):
        return c
    return CorrelationVector(*c)


def chsh_max(c) -> Fraction:
    """Exact max over the four sign patterns of |sum of signed e_ij|.

    Floats are converted exactly (every float is a rational), so the
    comparison against the bound 2 never involves rounding.
    """
    e = [Fraction(v) for v in _as_vector(c).components()]
    best = Fraction(0)
    for signs in _SIGN_PATTERNS:
        acc = sum((s * v for s, v in zip(signs, e)), Fraction(0))
        if acc < 0:
            acc = -acc
        if acc > best:
            best = acc
    return best


def arcsin_sum_max(c) -> float:
    """Max over the four sign patterns of |sum of signed asin(e_ij)|."""
    comps = _as_vector(c).components()
    t = [math.asin(min(1.0, max(-1.0, float(v)))) for v in comps]
    return max(abs(sum(s * v for s, v in zip(signs, t))) for signs in _SIGN_PATTERNS)


def bell_ch_fine(c, epsilon: float = DEFAULT_EPSILON) -> FamilyReport:
    """Classical bound 2; satisfaction decided exactly, tightness within epsilon."""
    m = chsh_max(c)
    return FamilyReport(
        family=FAMILY_BELL,
        satisfied=m <= 2,
        max_lhs=m,
        bound=Fraction(2),
        tight=abs(m - 2) <= epsilon,
    )


def tsirelson(c, epsilon: float = DEFAULT_EPSILON) -> FamilyReport:
    """Quantum-maximum bound 2*sqrt(2), compared at tolerance epsilon."""
    m = chsh_max(c)
    return FamilyReport(
        family=FAMILY_TSIRELSON,
        satisfied=m <= TSIRELSON_BOUND + epsilon,
        max_lhs=m,
        bound=TSIRELSON_BOUND,
        tight=abs(float(m) - TSIRELSON_BOUND) <= epsilon,
    )


def quantum_arcsin(c, epsilon: float = DEFAULT_EPSILON) -> FamilyReport:
    """Arcsin-transformed bound pi, compared at tolerance epsilon."""
    m = arcsin_sum_max(c)
    return FamilyReport(
        family=FAMILY_QUANTUM,
        satisfied=m <= math.pi + epsilon,
        max_lhs=m,
        bound=math.pi,
        tight=abs(m - math.pi) <= epsilon,
    )


@dataclass(frozen=True)
class Classification:
    bell: bool
    quantum: bool
    tsirelson: bool


def classify(c, epsilon: float = DEFAULT_EPSILON) -> Classification:
    """All three verdicts, each computed independently."""
    return Classification(
        bell=bell_ch_fine(c, epsilon).satisfied,
        quantum=quantum_arcsin(c, epsilon).satisfied,
        tsirelson=tsirelson(c, epsilon).satisfied,
    )


def family_report(family: str, c, epsilon: float = DEFAULT_EPSILON) -> FamilyReport:
    if family == FAMILY_BELL:
        return bell_ch_fine(c, epsilon)
    if family == FAMILY_QUANTUM:
        return quantum_arcsin(c, epsilon)
    if family == FAMILY_TSIRELSON:
        return tsirelson(c, epsilon)
    raise DomainError(f"unknown family {family!r}")
