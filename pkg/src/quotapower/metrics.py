"""Distances, correlation and inequality measures between weights and power.

Inputs may be exact rationals; they are converted to float once and combined
with compensated summation (``math.fsum``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateError, InputError

HHI_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MaxRatio:
    value: float
    player: int | None
    infinite: bool = False

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class ComparisonReport:
    d_euc: float
    d_man: float
    omega: MaxRatio
    rho: float


@dataclass(frozen=True)
class InequalityReport:
    gini: float
    hhi: float


def _pair(a, b):
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    return [float(x) for x in a], [float(y) for y in b]


def euclidean(beta: Sequence, w: Sequence) -> float:
    b, v = _pair(beta, w)
    return math.sqrt(math.fsum((x - y) ** 2 for x, y in zip(b, v)))


def manhattan(beta: Sequence, w: Sequence) -> float:
    b, v = _pair(beta, w)
    return math.fsum(abs(x - y) for x, y in zip(b, v))


def max_ratio(beta: Sequence, w: Sequence) -> MaxRatio:
    """Largest of beta_i/w_i and w_i/beta_i over all players.

    A zero on either side makes the ratio infinite; the first such player is
    reported rather than raising, because high quotas can null small voters.
    """
    if len(beta) != len(w):
        raise InputError(f"length mismatch: {len(beta)} vs {len(w)}")
    best, who = -math.inf, None
    for i, (x, y) in enumerate(zip(beta, w)):
        if x < 0 or y < 0:
            raise InputError("shares must be nonnegative")
        if x == 0 and y == 0:
            continue
        if x == 0 or y == 0:
            return MaxRatio(math.inf, i, True)
        r = Fraction(x) / Fraction(y) if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)) else x / y
        r = max(r, 1 / r)
        if r > best:
            best, who = r, i
    if who is None:
        raise DegenerateError("max ratio undefined for all-zero vectors")
    return MaxRatio(float(best), who)


def pearson(w: Sequence, beta: Sequence) -> float:
    """Pearson correlation. The n vs n-1 normalisation cancels and is not applied."""
    a, b = _pair(w, beta)
    n = len(a)
    if n < 2:
        raise DegenerateError("correlation needs at least two players")
    ma, mb = math.fsum(a) / n, math.fsum(b) / n
    da = [x - ma for x in a]
    db = [y - mb for y in b]
    saa = math.fsum(x * x for x in da)
    sbb = math.fsum(y * y for y in db)
    if saa == 0 or sbb == 0:
        raise DegenerateError("correlation undefined for a constant vector")
    r = math.fsum(x * y for x, y in zip(da, db)) / math.sqrt(saa * sbb)
    return max(-1.0, min(1.0, r))


def gini(a: Sequence) -> float:
    """Gini index via the sorted form sum_i (2i - n - 1) a_(i) / (n sum a)."""
    x = sorted(float(v) for v in a)
    if any(v < 0 for v in x):
        raise InputError("Gini index needs nonnegative entries")
    n = len(x)
    total = math.fsum(x)
    if n == 0 or total == 0:
        raise DegenerateError("Gini index undefined for a zero-sum vector")
    return math.fsum((2 * i - n - 1) * v for i, v in enumerate(x, 1)) / (n * total)


def gini_pairwise(a: Sequence) -> float:
    """Quadratic double-sum definition; reference for ``gini``."""
    x = [float(v) for v in a]
    n = len(x)
    total = math.fsum(x)
    if n == 0 or total == 0:
        raise DegenerateError("Gini index undefined for a zero-sum vector")
    return math.fsum(abs(p - q) for p in x for q in x) / (2 * n * total)


def hhi(a: Sequence) -> float:
    if all(isinstance(v, (int, Fraction)) for v in a):
        if sum(Fraction(v) for v in a) != 1:
            raise InputError("HHI expects shares summing to exactly 1")
        return float(sum(Fraction(v) ** 2 for v in a))
    x = [float(v) for v in a]
    if abs(math.fsum(x) - 1) > HHI_TOLERANCE:
        raise InputError(f"HHI expects shares summing to 1, got {math.fsum(x)!r}")
    return math.fsum(v * v for v in x)


def compare(beta: Sequence, w: Sequence) -> ComparisonReport:
    return ComparisonReport(
        d_euc=euclidean(beta, w),
        d_man=manhattan(beta, w),
        omega=max_ratio(beta, w),
        rho=pearson(w, beta),
    )


def inequality(a: Sequence) -> InequalityReport:
    return InequalityReport(gini=gini(a), hhi=hhi(a))
