"""Quota sensitivity sweep and location of the best-matching quotas."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import metrics
from .errors import DegenerateError, InputError
from .game import VotingBody, as_quota, threshold_from_quota
from .power import (
    CountVector,
    DecisivenessValue,
    PowerProfile,
    SwingProfile,
    banzhaf_indices,
    build_count_vector,
    multi_quota_profiles,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    quota_percent: Fraction
    threshold_votes: int
    d_euc: float
    d_man: float
    omega: metrics.MaxRatio
    omega_player: str | None
    rho: float
    pta: DecisivenessValue
    gini_beta: float
    hhi_beta: float
    beta: PowerProfile | None = None
    swings: SwingProfile | None = field(default=None, repr=False)


@dataclass(frozen=True)
class OptimumReport:
    argmin_euc: Fraction
    argmin_man: Fraction
    argmin_omega: Fraction | None
    argmax_rho: Fraction | None
    closest_gini: Fraction
    closest_hhi: Fraction
    baseline_gini: float
    baseline_hhi: float
    omega_excluded: tuple[Fraction, ...] = ()


def quota_range(start, stop, step=1) -> list[Fraction]:
    """Inclusive grid ``start, start + step, ..., <= stop``."""
    start, stop, step = Fraction(start), Fraction(stop), Fraction(step)
    if step <= 0:
        raise InputError("quota step must be positive")
    if stop < start:
        raise InputError(f"empty quota range {start}..{stop}")
    out = []
    q = start
    while q <= stop:
        out.append(q)
        q += step
    return out


def run_sweep(
    body: VotingBody,
    quotas: Sequence,
    include_profiles: bool = False,
    jobs: int = 1,
    counts: CountVector | None = None,
    strict: bool = False,
    backend: str | None = None,
) -> list[SweepRow]:
    """All comparison and inequality measures at each quota, one row per quota."""
    specs = [as_quota(q) for q in quotas]
    qs = [s.percent for s in specs]
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise InputError("quotas must be strictly increasing")
    if not specs:
        return []
    thresholds = [threshold_from_quota(s, body, strict=strict) for s in specs]
    distinct = sorted(set(thresholds))
    if counts is None:
        log.info("building coalition counts: n=%d, W=%d", body.n, body.total_votes)
        counts = build_count_vector(body, backend)
    log.info("swing passes for %d thresholds", len(distinct))
    by_T = dict(zip(distinct, multi_quota_profiles(body, distinct, jobs=jobs, counts=counts)))

    w = body.relative_weights()
    names = body.names
    rows = []
    for q, T in zip(qs, thresholds):
        swings, decisive = by_T[T]
        profile = banzhaf_indices(swings, q)
        if sum(profile.beta) != 1:
            raise AssertionError("normalised indices do not sum to one")
        beta = profile.beta
        omega = metrics.max_ratio(beta, w)
        try:
            rho = metrics.pearson(w, beta)
        except DegenerateError:
            log.warning("correlation undefined at quota %s (constant vector); recorded as nan", q)
            rho = math.nan
        rows.append(
            SweepRow(
                quota_percent=q,
                threshold_votes=T,
                d_euc=metrics.euclidean(beta, w),
                d_man=metrics.manhattan(beta, w),
                omega=omega,
                omega_player=names[omega.player] if omega.player is not None else None,
                rho=rho,
                pta=decisive,
                gini_beta=metrics.gini(beta),
                hhi_beta=metrics.hhi(beta),
                beta=profile if include_profiles else None,
                swings=swings if include_profiles else None,
            )
        )
    return rows


def _argbest(rows, key, maximize=False):
    # first row wins ties, i.e. the lowest quota
    best = None
    for r in rows:
        v = key(r)
        if math.isnan(v):
            continue
        if best is None or (v > best[0] if maximize else v < best[0]):
            best = (v, r.quota_percent)
    return None if best is None else best[1]


def find_optima(rows: Sequence[SweepRow], baseline: metrics.InequalityReport) -> OptimumReport:
    if not rows:
        raise InputError("no sweep rows")
    finite = [r for r in rows if not r.omega.infinite]
    excluded = tuple(r.quota_percent for r in rows if r.omega.infinite)
    if excluded:
        log.warning("max ratio infinite (null players) at quotas %s; excluded", [str(q) for q in excluded])
    return OptimumReport(
        argmin_euc=_argbest(rows, lambda r: r.d_euc),
        argmin_man=_argbest(rows, lambda r: r.d_man),
        argmin_omega=_argbest(finite, lambda r: r.omega.value) if finite else None,
        argmax_rho=_argbest(rows, lambda r: r.rho, maximize=True),
        closest_gini=_argbest(rows, lambda r: abs(r.gini_beta - baseline.gini)),
        closest_hhi=_argbest(rows, lambda r: abs(r.hhi_beta - baseline.hhi)),
        baseline_gini=baseline.gini,
        baseline_hhi=baseline.hhi,
        omega_excluded=excluded,
    )


def weight_inequality(body: VotingBody) -> metrics.InequalityReport:
    return metrics.inequality(body.relative_weights())
