"""Exact Banzhaf power and decisiveness of weighted voting games.

Everything is derived from the coalition-count vector ``c`` where ``c[t]`` is
the number of coalitions whose votes add up to exactly ``t`` (the coefficients
of prod(1 + x**w_i)). That vector does not depend on the threshold, so one
build plus one player-removal pass per distinct weight serves any number of
thresholds.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _backend
from .errors import DegenerateError, GameSizeError, InputError, IntegrityError, ResourceError
from .game import GameInstance, VotingBody

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_PLAYERS = 25


def render_fraction(value: Fraction, decimals: int = 4) -> str:
    """Exact decimal rendering with round-half-even."""
    value = Fraction(value)
    if decimals < 0:
        raise ValueError("decimals must be nonnegative")
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator) * 10**decimals, value.denominator
    q, r = divmod(num, den)
    if 2 * r > den or (2 * r == den and q % 2):
        q += 1
    if q == 0:
        sign = ""
    digits = str(q).rjust(decimals + 1, "0")
    if decimals == 0:
        return sign + digits
    return f"{sign}{digits[:-decimals]}.{digits[-decimals:]}"


class CountVector:
    """Coalition counts per vote total, ``counts[t]`` for ``t = 0..W``.

    Storage is owned by the kernel backend that built it; indexing returns
    Python ints.
    """

    __slots__ = ("_data", "_backend", "n_players")

    def __init__(self, data, n_players: int, backend):
        self._data = data
        self._backend = backend
        self.n_players = n_players

    @classmethod
    def from_list(cls, coeffs: Sequence[int], n_players: int, backend: str | None = None) -> "CountVector":
        be = _backend.get_backend(backend)
        return cls(be.from_list([int(c) for c in coeffs], n_players), n_players, be)

    @property
    def backend(self) -> str:
        return self._backend.name

    @property
    def total_weight(self) -> int:
        return len(self) - 1

    def __len__(self):
        return self._backend.length(self._data)

    def __getitem__(self, t):
        if not isinstance(t, int):
            raise TypeError("CountVector indices must be integers")
        if not 0 <= t < len(self):
            raise IndexError(t)
        return self._backend.coefficient(self._data, t)

    def to_list(self) -> list[int]:
        return self._backend.to_list(self._data)

    def total(self) -> int:
        return self._backend.total(self._data)

    def is_palindrome(self) -> bool:
        return self._backend.is_palindrome(self._data)

    def prefix_below(self, points: Sequence[int]) -> list[int]:
        """Number of coalitions with fewer than ``p`` votes, for each ``p``."""
        return self._backend.prefix_below(self._data, list(points))

    def __eq__(self, other):
        if not isinstance(other, CountVector):
            return NotImplemented
        if self.n_players != other.n_players or len(self) != len(other):
            return False
        if self._backend is other._backend:
            return self._backend.equal(self._data, other._data)
        return self.to_list() == other.to_list()

    def __repr__(self):
        return f"CountVector(n_players={self.n_players}, W={self.total_weight}, backend={self.backend!r})"


@dataclass(frozen=True)
class SwingProfile:
    eta: tuple[int, ...]
    n_players: int
    threshold_votes: int

    @property
    def total(self) -> int:
        return sum(self.eta)


@dataclass(frozen=True)
class PowerProfile:
    beta: tuple[Fraction, ...]
    quota_percent: Fraction | None = None

    def decimals(self, decimals: int = 4, percent: bool = True) -> list[str]:
        scale = 100 if percent else 1
        return [render_fraction(b * scale, decimals) for b in self.beta]


@dataclass(frozen=True)
class DecisivenessValue:
    pta: Fraction

    def decimal(self, decimals: int = 4, percent: bool = True) -> str:
        return render_fraction(self.pta * (100 if percent else 1), decimals)

    def __float__(self):
        return float(self.pta)


def build_count_vector(body: VotingBody, backend: str | None = None) -> CountVector:
    be = _backend.get_backend(backend)
    try:
        data = be.build(body.weights)
    except MemoryError as exc:
        raise ResourceError(
            f"cannot allocate coalition counts for W={body.total_votes}, n={body.n}"
        ) from exc
    return CountVector(data, body.n, be)


def remove_player(c: CountVector, w_i: int) -> CountVector:
    """Counts of the body with one player of weight ``w_i`` taken out."""
    if c.n_players < 1:
        raise IntegrityError("no player left to remove")
    data = c._backend.remove(c._data, int(w_i))
    if data is None:
        raise IntegrityError(f"weight {w_i} is not part of this count vector")
    return CountVector(data, c.n_players - 1, c._backend)


def add_player(c: CountVector, w_i: int) -> CountVector:
    """Inverse of ``remove_player``: fold one more player in."""
    coeffs = c.to_list()
    out = coeffs + [0] * w_i
    for t, v in enumerate(coeffs):
        out[t + w_i] += v
    return CountVector(c._backend.from_list(out, c.n_players + 1), c.n_players + 1, c._backend)


def swing_count(c_minus_i: CountVector, w_i: int, T: int) -> int:
    """Coalitions without player i whose votes lie in ``[T - w_i, T - 1]``."""
    lo, hi = c_minus_i.prefix_below([max(0, T - w_i), max(0, T)])
    return hi - lo


def banzhaf_value(eta_i: int, n: int) -> Fraction:
    if n < 1 or not 0 <= eta_i <= 2 ** (n - 1):
        raise InputError(f"swing count {eta_i} out of range for {n} players")
    return Fraction(eta_i, 2 ** (n - 1))


def banzhaf_indices(profile: SwingProfile, quota_percent=None) -> PowerProfile:
    total = profile.total
    if total == 0:
        raise DegenerateError("no player is ever critical")
    q = Fraction(quota_percent) if quota_percent is not None else None
    return PowerProfile(tuple(Fraction(e, total) for e in profile.eta), q)


def pta(body: VotingBody, T: int, counts: CountVector | None = None) -> DecisivenessValue:
    """Power of the body to act: winning coalitions over all 2**n."""
    if counts is None:
        counts = build_count_vector(body)
    (below,) = counts.prefix_below([T])
    n = body.n
    return DecisivenessValue(Fraction(2**n - below, 2**n))


def _resolve_jobs(jobs):
    if jobs is None or jobs == 1:
        return 1
    if jobs == 0:
        return os.cpu_count() or 1
    if jobs < 0:
        raise InputError("jobs must be >= 0")
    return jobs


def multi_quota_profiles(
    body: VotingBody,
    thresholds: Sequence[int],
    jobs: int = 1,
    counts: CountVector | None = None,
    backend: str | None = None,
) -> list[tuple[SwingProfile, DecisivenessValue]]:
    """Swing profiles and decisiveness for every threshold from one count vector.

    Each distinct weight gets a single removal pass that yields its swing
    counts at all thresholds at once. ``jobs`` spreads those passes over
    threads (0 means one per CPU); results do not depend on it.
    """
    thresholds = [int(T) for T in thresholds]
    W = body.total_votes
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise InputError("thresholds must be strictly increasing")
    if thresholds and not (1 <= thresholds[0] and thresholds[-1] <= W):
        raise InputError(f"thresholds must lie in [1, {W}]")
    if counts is None:
        counts = build_count_vector(body, backend)
    n = body.n
    be = counts._backend
    distinct = sorted(set(body.weights), reverse=True)

    def work(w):
        swings = be.swing_counts(counts._data, w, thresholds)
        if swings is None or any(not 0 <= s <= 2 ** (n - 1) for s in swings):
            raise IntegrityError(f"player removal for weight {w} produced an invalid count")
        return swings

    workers = _resolve_jobs(jobs) if be.parallel else 1
    log.debug("swing passes: %d distinct weights, %d thresholds, %d workers", len(distinct), len(thresholds), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            by_weight = dict(zip(distinct, pool.map(work, distinct)))
    else:
        by_weight = {w: work(w) for w in distinct}

    below = counts.prefix_below(thresholds)
    out = []
    for k, T in enumerate(thresholds):
        eta = tuple(by_weight[w][k] for w in body.weights)
        out.append((SwingProfile(eta, n, T), DecisivenessValue(Fraction(2**n - below[k], 2**n))))
    return out


def swing_profile(g: GameInstance, counts: CountVector | None = None) -> SwingProfile:
    ((profile, _),) = multi_quota_profiles(g.body, [g.threshold_votes], counts=counts)
    return profile


def _subset_sums(weights):
    n = len(weights)
    if sum(weights) < 2**62:
        sums = np.zeros(1 << n, dtype=np.int64)
        for i, w in enumerate(weights):
            sums[1 << i: 2 << i] = sums[: 1 << i] + w
        return sums
    sums = [0]
    for w in weights:
        sums += [s + w for s in sums]
    return np.array(sums, dtype=object)


def _check_size(g):
    if g.body.n > BRUTE_FORCE_MAX_PLAYERS:
        raise GameSizeError(f"brute force limited to {BRUTE_FORCE_MAX_PLAYERS} players, got {g.body.n}")


def brute_force_banzhaf(g: GameInstance) -> SwingProfile:
    """Swing counts by enumerating all 2**n coalitions."""
    _check_size(g)
    weights = g.body.weights
    T = g.threshold_votes
    sums = _subset_sums(weights)
    masks = np.arange(len(sums))
    eta = []
    for i, w in enumerate(weights):
        without = (masks >> i) & 1 == 0
        losing = sums < T
        becomes_winning = sums + w >= T
        eta.append(int(np.count_nonzero(without & losing & becomes_winning)))
    return SwingProfile(tuple(eta), g.body.n, T)


def brute_force_pta(g: GameInstance) -> DecisivenessValue:
    _check_size(g)
    sums = _subset_sums(g.body.weights)
    wins = int(np.count_nonzero(sums >= g.threshold_votes))
    return DecisivenessValue(Fraction(wins, 2**g.body.n))
