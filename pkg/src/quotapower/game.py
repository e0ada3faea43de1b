"""Weighted voting games: voters, bodies, quotas and coalition evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

from .errors import InputError

WINNING = True
LOSING = False


@dataclass(frozen=True)
class CountryWeight:
    name: str
    votes: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.strip():
            raise InputError("voter name must be non-empty text")
        if isinstance(self.votes, bool) or not isinstance(self.votes, int):
            raise InputError(f"{self.name}: votes must be an integer, got {self.votes!r}")
        if self.votes < 1:
            raise InputError(f"{self.name}: votes must be positive, got {self.votes}")


@dataclass(frozen=True)
class VotingBody:
    """An ordered, immutable list of voters with their integer vote counts."""

    players: tuple[CountryWeight, ...]
    total_votes: int = field(init=False)

    def __post_init__(self):
        players = tuple(self.players)
        if not players:
            raise InputError("a voting body needs at least one player")
        seen = set()
        for p in players:
            if p.name in seen:
                raise InputError(f"duplicate player name: {p.name!r}")
            seen.add(p.name)
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "total_votes", sum(p.votes for p in players))

    @classmethod
    def from_weights(cls, weights: Iterable[int], names: Sequence[str] | None = None) -> "VotingBody":
        weights = list(weights)
        if names is None:
            names = [f"P{i + 1}" for i in range(len(weights))]
        if len(names) != len(weights):
            raise InputError("names and weights differ in length")
        return cls(tuple(CountryWeight(n, w) for n, w in zip(names, weights)))

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def weights(self) -> list[int]:
        return [p.votes for p in self.players]

    @property
    def names(self) -> list[str]:
        return [p.name for p in self.players]

    def __len__(self):
        return len(self.players)

    def index(self, name: str) -> int:
        for i, p in enumerate(self.players):
            if p.name == name:
                return i
        raise KeyError(name)

    def relative_weights(self) -> list[Fraction]:
        W = self.total_votes
        return [Fraction(p.votes, W) for p in self.players]

    def weight_gcd(self) -> int:
        return reduce(math.gcd, self.weights)

    def reduced(self) -> tuple["VotingBody", int]:
        """Divide all votes by their GCD. Returns the new body and the divisor.

        A threshold ``T`` on the original body corresponds to ``ceil(T / g)``
        on the reduced one.
        """
        g = self.weight_gcd()
        if g == 1:
            return self, 1
        return VotingBody(tuple(CountryWeight(p.name, p.votes // g) for p in self.players)), g


@dataclass(frozen=True)
class QuotaSpec:
    """A decision quota in percent of total votes, held as an exact rational."""

    percent: Fraction

    def __post_init__(self):
        value = self.percent
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise InputError(f"not a quota: {self.percent!r}") from None
        elif isinstance(value, float):
            value = Fraction(str(value))
        elif isinstance(value, Rational):
            value = Fraction(value)
        else:
            raise InputError(f"not a quota: {self.percent!r}")
        if not 50 <= value <= 100:
            raise InputError(f"quota must lie in [50, 100] percent, got {_fmt(value)}")
        object.__setattr__(self, "percent", value)

    def __str__(self):
        return _fmt(self.percent)


def _fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return format(float(q), "g")


def as_quota(q) -> QuotaSpec:
    return q if isinstance(q, QuotaSpec) else QuotaSpec(q)


def threshold_from_quota(q, body_or_total, strict: bool = False) -> int:
    """Smallest integer vote total that wins at quota ``q`` percent.

    Coalitions reaching exactly ``q * W / 100`` win. With ``strict=True`` they
    must exceed it instead (``floor(q * W / 100) + 1``).
    """
    q = as_quota(q)
    W = body_or_total.total_votes if isinstance(body_or_total, VotingBody) else int(body_or_total)
    if W < 1:
        raise InputError("total votes must be positive")
    exact = q.percent * W / 100
    if strict:
        T = math.floor(exact) + 1
        if T > W:
            raise InputError(f"no coalition exceeds {q}% of the votes")
        return T
    return math.ceil(exact)


@dataclass(frozen=True)
class GameInstance:
    body: VotingBody
    threshold_votes: int

    def __post_init__(self):
        T = self.threshold_votes
        if isinstance(T, bool) or not isinstance(T, int) or not 1 <= T <= self.body.total_votes:
            raise InputError(f"threshold must be an integer in [1, {self.body.total_votes}], got {T!r}")

    @classmethod
    def from_quota(cls, body: VotingBody, q, strict: bool = False) -> "GameInstance":
        return cls(body, threshold_from_quota(q, body, strict=strict))


@dataclass(frozen=True)
class Coalition:
    members: frozenset[int]

    def __init__(self, members: Iterable[int]):
        members = list(members)
        if len(set(members)) != len(members):
            raise InputError("coalition members must be distinct")
        object.__setattr__(self, "members", frozenset(members))

    def validate(self, body: VotingBody) -> None:
        for i in self.members:
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < body.n:
                raise InputError(f"invalid player index {i!r} for a body of {body.n}")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def coalition_votes(body: VotingBody, S: Coalition) -> int:
    S.validate(body)
    return sum(body.players[i].votes for i in S.members)


def evaluate_coalition(g: GameInstance, S: Coalition) -> bool:
    """True (``WINNING``) iff the coalition's votes reach the threshold."""
    return coalition_votes(g.body, S) >= g.threshold_votes
