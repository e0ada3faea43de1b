"""Pure-Python counterparts of the native kernels.

The coalition-count polynomial prod(1 + x**w) is built by Kronecker
substitution: with x = 2**B the whole coefficient array is one Python int and
multiplying by (1 + x**w) is a shift and an add. ``B`` leaves room above the
largest coefficient (at most 2**n), so slots never carry into each other.

Counts are kept as inclusive prefix sums ``P[t] = c[0] + ... + c[t]``. Removing
a player of weight ``w`` has the closed form ``c'[t] = sum_k (-1)**k c[t - k*w]``,
so a window sum of the reduced vector is an alternating sum of ``P`` values
spaced ``w`` apart; no per-player table is materialised.
"""

from itertools import accumulate


class PyCounts:
    __slots__ = ("prefix", "n_players")

    def __init__(self, prefix, n_players):
        self.prefix = prefix
        self.n_players = n_players

    def __len__(self):
        return len(self.prefix)


def slot_bytes(n_players):
    return (n_players + 2 + 7) // 8


def build_counts(weights):
    weights = list(weights)
    n = len(weights)
    nb = slot_bytes(n)
    shift = 8 * nb
    total = sum(weights)
    packed = 1
    for w in weights:
        packed += packed << (shift * w)
    raw = packed.to_bytes(nb * (total + 1), "little")
    del packed
    frombytes = int.from_bytes
    coeffs = (frombytes(raw[i:i + nb], "little") for i in range(0, len(raw), nb))
    return PyCounts(list(accumulate(coeffs)), n)


def from_coefficients(coeffs, n_players):
    return PyCounts(list(accumulate(coeffs)), n_players)


def coefficient(counts, t):
    p = counts.prefix
    return p[t] - p[t - 1] if t else p[0]


def to_coefficients(counts):
    p = counts.prefix
    return [p[0]] + [b - a for a, b in zip(p, p[1:])]


def prefix_below(counts, t):
    """Sum of c[0:t]."""
    if t <= 0:
        return 0
    p = counts.prefix
    return p[min(t, len(p)) - 1]


def remove_weight(counts, w):
    """Plain recurrence c'[t] = c[t] - c'[t - w]; None if w is not a factor."""
    c = to_coefficients(counts)
    rows = len(c)
    if w <= 0 or w >= rows:
        return None
    out = c[:w]
    for t in range(w, rows):
        v = c[t] - out[t - w]
        if v < 0:
            return None
        out.append(v)
    if any(out[rows - w:]):
        return None
    return from_coefficients(out[:rows - w], counts.n_players - 1)


def swing_counts(counts, w, thresholds):
    """Coalitions excluding one player of weight w whose sum lies in [T - w, T - 1]."""
    p = counts.prefix
    out = []
    for T in thresholds:
        t = T - 1
        s = p[t]
        t -= w
        negative = True
        while t >= 0:
            if negative:
                s -= 2 * p[t]
            else:
                s += 2 * p[t]
            negative = not negative
            t -= w
        out.append(s)
    return out
