"""Kernel selection: the compiled extension when it imports, pure Python otherwise."""

import numpy as np

from . import _pykernels

try:
    from . import _kernels as _native
except ImportError:  # extension not built
    _native = None


def limbs_for(n_players):
    # the grand-coalition count 2**n needs n + 1 bits
    return n_players // 64 + 1


def _row_to_int(row):
    return int.from_bytes(row.astype("<u8", copy=False).tobytes(), "little")


def _ints_to_rows(values, limbs):
    buf = b"".join(v.to_bytes(8 * limbs, "little") for v in values)
    return np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(len(values), limbs)


class NativeBackend:
    name = "native"
    parallel = True  # kernels release the GIL

    def build(self, weights):
        w = np.asarray(weights, dtype=np.int64)
        return _native.build_counts(np.ascontiguousarray(w), limbs_for(len(w)))

    def from_list(self, coeffs, n_players):
        return _ints_to_rows(coeffs, limbs_for(n_players))

    def length(self, data):
        return data.shape[0]

    def coefficient(self, data, t):
        return _row_to_int(data[t])

    def to_list(self, data):
        return [_row_to_int(r) for r in data]

    def total(self, data):
        # split limbs into 32-bit halves so column sums cannot wrap
        lo = (data & np.uint64(0xFFFFFFFF)).sum(axis=0, dtype=np.uint64)
        hi = (data >> np.uint64(32)).sum(axis=0, dtype=np.uint64)
        return sum((int(lo[k]) + (int(hi[k]) << 32)) << (64 * k) for k in range(data.shape[1]))

    def is_palindrome(self, data):
        return bool(np.array_equal(data, data[::-1]))

    def equal(self, a, b):
        return bool(np.array_equal(a, b))

    def remove(self, data, w):
        return _native.remove_weight(data, int(w))

    def prefix_below(self, data, points):
        pts = np.minimum(np.asarray(points, dtype=np.int64), data.shape[0])
        pts = np.maximum(pts, 0)
        order = np.argsort(pts, kind="stable")
        rows = _native.prefix_at(data, np.ascontiguousarray(pts[order]))
        out = [0] * len(pts)
        for j, k in enumerate(order):
            out[k] = _row_to_int(rows[j])
        return out

    def swing_counts(self, data, w, thresholds):
        pts = sorted({p for T in thresholds for p in (max(0, T - w), T)})
        rows = _native.deconvolved_prefix_at(data, int(w), np.asarray(pts, dtype=np.int64))
        if rows is None:
            return None
        at = {p: _row_to_int(r) for p, r in zip(pts, rows)}
        return [at[T] - at[max(0, T - w)] for T in thresholds]


class PythonBackend:
    name = "python"
    parallel = False  # big-int arithmetic holds the GIL

    def build(self, weights):
        return _pykernels.build_counts(weights)

    def from_list(self, coeffs, n_players):
        return _pykernels.from_coefficients(coeffs, n_players)

    def length(self, data):
        return len(data)

    def coefficient(self, data, t):
        return _pykernels.coefficient(data, t)

    def to_list(self, data):
        return _pykernels.to_coefficients(data)

    def total(self, data):
        return data.prefix[-1]

    def is_palindrome(self, data):
        c = _pykernels.to_coefficients(data)
        return c == c[::-1]

    def equal(self, a, b):
        return a.prefix == b.prefix

    def remove(self, data, w):
        return _pykernels.remove_weight(data, w)

    def prefix_below(self, data, points):
        return [_pykernels.prefix_below(data, p) for p in points]

    def swing_counts(self, data, w, thresholds):
        return _pykernels.swing_counts(data, w, thresholds)


_BACKENDS = {"python": PythonBackend()}
if _native is not None:
    _BACKENDS["native"] = NativeBackend()

_current = _BACKENDS["native" if _native is not None else "python"]


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name=None):
    if name is None:
        return _current
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}") from None


def set_backend(name):
    """Select the default kernel backend ('native' or 'python')."""
    global _current
    _current = get_backend(name)
    return _current
