"""Compare the compiled and pure-Python kernels.

Times count construction and a multi-quota swing sweep for the embedded IMF
table and for synthetic bodies, and checks both backends agree exactly.

    python benchmarks/bench_backends.py [--repeat 3] [--skip-imf]
"""

import argparse
import random
import time

from quotapower import (
    VotingBody,
    available_backends,
    build_count_vector,
    embedded_imf_dataset,
    multi_quota_profiles,
    threshold_from_quota,
)
from quotapower.sweep import quota_range


def _best(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def bench(label, body, quotas, repeat):
    thresholds = sorted({threshold_from_quota(q, body) for q in quotas})
    results = {}
    for name in available_backends():
        t_build, counts = _best(lambda: build_count_vector(body, name), repeat)
        t_sweep, out = _best(lambda: multi_quota_profiles(body, thresholds, counts=counts), repeat)
        results[name] = out
        print(f"{label:<28} {name:<7} build {t_build:8.3f}s  swings {t_sweep:8.3f}s")
    outs = list(results.values())
    agree = all(o == outs[0] for o in outs[1:])
    print(f"{label:<28} backends agree: {agree}")
    return agree


def synthetic(n, max_weight, seed):
    rng = random.Random(seed)
    return VotingBody.from_weights([rng.randint(1, max_weight) for _ in range(n)])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=1, help="best-of repeats per timing")
    p.add_argument("--skip-imf", action="store_true", help="only run the synthetic cases")
    args = p.parse_args(argv)

    print("backends:", ", ".join(available_backends()))
    quotas = quota_range(50, 87)
    ok = True
    for n, wmax in ((20, 1000), (60, 10_000), (191, 2_000)):
        ok &= bench(f"synthetic n={n} wmax={wmax}", synthetic(n, wmax, seed=n), quotas, args.repeat)
    if not args.skip_imf:
        ok &= bench("IMF (n=191, W=5041052)", embedded_imf_dataset().to_body(), quotas, args.repeat)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
