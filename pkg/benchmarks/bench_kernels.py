"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per workload with the best wall time of each backend and
the speed-up. Both backends are fed identical inputs and their outputs are
checked against each other before timing.
"""

import argparse
import timeit

import numpy as np

from belfuse import kernels


def table(rng, n, k):
    masks = rng.choice(np.arange(1, 1 << n), size=k, replace=False)
    v = rng.random(k) + 0.01
    return {int(b): float(x) for b, x in zip(masks, v / v.sum())}


def workloads(rng):
    pair = (table(rng, 12, 200), table(rng, 12, 200))
    tuples4 = [table(rng, 8, 12) for _ in range(4)]
    dense = rng.random(1 << 16)
    jous = (table(rng, 10, 150), table(rng, 10, 150))
    return [
        ("conjunctive pair, 200x200 focals, n=12", lambda k: k.combine_pair(*pair, kernels.CONJ)),
        ("pcr6, 4 sources x 12 focals, n=8", lambda k: k.combine_tuples(tuples4, kernels.PCR6)),
        ("dubois-prade, 4 sources x 12 focals", lambda k: k.combine_tuples(tuples4, kernels.DUBOIS_PRADE)),
        ("mixed jaccard pair, 200x200 focals", lambda k: k.mixed_pair(*pair, kernels.DELTA_JACCARD, 0.5)),
        ("jousselme, 150+150 focals, n=10", lambda k: k.jousselme_sq(*jous)),
        ("superset zeta, n=16", lambda k: k.zeta(dense, True, False)),
    ]


def same(a, b):
    if isinstance(a, dict):
        return all(abs(a.get(x, 0.0) - b.get(x, 0.0)) <= 1e-9 for x in set(a) | set(b))
    return np.allclose(a, b, atol=1e-9)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the Python backend is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'workload':44s} {'python':>10s} {'cython':>10s} {'speed-up':>9s}")
    for name, fn in workloads(rng):
        py = backends["python"]
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if "cython" in backends:
            cy = backends["cython"]
            assert same(fn(py), fn(cy)), f"backends disagree on {name}"
            t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
            print(f"{name:44s} {t_py * 1e3:8.2f}ms {t_cy * 1e3:8.2f}ms {t_py / t_cy:8.1f}x")
        else:
            print(f"{name:44s} {t_py * 1e3:8.2f}ms {'-':>10s} {'-':>9s}")


if __name__ == "__main__":
    main()
