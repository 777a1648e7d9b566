"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py --sizes 1000 10000 100000 --repeat 5
"""

import argparse
import random
import timeit

from fdsring import _purekernels as pure

try:
    from fdsring import _kernels as compiled
except ImportError:
    compiled = None


def random_map(n, rng):
    return [rng.randrange(n) for _ in range(n)]


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels are not built; only timing pure Python")
    rng = random.Random(ns.seed)
    print(f"{'kernel':<18}{'n':>9}{'python s':>12}{'cython s':>12}{'speedup':>9}")
    for n in ns.sizes:
        succ = random_map(n, rng)
        depth = pure.classify(succ)[0]
        side = max(1, int(n ** 0.5))
        a, b = random_map(side, rng), random_map(side, rng)
        cases = [
            ("classify", lambda m: m.classify(succ)),
            ("height_and_preds", lambda m: m.height_and_preds(succ, depth)),
            ("product_succ", lambda m: m.product_succ(a, b)),
        ]
        for name, call in cases:
            tp = bench(lambda: call(pure), ns.repeat)
            if compiled is None:
                print(f"{name:<18}{n:>9}{tp:>12.5f}{'-':>12}{'-':>9}")
                continue
            if call(pure) != call(compiled):
                raise SystemExit(f"{name}: backends disagree at n={n}")
            tc = bench(lambda: call(compiled), ns.repeat)
            print(f"{name:<18}{n:>9}{tp:>12.5f}{tc:>12.5f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
