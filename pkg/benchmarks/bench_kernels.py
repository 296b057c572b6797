"""Compare the Cython kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py`` after building the
extension (``python3 setup.py build_ext --inplace``).
"""

import argparse
import random
import timeit
from fractions import Fraction

from affauto import _pykernels

try:
    from affauto import _ckernels
except ImportError:
    _ckernels = None


def random_terms(rng, nvars, degree, count):
    terms = {}
    while len(terms) < count:
        e = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = Fraction(rng.randint(-50, 50) or 1, rng.randint(1, 7))
    return terms


def cases(rng):
    a = random_terms(rng, 3, 12, 80)
    b = random_terms(rng, 3, 12, 80)
    yield "mul_terms 3 vars, 80 x 80 terms", "mul_terms", (a, b, 3)
    a = random_terms(rng, 5, 8, 150)
    b = random_terms(rng, 5, 8, 40)
    yield "mul_terms 5 vars, 150 x 40 terms", "mul_terms", (a, b, 5)
    gens = sorted({rng.randint(5, 60) for _ in range(6)})
    yield f"additive_closure gens {gens}, bound 20000", "additive_closure", (gens, 20000)


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; run: python3 setup.py build_ext --inplace")
    print(f"{'case':<58} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, name, fargs in cases(random.Random(args.seed)):
        py = bench(getattr(_pykernels, name), fargs, args.repeat)
        if _ckernels is None:
            print(f"{label:<58} {py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        c_fn = getattr(_ckernels, name)
        if c_fn(*fargs) != getattr(_pykernels, name)(*fargs):
            raise SystemExit(f"backends disagree on {label}")
        cy = bench(c_fn, fargs, args.repeat)
        print(f"{label:<58} {py * 1e3:>8.2f}ms {cy * 1e3:>8.2f}ms {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
