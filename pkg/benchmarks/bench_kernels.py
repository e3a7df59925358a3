"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--max-n 16] [--repeat 3]

Times raw dense convolution (64-bit and big-integer inputs) and the two
composition-sum routes, which spend nearly all their time in the kernels.
"""

import argparse
import random
import sys
import timeit

from chromsplit import _kernels_py, chromatic

try:
    from chromsplit import _kernels as compiled
except ImportError:
    compiled = None


def _routes(max_n):
    chromatic.clear_caches()
    for n in range(1, max_n + 1):
        chromatic.l_closed_form(n)
        chromatic.spectrum_poincare(n)


def _with_backend(impl, fn):
    saved = chromatic.convolve, chromatic.add_into
    chromatic.convolve, chromatic.add_into = impl.convolve, impl.add_into
    try:
        return fn()
    finally:
        chromatic.convolve, chromatic.add_into = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1

    rng = random.Random(0)
    small = [rng.randint(-1000, 1000) for _ in range(256)]
    big = [rng.randint(-2**90, 2**90) for _ in range(256)]
    cases = [
        ("convolve 256x256, small ints", lambda impl: impl.convolve(small, small), 20),
        ("convolve 256x256, 90-bit ints", lambda impl: impl.convolve(big, big), 5),
        (f"closed form + spectrum, n <= {args.max_n}",
         lambda impl: _with_backend(impl, lambda: _routes(args.max_n)), 1),
    ]
    print(f"{'case':<36} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn, number in cases:
        t = {}
        for label, impl in (("python", _kernels_py), ("compiled", compiled)):
            t[label] = min(timeit.repeat(lambda: fn(impl), number=number, repeat=args.repeat)) / number
        print(f"{name:<36} {t['python']:>9.4f}s {t['compiled']:>9.4f}s {t['python'] / t['compiled']:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
