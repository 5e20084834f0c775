"""Compare the compiled chord kernels against the pure-Python fallback.

Run directly:  python benchmarks/bench_kernels.py
"""

import random
import time

from trisections import _kernels_py

try:
    from trisections import _kernels
except ImportError:
    _kernels = None


def make_chords(rng, n):
    ranks = list(range(2 * n))
    rng.shuffle(ranks)
    starts = ranks[:n]
    ends = ranks[n:]
    return starts, ends


def make_nested_chords(n):
    """Pairwise non-crossing, so has_interleaving scans every pair."""
    return list(range(n)), [2 * n - 1 - i for i in range(n)]


def bench(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = random.Random(0)
    print("%-6s %-22s %-12s %-12s %s" %
          ("n", "kernel", "python", "compiled", "speedup"))
    for n in (50, 200, 800):
        s1, e1 = make_chords(rng, n)
        s2, e2 = make_chords(rng, n)
        ns, ne = make_nested_chords(n)
        cases = [("has_interleaving", (ns, ne)),
                 ("count_interleavings", (s1, e1, s2, e2))]
        for name, args in cases:
            py = bench(getattr(_kernels_py, name), args, 5)
            if _kernels is None:
                print("%-6d %-22s %-12s %-12s %s" %
                      (n, name, "%.4fs" % py, "n/a", "n/a"))
                continue
            cc = bench(getattr(_kernels, name), args, 5)
            print("%-6d %-22s %-12s %-12s %.1fx" %
                  (n, name, "%.4fs" % py, "%.4fs" % cc, py / cc))

    # agreement spot check
    for _ in range(200):
        n = rng.randrange(2, 40)
        s1, e1 = make_chords(rng, n)
        s2, e2 = make_chords(rng, n)
        assert _kernels_py.has_interleaving(s1, e1) == \
            (_kernels.has_interleaving(s1, e1) if _kernels else
             _kernels_py.has_interleaving(s1, e1))
        if _kernels:
            assert _kernels_py.count_interleavings(s1, e1, s2, e2) == \
                _kernels.count_interleavings(s1, e1, s2, e2)
    print("agreement check passed")


if __name__ == "__main__":
    main()
