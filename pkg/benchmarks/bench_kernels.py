"""Compare the compiled and pure-Python window kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Each case scans one saturated prefix: first occurrences of all
length-n windows, then the unbordered test on the distinct ones.
"""

import argparse
import timeit

from regseq import _kernels_py
from regseq import factors

try:
    from regseq import _kernels as compiled
except ImportError:
    compiled = None

CASES = [
    ("thue-morse", 64),
    ("thue-morse", 256),
    ("rudin-shapiro", 33),
    ("rudin-shapiro", 200),
    ("period-doubling:5", 150),
]


def scan(impl, buf, n):
    pos = impl.first_occurrences(buf, n)
    return impl.unbordered_positions(buf, pos, n)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'sequence':<20}{'n':>5}{'prefix':>9}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for name, n in CASES:
        idx = factors.distinct_factors(name, n)
        buf = idx.prefix
        assert scan(compiled, buf, n) == scan(_kernels_py, buf, n)
        times = []
        for impl in (_kernels_py, compiled):
            t = min(timeit.repeat(lambda: scan(impl, buf, n), number=1, repeat=args.repeat))
            times.append(t * 1e3)
        print(f"{name:<20}{n:>5}{len(buf):>9}{times[0]:>12.2f}{times[1]:>12.2f}{times[0] / times[1]:>8.1f}x")


if __name__ == "__main__":
    main()
