"""Compare the compiled and pure-Python kernel backends.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends receive identical inputs; results are checked for equality
before timings are reported.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from gradedflag import kernels
from gradedflag.scalar import Q


def rand_matrix(rng, n, m, density=0.6, den=5):
    return [[Q(rng.randint(-9, 9), rng.randint(1, den)) if rng.random() < density else Q(0)
             for _ in range(m)] for _ in range(n)]


def cases(rng):
    for n in (8, 16, 32):
        a, b = rand_matrix(rng, n, n), rand_matrix(rng, n, n)
        yield f"matmul {n}x{n}", "matmul", (a, b, n)
        yield f"rref {n}x{2 * n}", "rref", (rand_matrix(rng, n, 2 * n), 2 * n)
        yield f"det {n}x{n}", "det", (a,)


def end_to_end(repeat):
    # chart action on gl(2,1,1), timed once per backend in a fresh interpreter
    code = ("import time\n"
            "from gradedflag.catalog import by_name\n"
            "from gradedflag.properties import run_suite\n"
            "e = by_name('gl(2,1,1)')\n"
            "times = []\n"
            f"for _ in range({repeat}):\n"
            "    t = time.perf_counter()\n"
            "    run_suite('chart', e, 40, 1)\n"
            "    times.append(time.perf_counter() - t)\n"
            "print(min(times))\n")
    out = {}
    for name, env in (("compiled", {}), ("python", {"GRADEDFLAG_PURE_PYTHON": "1"})):
        res = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        out[name] = float(res.stdout)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled backend not built; only the python backend is available")
        return 1
    fast, slow = kernels.compiled_backend, kernels.python_backend
    print(f"{'case':<18}{'compiled':>12}{'python':>12}{'speedup':>10}")
    for label, fn, argv_ in cases(random.Random(args.seed)):
        a, b = getattr(fast, fn), getattr(slow, fn)
        if a(*argv_) != b(*argv_):
            raise SystemExit(f"backends disagree on {label}")
        number = 3
        ta = min(timeit.repeat(lambda: a(*argv_), number=number, repeat=args.repeat)) / number
        tb = min(timeit.repeat(lambda: b(*argv_), number=number, repeat=args.repeat)) / number
        print(f"{label:<18}{ta * 1e3:>10.2f}ms{tb * 1e3:>10.2f}ms{tb / ta:>9.1f}x")
    e2e = end_to_end(max(1, args.repeat // 2))
    print(f"{'chart suite x40':<18}{e2e['compiled'] * 1e3:>10.0f}ms{e2e['python'] * 1e3:>10.0f}ms"
          f"{e2e['python'] / e2e['compiled']:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
