"""Compare the compiled and pure-Python exact kernels.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from dualcanon import kernels


def random_rows(rng: random.Random, r: int, c: int) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(c)] for _ in range(r)]


def bench_kernels(repeat: int) -> None:
    rng = random.Random(7)
    backends = kernels.available_backends()
    print(f"{'kernel':<14}{'n':>4}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for n in (4, 8, 12):
        a, b = random_rows(rng, n, n), random_rows(rng, n, n)
        jobs = {
            "det": lambda k: k.det([r[:] for r in a]),
            "rref": lambda k: k.rref([r[:] for r in a], n),
            "matmul": lambda k: k.matmul(a, b),
        }
        for label, job in jobs.items():
            times = {name: min(timeit.repeat(lambda: job(k), number=20, repeat=repeat)) / 20 for name, k in backends.items()}
            row = f"{label:<14}{n:>4}" + "".join(f"{times[name] * 1e3:>10.3f}ms" for name in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


PIPELINE = """
import random, time
from dualcanon.pipeline import canonical_small, similar
from dualcanon.sampling import random_dual_invertible, random_dual_matrix, random_rational_spectrum_dual
rng = random.Random(3)
start = time.perf_counter()
for _ in range(150):
    canonical_small(random_rational_spectrum_dual(rng, rng.choice([2, 3])))
for _ in range(40):
    A = random_dual_matrix(rng, 4, -3, 3)
    D = random_dual_invertible(rng, 4)
    similar(A, D @ A @ D.inverse(), method="linear", seed=1)
print(time.perf_counter() - start)
"""


def bench_pipeline() -> None:
    # backend selection happens at import, so each run gets a fresh interpreter
    for name, env in (("python", {"DUALCANON_PURE_PYTHON": "1"}), ("default", {})):
        full = {k: v for k, v in os.environ.items() if k != "DUALCANON_PURE_PYTHON"}
        full.update(env)
        out = subprocess.run([sys.executable, "-c", PIPELINE], env=full, capture_output=True, text=True, check=True)
        backend = subprocess.run(
            [sys.executable, "-c", "import dualcanon.kernels as k; print(k.BACKEND)"],
            env=full, capture_output=True, text=True, check=True,
        ).stdout.strip()
        print(f"pipeline [{backend:>6}]: {float(out.stdout):.2f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    bench_kernels(args.repeat)
    bench_pipeline()


if __name__ == "__main__":
    main()
