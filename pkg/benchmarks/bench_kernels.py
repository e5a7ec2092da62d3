"""Benchmark: compiled elimination kernels vs the pure-Python twin.

Matrices are taken from the real hot path: Hasse condition matrices of a
star configuration (integer Bareiss / rational ranks) and mod-p condition
matrices of the projective plane over F_3 (modular ranks).

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from fatpoints import _kernels_py
from fatpoints.configs import projective_plane_scheme, star_scheme
from fatpoints.oracle import condition_matrix

try:
    from fatpoints import _core
except ImportError:
    _core = None


def timeit(fn, *args, repeat=5):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def bench_case(label, fn_name, args, repeat=5):
    pure = timeit(getattr(_kernels_py, fn_name), *args, repeat=repeat)
    if _core is None:
        print(f"{label:<44} pure {pure * 1e3:8.2f} ms   (no compiled backend)")
        return
    fast = timeit(getattr(_core, fn_name), *args, repeat=repeat)
    print(
        f"{label:<44} pure {pure * 1e3:8.2f} ms   compiled {fast * 1e3:8.2f} ms"
        f"   speedup {pure / fast:5.1f}x"
    )


def main():
    rng = random.Random(13)
    print("elimination kernel benchmark (best of 5)\n")

    star = star_scheme(5, 3)
    for t in (6, 9, 12):
        m = condition_matrix(star, t)
        rows = [list(r) for r in m.rows]
        bench_case(
            f"bareiss rank, star conditions t={t} ({m.nrows}x{m.ncols})",
            "rank_int",
            (rows,),
            repeat=3,
        )

    plane = projective_plane_scheme(3, mult=4)
    for t in (8, 12, 16):
        m = condition_matrix(plane, t)
        rows = [[x % 3 for x in r] for r in m.rows]
        bench_case(
            f"mod-3 rank, plane conditions t={t} ({m.nrows}x{m.ncols})",
            "rank_mod_p",
            (rows, 3),
        )

    for size in (60, 120, 200):
        rows = [[rng.randrange(101) for _ in range(size)] for _ in range(size)]
        bench_case(f"mod-101 rank, random {size}x{size}", "rank_mod_p", (rows, 101))
        bench_case(f"mod-101 rref, random {size}x{size}", "rref_mod_p", (rows, 101))


if __name__ == "__main__":
    main()
