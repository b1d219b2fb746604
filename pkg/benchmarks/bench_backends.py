"""Timing comparison between the numba and pure-numpy kernel backends.

Run with:

    python3 benchmarks/bench_backends.py

Each kernel is warmed once per backend before timing so numba's
compilation cost does not pollute the numbers. Without numba installed
the script reports numpy timings only.
"""

import timeit
from itertools import combinations

import numpy as np

from monocoh import _kernels as kr
from monocoh.monomial_core import parse_ideal, power, saturate_irrelevant
from monocoh.takayama import cohomology_table


def cycle_ideal_str(d):
    gens = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            if j - i != 1 and not (i == 1 and j == d):
                gens.append(f"x{i}*x{j}")
    return ",".join(gens)


def bench(label, fn, number):
    fn()  # warm-up (includes jit compile on the numba path)
    t = timeit.timeit(fn, number=number) / number
    print(f"  {label:<14} {t * 1e3:10.3f} ms/call")
    return t


def main():
    backends = ["numpy"] + (["numba"] if kr.HAVE_NUMBA else [])
    if not kr.HAVE_NUMBA:
        print("numba not importable; timing the numpy fallback only\n")

    rng = np.random.default_rng(2)

    print("upward_close: 7^7 membership box, 40 seed cells")
    box_shape = (7,) * 7
    seeds = rng.integers(0, 7, size=(40, 7))
    base = np.zeros(box_shape, dtype=np.uint8)
    for s in seeds:
        base[tuple(s)] = 1
    for b in backends:
        bench(b, lambda b=b: kr.upward_close(base.copy(), backend=b), 20)

    print("pairwise_minimal: 400 random exponent rows in 7 variables")
    rows = rng.integers(0, 6, size=(400, 7)).astype(np.int64)
    for b in backends:
        bench(b, lambda b=b: kr.pairwise_minimal(rows, backend=b), 20)

    print("scan_face_masks: full 5^6 pattern sub-box, 63 candidate faces")
    box = np.zeros((5,) * 7, dtype=np.uint8)
    for s in rng.integers(0, 5, size=(50, 7)):
        box[tuple(s)] = 1
    kr.upward_close(box)
    free = [0, 1, 2, 3, 4, 5]
    faces = [f for r in range(1, 7) for f in combinations(free, r)]
    for b in backends:
        bench(b, lambda b=b: kr.scan_face_masks(box, free, [6], faces,
                                                backend=b), 10)

    print("gf_rank: 300x300 dense matrix mod 101")
    mat = rng.integers(0, 101, size=(300, 300)).astype(np.int64)
    for b in backends:
        bench(b, lambda b=b: kr.gf_rank(mat.copy(), 101, backend=b), 5)

    print("end-to-end: degree table of the saturated cube of the 7-cycle ideal")
    J = saturate_irrelevant(power(parse_ideal(cycle_ideal_str(7), 7), 3))
    saved = kr.BACKEND
    try:
        for b in backends:
            kr.BACKEND = b
            bench(b, lambda: cohomology_table(J, 1, 0), 3)
    finally:
        kr.BACKEND = saved


if __name__ == "__main__":
    main()
