"""Time the oracle search kernel: numba build vs plain Python/numpy build.

    python benchmarks/bench_oracle.py [--gmax 150] [--maxrank 10] [--repeat 3]

Workload: every ordered rank triple with entries <= maxrank at D = 2g - 2 for
g = 3..gmax, run through ``search_batch`` with pruning on.
"""

import argparse
import itertools
import time

import numpy as np

from bnsegre import _kernels


def workload(gmax, maxrank):
    triples = list(itertools.product(range(1, maxrank + 1), repeat=3))
    gs = np.repeat(np.arange(3, gmax + 1, dtype=np.int64), len(triples))
    ranks = np.tile(np.array(triples, dtype=np.int64), (gmax - 2, 1))
    totals = 2 * gs - 2
    lengths = np.full(len(gs), 3, dtype=np.int64)
    return gs, totals, ranks, lengths


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--gmax", type=int, default=150)
    parser.add_argument("--maxrank", type=int, default=10)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    gs, totals, ranks, lengths = workload(args.gmax, args.maxrank)
    call = (gs, totals, ranks, lengths, 10**8, True)
    print(f"cells: {len(gs)}")

    start = time.perf_counter()
    _kernels.search_batch_jit(*call)
    print(f"numba first call (includes compile): {time.perf_counter() - start:.3f} s")

    t_jit, (s_jit, n_jit, _) = best_of(_kernels.search_batch_jit, call, args.repeat)
    t_py, (s_py, n_py, _) = best_of(_kernels.search_batch_py, call, 1)
    assert np.array_equal(s_jit, s_py) and np.array_equal(n_jit, n_py)

    nodes = int(n_jit.sum())
    print(f"nodes visited: {nodes}")
    print(f"numba : {t_jit:.4f} s  ({nodes / t_jit / 1e6:.1f} M nodes/s)")
    print(f"python: {t_py:.4f} s  ({nodes / t_py / 1e6:.2f} M nodes/s)")
    print(f"speedup: {t_py / t_jit:.0f}x")


if __name__ == "__main__":
    main()
