import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from bnsegre import _kernels

import brute


def run(search, g, total, ranks, budget=10**8, prune=True):
    out = np.empty(len(ranks), dtype=np.int64)
    status, nodes = search(g, total, np.array(ranks, dtype=np.int64), budget, prune, out)
    return status, nodes, tuple(out)


@pytest.mark.parametrize(
    "g, total, ranks, expected",
    [
        ((10), 18, (1, 1, 1), (6, 6, 6)),
        (9, 16, (1, 1, 1), None),
        (3, 4, (1, 1), None),
        (5, 20, (1,) * 5, (4,) * 5),
        (4, 6, (3,), (6,)),
    ],
)
@pytest.mark.parametrize("prune", [True, False])
def test_search_examples(search, g, total, ranks, expected, prune):
    status, _, out = run(search, g, total, ranks, prune=prune)
    if expected is None:
        assert status == _kernels.NOT_FOUND
    else:
        assert status == _kernels.FOUND and out == expected


def test_pruned_and_unpruned_agree_with_product_enumeration(search):
    for g in range(3, 14):
        for total in range(0, 3 * g):
            for n in (1, 2, 3):
                for ranks in itertools.combinations_with_replacement((1, 2, 3), n):
                    expected = brute.all_splittings(g, total, ranks)
                    for prune in (True, False):
                        status, _, out = run(search, g, total, ranks, prune=prune)
                        assert (status == _kernels.FOUND) == bool(expected), (g, total, ranks, prune)
                        if expected:
                            # depth-first in lexicographic order finds the smallest tuple
                            assert out == expected[0]


def test_python_and_numba_identical():
    if not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(7)
    for _ in range(2000):
        g = int(rng.integers(3, 120))
        total = int(rng.integers(0, 4 * g))
        ranks = tuple(int(r) for r in rng.integers(1, 6, size=rng.integers(1, 6)))
        for prune in (True, False):
            budget = 5000
            a = run(_kernels.search_composition_py, g, total, ranks, budget, prune)
            b = run(_kernels.search_composition_jit, g, total, ranks, budget, prune)
            assert a[:2] == b[:2]
            if a[0] == _kernels.FOUND:
                assert a[2] == b[2]


def test_budget(search):
    status, nodes, _ = run(search, 100, 198, (1, 1, 1), budget=10)
    assert status == _kernels.OVER_BUDGET and nodes == 11
    status, nodes, _ = run(search, 100, 198, (1, 1, 1), budget=10**6)
    assert status == _kernels.FOUND and nodes <= 10**6


def test_pruning_reduces_nodes(search):
    _, pruned, _ = run(search, 9, 16, (1, 1, 1), prune=True)
    _, full, _ = run(search, 9, 16, (1, 1, 1), prune=False)
    assert pruned < full


def test_batch_matches_single():
    gs = np.arange(3, 60, dtype=np.int64)
    totals = 2 * gs - 2
    ranks = np.tile(np.array([1, 1, 2, 0], dtype=np.int64), (len(gs), 1))
    lengths = np.full(len(gs), 3, dtype=np.int64)
    for batch, single in [
        (_kernels.search_batch_py, _kernels.search_composition_py),
        (_kernels.search_batch_jit, _kernels.search_composition_jit),
    ]:
        status, nodes, degrees = batch(gs, totals, ranks, lengths, 10**8, True)
        for k, g in enumerate(gs):
            s, c, out = run(single, int(g), int(totals[k]), (1, 1, 2))
            assert (status[k], nodes[k]) == (s, c)
            if s == _kernels.FOUND:
                assert tuple(degrees[k, :3]) == out
            assert degrees[k, 3] == -1


def test_batch_stops_at_budget():
    gs = np.array([3, 50, 4], dtype=np.int64)
    totals = 2 * gs - 2
    ranks = np.ones((3, 3), dtype=np.int64)
    lengths = np.full(3, 3, dtype=np.int64)
    status, nodes, _ = _kernels.search_batch(gs, totals, ranks, lengths, 20, True)
    assert list(status) == [_kernels.NOT_FOUND, _kernels.OVER_BUDGET, _kernels.NOT_FOUND]
    assert nodes[2] == 0


@pytest.mark.parametrize("flag, expected", [("1", "python"), ("0", "numba"), ("", "numba")])
def test_env_flag_selects_backend(flag, expected):
    if expected == "numba" and not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    env = dict(os.environ, BNSEGRE_DISABLE_JIT=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from bnsegre import _kernels; print(_kernels.backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected
