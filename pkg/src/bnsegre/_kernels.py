"""Composition search kernels for the brute-force oracle.

Each kernel exists twice: a plain Python function over numpy arrays (``*_py``)
and the same source compiled with numba (``*_jit``). The public names
``search_composition`` and ``search_batch`` point at the compiled versions
unless numba is missing or ``BNSEGRE_DISABLE_JIT`` is set to a true value.

The kernels repeat the rho formula instead of importing it, since compiled
code cannot call back into ``bn_core``. They never use the closed-form
minimal degree.
"""

from __future__ import annotations

import os

import numpy as np

FOUND = 1
NOT_FOUND = 0
OVER_BUDGET = -1

# Inputs are range-checked by the caller so (r+1)*(g+r-d) cannot overflow int64.
MAX_KERNEL_INPUT = 2**31 - 1


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


def search_composition_py(g, total, ranks, budget, prune, out):
    """Depth-first search for d_1 + ... + d_n = total with every rho(g, r_i, d_i) >= 0.

    ``out`` receives the degrees when one is found. Returns ``(status, nodes)``
    where status is FOUND, NOT_FOUND or OVER_BUDGET and nodes counts visited
    (coordinate, degree) pairs.

    Coordinate i tries d_i = 0, 1, ..., rem_i. Once rho(g, r_i, d_i) >= 0 it
    stays nonnegative for larger d_i, so rho is not re-evaluated. With
    ``prune`` set, a coordinate is abandoned after its first feasible value
    fails: a larger d_i only shrinks what is left for the suffix, and a
    suffix that fails with budget R fails with every smaller budget.
    """
    n = ranks.shape[0]
    rem = np.empty(n + 1, np.int64)
    ok = np.zeros(n, np.bool_)
    tried = np.zeros(n, np.bool_)
    rem[0] = total
    out[0] = -1
    nodes = 0
    i = 0
    while i >= 0:
        r = ranks[i]
        if i == n - 1:
            # last degree is forced
            nodes += 1
            if nodes > budget:
                return OVER_BUDGET, nodes
            d = rem[i]
            if g - (r + 1) * (g + r - d) >= 0:
                out[i] = d
                return FOUND, nodes
            i -= 1
            continue
        if prune and tried[i]:
            i -= 1
            continue
        d = out[i] + 1
        if d > rem[i]:
            i -= 1
            continue
        nodes += 1
        if nodes > budget:
            return OVER_BUDGET, nodes
        out[i] = d
        if not ok[i]:
            ok[i] = g - (r + 1) * (g + r - d) >= 0
        if ok[i]:
            tried[i] = True
            rem[i + 1] = rem[i] - d
            i += 1
            out[i] = -1
            ok[i] = False
            tried[i] = False
    return NOT_FOUND, nodes


def _make_batch(search):
    def search_batch(gs, totals, ranks, lengths, budget, prune):
        """Run the search for every row; ranks is (cells, max_n) padded, lengths gives n per row.

        Returns status, nodes and a degree matrix. Rows after the first
        OVER_BUDGET are left unprocessed with status NOT_FOUND and nodes 0.
        """
        cells = gs.shape[0]
        status = np.zeros(cells, np.int64)
        nodes = np.zeros(cells, np.int64)
        degrees = np.full(ranks.shape, -1, np.int64)
        for k in range(cells):
            n = lengths[k]
            s, c = search(gs[k], totals[k], ranks[k, :n], budget, prune, degrees[k, :n])
            status[k] = s
            nodes[k] = c
            if s == OVER_BUDGET:
                break
        return status, nodes, degrees

    return search_batch


search_batch_py = _make_batch(search_composition_py)

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None

if HAVE_NUMBA:
    search_composition_jit = numba.njit(nogil=True, cache=True)(search_composition_py)
    search_batch_jit = numba.njit(nogil=True)(_make_batch(search_composition_jit))
else:  # pragma: no cover
    search_composition_jit = search_composition_py
    search_batch_jit = search_batch_py

USE_JIT = HAVE_NUMBA and not _env_flag("BNSEGRE_DISABLE_JIT")

search_composition = search_composition_jit if USE_JIT else search_composition_py
search_batch = search_batch_jit if USE_JIT else search_batch_py


def backend() -> str:
    return "numba" if USE_JIT else "python"
