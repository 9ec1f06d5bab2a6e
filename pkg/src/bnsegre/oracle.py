"""Brute-force cross-checks for the closed-form verdicts.

The oracle decides splitting feasibility by searching degree compositions
directly (see ``_kernels``) and never touches ``min_degree``. ``verify_sweep``
runs it over a grid and reports every cell where it disagrees with
``feasibility``.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .bn_core import PreconditionError
from .feasibility import SplitSpec, canonical_segre_verdict, splitting_feasible

__all__ = [
    "DEFAULT_BUDGET",
    "Discrepancy",
    "SearchSpaceTooLarge",
    "SweepConfig",
    "SweepReport",
    "default_budget",
    "least_feasible_genus",
    "oracle_degrees",
    "oracle_feasible_many",
    "oracle_splitting_feasible",
    "parse_degree_rule",
    "rank_lists",
    "run_sweep",
    "verify_sweep",
]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "BNSEGRE_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


class SearchSpaceTooLarge(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, g: int, total_degree: int, ranks: Sequence[int], budget: int):
        self.g = g
        self.total_degree = total_degree
        self.ranks = tuple(ranks)
        self.budget = budget
        super().__init__(
            f"node budget {budget} exceeded at g={g}, D={total_degree}, ranks={list(self.ranks)}"
        )


def _validate_cell(g: int, total_degree: int, ranks: Sequence[int]) -> np.ndarray:
    if g < 3:
        raise PreconditionError(f"genus must be >= 3, got g={g}")
    if total_degree < 0:
        raise PreconditionError(f"total degree must be >= 0, got {total_degree}")
    if not ranks:
        raise PreconditionError("rank list must be nonempty")
    if min(ranks) < 1:
        raise PreconditionError(f"every rank must be >= 1, got {list(ranks)}")
    if max(g, total_degree, max(ranks)) > _kernels.MAX_KERNEL_INPUT:
        raise OverflowError("oracle inputs must stay below 2**31")
    return np.asarray(ranks, dtype=np.int64)


def oracle_degrees(
    g: int,
    total_degree: int,
    ranks: Sequence[int],
    *,
    budget: int | None = None,
    prune: bool = True,
) -> tuple[int, ...] | None:
    """Degrees (d1..dn) summing to D with every rho(g, ri, di) >= 0, or None.

    Raises :class:`SearchSpaceTooLarge` when more than ``budget`` nodes are visited.
    """
    budget = default_budget() if budget is None else budget
    arr = _validate_cell(g, total_degree, ranks)
    out = np.empty(len(arr), dtype=np.int64)
    status, _ = _kernels.search_composition(g, total_degree, arr, budget, prune, out)
    if status == _kernels.OVER_BUDGET:
        raise SearchSpaceTooLarge(g, total_degree, ranks, budget)
    return tuple(int(d) for d in out) if status == _kernels.FOUND else None


def oracle_splitting_feasible(
    g: int,
    total_degree: int,
    ranks: Sequence[int],
    *,
    budget: int | None = None,
    prune: bool = True,
) -> bool:
    return oracle_degrees(g, total_degree, ranks, budget=budget, prune=prune) is not None


def oracle_feasible_many(
    cells: Sequence[tuple[int, int, Sequence[int]]],
    *,
    budget: int | None = None,
    prune: bool = True,
) -> np.ndarray:
    """Oracle verdicts for many (g, D, ranks) cells in one kernel call, as a bool array."""
    budget = default_budget() if budget is None else budget
    cells = list(cells)
    width = max((len(r) for _, _, r in cells), default=1)
    gs = np.empty(len(cells), dtype=np.int64)
    totals = np.empty(len(cells), dtype=np.int64)
    lengths = np.empty(len(cells), dtype=np.int64)
    ranks_arr = np.zeros((len(cells), width), dtype=np.int64)
    for k, (g, total, ranks) in enumerate(cells):
        arr = _validate_cell(g, total, ranks)
        gs[k], totals[k], lengths[k] = g, total, len(arr)
        ranks_arr[k, : len(arr)] = arr
    status, _, _ = _kernels.search_batch(gs, totals, ranks_arr, lengths, budget, prune)
    over = np.flatnonzero(status == _kernels.OVER_BUDGET)
    if over.size:
        g, total, ranks = cells[over[0]]
        raise SearchSpaceTooLarge(g, total, ranks, budget)
    return status == _kernels.FOUND


_TERM = re.compile(r"^([+-]?\d*)g$|^([+-]?\d+)$")


def _parse_linear(expr: str) -> tuple[int, int]:
    """'2g-2' -> (2, -2); '18' -> (0, 18); 'g' -> (1, 0)."""
    s = expr.replace(" ", "").lower()
    if not s:
        raise ValueError("empty degree expression")
    a = b = 0
    for term in re.findall(r"[+-]?[^+-]+", s):
        m = _TERM.match(term)
        if m is None:
            raise ValueError(f"cannot parse degree expression {expr!r}")
        if m.group(2) is not None:
            b += int(m.group(2))
        else:
            coef = m.group(1)
            a += int(coef) if coef not in ("", "+", "-") else (-1 if coef == "-" else 1)
    return a, b


def parse_degree_rule(rule: str | int) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Parse a degree rule into (low, high) pairs of linear forms a*g + b.

    Accepted: ``"canonical"`` (2g-2), an integer, a linear form such as
    ``"3g"``, a range ``"0..4g"``, or a comma-separated mix of these.
    """
    if isinstance(rule, int) and not isinstance(rule, bool):
        return (((0, rule), (0, rule)),)
    out = []
    for part in str(rule).split(","):
        part = part.strip().lower()
        if part == "canonical":
            lo = hi = (2, -2)
        elif ".." in part:
            left, right = part.split("..", 1)
            lo, hi = _parse_linear(left), _parse_linear(right)
        else:
            lo = hi = _parse_linear(part)
        out.append((lo, hi))
    return tuple(out)


def rank_lists(max_n: int, max_rank: int, n_min: int = 1) -> Iterable[tuple[int, ...]]:
    """Nondecreasing rank lists of length n_min..max_n with entries in 1..max_rank."""
    for n in range(n_min, max_n + 1):
        yield from itertools.combinations_with_replacement(range(1, max_rank + 1), n)


@dataclass(frozen=True)
class SweepConfig:
    g_min: int
    g_max: int
    max_n: int
    max_rank: int
    degree_total: str | int = "canonical"
    _rule: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 3 <= self.g_min <= self.g_max:
            raise PreconditionError(f"need 3 <= g_min <= g_max, got {self.g_min}..{self.g_max}")
        if self.max_n < 1 or self.max_rank < 1:
            raise PreconditionError("max_n and max_rank must be >= 1")
        object.__setattr__(self, "_rule", parse_degree_rule(self.degree_total))

    def degrees(self, g: int) -> list[int]:
        values = set()
        for (a0, b0), (a1, b1) in self._rule:
            lo, hi = max(a0 * g + b0, 0), a1 * g + b1
            values.update(range(lo, hi + 1))
        return sorted(values)


@dataclass(frozen=True)
class Discrepancy:
    description: str
    closed_form: bool
    oracle: bool
    g: int
    ranks: tuple[int, ...]
    total_degree: int

    def sort_key(self):
        return (self.g, self.ranks, self.total_degree, self.description)


@dataclass
class SweepReport:
    config: SweepConfig
    cells: int = 0
    max_genus: int = 0
    discrepancies: list[Discrepancy] = field(default_factory=list)


def _sweep_genus(g: int, config: SweepConfig, lists, budget: int, prune: bool):
    cells = [(D, ranks) for D in config.degrees(g) for ranks in lists]
    if not cells:
        return 0, []
    width = config.max_n
    gs = np.full(len(cells), g, dtype=np.int64)
    totals = np.array([D for D, _ in cells], dtype=np.int64)
    lengths = np.array([len(r) for _, r in cells], dtype=np.int64)
    ranks_arr = np.zeros((len(cells), width), dtype=np.int64)
    for k, (_, ranks) in enumerate(cells):
        ranks_arr[k, : len(ranks)] = ranks
    status, _, _ = _kernels.search_batch(gs, totals, ranks_arr, lengths, budget, prune)

    found = []
    for k, (D, ranks) in enumerate(cells):
        if status[k] == _kernels.OVER_BUDGET:
            raise SearchSpaceTooLarge(g, D, ranks, budget)
        oracle = bool(status[k] == _kernels.FOUND)
        closed = splitting_feasible(SplitSpec(g, D, ranks)).feasible
        if closed != oracle:
            found.append(Discrepancy("splitting_feasible", closed, oracle, g, ranks, D))
        if D == 2 * g - 2 and math.prod(r + 1 for r in ranks) == g:
            verdict = canonical_segre_verdict(g, ranks).feasible
            if verdict != oracle:
                found.append(Discrepancy("canonical_segre_verdict", verdict, oracle, g, ranks, D))
    return len(cells), found


def run_sweep(
    config: SweepConfig,
    *,
    budget: int | None = None,
    workers: int = 1,
    prune: bool = True,
) -> SweepReport:
    """Compare oracle and closed form on every (g, D, ranks) cell of the grid.

    Genera are independent and may be spread over ``workers`` threads; the
    compiled kernel releases the GIL. Results are merged in ascending g.
    """
    budget = default_budget() if budget is None else budget
    if budget < 1:
        raise PreconditionError("budget must be >= 1")
    lists = list(rank_lists(config.max_n, config.max_rank))
    genera = range(config.g_min, config.g_max + 1)
    report = SweepReport(config)

    def work(g):
        return _sweep_genus(g, config, lists, budget, prune)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, genera))
    else:
        results = [work(g) for g in genera]
    for g, (cells, found) in zip(genera, results):
        report.cells += cells
        if cells:
            report.max_genus = g
        report.discrepancies.extend(found)
    report.discrepancies.sort(key=Discrepancy.sort_key)
    return report


def verify_sweep(config: SweepConfig, *, budget: int | None = None, workers: int = 1) -> list[Discrepancy]:
    """All oracle/closed-form disagreements on the configured grid (expected: none)."""
    return run_sweep(config, budget=budget, workers=workers).discrepancies


def least_feasible_genus(
    ranks: Sequence[int],
    *,
    cap: int = 10_000,
    budget: int | None = None,
) -> int | None:
    """Smallest g <= cap at which the oracle splits K_C into bundles of these ranks."""
    budget = default_budget() if budget is None else budget
    arr = _validate_cell(3, 4, ranks)
    if len(arr) != 3:
        raise PreconditionError(f"expected a rank triple, got {list(ranks)}")
    chunk = 512
    for start in range(3, cap + 1, chunk):
        gs = np.arange(start, min(start + chunk, cap + 1), dtype=np.int64)
        totals = 2 * gs - 2
        ranks_arr = np.tile(arr, (len(gs), 1))
        lengths = np.full(len(gs), 3, dtype=np.int64)
        status, _, _ = _kernels.search_batch(gs, totals, ranks_arr, lengths, budget, True)
        over = np.flatnonzero(status == _kernels.OVER_BUDGET)
        hits = np.flatnonzero(status == _kernels.FOUND)
        if hits.size and (not over.size or hits[0] < over[0]):
            return int(gs[hits[0]])
        if over.size:
            g = int(gs[over[0]])
            raise SearchSpaceTooLarge(g, 2 * g - 2, ranks, budget)
    return None
