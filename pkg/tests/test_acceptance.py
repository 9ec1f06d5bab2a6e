"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import itertools
import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from bnsegre.bn_core import rho
from bnsegre.feasibility import (
    NonpositiveDenominator,
    SplitSpec,
    canonical_segre_verdict,
    prop4_sharp_lower_bound,
    theorem2_bound,
    theorem2_shape,
    two_factor_splittings,
    two_factor_witness,
)
from bnsegre.oracle import (
    SweepConfig,
    least_feasible_genus,
    oracle_feasible_many,
    oracle_splitting_feasible,
    verify_sweep,
)

import brute


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance] {name}: {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}")

    return emit


def multiplicative_lists(g, min_len):
    """Ordered lists (r1..rn), ri >= 1, n >= min_len, with prod(ri + 1) = g."""
    out = []

    def rec(rest, prefix):
        if rest == 1:
            if len(prefix) >= min_len:
                out.append(tuple(prefix))
            return
        for f in range(2, rest + 1):
            if rest % f == 0:
                rec(rest // f, prefix + [f - 1])

    rec(g, [])
    return out


def test_c1_two_factor_witness_sweep(report):
    start = time.perf_counter()
    failures = []
    checked = 0
    for g in range(4, 301):
        for r1, r2 in two_factor_splittings(g):
            w = two_factor_witness(g, r1, r2)
            checked += 1
            ok = (
                w.d1 + w.d2 == 2 * g - 2
                and rho(g, r1, w.d1) == 0
                and rho(g, r1 + 1, w.d1) < 0
                and g - w.d1 + r1 == r2 + 1
            )
            if not ok:
                failures.append((g, r1, r2))
    elapsed = time.perf_counter() - start
    # every composite g in range is covered
    composites = [g for g in range(4, 301) if any(g % a == 0 for a in range(2, math.isqrt(g) + 1))]
    covered = sorted({g for g in range(4, 301) if two_factor_splittings(g)})
    ok = not failures and covered == composites and elapsed < 1.0
    report("C1 two-factor witness, composite g <= 300", ok, f"{checked} factorizations, {elapsed:.3f} s")
    assert covered == composites
    assert failures == []
    assert elapsed < 1.0


def test_c2_no_segre_with_three_or_more_factors(report):
    start = time.perf_counter()
    cells = []
    exceptions = []
    for g in range(3, 301):
        for ranks in multiplicative_lists(g, 3):
            cells.append((g, 2 * g - 2, ranks))
            if canonical_segre_verdict(g, ranks).feasible:
                exceptions.append(("verdict", g, ranks))
    oracle = oracle_feasible_many(cells)
    exceptions += [("oracle", g, r) for (g, _, r), hit in zip(cells, oracle) if hit]
    elapsed = time.perf_counter() - start
    ok = not exceptions and elapsed < 10.0
    report("C2 n >= 3 never feasible, g <= 300", ok, f"{len(cells)} rank lists, {elapsed:.3f} s")
    assert len(cells) > 0
    assert exceptions == []
    assert elapsed < 10.0


def _c3_feasible_triples():
    triples = list(itertools.product(range(1, 11), repeat=3))
    cells = [(g, 2 * g - 2, t) for g in range(3, 301) for t in triples]
    hits = oracle_feasible_many(cells)
    return [(g, t) for (g, _, t), hit in zip(cells, hits) if hit]


@pytest.fixture(scope="module")
def c3_feasible():
    return _c3_feasible_triples()


def test_c3_theorem2_bound_and_strict_product(report, c3_feasible):
    exceptions = []
    for g, t in c3_feasible:
        try:
            b = theorem2_bound(*t)
        except NonpositiveDenominator:
            exceptions.append((g, t, "bound undefined"))
            continue
        if not b <= g:
            exceptions.append((g, t, f"bound {b} > g"))
        if not math.prod(r + 1 for r in t) < g:
            exceptions.append((g, t, "prod >= g"))
    ok = not exceptions and len(c3_feasible) > 0
    report("C3 necessity: bound defined and <= g, prod < g", ok, f"{len(c3_feasible)} feasible (g, triple)")
    assert exceptions == []


def test_c3_theorem2_shape(report, c3_feasible):
    exceptions = [(g, t) for g, t in c3_feasible if theorem2_shape(t, g) is None]
    report(
        "C3 necessity: shape (a) or (b) up to permutation",
        not exceptions,
        f"{len(exceptions)} exception(s): {exceptions[:6]}" if exceptions else "",
    )
    assert exceptions == []


def test_c4_prop4_cutoff_random_grid(report):
    rng = np.random.default_rng(20100914)
    samples = 200_000
    gs = rng.integers(3, 201, size=samples)
    cells = []
    for g in gs:
        g = int(g)
        total = int(rng.integers(0, 4 * g + 1))
        n = int(rng.integers(1, 9))
        ranks = tuple(int(r) for r in rng.integers(1, 6, size=n))
        cells.append((g, total, ranks))
    start = time.perf_counter()
    hits = oracle_feasible_many(cells)
    exceptions = []
    bounded = 0
    for (g, total, ranks), hit in zip(cells, hits):
        if not hit:
            continue
        spec = SplitSpec(g, total, ranks)
        if not spec.n < 2 * spec.q + 2:
            exceptions.append((g, total, ranks, "cutoff"))
        try:
            b = prop4_sharp_lower_bound(spec)
        except NonpositiveDenominator:
            continue
        bounded += 1
        if not g >= b:
            exceptions.append((g, total, ranks, f"bound {b}"))
    elapsed = time.perf_counter() - start
    feasible = int(hits.sum())
    ok = not exceptions and elapsed < 60.0 and feasible > 0
    report(
        "C4 cutoff n < 2q+2 and remainder-aware bound",
        ok,
        f"{samples} cells, {feasible} feasible, {bounded} with positive denominator, {elapsed:.2f} s",
    )
    assert feasible > 0 and bounded > 0
    assert exceptions == []
    assert elapsed < 60.0


def test_c5_oracle_closed_form_equivalence(report):
    start = time.perf_counter()
    found = verify_sweep(SweepConfig(3, 100, 5, 5, "canonical"))
    elapsed = time.perf_counter() - start
    report("C5 oracle vs closed form, g <= 100, n <= 5, r <= 5", not found, f"{elapsed:.2f} s")
    assert found == []


def test_c6_spot_values(report):
    # independent pins first
    assert brute.rho(4, 1, 3) == 0
    assert brute.all_splittings(6, 10, (1, 2))[0] == (4, 6)
    assert brute.scan_least_genus((1, 1, 1), 500) == 10
    assert not brute.splits(9, 16, (1, 1, 1)) and brute.splits(10, 18, (1, 1, 1))

    w = two_factor_witness(6, 1, 2)
    checks = {
        "rho(4,1,3)=0": rho(4, 1, 3) == 0,
        "witness(6,1,2)=(4,6)": (w.d1, w.d2) == (4, 6),
        "residual=3": 6 - w.d1 + 1 == 3,
        "theorem2_bound(1,1,1)=10": theorem2_bound(1, 1, 1) == Fraction(10),
        "least_feasible_genus(1,1,1)=10": least_feasible_genus([1, 1, 1]) == 10,
        "oracle(10,18,[1,1,1])": oracle_splitting_feasible(10, 18, [1, 1, 1]),
    }
    try:
        theorem2_bound(1, 2, 5)
        checks["theorem2_bound(1,2,5) errors"] = False
    except NonpositiveDenominator:
        checks["theorem2_bound(1,2,5) errors"] = True
    bad = [k for k, v in checks.items() if not v]
    report("C6 spot values", not bad, ", ".join(bad))
    assert bad == []


def _cli_json(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "bnsegre", *argv, "--format", "json"],
        capture_output=True, check=False,
    )
    return proc.returncode, proc.stdout


def test_c7_determinism(report):
    runs = {
        "verdict": ["verdict", "30", "1", "2", "4"],
        "enumerate": ["enumerate", "60"],
        "bound": ["bound", "1", "2", "3", "--g", "96"],
        "verify": ["verify", "--gmax", "40", "--maxn", "4", "--maxrank", "4", "--degree", "g..2g"],
    }
    mismatched = []
    for name, argv in runs.items():
        a, b = _cli_json(*argv), _cli_json(*argv)
        if a != b or a[0] != 0:
            mismatched.append(name)
        data = json.loads(a[1])
        if (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode() != a[1]:
            mismatched.append(name + " round-trip")
    one = _cli_json(*runs["verify"], "--workers", "1")
    four = _cli_json(*runs["verify"], "--workers", "4")
    if one != four:
        mismatched.append("verify workers 1 vs 4")
    report("C7 byte-identical JSON across runs and worker counts", not mismatched, ", ".join(mismatched))
    assert mismatched == []
