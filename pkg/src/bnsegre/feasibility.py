"""Segre feasibility verdicts for canonical curves.

A general curve of genus g lies on a Segre embedding P^{r1} x ... x P^{rn}
in P^{g-1} exactly when K_C splits as L1 x ... x Ln with h0(Li) = ri + 1
and prod(ri + 1) = g. Everything below reduces to the integer question of
whether degrees d1 + ... + dn = 2g - 2 exist with rho(g, ri, di) >= 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .bn_core import PreconditionError, _check_genus, _require_int, min_degree, rho, rr_residual_sections

__all__ = [
    "BoundViolated",
    "ConsistencyError",
    "DegreeInfeasible",
    "NonpositiveDenominator",
    "ProductMismatch",
    "ProductMismatchError",
    "SplitSpec",
    "TooManyFactors",
    "TwoFactorWitness",
    "Verdict",
    "Witness",
    "canonical_segre_verdict",
    "classify_triples",
    "n_cutoff",
    "prop4_bound_for",
    "prop4_lower_bound",
    "prop4_sharp_lower_bound",
    "segre_product_check",
    "splitting_feasible",
    "theorem2_bound",
    "theorem2_shape",
    "two_factor_splittings",
    "two_factor_witness",
]


class NonpositiveDenominator(ArithmeticError):
    """A rational bound has denominator <= 0, so no genus can satisfy it."""


class ProductMismatchError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two routes to the same verdict disagree."""


def _check_ranks(ranks: Sequence[int]) -> tuple[int, ...]:
    ranks = tuple(_require_int(r, "rank") for r in ranks)
    if not ranks:
        raise PreconditionError("rank list must be nonempty")
    if min(ranks) < 1:
        raise PreconditionError(f"every rank must be >= 1, got {list(ranks)}")
    return ranks


@dataclass(frozen=True)
class SplitSpec:
    """Genus, total degree D and ranks r1..rn of a candidate splitting."""

    g: int
    total_degree: int
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_genus(self.g)
        if _require_int(self.total_degree, "total_degree") < 0:
            raise PreconditionError(f"total degree must be >= 0, got {self.total_degree}")
        object.__setattr__(self, "ranks", _check_ranks(self.ranks))

    @property
    def n(self) -> int:
        return len(self.ranks)

    @property
    def q(self) -> int:
        return self.total_degree // self.g

    @property
    def rem(self) -> int:
        return self.total_degree - self.q * self.g

    @classmethod
    def canonical(cls, g: int, ranks: Sequence[int]) -> "SplitSpec":
        return cls(g, 2 * g - 2, tuple(ranks))


@dataclass(frozen=True)
class TwoFactorWitness:
    g: int
    r1: int
    r2: int
    d1: int
    d2: int

    @property
    def degrees(self) -> tuple[int, int]:
        return (self.d1, self.d2)


# Verdict reasons. ``citation`` names the criterion that decided the outcome.


@dataclass(frozen=True)
class ProductMismatch:
    product: int
    g: int
    citation: str = field(default="Prop1", init=False)


@dataclass(frozen=True)
class TooManyFactors:
    n: int
    q: int
    citation: str = field(default="Prop4", init=False)


@dataclass(frozen=True)
class BoundViolated:
    """The genus is below a necessary bound; ``bound is None`` means no genus works."""

    bound: Fraction | None
    g: int
    citation: str = field(default="Thm2", init=False)


@dataclass(frozen=True)
class DegreeInfeasible:
    min_total: int
    total_degree: int
    citation: str = field(default="Prop4", init=False)

    @property
    def deficit(self) -> int:
        return self.min_total - self.total_degree


@dataclass(frozen=True)
class Witness:
    degrees: tuple[int, ...]
    two_factor: TwoFactorWitness | None = None
    citation: str = "Thm4a"


Reason = Union[ProductMismatch, TooManyFactors, BoundViolated, DegreeInfeasible, Witness]


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    reason: Reason

    def __post_init__(self) -> None:
        if self.feasible != isinstance(self.reason, Witness):
            raise ConsistencyError(f"feasible={self.feasible} with reason {self.reason!r}")


def segre_product_check(g: int, ranks: Sequence[int]) -> bool:
    """True iff prod(ri + 1) == g."""
    ranks = _check_ranks(ranks)
    return math.prod(r + 1 for r in ranks) == g


def two_factor_witness(g: int, r1: int, r2: int) -> TwoFactorWitness:
    """Degrees for a splitting K_C = L1 + L2 with h0(Li) = ri + 1 when g = (r1+1)(r2+1).

    L1 is taken with d1 = r1*r2 + 2*r1, the degree at which rho(g, r1, d1) = 0,
    and L2 = K_C - L1. Works for either ordering of the factors.
    """
    g = _check_genus(g)
    r1, r2 = _check_ranks((r1, r2))
    if (r1 + 1) * (r2 + 1) != g:
        raise ProductMismatchError(f"({r1}+1)({r2}+1) = {(r1 + 1) * (r2 + 1)} != g = {g}")
    d1 = r1 * r2 + 2 * r1
    d2 = 2 * g - 2 - d1
    if rho(g, r1, d1) != 0:
        raise ConsistencyError(f"rho({g},{r1},{d1}) = {rho(g, r1, d1)} != 0")
    if rho(g, r1 + 1, d1) >= 0:
        raise ConsistencyError(f"rho({g},{r1 + 1},{d1}) >= 0")
    if rr_residual_sections(g, d1, r1) != r2 + 1:
        raise ConsistencyError(f"h0(K - L1) = {rr_residual_sections(g, d1, r1)} != {r2 + 1}")
    if rho(g, r2, d2) < 0:
        raise ConsistencyError(f"rho({g},{r2},{d2}) < 0")
    return TwoFactorWitness(g, r1, r2, d1, d2)


def two_factor_splittings(g: int) -> list[tuple[int, int]]:
    """Ordered pairs (r1, r2), ri >= 1, with (r1+1)(r2+1) = g."""
    g = _check_genus(g)
    return [(a - 1, g // a - 1) for a in range(2, g // 2 + 1) if g % a == 0]


def splitting_feasible(spec: SplitSpec) -> Verdict:
    """Decide whether bundles of ranks ``spec.ranks`` can have degrees summing to D.

    Feasible iff sum(min_degree(g, ri)) <= D. On success the witness degrees
    are the minimal ones with the surplus added to the first entry.
    """
    mins = [min_degree(spec.g, r) for r in spec.ranks]
    total = sum(mins)
    if total > spec.total_degree:
        return Verdict(False, DegreeInfeasible(total, spec.total_degree))
    mins[0] += spec.total_degree - total
    if any(rho(spec.g, r, d) < 0 for r, d in zip(spec.ranks, mins)):
        raise ConsistencyError(f"surplus assignment broke rho >= 0 for {spec}")
    return Verdict(True, Witness(tuple(mins)))


def n_cutoff(spec: SplitSpec) -> bool:
    """Necessary condition n < 2q + 2 with q = floor(D / g)."""
    return spec.n < 2 * spec.q + 2


def _prop4_denominator(q: int, ranks: Sequence[int]) -> Fraction:
    n = len(ranks)
    den = -n + (q + 1) + sum(Fraction(1, r + 1) for r in ranks)
    if den <= 0:
        raise NonpositiveDenominator(f"-n + (q+1) + sum 1/(ri+1) = {den} <= 0 for n={n}, q={q}, ranks={list(ranks)}")
    return den


def prop4_bound_for(q: int, ranks: Sequence[int]) -> Fraction:
    """(1 + sum ri) / (-n + (q+1) + sum 1/(ri+1)) as a function of q alone."""
    ranks = _check_ranks(ranks)
    if _require_int(q, "q") < 0:
        raise PreconditionError(f"q must be >= 0, got {q}")
    return (1 + sum(ranks)) / _prop4_denominator(q, ranks)


def prop4_lower_bound(spec: SplitSpec) -> Fraction:
    """Weakened lower bound on g forced by a feasible splitting; see :func:`prop4_bound_for`."""
    return prop4_bound_for(spec.q, spec.ranks)


def prop4_sharp_lower_bound(spec: SplitSpec) -> Fraction:
    """Same bound before the remainder is weakened away: (g - rem + sum ri) / denominator.

    With D = 2g - 2 and n = 3 this coincides with :func:`theorem2_bound`.
    """
    return (spec.g - spec.rem + sum(spec.ranks)) / _prop4_denominator(spec.q, spec.ranks)


def theorem2_bound(r1: int, r2: int, r3: int) -> Fraction:
    """prod(ri+1) * (s + 2) / (s + 2 - r1 r2 r3) with s = r1 + r2 + r3.

    A general curve of genus g has K_C split into three pencils-or-better of
    these ranks only if g >= the returned value.
    """
    r1, r2, r3 = _check_ranks((r1, r2, r3))
    s = r1 + r2 + r3
    den = s + 2 - r1 * r2 * r3
    if den <= 0:
        raise NonpositiveDenominator(f"r1+r2+r3+2-r1r2r3 = {den} <= 0 for ({r1},{r2},{r3})")
    return Fraction((r1 + 1) * (r2 + 1) * (r3 + 1) * (s + 2), den)


def theorem2_shape(triple: Sequence[int], g: int) -> str | None:
    """Which of the two listed shapes a rank triple has, up to order.

    ``"a"``: (1, 1, r) with 1 <= r <= g/4 - 2; ``"b"``: (1, 2, r) with r in 2..4.
    The ranges are read literally; no slack is added.
    """
    a, b, c = sorted(_check_ranks(triple))
    if (a, b) == (1, 1) and 1 <= c and 4 * c <= g - 8:
        return "a"
    if (a, b) == (1, 2) and c in (2, 3, 4):
        return "b"
    return None


def classify_triples(g: int) -> list[tuple[int, int, int]]:
    """All nondecreasing rank triples whose bundles can split K_C on a general genus-g curve."""
    g = _check_genus(g)
    budget = 2 * g - 2
    out = []
    # min_degree is increasing in r, so each loop can stop at the first overflow
    for r1 in itertools.count(1):
        m1 = min_degree(g, r1)
        if 3 * m1 > budget:
            break
        for r2 in itertools.count(r1):
            m2 = min_degree(g, r2)
            if m1 + 2 * m2 > budget:
                break
            for r3 in itertools.count(r2):
                if m1 + m2 + min_degree(g, r3) > budget:
                    break
                out.append((r1, r2, r3))
    return out


def canonical_segre_verdict(g: int, ranks: Sequence[int]) -> Verdict:
    """Can the canonical image of a general genus-g curve lie on P^{r1} x ... x P^{rn}?

    Decided by the product condition first, then by n: one factor is the
    canonical embedding itself, two factors get an explicit witness, three
    or more never work. The answer is cross-checked against
    ``splitting_feasible`` at D = 2g - 2.
    """
    g = _check_genus(g)
    ranks = _check_ranks(ranks)
    spec = SplitSpec.canonical(g, ranks)
    split = splitting_feasible(spec)
    product = math.prod(r + 1 for r in ranks)

    if product != g:
        verdict = Verdict(False, ProductMismatch(product, g))
    elif spec.n == 1:
        verdict = Verdict(True, Witness((2 * g - 2,), citation="Prop1"))
    elif spec.n == 2:
        w = two_factor_witness(g, *ranks)
        verdict = Verdict(True, Witness(w.degrees, two_factor=w, citation="Cor3a"))
    elif not n_cutoff(spec):
        verdict = Verdict(False, TooManyFactors(spec.n, spec.q))
    else:
        try:
            bound = theorem2_bound(*ranks)
        except NonpositiveDenominator:
            bound = None
        if bound is not None and bound <= g:
            raise ConsistencyError(f"g={g} = prod(ri+1) meets the three-factor bound {bound}")
        verdict = Verdict(False, BoundViolated(bound, g))

    if verdict.feasible != (product == g and split.feasible):
        raise ConsistencyError(f"verdict {verdict} disagrees with splitting check {split}")
    return verdict
