"""Exact Brill-Noether arithmetic for a general curve of genus g.

Everything here is integer arithmetic on Python ints, range-checked against
the signed 64-bit limits so values can be handed to the compiled kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "BNIndex",
    "PreconditionError",
    "check_int64",
    "min_degree",
    "rho",
    "rr_residual_sections",
    "wrd_nonempty_general",
]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class PreconditionError(ValueError):
    """An argument violates the standing assumptions (g >= 3, r >= 0, d >= 0, ...)."""


def check_int64(value: int, what: str = "value") -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise OverflowError(f"{what}={value} does not fit in a signed 64-bit integer")
    return value


def _require_int(value, what: str) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what} must be an int, got {type(value).__name__}")
    return check_int64(value, what)


def _check_genus(g) -> int:
    g = _require_int(g, "g")
    if g < 3:
        raise PreconditionError(f"genus must be >= 3, got g={g}")
    return g


@dataclass(frozen=True)
class BNIndex:
    """Index (g, r, d) of the locus W^r_d(C) of degree-d bundles with r+1 sections."""

    g: int
    r: int
    d: int

    def __post_init__(self) -> None:
        _check_genus(self.g)
        if _require_int(self.r, "r") < 0:
            raise PreconditionError(f"r must be >= 0, got r={self.r}")
        if _require_int(self.d, "d") < 0:
            raise PreconditionError(f"d must be >= 0, got d={self.d}")


def _as_index(idx_or_g, r=None, d=None) -> BNIndex:
    if isinstance(idx_or_g, BNIndex):
        return idx_or_g
    return BNIndex(idx_or_g, r, d)


def rho(idx_or_g: BNIndex | int, r: int | None = None, d: int | None = None) -> int:
    """Brill-Noether number g - (r+1)(g+r-d).

    Accepts either a :class:`BNIndex` or the three integers::

        >>> rho(4, 1, 3)
        0
        >>> rho(BNIndex(4, 2, 3))
        -5
    """
    idx = _as_index(idx_or_g, r, d)
    return check_int64(idx.g - (idx.r + 1) * (idx.g + idx.r - idx.d), "rho")


def wrd_nonempty_general(idx_or_g: BNIndex | int, r: int | None = None, d: int | None = None) -> bool:
    """True iff W^r_d is nonempty on a general curve, i.e. iff rho >= 0."""
    return rho(idx_or_g, r, d) >= 0


def min_degree(g: int, r: int) -> int:
    """Least degree d with rho(g, r, d) >= 0, for r >= 1.

    Closed form g + r - floor(g / (r+1)). The result is checked against the
    defining property before it is returned.
    """
    g = _check_genus(g)
    r = _require_int(r, "r")
    if r < 1:
        raise PreconditionError(f"min_degree needs r >= 1, got r={r}")
    d = g + r - g // (r + 1)
    if not (rho(g, r, d) >= 0 and rho(g, r, d - 1) < 0):
        raise AssertionError(f"min_degree closed form failed at g={g}, r={r}")
    return d


def rr_residual_sections(g: int, d1: int, r1: int) -> int:
    """Sections of K_C - L1 when L1 is a g^{r1}_{d1} with exactly r1+1 sections.

    Riemann-Roch gives h0(K - L1) = h0(L1) - d1 + g - 1 = g - d1 + r1. The
    shortcut is only valid when rho(g, r1, d1) = 0 and rho(g, r1+1, d1) < 0;
    anything else raises :class:`PreconditionError`.
    """
    idx = BNIndex(g, r1, d1)
    if rho(idx) != 0:
        raise PreconditionError(f"rho({g},{r1},{d1}) = {rho(idx)}, expected 0")
    if rho(g, r1 + 1, d1) >= 0:
        raise PreconditionError(
            f"rho({g},{r1 + 1},{d1}) >= 0: L1 may carry more than {r1 + 1} sections"
        )
    return g - d1 + r1
