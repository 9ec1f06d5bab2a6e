"""Command-line front end.

Usage:
    bnsegre rho 4 1 3
    bnsegre verdict 30 1 2 4 --format json
    bnsegre enumerate 12
    bnsegre bound 1 2 2 --q 1
    bnsegre verify --gmax 50 --maxn 4 --maxrank 4

Exit codes: 0 answered, 1 usage error, 2 discrepancy found, 3 node budget exceeded.
"""

from __future__ import annotations

import sys
import time

import click

from . import _kernels
from .bn_core import PreconditionError, min_degree, rho, wrd_nonempty_general
from .feasibility import (
    BoundViolated,
    DegreeInfeasible,
    NonpositiveDenominator,
    ProductMismatch,
    SplitSpec,
    TooManyFactors,
    Witness,
    canonical_segre_verdict,
    classify_triples,
    prop4_bound_for,
    prop4_sharp_lower_bound,
    theorem2_bound,
    two_factor_splittings,
    two_factor_witness,
)
from .oracle import SearchSpaceTooLarge, SweepConfig, default_budget, run_sweep
from .records import FORMATS, OutputRecord, ranks_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISCREPANCY = 2
EXIT_BUDGET = 3

format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(FORMATS),
    default="table",
    show_default=True,
    help="Output format; json is the stable machine interface.",
)


def _emit(record: OutputRecord, fmt: str) -> None:
    # one write so partial output never reaches stdout
    click.echo(record.render(fmt), nl=False)


def _usage(exc: Exception) -> click.UsageError:
    return click.UsageError(str(exc))


@click.group()
def cli() -> None:
    """Brill-Noether feasibility of Segre embeddings for canonical curves."""


@cli.command("rho")
@click.argument("g", type=int)
@click.argument("r", type=int)
@click.argument("d", type=int)
@format_option
def cmd_rho(g: int, r: int, d: int, fmt: str) -> int:
    """Brill-Noether number rho(g, r, d) and whether W^r_d is nonempty on a general curve."""
    try:
        value = rho(g, r, d)
    except PreconditionError as exc:
        raise _usage(exc) from exc
    nonempty = wrd_nonempty_general(g, r, d)
    record = OutputRecord(
        command="rho",
        inputs={"g": g, "r": r, "d": d},
        result={"rho": value, "nonempty": nonempty},
        citations=["Thm4a" if nonempty else "Thm6a"],
        csv_header=["g", "r", "d", "rho", "nonempty"],
        csv_rows=[[g, r, d, value, nonempty]],
    )
    _emit(record, fmt)
    return EXIT_OK


def _reason_payload(reason) -> tuple[str, dict]:
    if isinstance(reason, Witness):
        detail = {"degrees": list(reason.degrees)}
        if reason.two_factor is not None:
            w = reason.two_factor
            detail["witness"] = {"r1": w.r1, "r2": w.r2, "d1": w.d1, "d2": w.d2}
        return "Witness", detail
    if isinstance(reason, ProductMismatch):
        return "ProductMismatch", {"product": reason.product, "g": reason.g}
    if isinstance(reason, TooManyFactors):
        return "TooManyFactors", {"n": reason.n, "q": reason.q, "cutoff": 2 * reason.q + 2}
    if isinstance(reason, BoundViolated):
        return "BoundViolated", {"bound": reason.bound, "g": reason.g}
    if isinstance(reason, DegreeInfeasible):
        return "DegreeInfeasible", {"min_total": reason.min_total, "total_degree": reason.total_degree}
    raise TypeError(f"unknown reason {reason!r}")


@cli.command("verdict")
@click.argument("g", type=int)
@click.argument("ranks", type=int, nargs=-1)
@format_option
def cmd_verdict(g: int, ranks: tuple[int, ...], fmt: str) -> int:
    """Can a general genus-G canonical curve lie on P^r1 x ... x P^rn?"""
    if not ranks:
        raise click.UsageError("at least one rank is required")
    try:
        verdict = canonical_segre_verdict(g, ranks)
    except PreconditionError as exc:
        raise _usage(exc) from exc
    name, detail = _reason_payload(verdict.reason)
    citations = [verdict.reason.citation]
    if len(ranks) >= 3 and not isinstance(verdict.reason, ProductMismatch):
        citations.append("Cor3b")
    bound = detail.get("bound")
    if isinstance(verdict.reason, BoundViolated) and bound is None:
        note = "bound: none (r1+r2+r3+2 <= r1 r2 r3, no genus works)"
    elif bound is not None:
        note = f"bound: {bound} > g = {g}"
    else:
        note = None
    record = OutputRecord(
        command="verdict",
        inputs={"g": g, "ranks": list(ranks)},
        result={"feasible": verdict.feasible, "reason": name, "detail": detail},
        citations=citations,
        csv_header=["g", "ranks", "feasible", "reason", "degrees", "bound", "citations"],
        csv_rows=[[g, ranks_text(ranks), verdict.feasible, name, detail.get("degrees"), bound, " ".join(citations)]],
        table_notes=[note] if note else [],
    )
    _emit(record, fmt)
    return EXIT_OK


@cli.command("enumerate")
@click.argument("g", type=int)
@format_option
def cmd_enumerate(g: int, fmt: str) -> int:
    """List two-factor Segre splittings of G and feasible canonical rank triples."""
    try:
        pairs = two_factor_splittings(g)
        triples = classify_triples(g)
    except PreconditionError as exc:
        raise _usage(exc) from exc
    two = []
    rows = []
    for r1, r2 in pairs:
        w = two_factor_witness(g, r1, r2)
        two.append({"ranks": [r1, r2], "degrees": [w.d1, w.d2]})
        rows.append([g, "two_factor", ranks_text((r1, r2)), ranks_text(w.degrees), ""])
    three = []
    for t in triples:
        mins = [min_degree(g, r) for r in t]
        try:
            bound = theorem2_bound(*t)
        except NonpositiveDenominator:
            bound = None
        three.append({"ranks": list(t), "min_degrees": mins, "min_total": sum(mins), "theorem2_bound": bound})
        rows.append([g, "triple", ranks_text(t), ranks_text(mins), bound])
    record = OutputRecord(
        command="enumerate",
        inputs={"g": g},
        result={"two_factor": two, "triples": three},
        citations=["Cor3a", "Thm2"],
        csv_header=["g", "kind", "ranks", "degrees", "bound"],
        csv_rows=rows,
    )
    _emit(record, fmt)
    return EXIT_OK


def _bound_or_none(fn, *args):
    try:
        return fn(*args)
    except NonpositiveDenominator:
        return None


@cli.command("bound")
@click.argument("ranks", type=int, nargs=-1)
@click.option("--q", "q", type=int, default=None, help="floor(D/g); defaults to 1 (canonical degree).")
@click.option("--g", "g", type=int, default=None, help="Genus, enables the remainder-aware bound.")
@click.option("--degree", "degree", default="canonical", show_default=True, help="Total degree D, or 'canonical'.")
@format_option
def cmd_bound(ranks: tuple[int, ...], q: int | None, g: int | None, degree: str, fmt: str) -> int:
    """Exact rational lower bounds on g for a splitting with the given RANKS."""
    if not ranks:
        raise click.UsageError("at least one rank is required")
    sharp = None
    D = None
    try:
        if g is not None:
            D = 2 * g - 2 if degree == "canonical" else int(degree)
            spec = SplitSpec(g, D, ranks)
            if q is not None and q != spec.q:
                raise click.UsageError(f"--q {q} disagrees with floor(D/g) = {spec.q}")
            q = spec.q
            sharp = _bound_or_none(prop4_sharp_lower_bound, spec)
        elif q is None:
            q = 1
        weak = _bound_or_none(prop4_bound_for, q, ranks)
        thm2 = _bound_or_none(theorem2_bound, *ranks) if len(ranks) == 3 else None
    except (PreconditionError, ValueError) as exc:
        raise _usage(exc) from exc
    record = OutputRecord(
        command="bound",
        inputs={"ranks": list(ranks), "q": q, "g": g, "total_degree": D},
        result={"theorem2_bound": thm2, "prop4_lower_bound": weak, "prop4_sharp_lower_bound": sharp},
        citations=["Thm2", "Prop4"] if len(ranks) == 3 else ["Prop4"],
        csv_header=["ranks", "q", "g", "total_degree", "theorem2_bound", "prop4_lower_bound", "prop4_sharp_lower_bound"],
        csv_rows=[[ranks_text(ranks), q, g, D, thm2, weak, sharp]],
        table_notes=[] if None not in (thm2, weak) else ["(empty bound: nonpositive denominator, no genus satisfies it)"],
    )
    _emit(record, fmt)
    return EXIT_OK


@cli.command("verify")
@click.option("--gmin", type=int, default=3, show_default=True)
@click.option("--gmax", type=int, default=50, show_default=True)
@click.option("--maxn", type=int, default=4, show_default=True)
@click.option("--maxrank", type=int, default=4, show_default=True)
@click.option("--degree", default="canonical", show_default=True,
              help="'canonical', an integer, a form like 3g or 2g-2, a range 0..4g, or a comma list.")
@click.option("--budget", type=int, default=None, help="Node budget per cell [env BNSEGRE_BUDGET, default 10^8].")
@click.option("--workers", type=int, default=1, show_default=True)
@format_option
def cmd_verify(gmin, gmax, maxn, maxrank, degree, budget, workers, fmt) -> int:
    """Cross-check closed-form verdicts against exhaustive search on a grid."""
    try:
        config = SweepConfig(gmin, gmax, maxn, maxrank, degree)
        budget = default_budget() if budget is None else budget
        if budget < 1 or workers < 1:
            raise PreconditionError("--budget and --workers must be >= 1")
    except (PreconditionError, ValueError) as exc:
        raise _usage(exc) from exc
    inputs = {"gmin": gmin, "gmax": gmax, "maxn": maxn, "maxrank": maxrank, "degree": degree, "budget": budget}
    header = ["gmin", "gmax", "maxn", "maxrank", "degree", "cells", "max_genus", "discrepancies", "status"]
    start = time.perf_counter()
    try:
        report = run_sweep(config, budget=budget, workers=workers)
    except SearchSpaceTooLarge as exc:
        cell = {"g": exc.g, "total_degree": exc.total_degree, "ranks": list(exc.ranks)}
        record = OutputRecord(
            command="verify",
            inputs=inputs,
            result={"status": "budget_exceeded", "cell": cell},
            citations=[],
            csv_header=header,
            csv_rows=[[gmin, gmax, maxn, maxrank, degree, None, None, None, "budget_exceeded"]],
            table_notes=[f"node budget exceeded at g={exc.g} D={exc.total_degree} ranks={list(exc.ranks)}"],
        )
        _emit(record, fmt)
        return EXIT_BUDGET
    wall = time.perf_counter() - start
    found = [
        {"check": d.description, "g": d.g, "ranks": list(d.ranks), "total_degree": d.total_degree,
         "closed_form": d.closed_form, "oracle": d.oracle}
        for d in report.discrepancies
    ]
    status = "ok" if not found else "discrepancy"
    notes = [f"wall time: {wall:.3f} s ({_kernels.backend()} kernel, {workers} worker(s))"]
    notes += [f"DISCREPANCY {f}" for f in found]
    record = OutputRecord(
        command="verify",
        inputs=inputs,
        result={"status": status, "cells": report.cells, "max_genus": report.max_genus, "discrepancies": found},
        citations=["Prop4", "Thm2", "Cor3a", "Cor3b"],
        csv_header=header,
        csv_rows=[[gmin, gmax, maxn, maxrank, degree, report.cells, report.max_genus, len(found), status]],
        table_notes=notes,
    )
    _emit(record, fmt)
    return EXIT_OK if not found else EXIT_DISCREPANCY


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="bnsegre", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
