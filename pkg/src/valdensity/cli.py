"""Command-line interface.

Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on error.
"""

from __future__ import annotations

import json
import sys
import time
from fractions import Fraction

import click

from . import _kernels
from .choquet import characteristic, gmul, integrate, riesz_functional, riesz_valuation
from .errors import ValDensityError
from .exreal import format_ext, parse_rational
from .instance import Instance, ParseError, load, parse_set, rational_label
from .radon import (
    ACFails,
    Density,
    HahnFails,
    NullAtomCharged,
    abs_continuous,
    density_oracle,
    density_synthesize,
    hahn_grid,
    hahn_witness,
    verify_density,
)
from .valuation import sht_extend, signed_from_pair

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _set(sp, mask: int) -> str:
    return "{" + sp.label(mask) + "}"


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(report, indent=2, ensure_ascii=False))
        return
    for key, value in report.items():
        if isinstance(value, list):
            click.echo(f"{key}:")
            for item in value:
                if isinstance(item, dict):
                    click.echo("  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
                else:
                    click.echo(f"  - {item}")
        elif isinstance(value, dict):
            click.echo(f"{key}:")
            for k, v in value.items():
                click.echo(f"  {k}: {v}")
        else:
            click.echo(f"{key}: {value}")


class _Run:
    """Collects a report, renders it and maps the verdict to an exit code."""

    def __init__(self, ctx: click.Context, command: str) -> None:
        self.fmt = ctx.obj["format"]
        self.report: dict = {"command": command}
        self.t0 = time.perf_counter()

    def finish(self, verdict: bool | None = None) -> None:
        if verdict is not None:
            self.report["verdict"] = verdict
        self.report["elapsed_ms"] = round((time.perf_counter() - self.t0) * 1000, 3)
        _emit(self.report, self.fmt)
        sys.exit(EXIT_OK if verdict is None or verdict else EXIT_FALSE)


def _load(ref: str) -> Instance:
    return load(ref)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (ValDensityError, ValueError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_ERROR)


@click.group(cls=_Group)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.pass_context
def main(ctx: click.Context, fmt: str) -> None:
    """Exact valuations on finite lattices of subsets."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt


@main.command()
@click.argument("instance")
@click.pass_context
def validate(ctx, instance):
    """Load and validate an instance file or fixture."""
    run = _Run(ctx, "validate")
    inst = _load(instance)
    sp = inst.space
    run.report.update(
        points=list(sp.elements),
        lattice_size=len(sp.lattice),
        atoms=len(sp.atoms),
        valuations=sorted(inst.valuations),
        functions=sorted(inst.functions),
    )
    run.finish(True)


@main.command()
@click.argument("instance")
@click.pass_context
def atoms(ctx, instance):
    """List the atoms and their crescent witnesses."""
    run = _Run(ctx, "atoms")
    sp = _load(instance).space
    rows = []
    for a in sp.atoms:
        c = sp.atom_crescent(a)
        rows.append({"atom": _set(sp, a.member_mask), "outer": _set(sp, c.outer), "inner": _set(sp, c.inner)})
    run.report["atoms"] = rows
    run.finish()


@main.command("integrate")
@click.argument("instance")
@click.argument("h")
@click.argument("nu")
@click.pass_context
def integrate_cmd(ctx, instance, h, nu):
    """Choquet integral of function H against valuation NU."""
    run = _Run(ctx, "integrate")
    inst = _load(instance)
    run.report["value"] = format_ext(integrate(inst.function(h), inst.valuation(nu)))
    run.finish()


@main.command("gmul")
@click.argument("instance")
@click.argument("g")
@click.argument("mu")
@click.pass_context
def gmul_cmd(ctx, instance, g, mu):
    """Lattice table of the density valuation G·MU."""
    run = _Run(ctx, "gmul")
    inst = _load(instance)
    sp = inst.space
    v = gmul(inst.function(g), inst.valuation(mu))
    run.report["table"] = {_set(sp, u): format_ext(v(u)) for u in sp.lattice}
    run.finish()


@main.command()
@click.argument("instance")
@click.argument("nu")
@click.argument("mu")
@click.pass_context
def abscont(ctx, instance, nu, mu):
    """Is NU absolutely continuous with respect to MU?"""
    run = _Run(ctx, "abscont")
    inst = _load(instance)
    sp = inst.space
    verdict = abs_continuous(inst.valuation(nu), inst.valuation(mu))
    if verdict.violation:
        u0, u = verdict.violation
        run.report["violation"] = {"U0": _set(sp, u0), "U": _set(sp, u)}
    run.finish(verdict.holds)


@main.command()
@click.argument("instance")
@click.argument("nu")
@click.argument("mu")
@click.option("--r", "r", default=None, help="Threshold; omit to scan the whole grid.")
@click.pass_context
def hahn(ctx, instance, nu, mu, r):
    """Hahn witness for NU - r·MU (or for every grid threshold)."""
    run = _Run(ctx, "hahn")
    inst = _load(instance)
    sp = inst.space
    n, m = inst.valuation(nu), inst.valuation(mu)
    if r is not None:
        q = parse_rational(r)
        w = hahn_witness(signed_from_pair(n, q, m), q)
        run.report["r"] = rational_label(q)
        run.report["witness"] = _set(sp, w.witness_set) if w.found else None
        run.finish(w.found)
    rows = [{"r": rational_label(q), "witness": _set(sp, w.witness_set) if w.found else None} for q, w in hahn_grid(n, m)]
    run.report["grid"] = rows
    run.finish(all(row["witness"] is not None for row in rows))


@main.command()
@click.argument("instance")
@click.argument("nu")
@click.argument("mu")
@click.option("--oracle", is_flag=True, help="Use the direct atom-ratio oracle instead of synthesis.")
@click.pass_context
def density(ctx, instance, nu, mu, oracle):
    """Find g with NU = g·MU, or explain why none exists."""
    run = _Run(ctx, "density")
    inst = _load(instance)
    sp = inst.space
    n, m = inst.valuation(nu), inst.valuation(mu)
    result = density_oracle(n, m) if oracle else density_synthesize(n, m)
    run.report["method"] = "oracle" if oracle else "synthesis"
    if isinstance(result, Density):
        run.report["result"] = "Density"
        run.report["g"] = {e: format_ext(v) for e, v in zip(sp.elements, result.g.values)}
        run.report["verified"] = verify_density(result.g, m, n).ok
    else:
        run.report["result"] = "NoDensity"
        reason = result.reason
        if isinstance(reason, HahnFails):
            run.report["reason"] = f"HahnFails({rational_label(reason.r)})"
        elif isinstance(reason, ACFails):
            u0, u = reason.witness
            run.report["reason"] = f"ACFails(U0={_set(sp, u0)}, U={_set(sp, u)})"
        elif isinstance(reason, NullAtomCharged):
            run.report["reason"] = f"NullAtomCharged({_set(sp, reason.atom_mask)})"
        else:
            run.report["reason"] = str(reason)
    run.finish(isinstance(result, Density))


@main.command()
@click.argument("instance")
@click.argument("nu")
@click.pass_context
def riesz(ctx, instance, nu):
    """Round-trip NU through its integration functional."""
    run = _Run(ctx, "riesz")
    inst = _load(instance)
    sp = inst.space
    v = inst.valuation(nu)
    F = riesz_functional(v)
    back = riesz_valuation(F)
    run.report["functional_on_characteristic_maps"] = {
        _set(sp, u): format_ext(F(characteristic(sp, u))) for u in sp.lattice
    }
    run.finish(all(back(u) == v(u) for u in sp.lattice))


@main.command()
@click.argument("instance")
@click.argument("nu")
@click.argument("set_expr")
@click.pass_context
def extend(ctx, instance, nu, set_expr):
    """Value of bounded NU on an algebra element, e.g. 's0' or 's0,s2'."""
    run = _Run(ctx, "extend")
    inst = _load(instance)
    sp = inst.space
    mask = parse_set(sp, set_expr, "set")
    c = sp.algebra_decompose(mask)
    run.report["set"] = _set(sp, mask)
    run.report["crescents"] = [{"outer": _set(sp, cr.outer), "inner": _set(sp, cr.inner)} for cr in c.crescents]
    run.report["value"] = format_ext(sht_extend(inst.valuation(nu), c))
    run.finish()


@main.command()
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--count", type=click.IntRange(0), default=100, show_default=True)
@click.option("--max-points", type=click.IntRange(1, 8), default=6, show_default=True)
@click.option("--infinity-prob", type=click.FloatRange(0, 1), default=0.0, show_default=True)
@click.pass_context
def randtest(ctx, seed, count, max_points, infinity_prob):
    """Run the property suite on COUNT seeded random instances."""
    from .checks import run as run_checks
    from .generate import GenParams

    run = _Run(ctx, "randtest")
    results = run_checks(seed, count, max_points, GenParams(infinity_prob=infinity_prob))
    failures = [{"instance": r.index, "seed": r.seed, "failure": f} for r in results for f in r.failures]
    run.report.update(
        seed=seed,
        instances=len(results),
        bounded=sum(r.bounded for r in results),
        with_density=sum(bool(r.density) for r in results),
        failures=failures,
        backend=_kernels.backend(),
    )
    run.finish(not failures)


if __name__ == "__main__":  # pragma: no cover
    main()
