"""Command-line front door for the shape, tensor, and double-category checks."""

import json
import sys

import click

from .checks import REGISTRY, _double_by_name, _twocat_by_name, run_all, run_check, write_reports
from .companion import admits_companion, companion_horizontals
from .config import Config
from .double import double_to_json, level_count
from .presheaf import nerve
from .shapes import default_site
from .twocat import enumerate_functors


def _emit(doc, as_json):
    if as_json:
        click.echo(json.dumps(doc, sort_keys=True))
        return
    for k in sorted(doc):
        click.echo("%s: %s" % (k, json.dumps(doc[k], sort_keys=True)))


def _quote(label):
    return '"%s"' % repr(label).replace('"', "'")


def _dot_twocat(C, path):
    lines = ["digraph {", "  rankdir=LR;"]
    for x in C.objects:
        lines.append("  %s;" % _quote(x))
    for (x, y, f) in C.one_cell_keys():
        if f == C.units.get(x) and x == y:
            continue
        lines.append(
            "  %s -> %s [label=%s];" % (_quote(x), _quote(y), _quote(f))
        )
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _dot_double(P, path):
    lines = ["digraph {", "  rankdir=LR;"]
    for x in P.P0.objects:
        lines.append("  %s;" % _quote(x))
    for a in P.P0.arrows:
        if P.P0.is_unit(a):
            continue
        lines.append(
            "  %s -> %s [label=%s];" % (_quote(P.P0.src[a]), _quote(P.P0.tgt[a]), _quote(a))
        )
    for F in P.P1.objects:
        if F in set(P.u.omap.values()):
            continue
        lines.append(
            "  %s -> %s [style=dashed, label=%s];"
            % (_quote(P.s.omap[F]), _quote(P.t.omap[F]), _quote(F))
        )
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


@click.group()
def main():
    """Finite gaunt 2-categories, their oplax tensor, and double-category checks."""


@main.command()
@click.argument("name")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--dot", "dot_path", default=None, type=click.Path(), help="write a 1-skeleton graph")
def shapes(name, as_json, dot_path):
    """Cell counts of a globular sum, e.g. "[2;1]"."""
    C = _twocat_by_name(name)
    if dot_path:
        _dot_twocat(C, dot_path)
    _emit({"name": C.name or name, "cells": C.count_cells()}, as_json)


@main.command()
@click.argument("src")
@click.argument("dst")
@click.option("--json", "as_json", is_flag=True)
def twocat(src, dst, as_json):
    """Count 2-functors between two shapes (globular sums or T(n,m))."""
    A = _twocat_by_name(src)
    B = _twocat_by_name(dst)
    n = len(enumerate_functors(A, B))
    _emit({"src": src, "dst": dst, "functors": n}, as_json)


@main.command()
@click.argument("name")
@click.option("--json", "as_json", is_flag=True)
def presheaf(name, as_json):
    """Nerve levels of a shape over the default site."""
    X = nerve(_twocat_by_name(name), default_site())
    _emit({"name": name, "levels": X.level_counts(), "total": X.total_size()}, as_json)


@main.command()
@click.argument("n", type=int)
@click.argument("m", type=int)
@click.option("--json", "as_json", is_flag=True)
@click.option("--dot", "dot_path", default=None, type=click.Path())
def gray(n, m, as_json, dot_path):
    """Cell counts of the tensor of two simplices."""
    T = _twocat_by_name("T(%d,%d)" % (n, m))
    if dot_path:
        _dot_twocat(T, dot_path)
    _emit({"name": T.name or "T(%d,%d)" % (n, m), "cells": T.count_cells()}, as_json)


@main.command()
@click.argument("spec")
@click.option("--json", "as_json", is_flag=True)
@click.option("--dot", "dot_path", default=None, type=click.Path())
@click.option("--full", is_flag=True, help="dump the full structure tables")
def double(spec, as_json, dot_path, full):
    """A double category by spec: Sq([1;1]), V([1]), or H([2])."""
    P = _double_by_name(spec)
    if dot_path:
        _dot_double(P, dot_path)
    if full:
        _emit(double_to_json(P), as_json)
        return
    levels = {
        "%d,%d" % (n, m): level_count(P, n, m) for n in range(3) for m in range(3)
    }
    _emit({"name": P.name, "counts": P.counts(), "levels": levels}, as_json)


@main.command()
@click.argument("spec")
@click.option("--json", "as_json", is_flag=True)
def companion(spec, as_json):
    """Companion-admitting verticals and companion horizontals of a double category."""
    Q = _double_by_name(spec)
    admitting = sorted(repr(v) for v in Q.P0.arrows if admits_companion(Q, v))
    horizontals = sorted(repr(F) for F in companion_horizontals(Q))
    _emit(
        {
            "name": Q.name,
            "admitting_verticals": admitting,
            "companion_horizontals": horizontals,
            "verticals": len(Q.P0.arrows),
            "horizontals": len(Q.P1.objects),
        },
        as_json,
    )


@main.command()
@click.argument("check_id", type=click.Choice(sorted(REGISTRY)))
@click.option("--json", "as_json", is_flag=True)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--param", "param_json", default=None, help="JSON object of parameter overrides")
def verify(check_id, as_json, config_path, param_json):
    """Run one named check; exit 0 pass, 1 fail, 2 inconclusive."""
    config = Config.from_file(config_path) if config_path else Config()
    overrides = json.loads(param_json) if param_json else None
    rep = run_check(check_id, overrides=overrides, config=config)
    if as_json:
        click.echo(json.dumps(rep, sort_keys=True))
    else:
        click.echo("%-22s %-13s %7.2fs" % (rep["id"], rep["status"], rep["seconds"]))
    sys.exit({"pass": 0, "fail": 1}.get(rep["status"], 2))


@main.command("verify-all")
@click.option("--parallel", is_flag=True, help="run checks in separate processes")
@click.option("--out", "outdir", default="reports", type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@click.option("--only", default=None, help="comma-separated subset of check ids")
@click.option("--self-test", is_flag=True, help="force one check onto a falsified candidate")
def verify_all(parallel, outdir, config_path, as_json, only, self_test):
    """Run the whole registry and write report.csv, witnesses, and summary.png."""
    config = Config.from_file(config_path) if config_path else Config()
    overrides = {"rigidity": {"expected": -1}} if self_test else None
    ids = [s.strip() for s in only.split(",") if s.strip()] if only else None
    summary = run_all(parallel=parallel, config=config, only=ids, overrides=overrides)
    report_path = write_reports(summary, outdir)
    if as_json:
        click.echo(json.dumps(summary, sort_keys=True))
    else:
        for r in summary["results"]:
            click.echo("%-22s %-13s %7.2fs" % (r["id"], r["status"], r["seconds"]))
        c = summary["counts"]
        click.echo(
            "%d pass / %d fail / %d inconclusive -> %s"
            % (c["pass"], c["fail"], c["inconclusive"], report_path)
        )
    c = summary["counts"]
    if c["fail"]:
        sys.exit(1)
    if c["inconclusive"]:
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
