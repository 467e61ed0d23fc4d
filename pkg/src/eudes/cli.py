"""Command-line interface.

Exit codes: 0 success, 2 ran but the object was refuted (report still
written), 1 usage, input or I/O error.
"""

from __future__ import annotations

import json
import math
import os
import re
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

import click

from . import __version__
from .coherent import SchemeError, build_relations, check_theorem12_hypotheses, intersection_tensor, scheme_matrices
from .designs import Design, DesignError, decompose_layers, format_design, read_design, verify_design
from .families import (FamilyError, UnsupportedError, family_n2, family_nontight, family_realization,
                       family_tight, lift_euclidean, schlafli_design, split_spherical, tight_lower_bound)
from .feasibility import diophantine_scan, search_tight
from .scalar import ScalarParseError, format_scalar, parse_scalar, set_approx
from .two_sphere import ParameterError, integrality_report, nine_equation_residuals

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


class CliError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text)


def _load(path: str, exact: bool) -> Design:
    try:
        return read_design(path, exact=exact)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror or e}") from None


def _tol_exponent(tol: str) -> int:
    try:
        v = Decimal(tol)
    except InvalidOperation:
        raise click.BadParameter(f"not a decimal: {tol}") from None
    if not v > 0:
        raise click.BadParameter("tolerance must be positive")
    return math.floor(math.log2(float(v))) if v > Decimal("1e-300") else int(
        math.floor(float(v.ln() / Decimal(2).ln())))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="eudes")
def cli():
    """Euclidean designs on concentric spheres: verification, structure and feasibility."""


@cli.command()
@click.option("--t", "t", type=click.IntRange(0), required=True, help="Design strength.")
@click.option("--mode", type=click.Choice(["exact", "approx"]), default="exact", show_default=True)
@click.option("--tol", default=None, help="Approx-mode zero tolerance, as a decimal.")
@click.option("--route", type=click.Choice(["gram", "monomial"]), default="gram", show_default=True)
@click.option("--out", default=None, help="Report path (default stdout).")
@click.argument("file", type=click.Path(dir_okay=False))
def verify(t, mode, tol, route, out, file):
    """Check the Euclidean t-design condition on a design file."""
    if tol is not None:
        if mode != "approx":
            raise click.UsageError("--tol only applies to --mode approx")
        set_approx(tol_exponent=_tol_exponent(tol))
    d = _load(file, exact=(mode == "exact"))
    rep = verify_design(d, t, mode=mode, route=route)
    _write(_dump(rep.to_json()), out)
    return EXIT_OK if rep.passed else EXIT_REFUTED


@cli.command()
@click.option("--t", "t", type=click.IntRange(0), default=4, show_default=True,
              help="Strength used for the coherence hypotheses.")
@click.option("--out", default=None)
@click.argument("file", type=click.Path(dir_okay=False))
def config(t, out, file):
    """Relations, intersection tensor, coherence verdict and eigenmatrices."""
    d = _load(file, exact=False)
    rp = build_relations(d)
    tensor = intersection_tensor(rp=rp)
    dec = decompose_layers(d)
    eig = []
    for f in range(1, len(rp.fibers) + 1):
        try:
            se = scheme_matrices(tensor, f)
        except SchemeError as e:
            eig.append({"fiber": f, "error": str(e)})
            continue
        eig.append({**se.to_json(), "PQ_identity": se.check_PQ()})
    try:
        bound = tight_lower_bound(d.n, dec.p, 2, bool(dec.origin_flag))
    except UnsupportedError:
        bound = None
    report = {
        "points": len(d.points),
        "n": d.n,
        "relations": rp.to_json(),
        "tensor": tensor.to_json(),
        "coherent": tensor.constant,
        "fiber_sum_violations": tensor.fiber_sum_violations(),
        "transpose_violations": tensor.transpose_violations(),
        "hypotheses": check_theorem12_hypotheses(d, t).to_json(),
        "eigenmatrices": eig,
        "tight_bound_e2": bound,
    }
    _write(_dump(report), out)
    return EXIT_OK if tensor.constant else EXIT_REFUTED


def _family_instance(kind: str, k: int | None, r2: str | None):
    r = parse_scalar(r2) if r2 is not None else None
    if r is not None and not r.is_exact:
        raise click.BadParameter("--r2 must be an exact scalar literal")
    if kind == "n2":
        if k is not None:
            raise click.UsageError("--kind n2 takes --r2, not --k")
        return family_n2(2 if r is None else r)
    if k is None:
        raise click.UsageError(f"--kind {kind} needs --k")
    if kind == "tight":
        if r is not None:
            raise click.UsageError("the tight family fixes r2")
        return family_tight(k)
    return family_nontight(k, r)


@cli.command()
@click.option("--kind", type=click.Choice(["nontight", "tight", "n2"]), required=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--r2", default=None, help="Outer radius (nontight, n2), scalar literal.")
@click.option("--emit-points", is_flag=True, help="Also write the realization as a design file.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--out", default=None, help="Report path (default stdout).")
def family(kind, k, r2, emit_points, out_dir, out):
    """Parameters, closed-form tensor and checks for a family member."""
    inst = _family_instance(kind, k, r2)
    tensor = inst.tensor()
    nine = nine_equation_residuals(inst.params)
    integ = integrality_report(tensor)
    golden = inst.golden_mismatches(tensor)
    report = {
        "kind": inst.kind,
        "k": inst.k,
        "params": inst.params.to_json(),
        "tight": inst.params.N1 + inst.params.N2 == (inst.params.n + 1) * (inst.params.n + 2) // 2,
        "tensor": tensor.to_json(),
        "nine_equations": [format_scalar(v) for v in nine],
        "integrality": integ.to_json(),
        "golden": {"checked": len(inst.expected_entries), "mismatches": golden},
        "points_file": None,
    }
    if emit_points:
        d = family_realization(inst)
        if d is not None:
            os.makedirs(out_dir, exist_ok=True)
            tag = f"k{inst.k}" if inst.k is not None else "r" + re.sub(r"[^0-9A-Za-z]+", "_", format_scalar(inst.params.r2))
            path = os.path.join(out_dir, f"family_{inst.kind}_{tag}.eud")
            Path(path).write_text(format_design(d, f"{inst.kind} family member"))
            report["points_file"] = path
    _write(_dump(report), out)
    ok = not golden and integ.feasible and all(not v for v in nine)
    return EXIT_OK if ok else EXIT_REFUTED


@cli.command()
@click.option("--base", type=click.IntRange(0, 26), default=0, show_default=True,
              help="Vertex placed on the last axis.")
@click.option("--out", default=None, help="Design path (default stdout).")
def schlafli(base, out):
    """The 27-point tight spherical 4-design in R^6, exact coordinates."""
    Y = schlafli_design(base)
    _write(format_design(Y.design, f"27 lines on a cubic surface, base vertex {Y.names[base]}"), out)
    return EXIT_OK


@cli.command()
@click.option("--k", "k", type=click.IntRange(2), required=True)
@click.option("--out", default=None, help="Design path (default stdout).")
@click.argument("file", type=click.Path(dir_okay=False))
def lift(k, out, file):
    """Two-sphere design -> tight spherical 4-design one dimension up."""
    d = _load(file, exact=True)
    _write(format_design(lift_euclidean(d, k), f"lift k={k}"), out)
    return EXIT_OK


@cli.command()
@click.option("--k", "k", type=click.IntRange(2), required=True)
@click.option("--base", type=click.IntRange(0), default=0, show_default=True,
              help="Index of the base point y0.")
@click.option("--out", default=None, help="Design path (default stdout).")
@click.argument("file", type=click.Path(dir_okay=False))
def split(k, base, out, file):
    """Tight spherical 4-design -> two-sphere Euclidean 4-design one dimension down."""
    Y = _load(file, exact=True)
    if base >= len(Y.points):
        raise click.BadParameter(f"base index {base} out of range")
    _write(format_design(split_spherical(Y, base, k), f"split k={k} base={base}"), out)
    return EXIT_OK


@cli.command()
@click.option("--n-min", type=click.IntRange(2), default=2, show_default=True)
@click.option("--n-max", type=click.IntRange(2), default=222, show_default=True)
@click.option("--epsilon", type=click.Choice(["-1", "+1", "1"]), default="-1", show_default=True)
@click.option("--keep", type=click.Choice(["feasible", "candidates", "all"]), default="feasible",
              show_default=True, help="Which records to stream.")
@click.option("--no-screen", is_flag=True, help="Skip the n+3 odd-square screen.")
@click.option("--emit-params", is_flag=True, help="Write params JSON for feasible records.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--out", default=None, help="JSON-lines path (default stdout).")
def search(n_min, n_max, epsilon, keep, no_screen, emit_params, out_dir, out):
    """Exhaustive search for tight 4-designs on two spheres."""
    if n_min > n_max:
        raise click.UsageError("--n-min exceeds --n-max")
    eps = -1 if epsilon == "-1" else 1
    res = search_tight(n_min, n_max, eps, keep=keep, screen=not no_screen)
    lines = [json.dumps(r.to_json(), sort_keys=True) for r in res.records]
    _write("".join(line + "\n" for line in lines), out)
    if emit_params:
        os.makedirs(out_dir, exist_ok=True)
        for r in res.feasible:
            path = os.path.join(out_dir, f"params_n{r.n}_N{r.N1}_eps{'+' if eps > 0 else '-'}.json")
            Path(path).write_text(_dump(r.params.to_json()))
    click.echo(json.dumps(res.summary(), sort_keys=True), err=True)
    return EXIT_OK


@cli.command()
@click.option("--kind", type=click.Choice(["a", "b"]), required=True)
@click.option("--limit", type=click.IntRange(2), default=10 ** 6, show_default=True)
@click.option("--out", default=None)
def dioph(kind, limit, out):
    """Bounded scan for square values of n(n+1)(n+4) (a) or q(q-2)(2q-3) (b)."""
    lo = 3 if kind == "a" else 2
    if limit < lo:
        raise click.BadParameter(f"--limit must be at least {lo}")
    hits = diophantine_scan(kind, limit)
    form = "n(n+1)(n+4)" if kind == "a" else "q(q-2)(2q-3)"
    _write(_dump({"kind": kind, "form": form, "lo": lo, "limit": limit, "hits": hits}), out)
    return EXIT_OK


_INPUT_ERRORS = (CliError, DesignError, ScalarParseError, ParameterError, FamilyError,
                 UnsupportedError, SchemeError, OSError)


def run(argv: list[str] | None = None) -> int:
    """Run the CLI and return the exit code instead of raising SystemExit."""
    try:
        rv = cli.main(args=argv, prog_name="eudes", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_ERROR
    except click.ClickException as e:
        e.show()
        return EXIT_ERROR
    except _INPUT_ERRORS as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
