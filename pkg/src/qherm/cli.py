"""Command-line interface: tables, kernel grids, verification, coherent states.

A JSON config file can seed any option; explicit flags win.  The ``verify``
subcommand exits 0 only when every requested suite passes, writes the
machine-readable JSON report (schema 1), a per-check CSV, and, unless
disabled, figures next to them.  CSV output uses '.' decimals and 17
significant digits.
"""

from __future__ import annotations

import csv
import json
import math
import sys
from dataclasses import fields
from pathlib import Path

import click
import numpy as np

from . import kernels
from .coherent import cs_build, family_by_tag, overlap, resolution_of_identity
from .hermite import H_nm_poly, h_nm_poly, hermite_real
from .quaternion import Quaternion, from_list, to_matrix
from .verify import SUITE_NAMES, RunConfig, run_suites

_FLOAT_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FLOAT_FMT % float(x)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise click.UsageError("config file must hold a JSON object")
    return data


def _setting(ctx, key, flag_value, default):
    """Flag wins over config file; config file wins over the default."""
    if flag_value is not None:
        return flag_value
    return ctx.obj.get(key, default)


def _parse_quaternion(text: str) -> Quaternion:
    try:
        parts = json.loads(text) if text.strip().startswith("[") \
            else [p for p in text.split(",")]
        values = [float(p) for p in parts]
    except (ValueError, json.JSONDecodeError) as exc:
        raise click.UsageError(
            f"cannot parse quaternion {text!r}; use 'x0,x1,x2,x3'") from exc
    if len(values) != 4:
        raise click.UsageError("a quaternion needs exactly 4 components")
    return from_list(values)


def _write_rows(path, header, rows):
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _emit_json(payload: dict, out: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out is None:
        click.echo(text)
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON file with default option values.")
@click.pass_context
def main(ctx, config):
    """Quaternionic Hermite toolkit."""
    ctx.obj = _load_config(config)


@main.command("hermite-table")
@click.option("--family", type=click.Choice(["hn", "hnm", "Hnm"]),
              default=None)
@click.option("--max", "max_index", type=int, default=None)
@click.option("--eval-at", "eval_at", default=None,
              help="emit evaluated values (JSON) at this quaternion")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--fmt", type=click.Choice(["csv", "json"]), default=None)
@click.pass_context
def hermite_table(ctx, family, max_index, eval_at, out, fmt):
    """Exact polynomial coefficient tables, or evaluated values as JSON."""
    family = _setting(ctx, "family", family, "hnm")
    max_index = _setting(ctx, "max", max_index, 3)
    fmt = _setting(ctx, "fmt", fmt, "csv")
    eval_at = _setting(ctx, "eval_at", eval_at, None)
    if max_index < 0:
        raise click.UsageError("--max must be nonnegative")
    if eval_at is not None:
        from .hermite import h_nm_eval_q, hermite_q

        q = _parse_quaternion(eval_at)
        if family == "hn":
            entries = [{"n": n, "value": hermite_q(n, q).to_list()}
                       for n in range(max_index + 1)]
        else:
            if family == "Hnm":
                values = {(n, m): H_nm_poly(n, m).eval_quaternion(q)
                          for n in range(max_index + 1)
                          for m in range(max_index + 1)}
            else:
                values = {(n, m): h_nm_eval_q(n, m, q)
                          for n in range(max_index + 1)
                          for m in range(max_index + 1)}
            entries = [{"n": n, "m": m, "value": v.to_list()}
                       for (n, m), v in sorted(values.items())]
        _emit_json({"family": family, "max": max_index, "q": q.to_list(),
                    "entries": entries}, out)
        return
    if family == "hn":
        rows = [(n, k, str(c))
                for n in range(max_index + 1)
                for k, c in enumerate(hermite_real(n)) if c != 0]
        header = ("n", "k", "coeff")
        entries = [{"n": n, "k": k, "coeff": int(c)} for n, k, c in rows]
    else:
        poly_fn = h_nm_poly if family == "hnm" else H_nm_poly
        rows = [(n, m, i, j, str(c))
                for n in range(max_index + 1)
                for m in range(max_index + 1)
                for i, j, c in poly_fn(n, m).table_rows()]
        header = ("n", "m", "i", "j", "coeff")
        entries = [{"n": n, "m": m, "i": i, "j": j, "coeff": int(c)}
                   for n, m, i, j, c in rows]
    if fmt == "json":
        _emit_json({"family": family, "max": max_index, "entries": entries},
                   out)
    else:
        _write_rows(out, header, rows)


def _kernel_diagonal(kernel: str, q: Quaternion, s: float, n: int):
    if kernel == "Ks":
        return kernels.K_s_series(q, q, s).value
    if kernel == "Kn":
        return kernels.K_n_series(q, q, n).value
    if kernel == "bargmann":
        return kernels.bargmann_kernel(q, q).value
    raise click.UsageError(f"unknown quaternionic kernel {kernel!r}")


@main.command("kernel-grid")
@click.option("--kernel", type=click.Choice(["Ks", "frakKs", "Kn",
                                             "bargmann"]), default=None)
@click.option("--s", "s_value", type=float, default=None)
@click.option("--n", "level", type=int, default=None)
@click.option("--grid", type=int, default=None,
              help="points per component axis")
@click.option("--radius", type=float, default=None)
@click.option("--at", "at_pair", nargs=2, default=None,
              help="single evaluation at q1 q2 (JSON instead of a grid)")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--figures/--no-figures", default=None)
@click.pass_context
def kernel_grid(ctx, kernel, s_value, level, grid, radius, at_pair, out,
                figures):
    """Diagonal kernel values over a component grid (CSV), or one pair."""
    kernel = _setting(ctx, "kernel", kernel, "Ks")
    s_value = _setting(ctx, "s", s_value, 0.5)
    level = _setting(ctx, "n", level, 0)
    grid = _setting(ctx, "grid", grid, 7)
    radius = _setting(ctx, "radius", radius, 1.2)
    figures = _setting(ctx, "figures", figures, out is not None)
    if grid < 2:
        raise click.UsageError("--grid must be at least 2")
    if not 0.0 < s_value < 1.0:
        raise click.UsageError("--s must lie in (0, 1)")
    if at_pair:
        q1 = _parse_quaternion(at_pair[0])
        q2 = _parse_quaternion(at_pair[1])
        if kernel == "Ks":
            kv = kernels.K_s_series(q1, q2, s_value)
        elif kernel == "Kn":
            kv = kernels.K_n_series(q1, q2, level)
        elif kernel == "bargmann":
            kv = kernels.bargmann_kernel(q1, q2)
        else:
            raise click.UsageError(
                "single evaluation applies to the quaternionic kernels")
        _emit_json({"kernel": kernel, "s": s_value, "n": level,
                    "q1": q1.to_list(), "q2": q2.to_list(),
                    "value": kv.value.to_list(),
                    "truncation": kv.truncation,
                    "est_tail": kv.est_tail,
                    "converged": kv.converged}, out)
        return
    axis = np.linspace(-radius, radius, grid)

    if kernel == "frakKs":
        x, y = np.meshgrid(axis, axis, indexing="ij")
        x, y = x.ravel(), y.ravel()
        values = np.array([kernels.frak_K_closed_diagonal(
            complex(a, b), s_value) for a, b in zip(x, y)])
        rows = [( _fmt(a), _fmt(b), _fmt(v), _fmt(0.0))
                for a, b, v in zip(x, y, values)]
        _write_rows(out, ("x", "y", "re", "im"), rows)
        if figures:
            from .figures import render_planar_kernel_figure
            outdir = Path(out).parent if out else Path(".")
            for path in render_planar_kernel_figure(x, y, values, kernel,
                                                    outdir):
                click.echo(f"figure: {path}", err=True)
        return

    comps = np.stack(np.meshgrid(axis, axis, axis, axis, indexing="ij"),
                     axis=-1).reshape(-1, 4)
    q = Quaternion(comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3])
    value = _kernel_diagonal(kernel, q, s_value, level)
    mats = to_matrix(value)
    header = ("x0", "x1", "x2", "x3",
              "re11", "im11", "re12", "im12",
              "re21", "im21", "re22", "im22")
    rows = []
    for idx in range(comps.shape[0]):
        m = mats[idx]
        rows.append(tuple(_fmt(v) for v in comps[idx]) + (
            _fmt(m[0, 0].real), _fmt(m[0, 0].imag),
            _fmt(m[0, 1].real), _fmt(m[0, 1].imag),
            _fmt(m[1, 0].real), _fmt(m[1, 0].imag),
            _fmt(m[1, 1].real), _fmt(m[1, 1].imag)))
    _write_rows(out, header, rows)
    if figures:
        from .figures import render_kernel_grid_figure
        diag = mats[:, 0, 0].real
        reference = None
        if kernel == "Ks":
            reference = np.array([kernels.K_s_closed_diagonal(
                Quaternion(*comps[idx]), s_value)
                for idx in range(comps.shape[0])])
        elif kernel == "bargmann" or (kernel == "Kn" and level == 0):
            reference = np.exp(np.sum(comps ** 2, axis=1))
        outdir = Path(out).parent if out else Path(".")
        for path in render_kernel_grid_figure(comps, diag, kernel, outdir,
                                              reference):
            click.echo(f"figure: {path}", err=True)


@main.command("verify")
@click.option("--suite", "suites", multiple=True,
              type=click.Choice(SUITE_NAMES))
@click.option("--all", "run_all", is_flag=True, default=False)
@click.option("--list", "list_suites", is_flag=True, default=False)
@click.option("--s", "s_value", type=float, default=None)
@click.option("--max-n", type=int, default=None)
@click.option("--max-m", type=int, default=None)
@click.option("--planar-order", type=int, default=None)
@click.option("--su2-phi", type=int, default=None)
@click.option("--su2-psi", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--figures/--no-figures", default=None)
@click.pass_context
def verify(ctx, suites, run_all, list_suites, s_value, max_n, max_m,
           planar_order, su2_phi, su2_psi, seed, out, figures):
    """Run named verification suites; exit 0 only if all pass."""
    if list_suites:
        for name in SUITE_NAMES:
            click.echo(name)
        return
    defaults = RunConfig()
    cfg = RunConfig(
        s=_setting(ctx, "s", s_value, defaults.s),
        max_n=_setting(ctx, "max_n", max_n, defaults.max_n),
        max_m=_setting(ctx, "max_m", max_m, defaults.max_m),
        planar_order=_setting(ctx, "planar_order", planar_order,
                              defaults.planar_order),
        su2_phi=_setting(ctx, "su2_phi", su2_phi, defaults.su2_phi),
        su2_psi=_setting(ctx, "su2_psi", su2_psi, defaults.su2_psi),
        seed=_setting(ctx, "seed", seed, defaults.seed),
    )
    names = list(suites) if suites and not run_all else list(SUITE_NAMES)
    report = run_suites(names, cfg)
    for suite in report["suites"]:
        for check in suite["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            click.echo(f"{status} {suite['suite']}/{check['name']}: "
                       f"{check['value']:.3e} (tol {check['tolerance']:.1e})",
                       err=True)
    _emit_json(report, out)
    if out is not None:
        rows = [(s_["suite"], c["name"], _fmt(c["value"]),
                 _fmt(c["tolerance"]), str(c["passed"]).lower())
                for s_ in report["suites"] for c in s_["checks"]]
        csv_path = Path(out).with_suffix(".csv")
        _write_rows(str(csv_path), ("suite", "check", "value", "tolerance",
                                    "passed"), rows)
    if _setting(ctx, "figures", figures, out is not None):
        from .figures import render_report_figures
        outdir = Path(out).parent if out else Path(".")
        for path in render_report_figures(report, outdir):
            click.echo(f"figure: {path}", err=True)
    if not report["passed"]:
        raise SystemExit(1)


@main.group("cs")
def cs_group():
    """Coherent-state commands."""


def _family_from_options(tag, s_value, level):
    if tag not in ("canonical", "hermite-s", "hermite-nm"):
        raise click.UsageError(f"unknown family {tag!r}")
    return family_by_tag(tag, s=s_value, n=level)


@cs_group.command("build")
@click.option("--family", default=None)
@click.option("--s", "s_value", type=float, default=None)
@click.option("--n", "level", type=int, default=None)
@click.option("--q", "q_text", default=None, help="components 'x0,x1,x2,x3'")
@click.option("--truncation", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cs_build_cmd(ctx, family, s_value, level, q_text, truncation, out):
    """Build a coherent-state coefficient vector (JSON)."""
    tag = _setting(ctx, "family", family, "canonical")
    s_value = _setting(ctx, "s", s_value, 0.5)
    level = _setting(ctx, "n", level, 0)
    truncation = _setting(ctx, "truncation", truncation, 40)
    q = _parse_quaternion(_setting(ctx, "q", q_text, "0,0,0,0"))
    fam = _family_from_options(tag, s_value, level)
    vector = cs_build(fam, q, m_max=truncation)
    _emit_json({
        "family": vector.family_tag,
        "q": q.to_list(),
        "M": vector.truncation,
        "norm_factor": vector.norm_factor,
        "coeffs": [c.to_list() for c in vector.coeffs],
    }, out)


@cs_group.command("overlap")
@click.option("--family", default=None)
@click.option("--s", "s_value", type=float, default=None)
@click.option("--n", "level", type=int, default=None)
@click.option("--q1", default=None)
@click.option("--q2", default=None)
@click.option("--truncation", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cs_overlap_cmd(ctx, family, s_value, level, q1, q2, truncation, out):
    """Overlap of two coherent states (JSON)."""
    tag = _setting(ctx, "family", family, "canonical")
    s_value = _setting(ctx, "s", s_value, 0.5)
    level = _setting(ctx, "n", level, 0)
    truncation = _setting(ctx, "truncation", truncation, 40)
    qa = _parse_quaternion(_setting(ctx, "q1", q1, "0,0,0,0"))
    qb = _parse_quaternion(_setting(ctx, "q2", q2, "0,0,0,0"))
    fam = _family_from_options(tag, s_value, level)
    value = overlap(cs_build(fam, qa, m_max=truncation),
                    cs_build(fam, qb, m_max=truncation))
    _emit_json({
        "family": fam.tag,
        "q1": qa.to_list(),
        "q2": qb.to_list(),
        "M": truncation,
        "value": value.to_list(),
    }, out)


@cs_group.command("resolve")
@click.option("--family", default=None)
@click.option("--s", "s_value", type=float, default=None)
@click.option("--n", "level", type=int, default=None)
@click.option("--members", type=int, default=None,
              help="number of basis members in the identity check")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cs_resolve_cmd(ctx, family, s_value, level, members, out):
    """Resolution-of-identity deviation for a family (JSON)."""
    tag = _setting(ctx, "family", family, "canonical")
    s_value = _setting(ctx, "s", s_value, 0.5)
    level = _setting(ctx, "n", level, 0)
    members = _setting(ctx, "members", members, 6)
    if members < 1:
        raise click.UsageError("--members must be positive")
    fam = _family_from_options(tag, s_value, level)
    m_max = members - 1
    report = resolution_of_identity(fam, fam.spec(m_max), m_max)
    _emit_json({
        "family": fam.tag,
        "M": members,
        "deviation": report["max_deviation"],
    }, out)


if __name__ == "__main__":
    main()
