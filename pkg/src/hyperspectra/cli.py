"""Command-line interface.

Every option can also be set through an environment variable named
HYPERSPECTRA_<COMMAND>_<OPTION>, e.g. HYPERSPECTRA_SPECTRUM_SEED=7.

Exit codes: 0 success, 1 failure, 2 inconclusive, 3 input error.
"""
from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import analysis as an
from . import hypergraph as hg
from . import spectra as sp
from . import tensor as tz
from .errors import HyperspectraError, Inconclusive, InputError

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
ENV_PREFIX = "HYPERSPECTRA"

log = logging.getLogger("hyperspectra")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    dedup_tol: float = 1e-8
    residual_tol: float = 1e-8
    real_threshold: float = 1e-10
    paths_budget: int = 200_000
    workers: int = 1
    out: Path | None = None
    plot_out: Path | None = None

    def solve_options(self) -> sp.SolveOptions:
        return sp.SolveOptions(dedup_tol=self.dedup_tol, residual_tol=self.residual_tol,
                               real_threshold=self.real_threshold, paths_budget=self.paths_budget,
                               workers=self.workers)


class Failure(Exception):
    """A check or comparison did not pass."""


def solver_options(f):
    opts = [
        click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True),
        click.option("--tol-dedup", type=float, default=1e-8, show_default=True),
        click.option("--tol-residual", type=float, default=1e-8, show_default=True),
        click.option("--real-threshold", type=float, default=1e-10, show_default=True),
        click.option("--paths-budget", type=int, default=200_000, show_default=True),
        click.option("--workers", type=click.IntRange(1), default=1, show_default=True),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None),
        click.option("--plot-out", type=click.Path(dir_okay=False, path_type=Path), default=None),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def kind_option(default="A"):
    return click.option("--kind", type=click.Choice(list(tz.KINDS)), default=default, show_default=True)


def make_config(seed, tol_dedup, tol_residual, real_threshold, paths_budget, workers, out, plot_out) -> RunConfig:
    return RunConfig(seed, tol_dedup, tol_residual, real_threshold, paths_budget, workers, out, plot_out)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text)
        log.info("wrote %s", out)


def _num(v: float) -> float:
    # canonical zero so that -0.0 and 0.0 serialize identically
    return float(v) + 0.0


def report_to_dict(report: sp.SpectrumReport, kind: str) -> dict:
    stats = {k: (v.item() if isinstance(v, np.generic) else v) for k, v in report.stats.items()}
    return {
        "kind": kind,
        "stats": stats,
        "eigenvalues": [
            {
                "re": _num(e.value.real),
                "im": _num(e.value.imag),
                "is_real": bool(e.is_real),
                "from_singular": bool(e.from_singular_endpoint),
                "gm": e.geometric_multiplicity,
                "residual": float(e.residual),
                "count": int(e.count),
                "eigenvector": [[_num(z.real), _num(z.imag)] for z in e.representative_eigenvector],
            }
            for e in report.eigenvalues
        ],
    }


def plot_rows(report: sp.SpectrumReport) -> str:
    lines = ["re,im"] + [f"{_num(e.value.real)!r},{_num(e.value.imag)!r}" for e in report.eigenvalues]
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise InputError(f"cannot parse eigenvalue {text!r}; expected re[,im]") from exc
    if len(parts) == 1:
        return complex(parts[0])
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise InputError(f"cannot parse eigenvalue {text!r}; expected re[,im]")


@click.group(context_settings={"auto_envvar_prefix": ENV_PREFIX, "show_default": True})
@click.option("-v", "--verbose", is_flag=True, help="Log progress lines to stderr.")
def main(verbose):
    """Spectra of weighted hypergraph tensors."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


@main.command("tensor")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@kind_option()
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
def cmd_tensor(input_file, kind, out):
    """Build a tensor and write its structured dump."""
    T = tz.build(hg.load(input_file), kind)
    _emit(json.dumps(tz.to_dict(T), indent=2) + "\n", out)


def _spectrum(G, kind, cfg: RunConfig, gm_singular: bool) -> sp.SpectrumReport:
    T = tz.build(G, kind)
    log.info("%s tensor of order %d, dimension %d: %d paths", kind, T.order, T.dim, T.order**T.dim)
    report = sp.spectrum(T, cfg.seed, cfg.solve_options())
    if gm_singular:
        for e in report.eigenvalues:
            if e.from_singular_endpoint:
                e.geometric_multiplicity = sp.geometric_multiplicity(T, e.value, cfg.seed, cfg.solve_options())
    return report


@main.command("spectrum")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@kind_option()
@solver_options
@click.option("--gm-singular", is_flag=True, help="Also compute gm for eigenvalues met at singular endpoints.")
def cmd_spectrum(input_file, kind, gm_singular, **kw):
    """Solve for all eigenvalues and write the spectrum report."""
    cfg = make_config(**kw)
    report = _spectrum(hg.load(input_file), kind, cfg, gm_singular)
    _emit(json.dumps(report_to_dict(report, kind), indent=2, sort_keys=True) + "\n", cfg.out)
    if cfg.plot_out is not None:
        cfg.plot_out.write_text(plot_rows(report))
    if report.possibly_incomplete:
        log.warning("more than 1%% of paths failed; spectrum possibly incomplete, rerun with another seed")


@main.command("gm")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("eigenvalue")
@kind_option()
@solver_options
def cmd_gm(input_file, eigenvalue, kind, **kw):
    """Geometric multiplicity of EIGENVALUE (given as re[,im]) by generic slicing."""
    cfg = make_config(**kw)
    lam = parse_complex(eigenvalue)
    T = tz.build(hg.load(input_file), kind)
    trace: list = []
    try:
        gm = sp.geometric_multiplicity(T, lam, cfg.seed, cfg.solve_options(), trace=trace)
    finally:
        for j, found in trace:
            click.echo(f"slices={j} found={','.join(str(f).lower() for f in found)}", err=True)
    _emit(json.dumps({"eigenvalue": [lam.real, lam.imag], "gm": gm,
                      "trace": [{"slices": j, "found": found} for j, found in trace]}, indent=2) + "\n", cfg.out)


THEOREMS = ("rowsums", "count", "hbounds", "colorability", "oddbipartite", "duplicate", "flower", "radius")


def flower_parameters(G: hg.WeightedHypergraph):
    """(nabla, M) if G is a unit-weight hyperflower with the standard labelling, else None."""
    k = G.order
    if k < 3:
        return None
    for M in range(1, G.n + 1):
        if k - 1 + M == G.n and G.m == M:
            try:
                F = hg.hyperflower(k, M)
            except InputError:
                return None
            if sorted((e.support, e.weight) for e in F.edges) == sorted((e.support, e.weight) for e in G.edges):
                return k, M
    return None


def run_checks(G, theorems, cfg: RunConfig, ell: int | None) -> list[an.TheoremCheckResult]:
    opts = cfg.solve_options()
    results = []
    for name in theorems:
        if name == "rowsums":
            results.append(an.check_row_sums(G))
        elif name == "count":
            fp = flower_parameters(G)
            if fp is None or fp not in an.FLOWER_CHARPOLYS:
                log.warning("count: no reference polynomial for this input; skipped")
                continue
            for kind, ref in an.FLOWER_CHARPOLYS[fp].items():
                T = tz.build(G, kind)
                r = an.check_eigenvalue_count_and_sum(T, ref, sp.spectrum(T, cfg.seed, opts).values)
                r.theorem_id = f"count[{kind}]"
                results.append(r)
        elif name == "hbounds":
            for kind in ("K", "RW"):
                T = tz.build(G, kind)
                r = an.check_h_bounds(T, sp.h_eigen_search(T, cfg.seed, opts))
                r.theorem_id = f"hbounds[{kind}]"
                results.append(r)
        elif name == "colorability":
            results.append(an.check_colorability_symmetry(G, ell or G.order, cfg.seed, opts))
        elif name == "oddbipartite":
            results.append(an.check_odd_bipartite_spectra(G, cfg.seed, opts))
        elif name == "duplicate":
            if not hg.duplicate_pairs(G):
                log.warning("duplicate: no duplicate vertices; skipped")
                continue
            results.append(an.check_duplicate_constraint(G, sp.solve(sp.assemble(tz.build(G, "A"), 0, cfg.seed), opts)))
        elif name == "flower":
            fp = flower_parameters(G)
            if fp is None:
                raise InputError("input is not a hyperflower")
            kinds = an.FLOWER_CHARPOLYS.get(fp, {"A": None}).keys()
            spectra = {kind: sp.spectrum(tz.build(G, kind), cfg.seed, opts).values for kind in kinds}
            results.append(an.check_flower(*fp, spectra))
        elif name == "radius":
            results.append(an.check_radius(G))
    return results


@main.command("check")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--theorem", "theorems", type=click.Choice(THEOREMS + ("all",)), multiple=True, default=("rowsums",))
@click.option("--ell", type=int, default=None, help="Symmetry order for the colorability check (default: the order).")
@solver_options
def cmd_check(input_file, theorems, ell, **kw):
    """Run theorem checks; exit code 1 if any non-warning assertion fails."""
    cfg = make_config(**kw)
    G = hg.load(input_file)
    if "all" in theorems:
        theorems = THEOREMS
    results = run_checks(G, theorems, cfg, ell)
    for r in results:
        click.echo(f"{r.theorem_id}: {'pass' if r.passed else 'FAIL'}"
                   + (f" ({len(r.warnings)} warnings)" if r.warnings else ""), err=True)
    _emit(json.dumps([r.to_dict() for r in results], indent=2) + "\n", cfg.out)
    if not all(r.passed for r in results):
        raise Failure("some checks failed")


@main.command("flower")
@click.argument("nabla", type=click.IntRange(3))
@click.argument("m", type=click.IntRange(1))
@kind_option()
@solver_options
def cmd_flower(nabla, m, kind, **kw):
    """Solve a hyperflower and compare with the closed-form adjacency spectrum."""
    cfg = make_config(**kw)
    G = hg.hyperflower(nabla, m)
    report = _spectrum(G, kind, cfg, False)
    values = report.values
    lines = []
    ok = True
    if kind == "A":
        pred = an.flower_prediction(nabla, m)
        lines.append(f"{'predicted':>28}  {'closest found':>28}  gap")
        for lam in pred.predicted_distinct_eigenvalues_A:
            j = int(np.argmin(np.abs(values - lam))) if values.size else None
            gap = abs(values[j] - lam) if j is not None else float("inf")
            ok &= gap <= 1e-6 * max(1.0, abs(lam))
            found = f"{values[j]:.12g}" if j is not None else "-"
            lines.append(f"{lam:>28.12g}  {found:>28}  {gap:.1e}")
        extra = [v for v in values if np.min(np.abs(np.array(pred.predicted_distinct_eigenvalues_A) - v)) > 1e-6]
        lines.append(f"found {len(values)} distinct, {len(extra)} outside the closed form")
    else:
        lines.append(f"found {len(values)} distinct eigenvalues (closed form covers kind A only)")
        lines += [f"{v:.12g}" for v in values]
    click.echo("\n".join(lines))
    if cfg.out is not None:
        cfg.out.write_text(json.dumps(report_to_dict(report, kind), indent=2, sort_keys=True) + "\n")
    if cfg.plot_out is not None:
        cfg.plot_out.write_text(plot_rows(report))
    if not ok:
        raise Failure("predicted eigenvalues missing")


def run(argv=None) -> int:
    """Entry point with the documented exit codes."""
    try:
        main.main(args=argv, prog_name="hyperspectra", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.exceptions.Abort:
        return EXIT_FAIL
    except Inconclusive as exc:
        click.echo(f"inconclusive: {exc}", err=True)
        return EXIT_INCONCLUSIVE
    except (InputError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"input error: {exc}", err=True)
        return EXIT_INPUT
    except (Failure, HyperspectraError) as exc:
        click.echo(f"failed: {exc}", err=True)
        return EXIT_FAIL
    return EXIT_OK


def entry() -> None:
    sys.exit(run())
