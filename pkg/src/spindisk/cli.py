"""Command-line interface.

Emits machine-readable curves (CSV with '#' header comments) and JSON
reports.  Every command is deterministic given identical flags and seed,
and every output embeds the tool version and effective configuration.
Files are written atomically (temp file + rename).
"""
from __future__ import annotations

import functools
import json
import math
import os
import sys
import tempfile

import click
import numpy as np

from . import __version__
from .bell import chsh_scan, quantum_correlation
from .circle import (
    TWO_PI,
    Colouring,
    Mixture,
    ValidationError,
    as_mixture,
    model_from_dict,
    new_colouring,
    triangle_colouring,
)
from .correlation import exact_correlation, mixture_correlation
from .montecarlo import (
    FixedPairSampler,
    GridSampler,
    InvalidSampler,
    empirical_correlation,
    run_experiment,
)
from .optimize import (
    InfeasibleStart,
    NoFeasiblePoint,
    optimise_fixed_k,
    optimise_mixture,
)
from .spectral import (
    colouring_spectrum,
    first_harmonic_bound_check,
    gull_diagnostic,
    spectrum,
)

_ERRORS = (ValidationError, InvalidSampler, InfeasibleStart, NoFeasiblePoint, OSError, json.JSONDecodeError)


def _fail_cleanly(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _ERRORS as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _load_model(path: str) -> Colouring | Mixture:
    with open(path) as fh:
        return model_from_dict(json.load(fh))


def _write_text(path: str | None, text: str) -> None:
    """Atomic write; '-' or None goes to stdout."""
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(command: str, **config) -> str:
    cfg = " ".join(f"{k}={v}" for k, v in config.items())
    return f"# spindisk {__version__}\n# command={command} {cfg}\n"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Spinning-disk model of classical EPR-B correlations."""


@main.command("corr")
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--grid", default=721, show_default=True, help="Number of sample points on [0, 2*pi].")
@click.option("--out", default="-", show_default=True)
@_fail_cleanly
def cmd_corr(model_file: str, grid: int, out: str) -> None:
    """Exact correlation curve of a model, with -cos and triangle overlays."""
    model = _load_model(model_file)
    pl = mixture_correlation(as_mixture(model))
    tri = exact_correlation(triangle_colouring())
    gammas = np.linspace(0.0, TWO_PI, grid)
    rho = pl.sample(gammas)
    cos_ref = quantum_correlation(gammas)
    tri_ref = tri.sample(gammas)
    lines = [_header("corr", model=model_file, grid=grid), "gamma,rho,cos_ref,tri_ref\n"]
    for g, r, c, t in zip(gammas, rho, cos_ref, tri_ref):
        lines.append(f"{_fmt(g)},{_fmt(r)},{_fmt(c)},{_fmt(t)}\n")
    _write_text(out, "".join(lines))


@main.command("demo-figure")
@click.option("--nswitch", default=4, show_default=True, help="Even switch count per panel.")
@click.option("--panels", default=12, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--grid", default=721, show_default=True)
@click.option("--outdir", default=".", show_default=True, type=click.Path(file_okay=False))
@_fail_cleanly
def cmd_demo_figure(nswitch: int, panels: int, seed: int, grid: int, outdir: str) -> None:
    """Sample random colourings and write one correlation curve per panel."""
    if nswitch < 0 or nswitch % 2 != 0:
        raise ValidationError(f"--nswitch must be even and >= 0, got {nswitch}")
    if panels < 1:
        raise ValidationError("--panels must be >= 1")
    os.makedirs(outdir, exist_ok=True)
    rng = np.random.default_rng(seed)
    tri = exact_correlation(triangle_colouring())
    gammas = np.linspace(0.0, TWO_PI, grid)
    for p in range(1, panels + 1):
        theta = np.sort(rng.uniform(0.0, math.pi, nswitch))
        c = new_colouring(theta.tolist())
        pl = exact_correlation(c)
        lines = [
            _header("demo-figure", nswitch=nswitch, panel=p, panels=panels, seed=seed, grid=grid),
            f"# theta={json.dumps(list(c.switches))}\n",
            "gamma,rho,cos_ref,tri_ref\n",
        ]
        rho = pl.sample(gammas)
        cos_ref = quantum_correlation(gammas)
        tri_ref = tri.sample(gammas)
        for g, r, cr, t in zip(gammas, rho, cos_ref, tri_ref):
            lines.append(f"{_fmt(g)},{_fmt(r)},{_fmt(cr)},{_fmt(t)}\n")
        _write_text(os.path.join(outdir, f"panel_{p:02d}.csv"), "".join(lines))
    click.echo(f"wrote {panels} panel files to {outdir}", err=True)


@main.command("sim")
@click.argument("model_file", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--quantum", is_flag=True, help="Simulate the singlet law instead of a model.")
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--grid", "grid_pairs", type=int, default=None, help="Use setting pairs (0, 2*pi*j/GRID).")
@click.option("--runs", default=1000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="-", show_default=True)
@_fail_cleanly
def cmd_sim(model_file, quantum, alpha, beta, grid_pairs, runs, seed, out) -> None:
    """Run the experiment and write counts plus empirical correlations."""
    if quantum == (model_file is not None):
        raise ValidationError("pass exactly one of MODEL_FILE or --quantum")
    model = None if quantum else _load_model(model_file)
    if grid_pairs is not None:
        sampler = GridSampler([(0.0, TWO_PI * j / grid_pairs) for j in range(grid_pairs)])
    else:
        sampler = FixedPairSampler(alpha or 0.0, beta or 0.0)
    table = run_experiment(
        model=model, quantum=quantum, sampler=sampler, n_runs=runs, seed=seed
    )
    corr = empirical_correlation(table)
    lines = [
        _header("sim", model=model_file or "quantum", runs=runs, seed=seed,
                alpha=alpha, beta=beta, grid=grid_pairs),
        "alpha,beta,npp,npm,nmp,nmm,corr,se\n",
    ]
    for key in table.pairs():
        npp, npm, nmp, nmm = (int(x) for x in table.counts[key])
        est, se = corr[key]
        lines.append(
            f"{_fmt(key[0])},{_fmt(key[1])},{npp},{npm},{nmp},{nmm},{_fmt(est)},{_fmt(se)}\n"
        )
    _write_text(out, "".join(lines))


@main.command("spectrum")
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--nmax", default=99, show_default=True)
@click.option("--out", default="-", show_default=True, help="CSV spectrum destination.")
@click.option("--report", default="-", show_default=True, help="JSON diagnostic destination.")
@_fail_cleanly
def cmd_spectrum(model_file: str, nmax: int, out: str, report: str) -> None:
    """Fourier coefficients of a model plus the impossibility diagnostic."""
    model = _load_model(model_file)
    s = spectrum(model, nmax)
    mix = as_mixture(model)
    if s.colouring_coeffs is not None:
        fhat = s.colouring_coeffs
    else:
        fhat = np.full(nmax + 1, np.nan, dtype=complex)
    lines = [_header("spectrum", model=model_file, nmax=nmax), "n,re_fhat,im_fhat,a_n\n"]
    for n in range(nmax + 1):
        lines.append(
            f"{n},{_fmt(fhat[n].real)},{_fmt(fhat[n].imag)},{_fmt(s.cosine_coeffs[n])}\n"
        )
    _write_text(out, "".join(lines))
    g = gull_diagnostic(s)
    b = first_harmonic_bound_check(s)
    payload = {
        "tool": "spindisk",
        "version": __version__,
        "config": {"model": model_file, "nmax": nmax},
        "gull": {
            "nonzero_count": g.nonzero_count,
            "tail_mass": g.tail_mass,
            "parseval_residual": g.parseval_residual,
        },
        "first_harmonic": {"holds": b.holds, "a1": b.a1, "bound": b.bound},
        "components": len(mix.components),
    }
    _write_text(report, json.dumps(payload, indent=2) + "\n")


@main.command("optimize")
@click.option("--metric", type=click.Choice(["L2", "sup"]), default="L2", show_default=True)
@click.option("--k", "k_value", type=int, default=None, help="Single-colouring search with this k.")
@click.option("--pool", default=None, help="Comma-separated even k values for mixture search.")
@click.option("--monotone", is_flag=True)
@click.option("--starts", default=32, show_default=True)
@click.option("--iterations", default=50, show_default=True, help="Frank-Wolfe iterations (pool mode).")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="-", show_default=True)
@_fail_cleanly
def cmd_optimize(metric, k_value, pool, monotone, starts, iterations, seed, out) -> None:
    """Search for the model correlation closest to -cos."""
    if (k_value is None) == (pool is None):
        raise ValidationError("pass exactly one of --k or --pool")
    if pool is not None:
        if monotone:
            raise ValidationError("--monotone applies to --k searches only")
        pool_ks = [int(x) for x in pool.split(",") if x.strip() != ""]
        result = optimise_mixture(
            pool_ks, metric=metric, n_iterations=iterations, seed=seed,
            subproblem_starts=starts,
        )
    else:
        result = optimise_fixed_k(
            k_value, metric=metric, n_starts=starts, seed=seed, monotone=monotone
        )
    payload = result.to_dict()
    payload["tool"] = "spindisk"
    payload["version"] = __version__
    payload["config"] = {
        "metric": metric, "k": k_value, "pool": pool, "monotone": monotone,
        "starts": starts, "iterations": iterations, "seed": seed,
    }
    _write_text(out, json.dumps(payload, indent=2) + "\n")


@main.command("chsh")
@click.argument("model_file", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--quantum", is_flag=True)
@click.option("--scan-step", default=math.pi / 90, show_default=True)
@click.option("--out", default="-", show_default=True)
@_fail_cleanly
def cmd_chsh(model_file, quantum, scan_step, out) -> None:
    """Scan the CHSH functional over a setting grid."""
    if quantum == (model_file is not None):
        raise ValidationError("pass exactly one of MODEL_FILE or --quantum")
    if quantum:
        rho = quantum_correlation
    else:
        rho = mixture_correlation(as_mixture(_load_model(model_file)))
    max_abs_s, settings = chsh_scan(rho, scan_step)
    payload = {
        "tool": "spindisk",
        "version": __version__,
        "config": {"model": model_file or "quantum", "scan_step": scan_step},
        "max_abs_S": max_abs_s,
        "settings": [settings.a, settings.a_prime, settings.b, settings.b_prime],
        "grid_step": scan_step,
    }
    _write_text(out, json.dumps(payload, indent=2) + "\n")


if __name__ == "__main__":
    main()
