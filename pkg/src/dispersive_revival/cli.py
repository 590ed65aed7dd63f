"""Command-line front door: profile dumps, exact closed forms, kernel
weights, comparisons, the nonlinear solver, zeta-sum identities, and the
fractal diagnostics.

Conventions: rational times must be written exactly ("pi*1/3"); decimal
times are treated as irrational and never routed to the closed-form path.
CSV profiles carry the header x,u_re,u_im with 17 significant digits; JSON
reports have the keys config, result, checks.  Exit code 2 flags a
configuration error, 3 a numerical abort.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analysis, zeta
from .dispersion import (
    BOUSSINESQ,
    FractionalMonomial,
    IntegralPolynomial,
    Monomial,
    SqrtPhi,
    omega,
    parse_dispersion,
    rational_time_rescale,
)
from .fourier_core import (
    DEFAULT_TRUNCATION,
    FourierSeries,
    GridFunction,
    coeffs_of_piecewise_poly,
    coeffs_of_sin,
    coeffs_of_step_sigma,
    coeffs_of_unit_step,
    evaluate_series,
    zeros_series,
)
from .piecewise import TWO_PI, PiecewisePolynomial, step_sigma, unit_step
from .revival import (
    RationalTime,
    beam_closed_form,
    box_expansion_cos,
    box_expansion_sin,
    monomial_closed_form,
    revival_kernel,
)
from .solver import BeamParams, NonFiniteStateError, evolve_nonlinear, linear_evolve, stable_dt


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Resolved options for one subcommand invocation."""

    subcommand: str
    dispersion: str = "monomial:2"
    ic_f: str = "step"
    ic_g: str = "step"
    time: str = "0"
    truncation: int = DEFAULT_TRUNCATION
    grid: int = 4096
    mu: float = 0.0
    eps: float = 0.0
    dt: float = 1e-3
    modes: int = 512
    dealias: bool = False
    t_end: float = 0.0
    order: int = 2
    trig: str = "exp"
    delta: float = analysis.DEFAULT_EXCLUSION
    out: str = "out"
    fmt: str = ""
    shift_domain: bool = False
    summand: str = "cos"
    extra: dict = field(default_factory=dict)


def parse_time(text: str):
    """'pi*p/q' -> RationalTime; plain decimals are treated as irrational."""
    t = text.strip().lower()
    if t.startswith("pi"):
        return RationalTime.parse(t)
    try:
        return float(t)
    except ValueError as exc:
        raise ConfigError(f"time: cannot parse {text!r}") from exc


def parse_ic_series(name: str, M: int) -> FourierSeries:
    n = name.strip().lower()
    if n == "step":
        return coeffs_of_step_sigma(M)
    if n == "unit-step":
        return coeffs_of_unit_step(M)
    if n == "zero":
        return zeros_series(M)
    if n == "sin":
        return coeffs_of_sin(M)
    if n.startswith("piecewise:"):
        return coeffs_of_piecewise_poly(load_piecewise(n.split(":", 1)[1]), M)
    raise ConfigError(f"ic: unknown initial condition {name!r}")


def parse_ic_piecewise(name: str) -> PiecewisePolynomial:
    n = name.strip().lower()
    if n == "step":
        return step_sigma()
    if n == "unit-step":
        return unit_step()
    if n == "zero":
        return PiecewisePolynomial((Fraction(0),), ([0.0],))
    if n.startswith("piecewise:"):
        return load_piecewise(name.split(":", 1)[1])
    raise ConfigError(
        f"ic: {name!r} is not piecewise-polynomial (closed forms need step, "
        "unit-step, zero, or piecewise:FILE)"
    )


def load_piecewise(path: str) -> PiecewisePolynomial:
    """JSON schema: {"q_den": q, "pieces": [[c0, c1, ...] x 2q]}.

    Piece j lives on [pi*j/q, pi*(j+1)/q); coefficients may be numbers or
    [re, im] pairs.
    """
    try:
        data = json.loads(Path(path).read_text())
        q = int(data["q_den"])
        rows = data["pieces"]
        if len(rows) != 2 * q:
            raise ConfigError(f"piecewise file needs 2*q_den={2*q} pieces")
        breaks = tuple(Fraction(j, q) for j in range(2 * q))
        pieces = []
        for row in rows:
            coeffs = [
                complex(c[0], c[1]) if isinstance(c, list) else complex(c)
                for c in row
            ]
            pieces.append(np.asarray(coeffs, dtype=complex))
        return PiecewisePolynomial(breaks, tuple(pieces))
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise ConfigError(f"piecewise file {path}: {exc}") from exc


# -- output helpers ----------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_profile_csv(path: Path, grid: GridFunction, shift_domain: bool = False) -> None:
    x = grid.x()
    u = grid.samples
    if shift_domain:
        # display on [-pi, pi): rotate the left half of the period
        half = grid.n // 2
        x = np.concatenate([x[half:] - TWO_PI, x[:half]])
        u = np.concatenate([u[half:], u[:half]])
    lines = ["x,u_re,u_im"]
    for xi, ui in zip(x, u):
        lines.append(f"{_fmt(xi)},{_fmt(ui.real)},{_fmt(ui.imag)}")
    path.write_text("\n".join(lines) + "\n")


def write_json_report(path: Path, config: dict, result: dict, checks: list) -> None:
    report = {"config": config, "result": result, "checks": checks}
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def make_check(name: str, expected, actual, tolerance: float) -> dict:
    ok = abs(actual - expected) <= tolerance
    return {
        "name": name,
        "expected": expected,
        "actual": actual,
        "tolerance": tolerance,
        "pass": bool(ok),
    }


def piecewise_as_dict(p: PiecewisePolynomial) -> dict:
    return {
        "breakpoints": [f"{b.numerator}/{b.denominator}" for b in p.breaks],
        "pieces_re": [[c.real for c in piece] for piece in p.pieces],
        "pieces_im": [[c.imag for c in piece] for piece in p.pieces],
    }


# -- subcommand implementations ----------------------------------------------


def cmd_linear_evolve(cfg: RunConfig) -> str:
    spec = parse_dispersion(cfg.dispersion)
    t = parse_time(cfg.time)
    fhat = parse_ic_series(cfg.ic_f, cfg.truncation)
    ghat = parse_ic_series(cfg.ic_g, cfg.truncation)
    uhat = linear_evolve(spec, fhat, ghat, t)
    grid = evaluate_series(uhat, cfg.grid)
    out = Path(cfg.out).with_suffix(".csv")
    write_profile_csv(out, grid, cfg.shift_domain)
    t_val = t.value if isinstance(t, RationalTime) else t
    return f"linear-evolve: {cfg.dispersion} at t={t_val:.6g} -> {out} ({cfg.grid} samples)"


def cmd_closed_form(cfg: RunConfig) -> str:
    t = parse_time(cfg.time)
    if not isinstance(t, RationalTime):
        raise ConfigError("time: closed forms exist at rational times only; write pi*p/q")
    eq = cfg.extra.get("equation", "beam")
    if eq == "beam":
        if cfg.ic_f != "step" or cfg.ic_g != "step":
            u = monomial_closed_form(2, t, parse_ic_piecewise(cfg.ic_f), parse_ic_piecewise(cfg.ic_g))
        else:
            u = beam_closed_form(t)
    else:
        spec = parse_dispersion(cfg.dispersion)
        if not isinstance(spec, Monomial):
            raise ConfigError("dispersion: closed forms need monomial:N dispersion")
        u = monomial_closed_form(spec.N, t, parse_ic_piecewise(cfg.ic_f), parse_ic_piecewise(cfg.ic_g))

    base = Path(cfg.out)
    csv_path = base.with_suffix(".csv")
    x = TWO_PI * np.arange(cfg.grid) / cfg.grid
    write_profile_csv(csv_path, GridFunction(u.evaluate(x)), cfg.shift_domain)
    json_path = base.with_suffix(".json")
    checks = [
        make_check(
            "non-box part closes the period",
            0.0,
            abs(u.end_value() - u.eval_at_rational(Fraction(0))
                - (u.pieces[-1][0].real * 0 + complex(
                    box_expansion_cos(2 if eq == "beam" else parse_dispersion(cfg.dispersion).N, t).values[-1]
                    - box_expansion_cos(2 if eq == "beam" else parse_dispersion(cfg.dispersion).N, t).values[0]))),
            1e-9,
        )
    ]
    write_json_report(
        json_path,
        config={"subcommand": "closed-form", "time": str(t), "equation": eq},
        result=piecewise_as_dict(u),
        checks=checks,
    )
    return f"closed-form: {eq} at t={t} -> {csv_path}, {json_path}"


def cmd_revival_coeffs(cfg: RunConfig) -> str:
    spec = parse_dispersion(cfg.dispersion)
    if isinstance(spec, Monomial):
        poly = spec.as_integral_polynomial()
        N = spec.N
    elif isinstance(spec, IntegralPolynomial):
        poly = spec
        N = spec.degree
    else:
        raise ConfigError("dispersion: revival kernels need an integral polynomial")
    t = parse_time(cfg.time)
    if not isinstance(t, RationalTime):
        raise ConfigError("time: revival kernels exist at rational times only; write pi*p/q")
    kern = revival_kernel(poly, t, cfg.trig)
    base = Path(cfg.out)
    lines = ["j,w_re,w_im"]
    for j, w in enumerate(kern.weights):
        lines.append(f"{j},{_fmt(w.real)},{_fmt(w.imag)}")
    csv_path = base.with_suffix(".csv")
    csv_path.write_text("\n".join(lines) + "\n")
    result = {
        "weights_re": [w.real for w in kern.weights],
        "weights_im": [w.imag for w in kern.weights],
    }
    if cfg.trig in ("cos", "sin"):
        boxes = (box_expansion_cos if cfg.trig == "cos" else box_expansion_sin)(N, t)
        result["step_box_values_re"] = [v.real for v in boxes.values]
        result["step_box_values_im"] = [v.imag for v in boxes.values]
    checks = [
        make_check(
            "weight sum equals k=0 symbol",
            {"cos": 1.0, "sin": 0.0, "exp": 1.0}[cfg.trig] if poly(0) == 0 else float("nan"),
            float(np.sum(kern.weights).real),
            1e-12,
        )
    ]
    write_json_report(
        base.with_suffix(".json"),
        config={"subcommand": "revival-coeffs", "dispersion": cfg.dispersion, "time": str(t), "trig": cfg.trig},
        result=result,
        checks=checks,
    )
    return f"revival-coeffs: {cfg.dispersion} {cfg.trig} at t={t} -> {csv_path}"


def cmd_compare(cfg: RunConfig) -> str:
    t = parse_time(cfg.time)
    if not isinstance(t, RationalTime):
        raise ConfigError("time: comparisons need the exact closed form; write pi*p/q")
    u = beam_closed_form(t)
    sighat = coeffs_of_step_sigma(cfg.truncation)
    uhat = linear_evolve(Monomial(2), sighat, sighat, t)
    grid = evaluate_series(uhat, cfg.grid)
    rep = analysis.compare_profiles(grid, u, cfg.delta)
    base = Path(cfg.out)
    checks = [
        make_check("excluded sup error below 2e-2", 0.0, rep.sup_error_excluded, 2e-2)
    ]
    write_json_report(
        base.with_suffix(".json"),
        config={
            "subcommand": "compare",
            "time": str(t),
            "delta": cfg.delta,
            "grid": cfg.grid,
            "truncation": cfg.truncation,
        },
        result={
            "sup_error_excluded": rep.sup_error_excluded,
            "jump_set": [f"{b.numerator}/{b.denominator}" for b in rep.jump_set],
        },
        checks=checks,
    )
    return (
        f"compare: beam series vs closed form at t={t}: "
        f"sup error {rep.sup_error_excluded:.3e} outside delta={cfg.delta}"
    )


def cmd_nonlinear_evolve(cfg: RunConfig) -> str:
    params = BeamParams(mu=cfg.mu, eps=cfg.eps, dt=cfg.dt, modes=cfg.modes, dealias=cfg.dealias)
    if cfg.dt > stable_dt(cfg.modes):
        print(
            f"warning: dt={cfg.dt:g} exceeds the advisable stability step "
            f"{stable_dt(cfg.modes):.3g} for {cfg.modes} modes",
            file=sys.stderr,
        )
    f = parse_ic_piecewise(cfg.ic_f) if cfg.ic_f != "sin" else parse_ic_series("sin", params.truncation)
    g = parse_ic_piecewise(cfg.ic_g) if cfg.ic_g != "sin" else parse_ic_series("sin", params.truncation)
    grid = evolve_nonlinear(params, f, g, cfg.t_end)
    out = Path(cfg.out).with_suffix(".csv")
    write_profile_csv(out, grid, cfg.shift_domain)
    return (
        f"nonlinear-evolve: mu={cfg.mu} eps={cfg.eps} to t={cfg.t_end:.6g} "
        f"({cfg.modes} modes, dt={cfg.dt:g}) -> {out}"
    )


def cmd_zeta(cfg: RunConfig) -> str:
    N = cfg.order
    ledger = zeta.ZetaLedger()
    checks = []
    if N % 2 == 0:
        s = ledger.sigma(N)
        z = zeta.zeta_from_sigma(N, ledger)
        summary = f"sigma({N}) = {s}, zeta({N}) = {z}"
        checks.append(make_check(f"sigma({N}) brute force", zeta.sigma_partial_sum(N), float(s), 1e-9))
        checks.append(make_check(f"zeta({N}) brute force", zeta.zeta_partial_sum(N), float(z), 1e-9))
        result = {"sigma": str(s), "zeta": str(z), "sigma_float": float(s), "zeta_float": float(z)}
    else:
        tv = ledger.tau(N)
        summary = f"tau({N}) = {tv}"
        checks.append(make_check(f"tau({N}) brute force", zeta.tau_partial_sum(N), float(tv), 1e-9))
        result = {"tau": str(tv), "tau_float": float(tv)}
    result["provenance"] = ledger.provenance.get(N, "")
    write_json_report(
        Path(cfg.out).with_suffix(".json"),
        config={"subcommand": "zeta", "order": N},
        result=result,
        checks=checks,
    )
    return summary


def cmd_fractal_dim(cfg: RunConfig) -> str:
    t = parse_time(cfg.time)
    t_val = t.value if isinstance(t, RationalTime) else t
    if cfg.summand == "weierstrass":
        grid = analysis.weierstrass_profile(n=cfg.grid)
        label = "weierstrass calibration"
    else:
        sighat = coeffs_of_step_sigma(cfg.truncation)
        k = sighat.k_array().astype(float)
        if cfg.summand == "cos":
            coeffs = sighat.coeffs * np.cos(k ** 2 * t_val)
            label = f"beam cos-summand at t={t_val:.6g}"
        else:
            uhat = linear_evolve(Monomial(2), sighat, sighat, t)
            coeffs = uhat.coeffs
            label = f"beam full profile at t={t_val:.6g}"
        grid = evaluate_series(FourierSeries(coeffs, real_valued=True), cfg.grid)
    dim = analysis.box_counting_dimension(grid)
    write_json_report(
        Path(cfg.out).with_suffix(".json"),
        config={"subcommand": "fractal-dim", "summand": cfg.summand, "time": cfg.time, "grid": cfg.grid},
        result={"dimension": dim, "label": label},
        checks=[],
    )
    return f"fractal-dim: {label}: box-counting estimate {dim:.4f}"


def cmd_asymptotic_gap(cfg: RunConfig) -> str:
    spec = parse_dispersion(cfg.dispersion)
    t = parse_time(cfg.time)
    try:
        gap = analysis.asymptotic_gap(spec, t, cfg.truncation)
        bound = analysis.mean_value_gap_bound(spec, t, cfg.truncation)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    checks = [make_check("gap below per-mode bound", 0.0, max(0.0, gap - bound), 1e-12)]
    write_json_report(
        Path(cfg.out).with_suffix(".json"),
        config={"subcommand": "asymptotic-gap", "dispersion": cfg.dispersion, "time": cfg.time},
        result={"gap": gap, "per_mode_bound": bound},
        checks=checks,
    )
    return f"asymptotic-gap: {cfg.dispersion} at t={cfg.time}: gap {gap:.4f} <= bound {bound:.4f}"


COMMANDS = {
    "linear-evolve": cmd_linear_evolve,
    "closed-form": cmd_closed_form,
    "revival-coeffs": cmd_revival_coeffs,
    "compare": cmd_compare,
    "nonlinear-evolve": cmd_nonlinear_evolve,
    "zeta": cmd_zeta,
    "fractal-dim": cmd_fractal_dim,
    "asymptotic-gap": cmd_asymptotic_gap,
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="dispersive-revival",
        description="Revival and fractalization experiments for bidirectional dispersive equations",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value file; flags override it")
        p.add_argument("--out", default="out", help="output path stem")
        p.add_argument("--grid", type=int, default=4096, help="profile sample count")
        p.add_argument("--truncation", "-M", type=int, default=DEFAULT_TRUNCATION)
        p.add_argument("--shift-domain", action="store_true", help="report x on [-pi, pi)")

    p = sub.add_parser("linear-evolve", help="series profile at a time")
    common(p)
    p.add_argument("--dispersion", default="monomial:2")
    p.add_argument("--ic", dest="ic_f", default="step")
    p.add_argument("--ic-g", dest="ic_g", default="step")
    p.add_argument("--time", default="0")

    p = sub.add_parser("closed-form", help="exact piecewise solution at a rational time")
    common(p)
    p.add_argument("--equation", default="beam")
    p.add_argument("--dispersion", default="monomial:2")
    p.add_argument("--ic", dest="ic_f", default="step")
    p.add_argument("--ic-g", dest="ic_g", default="step")
    p.add_argument("--time", required=True)

    p = sub.add_parser("revival-coeffs", help="kernel weights and step box values")
    common(p)
    p.add_argument("--dispersion", default="monomial:2")
    p.add_argument("--time", required=True)
    p.add_argument("--trig", choices=["cos", "sin", "exp"], default="exp")

    p = sub.add_parser("compare", help="truncated series vs exact closed form")
    common(p)
    p.add_argument("--time", required=True)
    p.add_argument("--delta", type=float, default=analysis.DEFAULT_EXCLUSION)

    p = sub.add_parser("nonlinear-evolve", help="pseudospectral RK4 for the cubic beam")
    common(p)
    p.add_argument("--ic", dest="ic_f", default="step")
    p.add_argument("--ic-g", dest="ic_g", default="step")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-4)
    p.add_argument("--modes", type=int, default=512)
    p.add_argument("--dealias", action="store_true")
    p.add_argument("--t-end", type=float, required=True)

    p = sub.add_parser("zeta", help="exact odd zeta-type sums with numeric checks")
    common(p)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("fractal-dim", help="box-counting dimension of a profile")
    common(p)
    p.add_argument("--summand", choices=["cos", "full", "weierstrass"], default="cos")
    p.add_argument("--time", default="0.5")

    p = sub.add_parser("asymptotic-gap", help="gap to the integral-polynomial shadow")
    common(p)
    p.add_argument("--dispersion", default="boussinesq")
    p.add_argument("--time", required=True)
    return top


def load_config_file(path: str) -> dict:
    """Flat key=value lines; keys use the long-flag spelling without dashes."""
    out = {}
    try:
        for raw in Path(path).read_text().splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"config: malformed line {raw!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"config: {exc}") from exc
    return out


_TYPED_KEYS = {
    "grid": int,
    "truncation": int,
    "modes": int,
    "order": int,
    "mu": float,
    "eps": float,
    "dt": float,
    "t_end": float,
    "delta": float,
    "dealias": lambda s: s.lower() in ("1", "true", "yes"),
    "shift_domain": lambda s: s.lower() in ("1", "true", "yes"),
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = vars(args).copy()
    sub = values.pop("subcommand")
    config_path = values.pop("config", None)
    if config_path:
        file_values = load_config_file(config_path)
        parser_defaults = build_parser()
        for key, raw in file_values.items():
            if key not in values:
                raise ConfigError(f"config: unknown key {key!r}")
            caster = _TYPED_KEYS.get(key, str)
            # flags override the file: only fill values still at their default
            sub_parser_default = _subcommand_default(sub, key)
            if values[key] == sub_parser_default:
                try:
                    values[key] = caster(raw)
                except ValueError as exc:
                    raise ConfigError(f"config: bad value for {key!r}: {raw!r}") from exc
        del parser_defaults
    cfg = RunConfig(subcommand=sub)
    extra = {}
    for key, val in values.items():
        if key == "equation":
            extra[key] = val
        elif hasattr(cfg, key):
            setattr(cfg, key, val)
        else:
            extra[key] = val
    cfg.extra = extra
    return cfg


def _subcommand_default(sub: str, key: str):
    parser = build_parser()
    ns = parser.parse_args([sub] + _required_stub(sub))
    return getattr(ns, key, None)


def _required_stub(sub: str) -> list:
    stubs = {
        "closed-form": ["--time", "pi*1/3"],
        "revival-coeffs": ["--time", "pi*1/3"],
        "compare": ["--time", "pi*1/3"],
        "nonlinear-evolve": ["--t-end", "0"],
        "zeta": ["--order", "2"],
        "asymptotic-gap": ["--time", "0.5"],
    }
    return stubs.get(sub, [])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        summary = COMMANDS[cfg.subcommand](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NonFiniteStateError as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 3
    print(summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
