"""Command-line surface: tables of states and observables, sweep data for
plotting, and the validation suite.

Output is deterministic: identical configuration produces byte-identical
tables.  Numbers are printed with 17 significant digits so downstream
diffs are exact; every table starts with a self-describing header naming
columns and units.  Exit codes: 0 success, 1 validation failure, 2 usage
error.
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .modes import NotUnderdampedError, SqueezeParams, make_params
from .observables import hamiltonian_expectation, uncertainty_product
from .oracle import ToleranceConfig, make_grid, validate
from .states import (
    StateSpec,
    alpha_from_point,
    coherent_trajectory,
    eval_coherent_state,
    eval_number_state,
)

__all__ = ["RunConfig", "UsageError", "main"]


class UsageError(ValueError):
    """Invalid flag, config key, or flag combination; exits with code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved run configuration.

    Values are layered: documented defaults, then the optional config
    file, then command-line flags.  ``qc``/``pc`` left unset select the
    number-state kind where a choice is needed; ``t1`` left unset means
    one full mode period 2 pi / omega past ``t0``.  ``given`` records
    which keys were set explicitly by the user.
    """

    gamma: float = 1.2
    omega0: float = 1.0
    m0: float = 1.0
    hbar: float = 1.0
    r: float = 0.0
    phi: float = 0.0
    n: int = 0
    qc: float | None = None
    pc: float | None = None
    t0: float = 0.0
    t1: float | None = None
    nt: int = 64
    grid_points: int = 2049
    format: str = "csv"
    out: str | None = None
    tol_overrides: str | None = None
    flip_b_sign: bool = False
    given: frozenset = frozenset()


_CONVERTERS = {
    "gamma": float,
    "omega0": float,
    "m0": float,
    "hbar": float,
    "r": float,
    "phi": float,
    "n": int,
    "qc": float,
    "pc": float,
    "t0": float,
    "t1": float,
    "nt": int,
    "grid_points": int,
    "format": str,
    "out": str,
}


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _read_key_values(path: str) -> dict:
    """Parse a ``key = value`` text file; '#' starts a comment."""
    table = {}
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep or not value.strip():
                    raise UsageError(f"{path}:{lineno}: expected 'key = value'")
                table[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return table


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        for key, text in _read_key_values(args.config).items():
            conv = _CONVERTERS.get(key)
            if conv is None:
                raise UsageError(f"unknown config key {key!r} in {args.config}")
            try:
                values[key] = conv(text)
            except ValueError as exc:
                raise UsageError(f"config key {key!r}: {exc}") from exc
    for key in _CONVERTERS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            values[key] = flag_value
    if values.get("format", "csv") not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {values['format']!r}")
    if values.get("n", 0) < 0:
        raise UsageError(f"n must be nonnegative, got {values['n']}")
    if values.get("nt", 2) < 2:
        raise UsageError(f"nt must be at least 2, got {values['nt']}")
    return RunConfig(
        **values,
        tol_overrides=args.tol_overrides,
        flip_b_sign=getattr(args, "flip_b_sign", False),
        given=frozenset(values),
    )


def _read_tolerances(path: str | None) -> ToleranceConfig:
    if path is None:
        return ToleranceConfig()
    known = ToleranceConfig.field_names()
    overrides = {}
    for key, text in _read_key_values(path).items():
        if key not in known:
            raise UsageError(f"unknown tolerance {key!r} in {path}")
        try:
            overrides[key] = float(text)
        except ValueError as exc:
            raise UsageError(f"tolerance {key!r}: {exc}") from exc
    return ToleranceConfig().override(**overrides)


def _emit(lines: list, out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _table_lines(columns: tuple, units: tuple, rows, fmt: str) -> list:
    """Render rows as CSV or JSON lines, header first."""
    import json

    if fmt == "csv":
        lines = [",".join(f"{c} [{u}]" for c, u in zip(columns, units))]
        lines.extend(",".join(_g17(v) for v in row) for row in rows)
        return lines
    meta = (
        f'{{"columns": {json.dumps(list(columns))}, '
        f'"units": {json.dumps(list(units))}}}'
    )
    lines = [meta]
    for row in rows:
        body = ", ".join(
            f"{json.dumps(c)}: {_g17(v)}" for c, v in zip(columns, row)
        )
        lines.append("{" + body + "}")
    return lines


def _params_squeeze(cfg: RunConfig):
    params = make_params(cfg.m0, cfg.gamma, cfg.omega0, cfg.hbar)
    return params, SqueezeParams(r=cfg.r, phi=cfg.phi)


def _time_samples(cfg: RunConfig, omega: float) -> np.ndarray:
    t1 = cfg.t1 if cfg.t1 is not None else cfg.t0 + 2.0 * math.pi / omega
    if not t1 > cfg.t0:
        raise UsageError(f"need t1 > t0, got t0={cfg.t0}, t1={t1}")
    return np.linspace(cfg.t0, t1, cfg.nt)


def cmd_uncertainty(cfg: RunConfig) -> int:
    """Rows (t, dq, dp, product, bound, ratio) over the time window."""
    params, squeeze = _params_squeeze(cfg)
    rows = []
    for t in _time_samples(cfg, params.omega):
        rec = uncertainty_product(params, cfg.n, squeeze, float(t))
        rows.append(
            (rec.t, rec.dq, rec.dp, rec.product, rec.bound, rec.product / rec.bound)
        )
    lines = _table_lines(
        ("t", "dq", "dp", "product", "bound", "ratio"),
        ("time", "length", "momentum", "action", "action", "1"),
        rows,
        cfg.format,
    )
    _emit(lines, cfg.out)
    return 0


def cmd_wavefunction(cfg: RunConfig) -> int:
    """Rows (q, Re psi, Im psi, |psi|^2) at t = t0 on the oracle grid.

    The state is coherent when qc or pc is supplied, otherwise the n-th
    number state.
    """
    params, squeeze = _params_squeeze(cfg)
    if cfg.qc is not None or cfg.pc is not None:
        spec = StateSpec.coherent(cfg.qc or 0.0, cfg.pc or 0.0, squeeze)
    else:
        spec = StateSpec.number(cfg.n, squeeze)
    grid = make_grid(params, spec, cfg.t0, n_points=cfg.grid_points)
    q = grid.points()
    if spec.kind == "coherent":
        psi = eval_coherent_state(params, spec, cfg.t0, q)
    else:
        psi = eval_number_state(params, spec, cfg.t0, q)
    rows = zip(q, psi.real, psi.imag, np.abs(psi) ** 2)
    lines = _table_lines(
        ("q", "re_psi", "im_psi", "density"),
        ("length", "1/sqrt(length)", "1/sqrt(length)", "1/length"),
        rows,
        cfg.format,
    )
    _emit(lines, cfg.out)
    return 0


def cmd_trajectory(cfg: RunConfig) -> int:
    """Rows (t, q_c, p_c, energy) along the damped classical trajectory.

    The coherent state is anchored so its expectations pass through
    (qc, pc) at t0; the energy column adds the Gaussian fluctuation
    energy to the classical part.
    """
    if "n" in cfg.given:
        raise UsageError("trajectory is defined for coherent states; drop --n")
    params, squeeze = _params_squeeze(cfg)
    alpha = alpha_from_point(params, squeeze, cfg.qc or 0.0, cfg.pc or 0.0, cfg.t0)
    rows = []
    for t in _time_samples(cfg, params.omega):
        t = float(t)
        q_c, p_c = coherent_trajectory(params, squeeze, alpha, t)
        energy = (
            math.exp(-params.gamma * t) * p_c**2 / (2.0 * params.m0)
            + 0.5 * params.m0 * params.omega0**2 * math.exp(params.gamma * t) * q_c**2
            + hamiltonian_expectation(params, 0, squeeze, t)
        )
        rows.append((t, q_c, p_c, energy))
    lines = _table_lines(
        ("t", "qc", "pc", "energy"),
        ("time", "length", "momentum", "energy"),
        rows,
        cfg.format,
    )
    _emit(lines, cfg.out)
    return 0


def cmd_hamiltonian(cfg: RunConfig) -> int:
    """Rows (t, energy) over the time window.

    Number states use the closed form directly; with qc or pc supplied
    the classical energy of the anchored trajectory is added to the
    ground-state fluctuation energy.
    """
    params, squeeze = _params_squeeze(cfg)
    coherent = cfg.qc is not None or cfg.pc is not None
    if coherent:
        alpha = alpha_from_point(
            params, squeeze, cfg.qc or 0.0, cfg.pc or 0.0, cfg.t0
        )
    rows = []
    for t in _time_samples(cfg, params.omega):
        t = float(t)
        if coherent:
            q_c, p_c = coherent_trajectory(params, squeeze, alpha, t)
            energy = (
                math.exp(-params.gamma * t) * p_c**2 / (2.0 * params.m0)
                + 0.5
                * params.m0
                * params.omega0**2
                * math.exp(params.gamma * t)
                * q_c**2
                + hamiltonian_expectation(params, 0, squeeze, t)
            )
        else:
            energy = hamiltonian_expectation(params, cfg.n, squeeze, t)
        rows.append((t, energy))
    lines = _table_lines(
        ("t", "energy"), ("time", "energy"), rows, cfg.format
    )
    _emit(lines, cfg.out)
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    """Run the validation suite; exit 0 iff every non-skipped check passes."""
    params, _ = _params_squeeze(cfg)
    tolerances = _read_tolerances(cfg.tol_overrides)
    report = validate(params, tolerances=tolerances, flip_b_sign=cfg.flip_b_sign)
    text = report.to_json() if cfg.format == "json" else report.to_table()
    _emit([text], cfg.out)
    return 0 if report.all_passed else 1


_COMMANDS = {
    "uncertainty": cmd_uncertainty,
    "wavefunction": cmd_wavefunction,
    "trajectory": cmd_trajectory,
    "hamiltonian": cmd_hamiltonian,
    "validate": cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=float, help="damping rate (default 1.2)")
    common.add_argument("--omega0", type=float, help="natural frequency (default 1)")
    common.add_argument("--m0", type=float, help="mass scale (default 1)")
    common.add_argument("--hbar", type=float, help="action scale (default 1)")
    common.add_argument("--r", type=float, help="squeeze magnitude (default 0)")
    common.add_argument("--phi", type=float, help="squeeze phase (default 0)")
    common.add_argument("--n", type=int, help="number-state index (default 0)")
    common.add_argument("--qc", type=float, help="coherent position at t0")
    common.add_argument("--pc", type=float, help="coherent momentum at t0")
    common.add_argument("--t0", type=float, help="window start (default 0)")
    common.add_argument(
        "--t1", type=float, help="window end (default t0 + 2 pi/omega)"
    )
    common.add_argument("--nt", type=int, help="time samples (default 64)")
    common.add_argument(
        "--grid-points",
        dest="grid_points",
        type=int,
        help="position grid points, rounded up to 2^k + 1 (default 2049)",
    )
    common.add_argument(
        "--format", choices=("csv", "json"), help="output format (default csv)"
    )
    common.add_argument("--out", metavar="PATH", help="write output to PATH")
    common.add_argument(
        "--config", metavar="PATH", help="key = value file layered under flags"
    )
    common.add_argument(
        "--tol-overrides",
        dest="tol_overrides",
        metavar="PATH",
        help="key = value file of validation tolerance overrides",
    )
    parser = argparse.ArgumentParser(
        prog="ckstates",
        description=(
            "Exact Gaussian states of the damped (Caldirola-Kanai) harmonic "
            "oscillator: tables, sweeps, and an independent validation suite."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "uncertainty", parents=[common], help="uncertainty product over time"
    )
    sub.add_parser(
        "wavefunction", parents=[common], help="wave function samples at t0"
    )
    sub.add_parser(
        "trajectory", parents=[common], help="coherent phase-space trajectory"
    )
    sub.add_parser(
        "hamiltonian", parents=[common], help="energy expectation over time"
    )
    val = sub.add_parser("validate", parents=[common], help="run the validation suite")
    val.add_argument("--flip-b-sign", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _resolve_config(args)
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotUnderdampedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # Downstream reader (e.g. head) closed the pipe; park stdout on
        # devnull so the interpreter's final flush stays quiet.
        try:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        except (OSError, ValueError):
            pass  # no real descriptor to repair (captured stdout)
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
