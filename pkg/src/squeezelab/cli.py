"""squeezelab command-line front end.

    squeezelab state  --alpha-re 1 --r 0.5           amplitudes of D(alpha)S(z)|0>
    squeezelab evolve --r 0.5 --phi 1 --steps 64     quadrature moments vs Kennard
    squeezelab verify [--suite NAME]...              run the invariant suites
    squeezelab grid   --alpha-re 1 --r 0.5           position-space wavefunctions

Exit codes: 0 success, 1 verification failure, 2 usage or envelope error.
Floats are written with 17 significant digits so that CSV output round-trips
exactly and reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import dynamics as dyn
from .errors import SqueezeLabError
from .fock import DEFAULT_TOLERANCES, MAX_DIM, ToleranceConfig
from .grid import Grid, align_phase, fock_to_position, psi_ss_closed_form
from .states import CoherentParams, SqueezeParams, check_envelope, displaced_squeezed, tail_mass
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TOL_KEYS = {
    "exp": "exp_tol",
    "exp_tol": "exp_tol",
    "tail": "tail_tol",
    "tail_tol": "tail_tol",
    "compare": "compare_tol",
    "compare_tol": "compare_tol",
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    alpha_re: float = 0.0
    alpha_im: float = 0.0
    r: float = 0.0
    phi: float = 0.0
    dim: int = 128
    t_max: float = 2.0 * math.pi
    steps: int = 128
    x_min: float = -12.0
    x_max: float = 12.0
    points: int = 2048
    format: str = "csv"
    out: str | None = None
    suites: tuple[str, ...] = ()
    tol: ToleranceConfig = field(default_factory=ToleranceConfig)

    @property
    def coherent(self) -> CoherentParams:
        return CoherentParams(complex(self.alpha_re, self.alpha_im))

    @property
    def squeeze(self) -> SqueezeParams:
        return SqueezeParams(self.r, self.phi)

    @property
    def grid(self) -> Grid:
        return Grid(self.x_min, self.x_max, self.points)


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render(columns, rows, header: dict, footer: dict | None = None, kind: str = "csv") -> str:
    footer = footer or {}
    if kind == "json":
        meta = {**header, **footer}
        doc = {"metadata": meta, "rows": [dict(zip(columns, row)) for row in rows]}
        return json.dumps(doc, indent=1, default=_json_default) + "\n"
    buf = io.StringIO()
    for key, value in header.items():
        buf.write(f"# {key}: {fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    for key, value in footer.items():
        buf.write(f"# {key}: {fmt(value)}\n")
    return buf.getvalue()


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _params_header(cfg: RunConfig) -> dict:
    return {
        "alpha_re": cfg.alpha_re,
        "alpha_im": cfg.alpha_im,
        "r": cfg.r,
        "phi": cfg.phi,
        "dim": cfg.dim,
    }


def cmd_state(cfg: RunConfig) -> tuple[str, int]:
    psi = displaced_squeezed(cfg.coherent, cfg.squeeze, cfg.dim, cfg.tol)
    amps = psi.amplitudes
    nonzero = np.flatnonzero(amps)
    last = int(nonzero[-1]) if nonzero.size else 0
    rows = [(n, amps[n].real, amps[n].imag, abs(amps[n]) ** 2) for n in range(last + 1)]
    header = {
        "state": "D(alpha)S(z)|0>",
        **_params_header(cfg),
        "norm": psi.norm(),
        "tail_mass": tail_mass(psi),
    }
    return render(["n", "re", "im", "prob"], rows, header, kind=cfg.format), EXIT_OK


def cmd_evolve(cfg: RunConfig) -> tuple[str, int]:
    p, z = cfg.coherent, cfg.squeeze
    times = np.linspace(0.0, cfg.t_max, cfg.steps)
    traj = dyn.trajectory(p, z, times, cfg.dim, cfg.tol)
    rows = []
    dev_x = dev_p = dev_prod = 0.0
    for s in traj.samples:
        kx, kp, kprod = (float(f(z, s.t)) for f in (dyn.kennard_var_x, dyn.kennard_var_p, dyn.kennard_product))
        rows.append((s.t, s.mean_x, s.mean_p, s.var_x, s.var_p, s.cov_xp, s.product4, kx, kp, kprod))
        dev_x = max(dev_x, abs(2 * s.var_x - kx))
        dev_p = max(dev_p, abs(2 * s.var_p - kp))
        dev_prod = max(dev_prod, abs(s.product4 - kprod))
    columns = [
        "t", "mean_x", "mean_p", "var_x", "var_p", "cov_xp",
        "product4", "kennard_vx", "kennard_vp", "kennard_prod",
    ]
    header = {**_params_header(cfg), "t_max": cfg.t_max, "steps": cfg.steps,
              "normalization": "kennard columns are vacuum-normalized (2*var)"}
    footer = {"max_dev_var_x": dev_x, "max_dev_var_p": dev_p, "max_dev_product": dev_prod}
    return render(columns, rows, header, footer, kind=cfg.format), EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    checks = run_suites(cfg.suites, cfg.tol)
    rows = [(c.suite, c.name, c.residual, c.tolerance, c.passed) for c in checks]
    n_fail = sum(not c.passed for c in checks)
    header = {"suites": ",".join(cfg.suites or SUITES), "compare_tol": cfg.tol.compare_tol}
    footer = {"checks": len(checks), "failed": n_fail, "verdict": "PASS" if n_fail == 0 else "FAIL"}
    text = render(["suite", "invariant", "residual", "tolerance", "passed"], rows, header, footer, kind=cfg.format)
    return text, EXIT_OK if n_fail == 0 else EXIT_FAIL


def cmd_grid(cfg: RunConfig) -> tuple[str, int]:
    p, z, grid = cfg.coherent, cfg.squeeze, cfg.grid
    fock = fock_to_position(displaced_squeezed(p, z, cfg.dim, cfg.tol), grid)
    closed = psi_ss_closed_form(p.x0, p.p0, z, grid)
    theta = align_phase(fock, closed)
    aligned = np.exp(1j * theta) * closed.values
    dev = np.abs(fock.values - aligned)
    rows = [
        (x, f.real, f.imag, abs(f) ** 2, c.real, c.imag, abs(c) ** 2, d)
        for x, f, c, d in zip(grid.x, fock.values, closed.values, dev)
    ]
    columns = ["x", "fock_re", "fock_im", "fock_abs2", "closed_re", "closed_im", "closed_abs2", "deviation"]
    header = {**_params_header(cfg), "x_min": grid.x_min, "x_max": grid.x_max, "points": grid.n_points,
              "phase_alignment": theta}
    footer = {"max_deviation": float(dev.max())}
    return render(columns, rows, header, footer, kind=cfg.format), EXIT_OK


COMMANDS = {"state": cmd_state, "evolve": cmd_evolve, "verify": cmd_verify, "grid": cmd_grid}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="squeezelab", description="Coherent and squeezed oscillator states in a truncated Fock basis.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--alpha-re", type=float, default=0.0)
    ap.add_argument("--alpha-im", type=float, default=0.0)
    ap.add_argument("--r", type=float, default=0.0)
    ap.add_argument("--phi", type=float, default=0.0)
    ap.add_argument("--dim", type=int, default=128)
    ap.add_argument("--t-max", type=float, default=2.0 * math.pi)
    ap.add_argument("--steps", type=int, default=128)
    ap.add_argument("--x-min", type=float, default=-12.0)
    ap.add_argument("--x-max", type=float, default=12.0)
    ap.add_argument("--points", type=int, default=2048)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--out", default=None, help="output path (default: stdout)")
    ap.add_argument("--suite", action="append", default=[], choices=sorted(SUITES),
                    help="verification suite to run; repeatable (default: all)")
    ap.add_argument("--tol", action="append", default=[], metavar="KEY=VAL",
                    help="tolerance override, KEY in {exp, tail, compare}")
    return ap


def parse_tolerances(items) -> ToleranceConfig:
    overrides = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or key.strip() not in TOL_KEYS:
            raise UsageError(f"bad --tol {item!r}; expected KEY=VAL with KEY in exp, tail, compare")
        try:
            overrides[TOL_KEYS[key.strip()]] = float(val)
        except ValueError:
            raise UsageError(f"bad --tol value {val!r}") from None
    return replace(DEFAULT_TOLERANCES, **overrides)


def make_config(args: argparse.Namespace) -> RunConfig:
    """Build and validate a RunConfig; every envelope check happens here."""
    cfg = RunConfig(
        command=args.command,
        alpha_re=args.alpha_re,
        alpha_im=args.alpha_im,
        r=args.r,
        phi=args.phi,
        dim=args.dim,
        t_max=args.t_max,
        steps=args.steps,
        x_min=args.x_min,
        x_max=args.x_max,
        points=args.points,
        format=args.format,
        out=args.out,
        suites=tuple(dict.fromkeys(args.suite)),
        tol=parse_tolerances(args.tol),
    )
    if not 2 <= cfg.dim <= MAX_DIM:
        raise UsageError(f"--dim must lie in [2, {MAX_DIM}], got {cfg.dim}")
    if cfg.command == "evolve":
        if cfg.steps < 2:
            raise UsageError(f"--steps must be >= 2, got {cfg.steps}")
        if not (math.isfinite(cfg.t_max) and cfg.t_max > 0):
            raise UsageError(f"--t-max must be positive, got {cfg.t_max}")
    if cfg.command == "grid":
        cfg.grid  # raises on an empty or undersampled range
    if cfg.command != "verify":
        check_envelope(cfg.coherent, cfg.squeeze, cfg.dim)
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        text, code = COMMANDS[cfg.command](cfg)
    except (UsageError, SqueezeLabError) as exc:
        print(f"squeezelab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, cfg.out)
    if code == EXIT_FAIL:
        print("squeezelab: verification FAILED", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
