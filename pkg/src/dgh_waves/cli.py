"""``dgh`` command-line front end.

    dgh classify|synth|sweep|verify|evolve [--config run.json] [--key value ...]

Configuration comes from an optional JSON object whose keys are the
:class:`RunConfig` fields; command-line flags override it. Every CSV starts
with ``# key: value`` lines echoing the fully resolved configuration.

Exit codes: 0 pass, 1 usage/config error, 2 no bounded wave, 3 synthesis or
verification failure, 4 unsupported class, 5 blow-up or step-size rejection.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import evolution, synthesis, verify
from .classify import classify, stumpon_constant, sweep
from .codes import SMOOTH_KINDS, WaveKind
from .errors import Blowup, BurgersCaseExcluded, CFLViolation, DGHError, NoPole
from .model import ModelParams, TravelingWaveProblem, constants_from_roots

EXIT_OK, EXIT_USAGE, EXIT_NO_WAVE, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_BLOWUP = range(6)
COMMANDS = ("classify", "synth", "sweep", "verify", "evolve")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    alpha: Optional[float] = None
    c0: Optional[float] = None
    gamma: Optional[float] = None
    c: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    m: Optional[float] = None
    M: Optional[float] = None
    cluster_tol: float = 1e-9
    tail_tol: float = 1e-6
    residual_tol: float = 1e-5
    n_samples: int = 512
    n_tests: int = 20
    plateau_lengths: Optional[list] = None
    sweep_axes: str = "mM"
    sweep_x: Optional[list] = None  # [lo, hi, n]
    sweep_y: Optional[list] = None
    n_modes: int = 256
    dt: float = 1e-3
    T: float = 1.0
    snapshot_every: int = 0
    out: Optional[str] = None
    profile: Optional[str] = None
    seed: int = 0

    def problem(self) -> TravelingWaveProblem:
        for name in ("alpha", "c0", "gamma", "c"):
            if getattr(self, name) is None:
                raise UsageError(f"missing required parameter {name!r}")
        has_ab = self.A is not None or self.B is not None
        has_mm = self.m is not None or self.M is not None
        if has_ab == has_mm:
            raise UsageError("give exactly one of (A, B) or (m, M)")
        params = ModelParams(self.alpha, self.c0, self.gamma)
        if has_ab:
            if self.A is None or self.B is None:
                raise UsageError("both A and B are required")
            return TravelingWaveProblem(params, self.c, self.A, self.B)
        if self.m is None or self.M is None:
            raise UsageError("both m and M are required")
        try:
            A, B, _ = constants_from_roots(params, self.c, self.m, self.M)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return TravelingWaveProblem(params, self.c, A, B)

    def header_lines(self):
        out = []
        for f in dataclasses.fields(self):
            out.append(f"# {f.name}: {_fmt_value(getattr(self, f.name))}")
        return out


_FLOAT_FIELDS = {"alpha", "c0", "gamma", "c", "A", "B", "m", "M", "cluster_tol", "tail_tol",
                 "residual_tol", "dt", "T"}
_INT_FIELDS = {"n_samples", "n_tests", "n_modes", "snapshot_every", "seed"}
_LIST_FIELDS = {"plateau_lengths", "sweep_x", "sweep_y"}


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _fmt_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return _fmt(v)


def _coerce(name, value):
    if value is None:
        return None
    try:
        if name in _FLOAT_FIELDS:
            v = float(value)
            if not math.isfinite(v):
                raise ValueError
            return v
        if name in _INT_FIELDS:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError
            return int(value)
        if name in _LIST_FIELDS:
            if isinstance(value, str):
                value = [s for s in value.replace("[", "").replace("]", "").split(",") if s.strip()]
            return [float(x) for x in value]
        return str(value)
    except (TypeError, ValueError):
        raise UsageError(f"bad value for {name}: {value!r}") from None


def load_config(path: Optional[str], overrides: dict) -> RunConfig:
    data = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path!r}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
    names = {f.name for f in dataclasses.fields(RunConfig)}
    merged = {}
    for key, value in list(data.items()) + list(overrides.items()):
        if key not in names:
            raise UsageError(f"unknown config key {key!r}")
        merged[key] = _coerce(key, value)
    return RunConfig(**merged)


# ------------------------------------------------------------------- CSV

def _write_csv(cfg: RunConfig, command: str, extra_header, columns, rows, stream):
    lines = [f"# command: {command}"] + cfg.header_lines()
    lines += [f"# {k}: {v}" for k, v in extra_header]
    lines.append(",".join(columns))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if cfg.out is None:
        stream.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def profile_rows(profile):
    ids = profile.segment_ids()
    kinds = [profile.segments[i].kind for i in ids]
    return zip(profile.z.tolist(), profile.phi.tolist(), ids.tolist(), kinds)


def read_profile_csv(path, problem):
    """Samples and segments from a profile CSV; no evaluator is attached."""
    header = {}
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                header[key.strip()] = val.strip()
            elif line and not line.startswith("z,"):
                rows.append(line.split(","))
    if not rows:
        raise UsageError(f"no samples in {path!r}")
    z = np.array([float(r[0]) for r in rows])
    phi = np.array([float(r[1]) for r in rows])
    ids = [int(r[2]) for r in rows]
    kinds = [r[3] for r in rows]
    segs = []
    start = 0
    for i in range(1, len(rows) + 1):
        if i == len(rows) or ids[i] != ids[start]:
            segs.append(synthesis.Segment(start, i, float(z[start]), float(z[i - 1]), kinds[start]))
            start = i
    period = float(header["periodic"]) if "periodic" in header else None
    return synthesis.WaveProfile(z, phi, segs, problem, classify(problem), period)


# --------------------------------------------------------------- commands

def _say(stream, key, value):
    stream.write(f"{key}: {_fmt_value(value)}\n")


def cmd_classify(cfg: RunConfig, out=sys.stdout) -> int:
    p = cfg.problem()
    wc = classify(p, cfg.cluster_tol)
    out.write(f"{wc.kind.value} {wc.theorem_case}\n")
    _say(out, "kind", wc.kind.value)
    _say(out, "theorem_case", wc.theorem_case)
    _say(out, "interval", list(wc.interval) if wc.interval else None)
    for key in ("m", "M", "z0", "pole"):
        _say(out, key, getattr(wc, key))
    _say(out, "A", p.A)
    _say(out, "B", p.B)
    try:
        _say(out, "A_star", stumpon_constant(p.params, p.c))
    except NoPole:
        _say(out, "A_star", None)
    return EXIT_NO_WAVE if wc.kind is WaveKind.NoBoundedWave else EXIT_OK


def _synthesize(cfg: RunConfig, p: TravelingWaveProblem):
    if cfg.plateau_lengths:
        # the stumpon constant is checked before anything else
        prof = synthesis.synth_stumpon(p, cfg.plateau_lengths, cfg.n_samples, cfg.tail_tol)
        return prof.wave_class, prof
    wc = classify(p, cfg.cluster_tol)
    if wc.kind is WaveKind.NoBoundedWave:
        return wc, None
    return wc, synthesis.synthesize(p, wc, cfg.n_samples, cfg.tail_tol)


def _report(cfg, prof, p, out):
    rep = verify.weak_residual(prof, p, cfg.n_tests, cfg.seed, tol=cfg.residual_tol,
                               strong_tol=cfg.residual_tol)
    out.write(rep.to_text())
    return rep


def cmd_synth(cfg: RunConfig, out=sys.stdout) -> int:
    p = cfg.problem()
    wc, prof = _synthesize(cfg, p)
    if prof is None:
        out.write("NoBoundedWave: nothing to synthesize\n")
        return EXIT_NO_WAVE
    extra = [("kind", wc.kind.value), ("theorem_case", wc.theorem_case)]
    if prof.period is not None:
        extra.append(("periodic", repr(prof.period)))
    _write_csv(cfg, "synth", extra, ("z", "phi", "segment_id", "segment_kind"),
               profile_rows(prof), out)
    rep = _report(cfg, prof, p, out if cfg.out is not None else sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    p = cfg.problem()
    if cfg.profile is not None:
        try:
            prof = read_profile_csv(cfg.profile, p)
        except (OSError, ValueError, IndexError) as exc:
            raise UsageError(f"cannot read profile {cfg.profile!r}: {exc}") from None
    else:
        wc, prof = _synthesize(cfg, p)
        if prof is None:
            out.write("NoBoundedWave: nothing to verify\n")
            return EXIT_NO_WAVE
    rep = _report(cfg, prof, p, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(cfg: RunConfig, out=sys.stdout) -> int:
    for name in ("alpha", "c0", "gamma", "c"):
        if getattr(cfg, name) is None:
            raise UsageError(f"missing required parameter {name!r}")
    if cfg.sweep_x is None or cfg.sweep_y is None:
        raise UsageError("sweep needs sweep_x and sweep_y as lo,hi,n")
    if len(cfg.sweep_x) != 3 or len(cfg.sweep_y) != 3:
        raise UsageError("sweep ranges must be lo,hi,n")
    gx = (cfg.sweep_x[0], cfg.sweep_x[1], cfg.sweep_x[2])
    gy = (cfg.sweep_y[0], cfg.sweep_y[1], cfg.sweep_y[2])
    for g in (gx, gy):
        if not float(g[2]).is_integer():
            raise UsageError("sweep resolution must be an integer")
    params = ModelParams(cfg.alpha, cfg.c0, cfg.gamma)
    try:
        diag = sweep(params, cfg.c, cfg.sweep_axes,
                     ((gx[0], gx[1], int(gx[2])), (gy[0], gy[1], int(gy[2]))), cfg.cluster_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = ((a, b, k.value, case) for a, b, k, case in diag.rows())
    _write_csv(cfg, "sweep", [("axes", "".join(diag.axes))],
               ("axis1", "axis2", "kind", "theorem_case"), rows, out)
    return EXIT_OK


def cmd_evolve(cfg: RunConfig, out=sys.stdout) -> int:
    p = cfg.problem()
    wc = classify(p, cfg.cluster_tol)
    if wc.kind is WaveKind.NoBoundedWave:
        out.write("NoBoundedWave: nothing to evolve\n")
        return EXIT_NO_WAVE
    if wc.kind not in SMOOTH_KINDS and wc.kind is not WaveKind.Constant:
        out.write(f"{wc.kind.value}: evolution restricted to smooth classes\n")
        return EXIT_UNSUPPORTED
    prof = synthesis.synthesize(p, wc, cfg.n_samples, cfg.tail_tol)
    if prof.period is None and prof.decay is None:
        grid = evolution.SpectralGrid(cfg.n_modes, 2.0 * math.pi)
    else:
        grid = evolution.grid_for(prof, cfg.n_modes)
    u0 = evolution.initial_condition(prof, grid)
    x = grid.nodes
    rows = []
    state = None
    try:
        for state in evolution.evolve_snapshots(u0, p.params, cfg.T, cfg.dt, grid,
                                                cfg.snapshot_every):
            rows.extend((state.t, xi, ui) for xi, ui in zip(x.tolist(), state.u.tolist()))
    except CFLViolation as exc:
        out.write(f"rejected: {exc}\n")
        return EXIT_BLOWUP
    except Blowup as exc:
        out.write(f"blowup at t = {exc.t!r}\n")
        return EXIT_BLOWUP
    _write_csv(cfg, "evolve", [("domain_length", repr(grid.domain_length))],
               ("t", "x", "u"), rows, out)
    report = out if cfg.out is not None else sys.stderr
    err, shift = evolution.shape_fit(state, prof)
    speed = evolution.recovered_speed(state, prof, p.c)
    _say(report, "shape_error", err)
    _say(report, "shift", shift)
    _say(report, "recovered_speed", speed)
    _say(report, "pass", err <= cfg.residual_tol)
    return EXIT_OK if err <= cfg.residual_tol else EXIT_FAIL


_DISPATCH = dict(classify=cmd_classify, synth=cmd_synth, sweep=cmd_sweep,
                 verify=cmd_verify, evolve=cmd_evolve)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dgh", description="Travelling waves of the DGH equation.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", default=None, help="JSON file with RunConfig keys")
    for f in dataclasses.fields(RunConfig):
        flags = [f"--{f.name}"]
        if "_" in f.name:
            flags.append(f"--{f.name.replace('_', '-')}")
        parser.add_argument(*flags, dest=f.name, default=None)
    return parser


def _attach_negative_values(argv):
    """``--key -1,2`` -> ``--key=-1,2`` so argparse does not read a flag."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if (a.startswith("--") and "=" not in a and i + 1 < len(argv)
                and argv[i + 1][:1] == "-" and argv[i + 1][1:2] in set("0123456789.")):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None, stdout=None) -> int:
    out = sys.stdout if stdout is None else stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_attach_negative_values(argv))
        overrides = {k: v for k, v in vars(args).items()
                     if k not in ("command", "config") and v is not None}
        cfg = load_config(args.config, overrides)
        return _DISPATCH[args.command](cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"dgh: error: {exc}\n")
        return EXIT_USAGE
    except BurgersCaseExcluded as exc:
        sys.stderr.write(f"dgh: error: {exc}\n")
        return EXIT_USAGE
    except DGHError as exc:
        sys.stderr.write(f"dgh: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    except ValueError as exc:
        sys.stderr.write(f"dgh: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
