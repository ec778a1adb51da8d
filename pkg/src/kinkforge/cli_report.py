"""Command-line front end: wells, connect, verify, spectrum, coercivity, certify.

Exit codes: 0 success, 1 certification failed, 2 configuration error,
3 no connection (degenerate segment or blocked by a well), 4 numerical
failure (non-convergence, left segment, x budget).
"""

import argparse
from dataclasses import dataclass, field
import json
import os
from pathlib import Path
import sys

import numpy as np

from . import __version__, coercivity, linearization, orbit_solver, spectral
from .errors import (
    BlockedByWell,
    Budget,
    DegenerateSegment,
    IllConditioned,
    InvalidGrid,
    LeftSegment,
    NonConvergence,
    Breakdown,
    BoundaryMinimum,
)
from .holomorphic_potential import antiderivative, from_dict, to_dict, zeros
from .presets import preset
from .report_io import dumps, orbit_csv

DEFAULT_SEED = 0x5EED

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NO_CONNECTION, EXIT_NUMERICAL = 0, 1, 2, 3, 4


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    poly: object
    source: str
    pair: tuple = (0, 1)
    X: float = 12.0
    N: int = 4096
    tolerances: dict = field(default_factory=dict)
    out: str = None
    fmt: str = "json"
    seed: int = DEFAULT_SEED

    def validate(self):
        if not self.X > 0:
            raise ConfigError(f"--X must be positive, got {self.X}")
        n = self.N
        if n < 256 or n > 65536 or n & (n - 1):
            raise ConfigError(f"--N must be a power of two in [256, 65536], got {n}")
        i, j = self.pair
        if i == j:
            raise ConfigError("--pair indices must be distinct")

    def echo(self):
        return {
            "poly": to_dict(self.poly),
            "source": self.source,
            "pair": list(self.pair),
            "X": self.X,
            "N": self.N,
            "tolerances": self.tolerances,
            "seed": self.seed,
        }


def _seed():
    raw = os.environ.get("KINKFORGE_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise ConfigError(f"KINKFORGE_SEED must be an integer, got {raw!r}") from exc


def _load_poly(args):
    given = [a for a in (args.preset, args.poly, args.poly_file) if a is not None]
    if len(given) != 1:
        raise ConfigError("give exactly one of --preset, --poly, --poly-file")
    try:
        if args.preset is not None:
            return preset(args.preset), f"preset:{args.preset}"
        if args.poly is not None:
            return from_dict(json.loads(args.poly)), "inline"
        return from_dict(json.loads(Path(args.poly_file).read_text())), str(args.poly_file)
    except (ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc


def config_from_args(args):
    poly, source = _load_poly(args)
    tol = {}
    for name in ("eps_seed", "tol_stop", "rtol", "atol"):
        v = getattr(args, name, None)
        if v is not None:
            tol[name] = v
    cfg = RunConfig(
        poly=poly,
        source=source,
        pair=tuple(args.pair) if args.pair else (0, 1),
        X=args.X,
        N=args.N,
        tolerances=tol,
        out=args.out,
        fmt=args.format,
        seed=_seed(),
    )
    cfg.validate()
    return cfg


def _wells_payload(poly):
    ws, degenerate = zeros(poly)
    return {
        "wells": [
            {
                "index": i,
                "location": w.location,
                "fprime": w.fprime,
                "decay_rate": w.decay_rate,
                "hessian_scale": w.hessian_scale,
            }
            for i, w in enumerate(ws)
        ],
        "degenerate": [{"location": z.location, "multiplicity": z.multiplicity} for z in degenerate],
    }


def _fmt(z):
    # drop rounding noise so diagnostics read "1" rather than "1-1.2e-53j"
    floor = 1e-12 * max(1.0, abs(z))
    re = z.real if abs(z.real) > floor else 0.0
    im = z.imag if abs(z.imag) > floor else 0.0
    return f"{re:.6g}" if im == 0.0 else f"{complex(re, im):.6g}"


def _select_pair(cfg):
    ws, degenerate = zeros(cfg.poly)
    if len(ws) < 2:
        where = ", ".join(f"{_fmt(z.location)} (multiplicity {z.multiplicity})" for z in degenerate)
        raise ConfigError(
            f"f has {len(ws)} nondegenerate well(s); at least two simple zeros are required"
            + (f"; degenerate zeros at {where}" if where else "")
        )
    i, j = cfg.pair
    if not (0 <= i < len(ws) and 0 <= j < len(ws)):
        raise ConfigError(f"--pair {i} {j} out of range for {len(ws)} wells")
    return ws[i], ws[j]


def _orbit(cfg):
    am, ap = _select_pair(cfg)
    return orbit_solver.connect(cfg.poly, am, ap, X=cfg.X, N=cfg.N, **cfg.tolerances)


def _orbit_meta(cfg, prof, diag=None):
    g = antiderivative(cfg.poly)
    meta = {
        "wells": {"a_minus": prof.a_minus, "a_plus": prof.a_plus},
        "m": prof.m,
        "X": prof.X,
        "N": prof.N,
        "energy": prof.energy,
        "closed_form_energy": orbit_solver.closed_form_energy(g, prof.a_minus, prof.a_plus),
    }
    if diag is not None:
        meta["diagnostics"] = diag.as_dict()
    return meta


def _emit(cfg, payload, stdout):
    text = dumps(payload) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)


def cmd_wells(cfg, stdout):
    _emit(cfg, _wells_payload(cfg.poly), stdout)
    return EXIT_OK


def cmd_connect(cfg, stdout):
    prof = _orbit(cfg)
    meta = _orbit_meta(cfg, prof, orbit_solver.verify_orbit(cfg.poly, prof))
    if cfg.out:
        out = Path(cfg.out)
        if cfg.fmt == "csv":
            out.write_text(orbit_csv(prof))
            out.with_suffix(".json").write_text(dumps(meta) + "\n")
        else:
            out.write_text(dumps(meta) + "\n")
            out.with_suffix(".csv").write_text(orbit_csv(prof))
    elif cfg.fmt == "csv":
        stdout.write(orbit_csv(prof))
    else:
        stdout.write(dumps(meta) + "\n")
    return EXIT_OK


def cmd_verify(cfg, stdout):
    prof = _orbit(cfg)
    diag = orbit_solver.verify_orbit(cfg.poly, prof)
    payload = diag.as_dict()
    payload["energy"] = prof.energy
    payload["closed_form_energy"] = _orbit_meta(cfg, prof)["closed_form_energy"]
    _emit(cfg, payload, stdout)
    return EXIT_OK


def cmd_spectrum(cfg, stdout):
    prof = _orbit(cfg)
    _emit(cfg, spectral.spectrum(cfg.poly, prof).as_dict(), stdout)
    return EXIT_OK


def _coercivity(cfg, prof, sp):
    rep = coercivity.constants(cfg.poly, prof, sp)
    coercivity.check_form2(cfg.poly, prof, rep, seed=cfg.seed)
    coercivity.check_form1(cfg.poly, prof, rep, seed=cfg.seed)
    return rep


def cmd_coercivity(cfg, stdout):
    prof = _orbit(cfg)
    sp = spectral.spectrum(cfg.poly, prof)
    if not sp.verdict:
        stdout.write(sp.narrative + "\n")
        return EXIT_FAIL
    _emit(cfg, _coercivity(cfg, prof, sp).as_dict(), stdout)
    return EXIT_OK


def certify(cfg):
    """Full pipeline; returns the aggregated report dictionary."""
    prof = _orbit(cfg)
    diag = orbit_solver.verify_orbit(cfg.poly, prof)
    meta = _orbit_meta(cfg, prof, diag)
    lin = linearization.report(cfg.poly, prof, seed=cfg.seed)
    sp = spectral.spectrum(cfg.poly, prof)
    checks = {
        "energy_identity": abs(prof.energy / meta["closed_form_energy"] - 1.0) <= 1e-7,
        "equipartition": diag.equipartition <= 1e-9,
        "segment": diag.segment_deviation <= 1e-6 and diag.segment_monotone,
        "factorization": lin["factorization_gap"] <= linearization.FACTORIZATION_TOL,
        "kernel_dim": lin["kernel_dim"] == 1,
        "wronskian": lin["wronskian_dev"] <= 1e-6,
        "residuals": bool(np.all(sp.residuals <= 1e-8)),
        "verdict": sp.verdict,
    }
    report = {
        "tool": "kinkforge",
        "version": __version__,
        "config": cfg.echo(),
        "wells": _wells_payload(cfg.poly),
        "orbit": meta,
        "linearization": lin,
        "spectral": sp.as_dict(),
        "verdict_narrative": sp.narrative,
    }
    if sp.verdict:
        co = _coercivity(cfg, prof, sp)
        report["coercivity"] = co.as_dict()
        checks["form2"] = co.form2_pass
        checks["form1"] = co.form1_pass
    report["checks"] = checks
    report["pass"] = all(checks.values())
    return report


def cmd_certify(cfg, stdout):
    report = certify(cfg)
    _emit(cfg, report, stdout)
    return EXIT_OK if report["pass"] else EXIT_FAIL


COMMANDS = {
    "wells": cmd_wells,
    "connect": cmd_connect,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "coercivity": cmd_coercivity,
    "certify": cmd_certify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kinkforge",
        description="Heteroclinic orbits for W = |f|^2 and their nondegeneracy certificates.",
    )
    parser.add_argument("--version", action="version", version=f"kinkforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_argument_group("polynomial")
        src.add_argument("--preset", help="phi4, iphi4, triple or product:a1,a2,...")
        src.add_argument("--poly", help='inline JSON {"coeffs": [[re, im], ...]}, ascending degree')
        src.add_argument("--poly-file", help="file holding the polynomial JSON")
        p.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"), help="well indices (sorted by Re, Im)")
        p.add_argument("--X", type=float, default=12.0, help="half-width of the grid")
        p.add_argument("--N", type=int, default=4096, help="number of grid intervals")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--eps-seed", dest="eps_seed", type=float)
        p.add_argument("--tol-stop", dest="tol_stop", type=float)
        p.add_argument("--rtol", type=float)
        p.add_argument("--atol", type=float)
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Entry point returning the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg, stdout)
    except ConfigError as exc:
        stderr.write(f"kinkforge: configuration error: {exc}\n")
        return EXIT_CONFIG
    except (DegenerateSegment, BlockedByWell) as exc:
        stderr.write(f"kinkforge: {exc}\n")
        return EXIT_NO_CONNECTION
    except (NonConvergence, LeftSegment, Budget, Breakdown, IllConditioned, BoundaryMinimum, InvalidGrid) as exc:
        stderr.write(f"kinkforge: numerical failure: {exc}\n")
        return EXIT_NUMERICAL


def main():
    sys.exit(run())
