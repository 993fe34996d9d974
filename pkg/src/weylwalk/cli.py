"""Command-line front end: dispersion, orbit and evolution exports plus verification.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace

import numpy as np

from . import geometry, lattice, symmetry, walk
from .config import COMMANDS, GENERATORS, ORBIT_PRESETS, RunConfig
from .geometry import Region

DISPERSION_HEADER = ["kx", "ky", "kz", "lambda", "nx", "ny", "nz", "omega_plus", "region"]
ORBIT_HEADER = ["sample", "ax", "ay", "az", "angle", "kx", "ky", "kz", "omega"]
EVOLVE_HEADER = ["step", "mean_x", "mean_y", "mean_z", "norm_error"]


def fmt(x) -> str:
    return format(float(x), ".17g")


def _csv_text(header, rows, trailer: str | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if trailer:
        buf.write(trailer + "\n")
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def dispersion_rows(cfg: RunConfig):
    if cfg.grid < 2:
        raise ValueError("dispersion grid needs at least 2 points per axis")
    axis = np.linspace(-np.pi, np.pi, cfg.grid)
    k = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    k = k[lattice.in_brillouin(k)]
    lam, n, w = walk.dispersion(k)
    codes = geometry.classify(k)
    labels = np.array(["B0", "B1", "B2", "B3", "EX"])[np.where(codes < 0, 4, codes)]
    for i in range(len(k)):
        yield [*map(fmt, k[i]), fmt(lam[i]), *map(fmt, n[i]), fmt(w[i]), labels[i]]


def run_dispersion(cfg: RunConfig) -> int:
    _emit(_csv_text(DISPERSION_HEADER, dispersion_rows(cfg)), cfg.out)
    return 0


def orbit_points(cfg: RunConfig):
    executor = None
    if cfg.threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        executor = ProcessPoolExecutor(max_workers=cfg.threads)
    try:
        return symmetry.orbit(cfg.k0, cfg.branch, cfg.region, cfg.generator, cfg.samples,
                              cfg.axis, executor=executor)
    finally:
        if executor is not None:
            executor.shutdown()


def run_orbit(cfg: RunConfig) -> int:
    k0 = np.asarray(cfg.k0)
    if not lattice.in_brillouin(k0):
        raise ValueError(f"k0={list(cfg.k0)} lies outside the Brillouin zone")
    if cfg.region is None and geometry.region_of(k0) is Region.EX:
        raise ValueError(f"k0={list(cfg.k0)} lies in the excluded set")
    points = orbit_points(cfg)
    rows = [[str(i), *map(fmt, a), fmt(angle), *map(fmt, k), fmt(w)]
            for i, (a, angle, k, w) in enumerate(points)]
    trailer = f"# anisotropy={fmt(symmetry.anisotropy(points))}"
    _emit(_csv_text(ORBIT_HEADER, rows, trailer), cfg.out)
    return 0


def initial_state(cfg: RunConfig):
    kind = walk.WalkKind.parse(cfg.walk)
    grid = lattice.PeriodicGrid(cfg.size)
    if cfg.sigma == 0:
        kappa = lattice.BASIS @ np.asarray(cfg.k0)
        state, _ = walk.plane_wave_state(kind, grid, grid.momentum_index(kappa), cfg.branch)
        return kind, state
    return kind, walk.gaussian_packet(kind, grid, cfg.k0, cfg.sigma, cfg.branch)


def run_evolve(cfg: RunConfig) -> int:
    if cfg.size < 8:
        raise ValueError("evolve needs a grid of size N >= 8")
    if cfg.steps < 0:
        raise ValueError("steps must be non-negative")
    if cfg.sigma < 0:
        raise ValueError("sigma must be non-negative")
    kind, state = initial_state(cfg)
    rows = [[str(t), *map(fmt, mean), fmt(err)]
            for t, mean, err in walk.evolve_moments(kind, state, cfg.steps)]
    _emit(_csv_text(EVOLVE_HEADER, rows), cfg.out)
    return 0


def run_verify(cfg: RunConfig) -> int:
    from . import verify

    report = verify.verify(cfg.samples, cfg.seed, cfg.threads, config=cfg.to_dict())
    _emit(report.to_json() + "\n", cfg.out)
    for c in report.checks:
        if not c.passed:
            print(f"FAIL {c.name}: {c.max_error:.3e} > {c.tolerance:g} {c.detail}",
                  file=sys.stderr)
    return 0 if report.overall_pass else 1


RUNNERS = {
    "dispersion": run_dispersion,
    "orbit": run_orbit,
    "evolve": run_evolve,
    "verify": run_verify,
}


def _triple(text: str) -> tuple[float, float, float]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # every default is None so that only flags given explicitly override --config
    common.add_argument("--config", help="JSON run configuration to start from")
    common.add_argument("--save-config", help="write the effective configuration here")
    common.add_argument("--walk", choices=["A+", "A-", "B+", "B-"])
    common.add_argument("--grid", type=int, help="dispersion points per axis")
    common.add_argument("--k0", type=_triple, help="wave-vector 'kx,ky,kz'")
    common.add_argument("--samples", type=int, help="orbit samples / verify base sample count")
    common.add_argument("--generator", choices=GENERATORS)
    common.add_argument("--axis", type=_triple, help="rotation or boost axis 'ax,ay,az'")
    common.add_argument("--preset", type=float, choices=ORBIT_PRESETS,
                        help="orbit of k0 = (preset, 0, 0)")
    common.add_argument("--region", choices=["B0", "B1", "B2", "B3"])
    common.add_argument("--branch", type=int, choices=[1, -1])
    common.add_argument("--size", type=int, help="lattice side N for evolve")
    common.add_argument("--steps", type=int)
    common.add_argument("--sigma", type=float, help="packet momentum width; 0 for a plane wave")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)

    parser = argparse.ArgumentParser(
        prog="weylwalk", description="Weyl quantum walks on the BCC lattice.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "dispersion": "export lambda, n and omega over an in-zone grid",
        "orbit": "export the deformed Lorentz orbit of a wave-vector",
        "evolve": "evolve a wave packet and export its mean position",
        "verify": "run the invariant checks and write a JSON report",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {"command": args.command}
    for name in ("walk", "grid", "k0", "samples", "generator", "axis", "region", "branch",
                 "size", "steps", "sigma", "out", "seed", "threads"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.preset is not None:
        overrides["k0"] = (args.preset, 0.0, 0.0)
    return replace(cfg, **overrides)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.save_config:
            cfg.save(args.save_config)
        return RUNNERS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"weylwalk {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
