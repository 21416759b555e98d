"""Command-line front door: anyon tables, verification suites and ground spaces.

Exit status: 0 all checks pass, 1 a check failed, 2 input error, 3 a
dimension budget was exceeded.  Each run writes a deterministic JSON content
file, a text summary and a metadata sidecar with timing and host data.
"""
from __future__ import annotations

import argparse
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .anyon_verify import (anyon_distinguishability, braiding_suite, endpoint_suite, ground_suite,
                           intertwiner_suite, perturb_irrep, prop42_suite, transporter_suite)
from .double_algebra import hopf_axiom_suite, r_matrix_flipped
from .double_reps import (anyon_name, braiding, fusion_multiplicities, irreps_of_double,
                          irreps_suite)
from .errors import DimensionBudgetExceeded, GeometryInfeasible, NotAGroup, QDoubleError, TooSmall
from .group_core import FiniteGroup, load_group
from .kernels import backend
from .lattice_geometry import Patch, make_patch
from .reporting import SCHEMA_VERSION, SuiteReport, dump_json, write_atomic

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

#: suite name -> corruptions it accepts
SUITES = {
    "hopf": ("r_matrix",),
    "irreps": ("irrep",),
    "prop42": ("dual_case", "irrep"),
    "braiding": ("dual_case", "irrep"),
    "transporter": ("irrep",),
    "intertwiner": ("intertwiner",),
    "endpoint": ("ground_state",),
    "ground": ("ground_state",),
    "distinguish": ("irrep",),
}

TORUS_SUITES = ("endpoint", "ground", "distinguish")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    group: str
    patch: tuple[int, int] | None = None
    boundary: str | None = None
    seed: int = 0
    tol: float | None = None
    suites: list[str] = field(default_factory=list)
    out: Path = Path("qdouble-out")
    jobs: int = 1
    ribbon_len: int | None = None
    n_ribbons: int | None = None
    corrupt: str | None = None

    def validate(self) -> None:
        if self.tol is not None and not self.tol > 0:
            raise InputError(f"tolerance must be positive, got {self.tol}")
        if not 0 <= self.seed < 2 ** 64:
            raise InputError(f"seed must be a 64-bit unsigned value, got {self.seed}")
        for s in self.suites:
            if s not in SUITES:
                raise InputError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
            if self.corrupt is not None and self.corrupt not in SUITES[s]:
                raise InputError(f"suite {s!r} accepts corruptions {SUITES[s]}, got {self.corrupt!r}")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")
        if self.ribbon_len is not None and self.ribbon_len < 2:
            raise InputError("--ribbon-len must be at least 2")

    def make_patch(self, default: tuple[int, int, str]) -> Patch:
        w, h = self.patch if self.patch is not None else default[:2]
        boundary = self.boundary or default[2]
        try:
            return make_patch(w, h, boundary)
        except (TooSmall, ValueError) as exc:
            raise InputError(str(exc)) from None


def parse_patch(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"patch must look like WxH, got {text!r}") from None


def parse_seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="built-in name (z1..z8, s3, d4, q8) or Cayley table file")
    p.add_argument("--patch", type=parse_patch, default=None, help="patch size WxH")
    p.add_argument("--boundary", choices=("open", "torus"), default=None)
    p.add_argument("--seed", type=parse_seed, default=0)
    p.add_argument("--tol", type=float, default=None, help="tolerance (suite default if omitted)")
    p.add_argument("--out", type=Path, default=Path("qdouble-out"), help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdouble", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qdouble {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("anyons", help="anyon table: labels, dimensions, fusion, monodromy")
    _common(p)
    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", action="append", dest="suites", metavar="NAME",
                   help=f"suite to run, repeatable ({', '.join(SUITES)}); default all")
    p.add_argument("--jobs", type=int, default=1, help="suites run in parallel")
    p.add_argument("--ribbon-len", type=int, default=None, help="longest random ribbon")
    p.add_argument("--n-ribbons", type=int, default=None, help="random ribbons per suite")
    p.add_argument("--corrupt", default=None, help="deliberately corrupt an ingredient")
    p = sub.add_parser("ground", help="ground-space dimension and frustration-freeness on a torus")
    _common(p)
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(group=args.group, patch=args.patch, boundary=args.boundary, seed=args.seed,
                     tol=args.tol, suites=list(getattr(args, "suites", None) or []), out=args.out,
                     jobs=getattr(args, "jobs", 1), ribbon_len=getattr(args, "ribbon_len", None),
                     n_ribbons=getattr(args, "n_ribbons", None), corrupt=getattr(args, "corrupt", None))


def _tol(cfg: RunConfig, default: float = 1e-9) -> float:
    return default if cfg.tol is None else cfg.tol


def run_suite(name: str, G: FiniteGroup, cfg: RunConfig) -> SuiteReport:
    """Run one registry suite for ``cfg``; errors propagate to the caller."""
    seed, corrupt = cfg.seed, cfg.corrupt
    if name == "hopf":
        R = r_matrix_flipped(G) if corrupt == "r_matrix" else None
        return hopf_axiom_suite(G, seed=seed, tol=_tol(cfg, 1e-12), R=R)
    if name == "irreps":
        irr = irreps_of_double(G)
        if corrupt == "irrep":
            irr = [irr[0], perturb_irrep(irr[-1], seed)] + irr[1:-1]
        return irreps_suite(G, irreps=irr, tol=_tol(cfg))
    if name in TORUS_SUITES:
        if cfg.boundary == "open":
            raise InputError(f"suite {name!r} works on ground states, which are computed on tori only")
        default = {"endpoint": (3, 3), "ground": (2, 2), "distinguish": (2, 2)}[name]
        patch = cfg.make_patch((*default, "torus"))
        if name == "ground":
            return ground_suite(G, patch=patch, seed=seed, tol=_tol(cfg), corrupt=corrupt)
        if name == "endpoint":
            return endpoint_suite(G, patch=patch, n_pairs=cfg.n_ribbons or 20, seed=seed,
                                  tol=_tol(cfg), corrupt=corrupt)
        # without an explicit patch the smallest passing torus is searched for
        patch = patch if cfg.patch is not None else None
        return anyon_distinguishability(G, patch=patch, seed=seed, tol=_tol(cfg), corrupt=corrupt)
    patch = cfg.make_patch((8, 8, "open"))
    if name == "prop42":
        n = cfg.n_ribbons or (100 if G.order <= 2 else 50)
        return prop42_suite(G, patch=patch, n_ribbons=n, seed=seed, tol=_tol(cfg),
                            max_len=cfg.ribbon_len or 8, corrupt=corrupt)
    if name == "braiding":
        return braiding_suite(G, seeds=(seed, seed + 1), patch=patch, tol=_tol(cfg), corrupt=corrupt)
    if name == "transporter":
        return transporter_suite(G, seed=seed, patch=patch, tol=_tol(cfg), corrupt=corrupt)
    if name == "intertwiner":
        return intertwiner_suite(G, seed=seed, patch=patch, tol=_tol(cfg), corrupt=corrupt)
    raise InputError(f"unknown suite {name!r}")


def _write(cfg: RunConfig, stem: str, content: dict, summary: str, wall: float) -> None:
    write_atomic(cfg.out / f"{stem}.json", dump_json(content))
    write_atomic(cfg.out / f"{stem}.txt", summary + "\n")
    meta = {
        "schema_version": SCHEMA_VERSION,
        "qdouble_version": __version__,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "wall_time_s": round(wall, 6),
        "host": platform.node(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "kernel_backend": backend(),
    }
    write_atomic(cfg.out / f"{stem}.meta.json", dump_json(meta))


def _guarded(name: str, G: FiniteGroup, cfg: RunConfig):
    """Run a suite and map errors to exit codes; safe to call in a worker process."""
    try:
        return name, run_suite(name, G, cfg), None, EXIT_OK
    except DimensionBudgetExceeded as exc:
        return name, None, f"budget exceeded: {exc}", EXIT_BUDGET
    except (InputError, GeometryInfeasible, TooSmall, ValueError) as exc:
        return name, None, f"input error: {exc}", EXIT_INPUT


def _load(cfg: RunConfig) -> FiniteGroup:
    try:
        return load_group(cfg.group)
    except NotAGroup as exc:
        raise InputError(f"NotAGroup: {exc}") from None


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.suites:
        cfg.suites = list(SUITES)
    cfg.validate()
    G = _load(cfg)
    if cfg.jobs > 1 and len(cfg.suites) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_guarded, cfg.suites, [G] * len(cfg.suites),
                                    [cfg] * len(cfg.suites)))
    else:
        results = [_guarded(s, G, cfg) for s in cfg.suites]
    status = EXIT_OK
    for name, report, error, code in results:
        if report is None:
            print(f"{name} [{G.name}]: {error}", file=sys.stderr)
            status = max(status, code)
            continue
        summary = report.summary()
        print(summary)
        _write(cfg, f"{name}-{G.name}", report.to_dict(), summary, report.wall_time)
        if not report.passed:
            status = max(status, EXIT_FAIL)
    # a budget failure outranks check failures, an input error outranks both
    if any(code == EXIT_INPUT for _, _, _, code in results):
        return EXIT_INPUT
    return status


def anyon_table(G: FiniteGroup) -> dict:
    """Labels, dimensions, fusion multiplicities and abelian monodromy scalars."""
    irr = irreps_of_double(G)
    N = fusion_multiplicities(G, irr)
    rows = [{"index": i, "label": list(D.label), "name": anyon_name(D), "dim": D.dim}
            for i, D in enumerate(irr)]
    mono = []
    for i, Di in enumerate(irr):
        for j, Dj in enumerate(irr):
            if Di.dim == 1 and Dj.dim == 1:
                m = complex((braiding(Dj, Di).matrix @ braiding(Di, Dj).matrix)[0, 0])
                mono.append({"a": i, "b": j, "monodromy": [round(m.real, 12) + 0.0,
                                                           round(m.imag, 12) + 0.0]})
    fusion = [{"a": i, "b": j, "c": k, "N": int(N[i, j, k])}
              for i, j, k in zip(*np.nonzero(N))]
    return {"schema_version": SCHEMA_VERSION, "group": G.name, "order": G.order,
            "anyons": rows, "fusion": fusion, "monodromy": mono}


def cmd_anyons(cfg: RunConfig) -> int:
    cfg.validate()
    t0 = time.perf_counter()
    G = _load(cfg)
    table = anyon_table(G)
    lines = [f"anyons of D({G.name}): {len(table['anyons'])} types"]
    for row in table["anyons"]:
        lines.append(f"  {row['index']:3d}  {row['name']:12s} dim {row['dim']}")
    if table["monodromy"]:
        lines.append(f"  {len(table['monodromy'])} monodromy scalars between dimension-1 types")
    summary = "\n".join(lines)
    print(summary)
    _write(cfg, f"anyons-{G.name}", table, summary, time.perf_counter() - t0)
    return EXIT_OK


def cmd_ground(cfg: RunConfig) -> int:
    if cfg.boundary == "open":
        raise InputError("ground states are computed on torus patches only; use --boundary torus")
    cfg.suites = ["ground"]
    return cmd_verify(cfg)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    commands = {"anyons": cmd_anyons, "verify": cmd_verify, "ground": cmd_ground}
    try:
        return commands[args.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DimensionBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except QDoubleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
