"""Acceptance criteria, one test each; every test prints one pass/fail line."""
import time

import numpy as np
import pytest

from qdouble.anyon_verify import (anyon_distinguishability, braiding_suite, endpoint_suite,
                                  ground_suite, prop42_suite, transporter_check)
from qdouble.cli import main
from qdouble.double_algebra import hopf_axiom_suite
from qdouble.double_reps import braiding, fusion_multiplicities, irreps_of_double, irreps_suite
from qdouble.group_core import BUILTIN_NAMES, builtin_group
from qdouble.lattice_geometry import make_patch


def verdict(n, ok, msg):
    print(f"\nacceptance {n}: {'PASS' if ok else 'FAIL'} - {msg}")
    return ok


def test_criterion_01_hopf_axioms():
    t0 = time.perf_counter()
    reports = [hopf_axiom_suite(builtin_group(n)) for n in ("z2", "z3", "z4", "s3", "d4", "q8")]
    wall = time.perf_counter() - t0
    ok = all(r.passed for r in reports) and wall < 10
    exact = all(r.max_deviation == 0 for rep in reports for r in rep.records if "(basis)" in r.name)
    worst = max(r.max_deviation for r in reports)
    assert verdict(1, ok and exact, f"Hopf suite on 6 groups, max dev {worst:.1e}, {wall:.1f}s")


def test_criterion_02_irrep_completeness():
    t0 = time.perf_counter()
    reports = {n: irreps_suite(builtin_group(n)) for n in BUILTIN_NAMES}
    wall = time.perf_counter() - t0
    ok = all(r.passed for r in reports.values()) and wall < 30
    counts = {n: len(r.data["dims"]) for n, r in reports.items()}
    assert verdict(2, ok, f"sum dim^2 = |G|^2 and Schur identity for {counts}, {wall:.1f}s")


def test_criterion_03_toric_code_data():
    G = builtin_group("z2")
    irr = irreps_of_double(G)
    dims_ok = len(irr) == 4 and all(D.dim == 1 for D in irr)
    # label each irrep by (flux, charge) read off its matrices
    labels = []
    for D in irr:
        flux = int(np.argmax([abs(D.of(g, 0)[0, 0]) for g in range(2)]))
        charge = 0 if D.group_matrices()[1, 0, 0].real > 0 else 1
        labels.append((flux, charge))
    charge, flux = irr[labels.index((0, 1))], irr[labels.index((1, 0))]
    mono = (braiding(flux, charge).matrix @ braiding(charge, flux).matrix)[0, 0]
    N = fusion_multiplicities(G, irr)
    ring = all(N[i, j, labels.index(((a[0] + b[0]) % 2, (a[1] + b[1]) % 2))] == 1 and N[i, j].sum() == 1
               for i, a in enumerate(labels) for j, b in enumerate(labels))
    ok = dims_ok and abs(mono + 1) < 1e-12 and ring
    assert verdict(3, ok, f"4 dim-1 anyons, charge-flux monodromy {mono.real:+.12f}, Z2xZ2 fusion {ring}")


def test_criterion_04_ribbon_identities():
    t0 = time.perf_counter()
    z2 = prop42_suite(builtin_group("z2"), n_ribbons=100, seed=0)
    s3 = prop42_suite(builtin_group("s3"), n_ribbons=50, seed=0)
    wall = time.perf_counter() - t0
    ok = z2.passed and s3.passed and wall < 120
    dev = max(z2.max_deviation, s3.max_deviation)
    assert verdict(4, ok, f"100 Z2 + 50 S3 ribbons on 8x8, max dev {dev:.1e}, {wall:.1f}s")


def test_criterion_05_ground_space():
    t0 = time.perf_counter()
    z2 = ground_suite(builtin_group("z2"))
    z3 = ground_suite(builtin_group("z3"))
    wall = time.perf_counter() - t0
    dims = (z2.data["dimension"]["orbits"], z3.data["dimension"]["orbits"])
    ok = z2.passed and z3.passed and dims == (4, 9) and wall < 60
    assert verdict(5, ok, f"2x2 torus ground-space dimensions {dims}, <A_v> = <B_f> = 1, {wall:.1f}s")


def test_criterion_06_finite_braiding():
    t0 = time.perf_counter()
    z2 = braiding_suite(builtin_group("z2"), seeds=(0, 1))
    s3 = braiding_suite(builtin_group("s3"), seeds=(0, 1))
    wall = time.perf_counter() - t0
    s3_dims = {tuple(int(x) for x in k.strip("()").replace(")x(", ",").split(","))
               for k in s3.data["matrices"]}
    ok = z2.passed and s3.passed and wall < 120 and len(z2.data["matrices"]) == 16
    dev = max(z2.max_deviation, s3.max_deviation)
    assert verdict(6, ok, f"Z2 all 16 pairs and S3 dim-2 pairs {sorted(s3_dims)}, two seeds, "
                          f"max dev {dev:.1e}, {wall:.1f}s")


def test_criterion_07_endpoint_property():
    r = endpoint_suite(builtin_group("z2"), patch=make_patch(3, 3, "torus"), n_pairs=20, seed=0)
    assert verdict(7, r.passed, f"20 equal-endpoint pairs on the Z2 3x3 torus, max dev {r.max_deviation:.1e}")


def test_criterion_08_transporter():
    z2 = builtin_group("z2")
    s3 = builtin_group("s3")
    Dz = irreps_of_double(z2)[1]
    Ds = next(D for D in irreps_of_double(s3) if D.dim == 3)
    reports = [transporter_check(z2, Dz, seed=0), transporter_check(s3, Ds, seed=0)]
    ok = all(r.passed for r in reports)
    dev = max(r.max_deviation for r in reports)
    assert verdict(8, ok, f"Z2 charge irrep and S3 dim-3 irrep, max dev {dev:.1e}")


def test_criterion_09_distinguishability():
    reports = {n: anyon_distinguishability(builtin_group(n), seed=0) for n in ("z2", "z3")}
    ok = all(r.passed for r in reports.values())
    ok = ok and [len(set(r.data["outcomes"].tolist())) for r in reports.values()] == [4, 9]
    tori = {n: r.data["smallest_passing_torus"] for n, r in reports.items()}
    assert verdict(9, ok, f"4 and 9 distinct central-projector outcomes, smallest tori {tori}")


NEGATIVE_RUNS = [
    ("prop42", "s3", "dual_case", ["--n-ribbons", "4", "--ribbon-len", "5"]),
    ("prop42", "z2", "irrep", ["--n-ribbons", "4"]),
    ("braiding", "s3", "dual_case", []),
    ("transporter", "s3", "irrep", []),
    ("intertwiner", "s3", "intertwiner", []),
    ("distinguish", "z2", "irrep", ["--patch", "2x2"]),
    ("irreps", "s3", "irrep", []),
    ("hopf", "s3", "r_matrix", []),
    ("ground", "z2", "ground_state", []),
    ("endpoint", "z2", "ground_state", ["--n-ribbons", "5"]),
]


def test_criterion_10_negative_controls(tmp_path, capsys):
    codes = {}
    for suite, group, corrupt, extra in NEGATIVE_RUNS:
        argv = ["verify", "--suite", suite, "--group", group, "--corrupt", corrupt,
                "--out", str(tmp_path)] + extra
        codes[f"{suite}/{corrupt}"] = main(argv)
    clean = main(["verify", "--suite", "intertwiner", "--group", "s3", "--out", str(tmp_path)])
    capsys.readouterr()
    ok = all(c == 1 for c in codes.values()) and clean == 0
    assert verdict(10, ok, f"corrupted runs exit {sorted(set(codes.values()))} over {len(codes)} "
                           f"suite/corruption pairs, clean run exits {clean}")
