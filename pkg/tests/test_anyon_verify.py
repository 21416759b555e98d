import numpy as np
import pytest

from qdouble.anyon_verify import (anyon_distinguishability, braiding_suite, endpoint_suite,
                                  finite_braiding, ground_suite, intertwiner_suite,
                                  intertwiner_transport, perturb_irrep, prop42_suite,
                                  transporter_check, transporter_suite)
from qdouble.double_reps import braiding, direct_sum_rep, irreps_of_double, verify_rep
from qdouble.errors import DimensionBudgetExceeded, GeometryInfeasible
from qdouble.group_core import builtin_group
from qdouble.lattice_geometry import make_patch
from qdouble.reporting import dump_json

Z2, Z3, S3 = (builtin_group(n) for n in ("z2", "z3", "s3"))


def test_prop42_small_runs_pass():
    for G in (Z2, Z3, S3):
        r = prop42_suite(G, n_ribbons=6, seed=3, max_len=5)
        assert r.passed, r.summary()


def test_prop42_dual_case_corruption():
    r = prop42_suite(S3, n_ribbons=6, seed=0, max_len=5, corrupt="dual_case")
    failed = {rec.name for rec in r.failures()}
    assert not r.passed
    assert any("braiding" in name for name in failed)


def test_prop42_irrep_corruption():
    r = prop42_suite(Z2, n_ribbons=6, seed=0, corrupt="irrep")
    assert any(rec.name.startswith("(i)") for rec in r.failures())


def test_prop42_precondition_control_deviates():
    r = prop42_suite(S3, n_ribbons=4, seed=0, max_len=5)
    controls = [rec for rec in r.records if rec.control]
    assert controls and all(rec.passed for rec in controls)
    assert all(rec.max_deviation > 0.1 for rec in controls)


def test_prop42_budget_and_bad_corruption():
    with pytest.raises(DimensionBudgetExceeded):
        prop42_suite(S3, patch=make_patch(40, 40), max_len=200)
    with pytest.raises(ValueError):
        prop42_suite(S3, corrupt="ground_state")


def test_finite_braiding_matches_reference_and_trivial():
    irr = irreps_of_double(S3)
    D = irr[2]
    M, rep = finite_braiding(S3, D, irr[0], seed=0)
    assert rep.passed
    assert np.allclose(M, braiding(D, irr[0]).matrix, atol=1e-9)
    assert np.allclose(M, np.eye(D.dim), atol=1e-9)


def test_braiding_is_bridge_length_independent():
    irr = irreps_of_double(Z3)
    mats = [finite_braiding(Z3, irr[1], irr[3], seed=s, variant=v)[0] for s, v in ((0, 0), (1, 1))]
    assert np.allclose(mats[0], mats[1], atol=1e-12)


def test_braiding_suite_z2_monodromy():
    r = braiding_suite(Z2, seeds=(0,))
    mono = {k: complex(*v) if isinstance(v, list) else v for k, v in r.data["monodromy"].items()}
    assert r.passed
    assert abs(mono["(0, 1)x(1, 0)"] + 1) < 1e-12 and abs(mono["(0, 1)x(0, 1)"] - 1) < 1e-12


def test_braiding_suite_irrep_corruption():
    assert not braiding_suite(Z2, seeds=(0,), corrupt="irrep").passed


def test_transporter_variants():
    D = next(D for D in irreps_of_double(S3) if D.dim == 3)
    for tail in (0, 2):
        r = transporter_check(S3, D, seed=1, tail=tail)
        assert r.passed and r.data["tail"] == tail
    assert not transporter_check(S3, D, seed=1, corrupt="irrep").passed
    assert transporter_suite(Z2).passed


def test_transporter_geometry_infeasible():
    with pytest.raises(GeometryInfeasible):
        transporter_check(Z2, irreps_of_double(Z2)[1], patch=make_patch(2, 2), lengths=(3, 2, 3))


def test_intertwiner_transport_cases():
    irr = irreps_of_double(S3)
    D = irr[3]
    assert intertwiner_transport(S3, D, D, seed=0).passed
    DD = direct_sum_rep(D, D)
    assert intertwiner_transport(S3, DD, D, seed=0, t=np.eye(2 * D.dim)[:, :D.dim]).passed
    assert not intertwiner_transport(S3, D, D, seed=0, corrupt="intertwiner").passed
    assert not intertwiner_suite(Z2, corrupt="intertwiner").passed


def test_ground_and_endpoint_controls():
    assert ground_suite(Z2).passed
    assert not ground_suite(Z2, corrupt="ground_state").passed
    r = endpoint_suite(Z2, n_pairs=5, seed=1)
    assert r.passed
    control = [rec for rec in r.records if rec.control]
    assert len(control) == 2 and all(rec.max_deviation > 0.01 for rec in control)
    with pytest.raises(ValueError):
        ground_suite(Z2, patch=make_patch(3, 3, "open"))


def test_distinguishability_and_corruption():
    r = anyon_distinguishability(Z2, patch=make_patch(2, 2, "torus"))
    assert r.passed and sorted(r.data["outcomes"].tolist()) == [0, 1, 2, 3]
    assert not anyon_distinguishability(Z2, patch=make_patch(2, 2, "torus"), corrupt="irrep").passed


def test_perturbed_irrep_is_not_a_representation():
    D = irreps_of_double(S3)[3]
    assert not verify_rep(perturb_irrep(D, 0)).passed


def test_reports_are_deterministic():
    a = prop42_suite(Z3, n_ribbons=4, seed=11, max_len=4).to_dict()
    b = prop42_suite(Z3, n_ribbons=4, seed=11, max_len=4).to_dict()
    assert dump_json(a) == dump_json(b)
