import cmath
import math

import pytest

import hil


def test_monomial_theta_is_invariant_under_square():
    v = hil.check_beurling(hil.InnerFunction.monomial(1), hil.DiskSelfMap.monomial(2))
    assert v["outcome"] == "holds"
    assert v["agreement"] is True


def test_blaschke_theta_fails_with_witness():
    v = hil.check_beurling(hil.InnerFunction.blaschke(0.5), hil.DiskSelfMap.monomial(2))
    assert v["outcome"] == "fails"
    assert v["criterion"]["evidence"]["witness"] == pytest.approx([0.5, 0.0])


def test_zn_matrix_counterexample():
    pair = hil.AdmissiblePair.normalized(1.0, 1.0)
    assert hil.check_zn_Hab_monomial(1, 2, pair)["outcome"] == "fails"
    assert hil.check_zn_Hab_monomial(1, 3, pair)["outcome"] == "holds"
    assert hil.check_zn_Hab_monomial(2, 2, pair)["outcome"] == "holds"


def test_identity_keeps_hab():
    pair = hil.AdmissiblePair(0.6, 0.8j)
    assert hil.check_Hab(hil.DiskSelfMap.identity(), pair, angles=256)["outcome"] == "holds"


def test_map_round_trip_and_evaluation():
    phi = hil.DiskSelfMap.mobius(1.0, 0.5, 0.5, 1.0)
    back = hil.DiskSelfMap.from_json(phi.to_json())
    for z in (0.0, 0.3 + 0.2j, -0.5j):
        assert abs(back(z) - (z + 0.5) / (0.5 * z + 1.0)) < 1e-14


def test_inner_function_values():
    theta = hil.InnerFunction(m0=1, zeros=[(0.5, 1)], atoms=[(math.pi, 1.0)])
    z = 0.25 + 0.1j
    b = (0.5 - z) / (1 - 0.5 * z)
    s = cmath.exp(-(-1 + z) / (-1 - z))
    assert abs(theta(z) - z * b * s) < 1e-13
    assert abs(hil.InnerFunction.from_json(theta.to_json())(z) - theta(z)) < 1e-14


def test_errors_are_translated():
    with pytest.raises(hil.HilError):
        hil.AdmissiblePair(0.8, 0.4)
    with pytest.raises(hil.HilError):
        hil.DiskSelfMap.polynomial([0.0, 2.0])


def test_run_job_exit_codes():
    report, code = hil.run("check", {"check": "beurling", "theta": {"m0": 1}, "phi": {"monomial": 2}})
    assert code == 0
    assert report["result"]["verdict"]["outcome"] == "holds"
    assert report["schema_version"] == hil.schema_version
    _, bad = hil.run("check", {"check": "hab", "pair": {"alpha": [0.8, 0], "beta": [0.4, 0]}, "phi": "identity"})
    assert bad == 2
