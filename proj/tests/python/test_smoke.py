"""Smoke tests for the python bindings: frozen values from the C++ suite."""

import numpy as np
import pytest

import symproj


def test_collective_spin_css_qfi_is_n():
    n = 4
    rho = symproj.coherent_spin_state("x", n)
    jz = symproj.collective_spin("z", n)
    assert symproj.qfi(rho, jz) == pytest.approx(n, rel=1e-10)


def test_cat_state_qfi_is_n_squared():
    for n in (2, 4, 6):
        cat = symproj.cat_state(n, 1)
        jx = symproj.collective_spin("x", n)
        assert symproj.qfi(cat, jx) == pytest.approx(n * n, rel=1e-8)


def test_theorem_on_random_sector_state():
    n = 4
    p = symproj.parity_projector("x", 1, n)
    rho = symproj.random_density_in_sector(p, "parity-x", 1.0, rank=3, seed=7)
    supported, residual = symproj.is_supported_in_sector(rho, p)
    assert supported and residual < 1e-12
    report = symproj.check_theorem(rho, p, symproj.collective_spin("y", n))
    assert report["pass"]
    assert report["qfi"] == pytest.approx(report["four_g2"], rel=1e-8)


def test_bec_case_matches_paper_arithmetic():
    case = symproj.bec_case(2, 1, 1, ideal=True)
    assert case["qfi_closed"] == pytest.approx(4.0, rel=1e-10)
    assert case["qfi_brute"] == pytest.approx(4.0, rel=1e-8)
    assert case["f_sep"] == pytest.approx(3.0)
    assert case["qfi_closed"] > case["f_sep"]


def test_parity_extraction_splits_css_into_cats():
    n = 4
    result = symproj.parity_extraction(symproj.coherent_spin_state("x", n))
    assert result["p_even"] == pytest.approx(0.5, abs=1e-12)
    assert result["p_odd"] == pytest.approx(0.5, abs=1e-12)
    np.testing.assert_allclose(
        result["even"], symproj.cat_state(n, 1), atol=1e-12
    )


def test_oat_cat_time():
    n = 6
    t_cat = np.pi * n / 2.0
    rho = symproj.oat_evolve(n, 1.0, t_cat)
    jx = symproj.dicke_operators(n)[0]
    assert symproj.qfi(rho, jx) == pytest.approx(n * n, rel=1e-6)


def test_scenario_runner_roundtrip():
    import json

    config = {
        "kind": "witness",
        "name": "smoke",
        "system": {"type": "spins", "n": 3},
        "preparation": {"kind": "cat"},
        "generator": {"axis": "x"},
        "expect": "entangled",
    }
    summary = json.loads(symproj.run_scenario_json(json.dumps(config)))
    assert summary["all_pass"]
    assert summary["rows"] == 1
