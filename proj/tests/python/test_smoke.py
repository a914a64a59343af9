import json
import math
import os
import subprocess

import numpy as np
import pytest

import fraclap


def test_kernel_values():
    assert fraclap.kappa(0.5, 1) == pytest.approx(4 / (3 * math.pi), rel=1e-14)
    assert fraclap.kappa(0.0, 0) == 1.0
    assert fraclap.kappa(0.0, 3) == 0.0
    assert fraclap.kappa(-0.45, 7) == pytest.approx(2.4618664647999385, rel=1e-12)
    assert fraclap.kappa(0.3, 4, backend="heat") == pytest.approx(fraclap.kappa(0.3, 4), rel=1e-10)
    table = fraclap.kappa_table(-0.3, 20)
    assert len(table) == 21 and all(v > 0 for v in table)


def test_domain_errors_map_to_python():
    with pytest.raises(ValueError):
        fraclap.kappa(1.2, 1)
    with pytest.raises(fraclap.DomainError):
        fraclap.kappa(-0.2, 1, backend="closed")


def test_weights_and_constants():
    s = 0.25
    assert fraclap.weight_family(s, fraclap.critical_alpha(s), 7) == pytest.approx(fraclap.weight_cr(s, 7), rel=1e-10)
    assert fraclap.leading_constant(s, 0.375) == pytest.approx(fraclap.c_sigma(s), rel=1e-8)
    scan = fraclap.constant_scan(s, 0.01)
    assert abs(scan["argmax"] - 0.375) <= 0.01 + 1e-12


def test_identities():
    check = fraclap.verify_kappa_identity(0.25, 0.375, 0, 100000)
    assert check["passed"] and check["err_bound"] < 1e-6
    support, values = fraclap.random_function(3, -5, 5)
    gst = fraclap.gst_identity_residual(0.25, 0.3, support, values)
    assert gst["passed"]


def test_energy_and_matrix():
    e = fraclap.null_sequence_energy(0.25, 0.375, 100)
    assert e["value"] > 0 and e["err_bound"] < 1e-6 * e["value"]
    idx, mat = fraclap.form_matrix(0.25, 10)
    assert isinstance(mat, np.ndarray) and mat.shape == (21, 21)
    assert fraclap.min_eigenvalue(mat) == pytest.approx(np.linalg.eigvalsh(mat).min(), abs=1e-12)
    assert fraclap.hardy_matrix_check(0.25, 50) >= -1e-9


def test_cli_through_module():
    code, out, err = fraclap.run_cli(["kernel", "--alpha", "0.5", "--x-range", "1..1", "--format", "json"])
    assert code == 0
    report = json.loads(out)
    assert report["rows"][0][1] == pytest.approx(4 / (3 * math.pi), rel=1e-14)
    code, out, _ = fraclap.run_cli(["kernel", "--bogus"])
    assert code == 2 and out == ""


@pytest.mark.skipif("FRACLAP_CLI" not in os.environ, reason="executable path not provided")
def test_cli_executable():
    done = subprocess.run([os.environ["FRACLAP_CLI"], "nullseq", "--sigma", "0.25", "--alpha", "0.375",
                           "--n-list", "100,1000"], capture_output=True, text=True)
    assert done.returncode == 0
    assert "# verdict: pass" in done.stdout
