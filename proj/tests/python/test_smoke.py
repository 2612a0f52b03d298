import math

import numpy as np
import pytest

import carlab


def test_closed_form_and_oracle():
    xi = np.array([1.0, 0.0], dtype=complex)
    eta = np.array([0.6j, 0.8], dtype=complex)
    r = carlab.closed_form(xi, eta)
    assert r["exact_constraint_distance"] == pytest.approx(math.sqrt(2.0))
    assert r["closed_form_distance"] == pytest.approx(math.sqrt(2 * (1 - 0.6)))
    o = carlab.oracle_distance(xi, eta, "state", budget=3000, seed=2)
    assert o["value"] == pytest.approx(r["closed_form_distance"], abs=1e-4)
    assert o["evaluations"] <= 3000


def test_rotation_identity():
    for t in np.linspace(-1, 1, 11):
        u = carlab.rotation_unitary(float(t))
        assert carlab.is_unitary(u)
        g = carlab.operator_norm(np.eye(2) - u)
        assert g * g == pytest.approx(2 - 2 * t, abs=1e-12)


def test_kron_and_product_vector():
    v = carlab.product_vector([0.3, -0.2])
    assert v.shape == (4,)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert carlab.kron(np.eye(2), np.eye(2)).shape == (4, 4)
    assert carlab.trace_norm(np.eye(3)) == pytest.approx(3.0)


def test_state_distance_and_separation():
    a = carlab.sequence("invsqrt", 10)
    z = carlab.sequence("zero", 10)
    rows = carlab.separation(a, z, 1, 10)
    assert rows[-1]["state_distance"] == pytest.approx(1.9613113179610074, abs=1e-10)
    xi = carlab.product_vector(a[:3])
    eta = carlab.product_vector(z[:3])
    assert carlab.state_distance(xi, eta) == pytest.approx(rows[2]["state_distance"])


def test_classify_and_gaps():
    a = carlab.sequence("power:2", 2000)
    z = carlab.sequence("zero", 2000)
    assert carlab.classify(a, z)["trend"] == "equivalent-trend"
    gaps = carlab.chain_gaps(carlab.sequence("harmonic", 4), carlab.sequence("zero", 4))
    assert gaps[0] == pytest.approx(2 * abs(math.sin(0.5)))
    table = carlab.block_gaps(carlab.sequence("harmonic", 6), carlab.sequence("zero", 6))
    assert len(table) == 21
    assert all(abs(g["measured"] - g["spectral"]) < 1e-8 for g in table)


def test_witness_search():
    rng = np.random.default_rng(3)
    xi = rng.normal(size=2) + 1j * rng.normal(size=2)
    xi /= np.linalg.norm(xi)
    w = carlab.witness_search(xi, xi)
    assert w is not None and w["index"] == 0 and w["gap"] == 0.0


def test_run_reports():
    r = carlab.run("product-test", family="telescoping", terms=50)
    assert r["experiment"] == "product-test"
    assert len(r["rows"]) == 50
    assert r["summary"]["max_exact_error"] < 1e-12
    s = carlab.run("separation")
    assert s["summary"]["crossing_level"] == 4
    text = carlab.run_text("product-test", '{"terms": 5}', "csv")
    assert text.startswith("# experiment: product-test")


def test_errors_carry_kind():
    with pytest.raises(carlab.Error) as e:
        carlab.run("reduce", levels=13)
    assert e.value.kind == "size-limit"
    with pytest.raises(carlab.Error) as e:
        carlab.run("reduce", bogus=1)
    assert e.value.kind == "invalid-input"
    with pytest.raises(carlab.Error):
        carlab.rotation_unitary(1.5)
    with pytest.raises(carlab.Error):
        carlab.run("nope")


def test_run_matches_config_echo():
    r = carlab.run("reduce", levels=4, length=500, product_delta=0.1)
    assert r["config"]["window"]["product_delta"] == 0.1
    assert len(r["rows"]) == 4
