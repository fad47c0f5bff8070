import json
import math

import numpy as np
import pytest

import blaschke_lab as bl


def test_taylor_of_single_factor():
    B = bl.BlaschkeProduct([(0.5, 1)])
    c = bl.taylor(B, 8)
    assert abs(c[0] + 0.5) < 1e-15
    for k in range(1, 9):
        assert abs(c[k] - 0.75 * 0.5 ** (k - 1)) < 1e-15
    assert abs(B(0.0) + 0.5) < 1e-15


def test_weighted_norm():
    assert bl.weighted_norm(np.array([1, 2, 3], dtype=complex), -1.0) == pytest.approx(math.sqrt(6.0))


def test_round_trip_for_monomial_B():
    rng = np.random.default_rng(3)
    f = rng.uniform(-1, 1, 31) + 1j * rng.uniform(-1, 1, 31)
    B = bl.BlaschkeProduct.monomial(3)
    c = bl.analyze(f, B, 10, 30)
    assert c.shape == (3, 11)
    assert np.max(np.abs(bl.synthesize(c, B, 30) - f)) < 1e-12


def test_commutant_build_and_extract():
    B = bl.BlaschkeProduct([(0.5, 1), (-0.3 + 0.2j, 1)])
    one, zero = np.array([1.0 + 0j]), np.array([0.0 + 0j])
    W, residual = bl.build_commutant([[one, zero], [zero, one]], B, 0.0, 96)
    assert bl.default_commutant_shells(B, 96) > 48
    assert residual < 1e-10
    assert np.max(np.abs(W[:49, :49] - np.eye(49))) < 1e-12
    phis = bl.extract_symbols(W, B, 0.0)
    assert phis.shape == (2, 97)


def test_idempotent_example():
    half = np.array([0.5 + 0j])
    r = bl.idempotent_residual([[half, half], [half, half]])
    assert r["residual"] < 1e-15
    assert r["rank"] == 1
    assert abs(r["trace"] - 1) < 1e-15


def test_x_spaces_and_reducing():
    B = bl.BlaschkeProduct([(0.5, 1), (-0.3, 1)])
    chain = bl.x_spaces(B, -1.0, 3, 120)
    assert all(b.shape[0] == 2 for b in chain["blocks"])
    assert chain["orthogonality_defect"] < 1e-9
    P = bl.monomial_reducing_projection(2, 0, -1.0, 40)
    assert bl.reducing_residual(P, bl.BlaschkeProduct.monomial(2), -1.0) < 1e-12


def test_shift_equivalence():
    d = bl.shift_equiv_monomial(2, -1.0, 20)
    assert abs(d["images"][0][1] - math.sqrt(2)) < 1e-15
    assert d["unitarity_defect"] < 1e-14


def test_errors_are_typed():
    with pytest.raises(bl.DomainError):
        bl.BlaschkeProduct([(0.95, 1)])
    assert issubclass(bl.DomainError, bl.BlaschkeLabError)


def test_run_command():
    cfg = json.dumps({"B": {"monomial": 2}, "f": [1, 2, 3, 4], "degree": 8})
    code, text = bl.run("decompose", cfg)
    assert code == 0
    assert json.loads(text)["summary"]["failed"] == 0
    with pytest.raises(bl.ConfigError):
        bl.run("decompose", "{not json")
