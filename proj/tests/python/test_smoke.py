import numpy as np
import pytest

import hodgelab


def test_generators_are_unimodular():
    gens = hodgelab.octagon_generators()
    assert len(gens) == 4
    for g in gens:
        assert abs(np.linalg.det(g) - 1) < 1e-12
        assert np.trace(g).real > 2
        assert abs(np.trace(g) - np.trace(gens[0])) < 1e-10


def test_trivial_oper_monodromy_is_the_group():
    for m, g in zip(hodgelab.trivial_oper_monodromy(2), hodgelab.octagon_generators()):
        assert min(np.abs(m - g).max(), np.abs(m + g).max()) < 1e-6


def test_principal_embedding_of_a_diagonal_matrix():
    d = np.diag([2.0, 0.5]).astype(complex)
    assert np.allclose(hodgelab.principal_embedding(3, d), np.diag([4.0, 1.0, 0.25]))


def test_hitchin_map_against_numpy():
    rng = np.random.default_rng(3)
    phi = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    phi -= np.trace(phi) / 3 * np.eye(3)
    # det(lambda + phi) = lambda^3 + c1 lambda^2 + c2 lambda + c3
    poly = np.poly(-phi)
    assert np.allclose(hodgelab.hitchin_map_point(phi), poly[2:], atol=1e-10)


def test_dimensions_and_maximality():
    d = hodgelab.moduli_dimensions(3, 2)
    assert d["betti"] == 2 * d["hitchin_base"] == 16
    r = hodgelab.oper_maximality(4, 2)
    assert r["maximal"]


def test_run_reports_config():
    report, csv = hodgelab.run("dims", n=4, g=3)
    assert report["betti"] == 60
    assert report["config"]["parameters"] == {"n": 4, "g": 3}
    assert csv is None


def test_validation_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        hodgelab.run("dims", bogus=1)
    with pytest.raises(ValueError):
        hodgelab.principal_embedding(3, np.eye(2) * 2)
