import math

import pytest

import bergman_lab as bl


def test_catalog_and_membership():
    ids = {d["id"] for d in bl.catalog()}
    assert {"disk", "E_half2", "G2", "D1f"} <= ids
    assert bl.membership("E_half2", [0.5, 0.06])
    assert not bl.membership("disk", [1.0])
    with pytest.raises(bl.DimensionMismatch):
        bl.membership("disk", [0.1, 0.1])


def test_weights():
    j = bl.weights("classify", 1, 2)
    assert j["classification"] == "nonnormal"
    assert j["linear_forced"] is False
    assert bl.weights("classify", 2, 3)["linear_forced"] is True


def test_disk_kernel_and_geometry():
    k = bl.build_kernel(domain="disk", cutoff=40)
    z, w = 0.3 + 0.1j, -0.2 + 0.4j
    truth = 1 / (math.pi * (1 - z * w.conjugate()) ** 2)
    assert abs(k.eval([z], [w]) - truth) < 1e-10
    assert abs(k.t_matrix([0.4], [0.0])[0][0] - 2) < 1e-10
    c = bl.closed_kernel("disk")
    assert abs(c.sigma([0.0], [0.5])[0] - math.sqrt(2) * 0.5) < 1e-12
    with pytest.raises(bl.KernelNearZero):
        c.t_matrix([0.0], [0.0], guard=1.0)


def test_sampling_is_reproducible():
    a, va = bl.sample("E_half2", 5000, 3)
    b, vb = bl.sample("E_half2", 5000, 3)
    assert a == b and va == vb
    assert all(bl.membership("E_half2", p) for p in a)


def test_verify_reports():
    r = bl.verify("unitarity", domain="disk", map="mobius")
    assert r["verdict"] is True
    lin = bl.verify("linearity", domain="E_half2", map="zapalowski", samples=200000)
    assert lin["verdict"] is False
    assert lin["residuals"]["linearity"] > 0.01


def test_errors_surface():
    with pytest.raises(bl.BergmanError):
        bl.verify("minimality", domain="nowhere")
