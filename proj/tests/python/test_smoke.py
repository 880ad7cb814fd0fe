import math

import numpy as np
import pytest

import mchamiltonian as mch


def test_free_box_element_frozen_value():
    p = mch.PhysicalParams()
    lat = mch.Lattice(0.0, 1.0, 4)
    assert mch.free_box_element(p, lat, 0, 0) == pytest.approx(0.368746380372507, rel=1e-13)
    assert mch.free_kernel(p, 1.0, 0.0) == pytest.approx(0.241970724519143, rel=1e-13)


def test_exact_route_spectrum():
    p = mch.PhysicalParams()
    lat = mch.Lattice.centered(0.5, 40)
    m = mch.exact_box_matrix(p, lat, omega=0.6)
    assert m.source == "exact_quadrature"
    assert np.array_equal(m.elements, m.elements.T)
    h = mch.build_heff(m, p, lat)
    assert h.energies[0] == pytest.approx(0.3, rel=0.03)
    c = h.coefficients
    assert c.shape[0] == 40
    assert np.allclose(c.T @ c, np.eye(c.shape[1]), atol=1e-10)
    rows = mch.thermo_curve(h, [1.0, 2.0])
    assert rows[0]["U"] == pytest.approx(mch.avg_energy(h, 1.0))
    _, u, _ = mch.ho_thermo(p, 0.6, 1.0)
    assert u == pytest.approx(1.02982152909652, rel=1e-12)


def test_monte_carlo_route_is_seeded():
    p = mch.PhysicalParams()
    lat = mch.Lattice.centered(1.0, 6)
    cfg = mch.SamplerConfig(configs=200, slices=16, seed=3, threads=1)
    a = mch.estimate_matrix(p, lat, mch.Potential.harmonic(0.6), cfg)
    b = mch.estimate_matrix(p, lat, mch.Potential.harmonic(0.6), cfg)
    assert a.source == "monte_carlo"
    assert np.array_equal(a.elements, b.elements)
    assert np.all(a.stat_errors >= 0.0)
    free = mch.estimate_matrix(p, lat, mch.Potential.free(), cfg)
    assert np.array_equal(free.elements, mch.free_box_matrix(p, lat).elements)


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        mch.Lattice(0.0, -1.0, 4)
    with pytest.raises(ValueError):
        mch.PhysicalParams(mass=0.0)
    with pytest.raises(mch.ConfigError):
        mch.reproduce("tab9")
    p = mch.PhysicalParams()
    lat = mch.Lattice.centered(1.0, 4)
    with pytest.raises(mch.NumericalError):
        mch.build_heff(mch.exact_box_matrix(p, lat), p, lat, drop_threshold=10.0)


def test_reproduce_renders_csv():
    out = mch.reproduce("fig1")
    text = out["fig1.csv"]
    assert text.startswith("# mchamiltonian reproduce fig1")
    header = [line for line in text.splitlines() if not line.startswith("#")][0]
    assert header.split(",")[:3] == ["series", "beta", "temperature"]
    assert math.isfinite(float(text.splitlines()[-1].split(",")[-1]))
