"""Smoke tests for the python bindings (run with PYTHONPATH at the build dir)."""
import math

import numpy as np

import _gkps


def test_transform_round_trip():
    rng = np.random.default_rng(7)
    u = rng.standard_normal((32, 64))
    F = _gkps.forward(u, 2.0, 3.0)
    v = _gkps.inverse(F, 2.0, 3.0)
    assert np.max(np.abs(u - v)) < 1e-12


def test_mass_matches_quadrature():
    nx, ny, lx, ly = 64, 64, 4.0, 4.0
    x = -math.pi * lx + 2 * math.pi * lx * np.arange(nx) / nx
    y = -math.pi * ly + 2 * math.pi * ly * np.arange(ny) / ny
    X, Y = np.meshgrid(x, y)
    u = np.exp(-(X**2 + Y**2))
    cell = (2 * math.pi * lx / nx) * (2 * math.pi * ly / ny)
    quad = math.sqrt(np.sum(u**2) * cell)
    assert abs(_gkps.mass(u, lx, ly) - quad) < 1e-10 * quad


def test_fit_recovery():
    t = np.linspace(0.0, 0.4, 200)
    v = 2.0 * (0.5 - t) ** (-1.0 / 3.0)
    fit = _gkps.fit_log_power(list(t), list(v), 100, [0.0, -0.5, 0.45])
    assert abs(fit["c"] + 1.0 / 3.0) < 1e-5
    assert abs(fit["t_star"] - 0.5) < 1e-5


def test_predict_rates():
    r = _gkps.predict_rates(2, 1)
    assert r["regime"] == "exponential-supercritical"
    assert abs(r["linf_exp"] + 1.0 / 3.0) < 1e-12


def test_preset_names():
    names = _gkps.preset_names()
    assert "gkp1-n2-beta6" in names and len(names) == 12


if __name__ == "__main__":
    test_transform_round_trip()
    test_mass_matches_quadrature()
    test_fit_recovery()
    test_predict_rates()
    test_preset_names()
    print("python smoke: OK")
