import math

import numpy as np
import pytest

from eadyfronts.model import (
    DimensionalScales,
    EadyParams,
    basic_state_P0,
    basic_state_S0,
    default_params,
    params_from_scales,
)

from helpers import fd_hessian


def make_scales(F, B, f=1e-4, L=1e6, g=9.81):
    """Dimensional inputs realising the requested Froude and Burger numbers."""
    N = g / (f * L)
    H = B * f * L / N
    U = F * N * H
    return DimensionalScales(f=f, g=g, theta0=300.0, N=N, U=U, H=H, L=L)


def test_reference_parameter_reduction():
    scales = make_scales(1 / math.sqrt(2), math.sqrt(2))
    p = params_from_scales(scales)
    assert p.F == pytest.approx(0.7071067811865475, abs=1e-12)
    assert p.B == pytest.approx(1.4142135623730951, abs=1e-12)
    assert p.eps == pytest.approx(1.0, abs=1e-12)
    assert p.q_g == pytest.approx(0.5, abs=1e-12)


def test_zero_wind_limit():
    p = params_from_scales(make_scales(0.0, 1.0))
    assert p.F == 0.0
    assert p.eps == 0.0
    assert p.q_g == 1.0


def test_supercritical_shear_boundary():
    p = params_from_scales(make_scales(0.999, 1.0))
    assert p.q_g == pytest.approx(0.001999, abs=1e-12)
    with pytest.raises(ValueError, match="F = .* >= 1"):
        params_from_scales(make_scales(1.0, 1.0))


def test_rossby_reconstruction_exact():
    for F, B in [(0.3, 0.8), (0.7, 1.9), (0.05, 3.0)]:
        p = params_from_scales(make_scales(F, B))
        assert abs(p.eps - p.F * p.B) < 1e-14


def test_scales_invariants():
    with pytest.raises(ValueError):
        DimensionalScales(f=-1e-4, g=9.81, theta0=300, N=0.1, U=10, H=1e4, L=1e6)
    with pytest.raises(ValueError, match="buoyancy"):
        DimensionalScales(f=1e-4, g=9.81, theta0=300, N=0.5, U=10, H=1e4, L=1e6)


def test_params_validated_constructor():
    with pytest.raises(ValueError, match="supercritical|not positive"):
        EadyParams.from_froude_burger(1.2, 1.0)
    with pytest.raises(ValueError):
        EadyParams(F=0.5, B=1.0, eps=0.7, q_g=0.75)  # eps != F*B
    with pytest.raises(ValueError):
        EadyParams(F=0.5, B=1.0, eps=0.5, q_g=0.8)  # q_g != 1 - F^2


def test_basic_state_geopotential_values(params):
    assert basic_state_P0(0.0, 0.0, 0.0, params) == 0.0
    # 1/2 + 1/2 + 1/2 - 1/sqrt(2) + 1
    expected = 2.5 - 1 / math.sqrt(2)
    assert basic_state_P0(1.0, 1.0, 1.0, params) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(1.79289, abs=1e-5)


def test_geopotential_hessian_determinant_is_pv(params):
    rng = np.random.default_rng(0)
    for _ in range(120):
        pt = rng.uniform(-5, 5, 3)
        H = fd_hessian(lambda q: basic_state_P0(q[0], q[1], q[2], params), pt, h=1e-3)
        assert abs(np.linalg.det(H) - params.q_g) < 1e-6


def test_dual_potential_values(params):
    assert basic_state_S0(0.0, 0.0, 0.0, params) == 0.0


def test_dual_potential_legendre_round_trip(params):
    # x = dP0/dx, y = dP0/dy, S0 = X x + Y y - P0 with X = x, Y = y - F z
    rng = np.random.default_rng(1)
    for _ in range(50):
        x, y, z = rng.uniform(-4, 4, 3)
        X = x
        Y = y - params.F * z
        S_from_P = X * x + Y * y - basic_state_P0(x, y, z, params)
        assert abs(S_from_P - basic_state_S0(X, Y, z, params)) < 1e-12


def test_dual_potential_solves_dual_equation(params):
    # q_g (S_XX S_YY - S_XY^2) + S_zz = q_g (1*1 - 0) - q_g = 0, identically
    rng = np.random.default_rng(2)
    for _ in range(50):
        pt = rng.uniform(-4, 4, 3)
        H = fd_hessian(lambda q: basic_state_S0(q[0], q[1], q[2], params), pt)
        resid = params.q_g * (H[0, 0] * H[1, 1] - H[0, 1] ** 2) + H[2, 2]
        assert abs(resid) < 1e-6  # finite-difference floor
    # analytic second derivatives cancel exactly
    assert params.q_g * (1.0 * 1.0 - 0.0) + (-params.q_g) == 0.0


def test_default_params():
    p = default_params()
    assert p.eps == pytest.approx(1.0, abs=1e-15)
    assert p.q_g == pytest.approx(0.5, abs=1e-15)
