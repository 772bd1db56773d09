import math

import numpy as np
import pytest

from eadyfronts.singularity import catastrophe_times
from eadyfronts.wavefield import (
    CylindricalSolution,
    cs_residual,
    envelope_margin,
    eval_jet,
    f_field,
    f_jet,
    lid_residual,
    period,
    pocket_center,
    rotate_frame,
    rotated_cs_residual,
    sprime_values,
    sprime_z,
)
from eadyfronts.spectral import build_mode


def closed_form_reference(omega_i):
    """Independent closed form of the reference wave (k=2, l=0, eta free)."""
    s2 = math.sqrt(2.0)

    def S(X, Y, z, t, eta=0.01):
        return (
            X**2 / 2 + Y**2 / 2 - z**2 / 4 + Y * z / s2 - z
            - 2 * s2 * eta * np.exp(omega_i * t) * (
                2 * np.exp(-s2 * z) * np.cos(t - 2 * X)
                + omega_i * (np.exp(s2 * z) + np.exp(-s2 * z)) * np.sin(t - 2 * X)
            )
        )

    return S


def test_jet_of_basic_state(base_mode, params):
    jet = eval_jet(base_mode, 1.3, -0.7, 0.9, 4.0)
    assert jet.S_XX == 1.0
    assert jet.S_YY == 1.0
    assert jet.S_XY == 0.0
    assert jet.S_zz == -params.q_g
    assert jet.S_Yz == params.F
    assert jet.S_Xz == 0.0
    assert jet.S_Xt == jet.S_Yt == jet.S_zt == 0.0
    assert jet.f == 1.0


def test_value_matches_closed_form(mode, omega_i):
    S_ref = closed_form_reference(omega_i)
    rng = np.random.default_rng(0)
    for _ in range(60):
        X, Y = rng.uniform(-6, 6, 2)
        z = rng.uniform(0, mode.params.B)
        t = rng.uniform(0, 10)
        jet = eval_jet(mode, X, Y, z, t)
        assert abs(jet.value - S_ref(X, Y, z, t)) < 1e-12


def test_all_derivatives_match_finite_differences(mode, omega_i):
    """Every stored partial agrees with central differences of the
    independent closed form at relative 1e-6."""
    S_ref = closed_form_reference(omega_i)
    rng = np.random.default_rng(1)
    h = 1e-5
    for _ in range(100):
        X, Y = rng.uniform(-4, 4, 2)
        z = rng.uniform(0.1, mode.params.B - 0.1)
        t = rng.uniform(0, 9)
        jet = eval_jet(mode, X, Y, z, t)

        def fd1(axis):
            e = {"X": (h, 0, 0, 0), "Y": (0, h, 0, 0), "z": (0, 0, h, 0), "t": (0, 0, 0, h)}[axis]
            return (S_ref(X + e[0], Y + e[1], z + e[2], t + e[3])
                    - S_ref(X - e[0], Y - e[1], z - e[2], t - e[3])) / (2 * h)

        def fd2(ax1, ax2, h=1e-4):
            e = {"X": (1, 0, 0, 0), "Y": (0, 1, 0, 0), "z": (0, 0, 1, 0), "t": (0, 0, 0, 1)}
            d1 = np.array(e[ax1], float) * h
            d2 = np.array(e[ax2], float) * h
            pp = S_ref(*(np.array([X, Y, z, t]) + d1 + d2))
            pm = S_ref(*(np.array([X, Y, z, t]) + d1 - d2))
            mp = S_ref(*(np.array([X, Y, z, t]) - d1 + d2))
            mm = S_ref(*(np.array([X, Y, z, t]) - d1 - d2))
            return (pp - pm - mp + mm) / (4 * h**2)

        def rel_ok(got, want, tol=1e-6):
            return abs(got - want) <= tol * max(1.0, abs(want))

        assert rel_ok(jet.S_X, fd1("X"))
        assert rel_ok(jet.S_Y, fd1("Y"))
        assert rel_ok(jet.S_z, fd1("z"))
        assert rel_ok(jet.S_XX, fd2("X", "X"))
        assert rel_ok(jet.S_YY, fd2("Y", "Y"))
        assert rel_ok(jet.S_XY, fd2("X", "Y"))
        assert rel_ok(jet.S_Xz, fd2("X", "z"))
        assert rel_ok(jet.S_Yz, fd2("Y", "z"))
        assert rel_ok(jet.S_zz, fd2("z", "z"))
        assert rel_ok(jet.S_Xt, fd2("X", "t"))
        assert rel_ok(jet.S_Yt, fd2("Y", "t"))
        assert rel_ok(jet.S_zt, fd2("z", "t"))


def test_third_derivatives_match_f_jet(mode):
    rng = np.random.default_rng(2)
    for _ in range(30):
        X = rng.uniform(-4, 4)
        z = rng.uniform(0, mode.params.B)
        t = rng.uniform(0, 9)
        jet = eval_jet(mode, X, 0.0, z, t)
        fj = f_jet(mode, X, z, t)
        assert abs(jet.S_XX - fj.f) < 1e-13
        assert abs(jet.S_XXX - fj.f_X) < 1e-13
        assert abs(jet.S_XXz - fj.f_z) < 1e-13


def test_exactness_for_any_amplitude(params):
    """The mode solves the full nonlinear equation and both lid conditions
    for every amplitude, not just infinitesimally."""
    rng = np.random.default_rng(3)
    for eta in (0.0, 0.01, 0.05, 0.1):
        m = build_mode(params, k=2.0, l=0.0, eta=eta)
        X = rng.uniform(-8, 8, 200)
        Y = rng.uniform(-8, 8, 200)
        z = rng.uniform(0, params.B, 200)
        t = rng.uniform(0, 10, 200)
        assert np.abs(cs_residual(m, X, Y, z, t)).max() < 1e-9
        assert np.abs(lid_residual(m, X, Y, t, 0.0)).max() < 1e-9
        assert np.abs(lid_residual(m, X, Y, t, params.B)).max() < 1e-9


def test_exactness_for_oblique_mode(oblique_mode, params):
    rng = np.random.default_rng(4)
    X = rng.uniform(-8, 8, 200)
    Y = rng.uniform(-8, 8, 200)
    z = rng.uniform(0, params.B, 200)
    t = rng.uniform(0, 10, 200)
    assert np.abs(cs_residual(oblique_mode, X, Y, z, t)).max() < 1e-9
    assert np.abs(lid_residual(oblique_mode, X, Y, t, 0.0)).max() < 1e-9
    assert np.abs(lid_residual(oblique_mode, X, Y, t, params.B)).max() < 1e-9


def test_cylindrical_identities(mode):
    rng = np.random.default_rng(5)
    for _ in range(40):
        jet = eval_jet(
            mode,
            rng.uniform(-5, 5),
            rng.uniform(-5, 5),
            rng.uniform(0, mode.params.B),
            rng.uniform(0, 10),
        )
        assert jet.S_XY == 0.0
        assert jet.S_YY == 1.0


def test_two_variable_generator_is_harmonic(mode, oblique_mode):
    for m in (mode, oblique_mode):
        cyl = CylindricalSolution.from_mode(m)
        rng = np.random.default_rng(6)
        X = rng.uniform(-5, 5, 100)
        z = rng.uniform(0, m.params.B, 100)
        t = rng.uniform(0, 9, 100)
        assert np.abs(cyl.harmonic_residual(X, z, t)).max() < 1e-10


def test_cylindrical_split_reconstructs_plain_values(mode):
    # S = Y^2/2 + C Y z + S'(X, z) for the X-travelling wave (C = F)
    cyl = CylindricalSolution.from_mode(mode)
    assert cyl.C == pytest.approx(mode.params.F, abs=1e-15)
    rng = np.random.default_rng(7)
    for _ in range(30):
        X, Y = rng.uniform(-5, 5, 2)
        z = rng.uniform(0, mode.params.B)
        t = rng.uniform(0, 9)
        whole = eval_jet(mode, X, Y, z, t).value
        split = Y**2 / 2 + cyl.C * Y * z + float(cyl.value(X, z, t))
        assert abs(whole - split) < 1e-12


def test_f_field_basic_state_is_one(base_mode):
    assert float(f_field(base_mode, 2.7, 0.4, 8.0)) == 1.0


def test_f_field_first_tangency(mode):
    ct = catastrophe_times(mode)
    c = pocket_center(mode, 0.0, ct.t_prime)
    Xs = np.linspace(c - period(mode) / 2, c + period(mode) / 2, 20001)
    f = f_field(mode, Xs, np.zeros_like(Xs), ct.t_prime)
    assert abs(f.min()) < 1e-4


def test_f_field_period_mean_is_one(mode):
    per = period(mode)
    for z, t in [(0.0, 3.0), (0.7, 6.5), (1.2, 8.5)]:
        Xs = np.linspace(1.0, 1.0 + per, 4096, endpoint=False)
        f = f_field(mode, Xs, np.full_like(Xs, z), t)
        assert abs(f.mean() - 1.0) < 1e-12


def test_f_field_translation_symmetry(mode):
    # the reference wave has spatial period pi
    rng = np.random.default_rng(8)
    X = rng.uniform(-5, 5, 50)
    z = rng.uniform(0, mode.params.B, 50)
    f0 = f_field(mode, X, z, 6.5)
    f1 = f_field(mode, X + math.pi, z, 6.5)
    assert np.abs(f0 - f1).max() < 1e-12


def test_envelope_margin_matches_f_minimum(mode):
    for z, t in [(0.0, 5.0), (0.3, 6.5), (mode.params.B / 2, 7.0)]:
        c = pocket_center(mode, z, t)
        assert float(f_field(mode, c, z, t)) == pytest.approx(
            1.0 - float(envelope_margin(mode, z, t)), abs=1e-12
        )


def test_rotate_frame_identity_for_axis_wave(mode):
    rot = rotate_frame(mode.wavevector)
    assert rot.to_wave(1.3, -0.8) == (1.3, -0.8)


def test_rotate_frame_diagonal():
    from eadyfronts.spectral import WaveVector

    rot = rotate_frame(WaveVector.from_components(1.0, 1.0))
    Xp, Yp = rot.to_wave(1.0, 0.0)
    assert Xp == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert Yp == pytest.approx(-1 / math.sqrt(2), abs=1e-15)


def test_rotate_frame_round_trip_and_area(oblique_mode):
    rot = rotate_frame(oblique_mode.wavevector)
    rng = np.random.default_rng(9)
    for _ in range(30):
        X, Y = rng.uniform(-10, 10, 2)
        Xp, Yp = rot.to_wave(X, Y)
        Xb, Yb = rot.to_plain(Xp, Yp)
        assert abs(Xb - X) < 1e-14 and abs(Yb - Y) < 1e-14
    # area form preserved: the rotation matrix has unit determinant
    J = np.array([[rot.cos_nu, rot.sin_nu], [-rot.sin_nu, rot.cos_nu]])
    assert abs(np.linalg.det(J) - 1.0) < 1e-15


def test_rotated_equation_residual(oblique_mode):
    rng = np.random.default_rng(10)
    Xp = rng.uniform(-6, 6, 100)
    z = rng.uniform(0, oblique_mode.params.B, 100)
    t = rng.uniform(0, 9, 100)
    assert np.abs(rotated_cs_residual(oblique_mode, Xp, z, t)).max() < 1e-10


def test_rotated_view_agrees_with_plain_view(oblique_mode):
    # S' in the propagation frame plus the quadratic split reproduces S
    rot = rotate_frame(oblique_mode.wavevector)
    cyl = CylindricalSolution.from_mode(oblique_mode)
    p = oblique_mode.params
    rng = np.random.default_rng(11)
    for _ in range(30):
        X, Y = rng.uniform(-5, 5, 2)
        z = rng.uniform(0, p.B)
        t = rng.uniform(0, 9)
        Xp, Yp = rot.to_wave(X, Y)
        whole = eval_jet(oblique_mode, X, Y, z, t).value
        split = Yp**2 / 2 + cyl.C * Yp * z + float(cyl.value(Xp, z, t))
        assert abs(whole - split) < 1e-12


def test_sprime_slope_and_z_derivative(mode):
    rng = np.random.default_rng(12)
    h = 1e-6
    for _ in range(20):
        X = rng.uniform(-4, 4)
        z = rng.uniform(0.1, mode.params.B - 0.1)
        t = rng.uniform(0, 9)
        vp, _ = sprime_values(mode, X + h, z, t)
        vm, _ = sprime_values(mode, X - h, z, t)
        _, slope = sprime_values(mode, X, z, t)
        assert abs((vp - vm) / (2 * h) - slope) < 1e-7
        zp, _ = sprime_values(mode, X, z + h, t)
        zm, _ = sprime_values(mode, X, z - h, t)
        assert abs((zp - zm) / (2 * h) - sprime_z(mode, X, z, t)) < 1e-7


def test_out_of_domain_flag(mode):
    assert eval_jet(mode, 0.0, 0.0, 0.5, 1.0).inside_domain
    assert not eval_jet(mode, 0.0, 0.0, -0.5, 1.0).inside_domain
    assert not eval_jet(mode, 0.0, 0.0, mode.params.B + 0.1, 1.0).inside_domain


def test_f_at_origin_closed_form(mode):
    # at (X, z, t) = (0, 0, 0): f = 1 + 8*sqrt(2)*eta*[2 cos 0 + 2 omega_i sin 0]
    want = 1.0 + 16.0 * math.sqrt(2.0) * mode.eta
    assert float(f_field(mode, 0.0, 0.0, 0.0)) == pytest.approx(want, abs=1e-12)
    jet = eval_jet(mode, 0.0, 0.0, 0.0, 0.0)
    assert jet.S_XX == pytest.approx(want, abs=1e-12)
