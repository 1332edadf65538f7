"""Surface response models and reflection coefficients."""

import math

import numpy as np
import pytest
import scipy.constants as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from magcp.materials import (
    DomainViolation,
    Drude,
    NegativeFrequency,
    PerfectConductor,
    Plasma,
    fresnel_imag_axis,
    fresnel_real_freq,
    fresnel_static_limit,
    kappa_perp_real_freq,
    permittivity_imag_axis,
    permittivity_real_freq,
)

GOLD = Drude(omega_p=1.36e16, gamma=1.0e14)
PLASMA = Plasma(omega_p=1.36e16)
PC = PerfectConductor()


def test_model_validation():
    with pytest.raises(ValueError):
        Drude(omega_p=-1.0, gamma=1.0)
    with pytest.raises(ValueError):
        Plasma(omega_p=0.0)
    with pytest.warns(UserWarning):
        Drude(omega_p=1.0e16, gamma=5.0e15)


def test_permittivity_imag_axis_values():
    # eps(i xi) = 1 + wp^2/(xi(xi+gamma)) for Drude, 1 + wp^2/xi^2 plasma
    xi = 2.0e15
    assert permittivity_imag_axis(GOLD, xi) == pytest.approx(
        1.0 + GOLD.omega_p**2 / (xi * (xi + GOLD.gamma)), rel=1e-14)
    assert permittivity_imag_axis(PLASMA, xi) == pytest.approx(
        1.0 + PLASMA.omega_p**2 / xi**2, rel=1e-14)
    assert permittivity_imag_axis(PC, xi) == math.inf


def test_permittivity_negative_frequency_rejected():
    with pytest.raises(NegativeFrequency):
        permittivity_real_freq(GOLD, -1.0)


def test_real_freq_permittivity_drude():
    w = 3.0e15
    eps = permittivity_real_freq(GOLD, w)
    expected = 1.0 - GOLD.omega_p**2 / (w * (w + 1j * GOLD.gamma))
    assert eps == pytest.approx(expected, rel=1e-14)
    assert eps.imag > 0


def test_imag_axis_pair_is_real_and_bounded():
    xi = 1.0e15
    kappa = np.array([xi / sc.c * 1.5, 1.0e8, 1.0e9])
    pair = fresnel_imag_axis(GOLD, kappa, xi)
    assert pair.r_s.dtype.kind == "f" and pair.r_p.dtype.kind == "f"
    assert np.all(pair.r_s <= 0.0) and np.all(pair.r_s >= -1.0)
    assert np.all(pair.r_p >= 0.0) and np.all(pair.r_p <= 1.0)


def test_imag_axis_domain_enforced():
    xi = 1.0e15
    with pytest.raises(DomainViolation):
        fresnel_imag_axis(GOLD, 0.5 * xi / sc.c, xi)


def test_perfect_conductor_limits():
    xi = 1.0e15
    pair = fresnel_imag_axis(PC, 1.0e8, xi)
    assert pair.r_s == pytest.approx(-1.0)
    assert pair.r_p == pytest.approx(1.0)


def test_static_limits_distinguish_models():
    kappa = 5.0e7
    assert fresnel_static_limit(GOLD, kappa).r_s == 0.0
    assert fresnel_static_limit(GOLD, kappa).r_p == 1.0
    assert fresnel_static_limit(PC, kappa).r_s == -1.0
    k2 = math.sqrt(kappa**2 + (PLASMA.omega_p / sc.c) ** 2)
    assert fresnel_static_limit(PLASMA, kappa).r_s == pytest.approx(
        (kappa - k2) / (kappa + k2), rel=1e-14)


def test_drude_to_plasma_degeneracy():
    # gamma -> 0 turns the Drude response into the plasma one
    nearly = Drude(omega_p=1.36e16, gamma=1.0e2)
    xi = 1.0e15
    kappa = 1.0e8
    p_d = fresnel_imag_axis(nearly, kappa, xi)
    p_p = fresnel_imag_axis(PLASMA, kappa, xi)
    assert p_d.r_s == pytest.approx(p_p.r_s, rel=1e-10)
    assert p_d.r_p == pytest.approx(p_p.r_p, rel=1e-10)


def test_plasma_to_pc_degeneracy():
    # omega_p -> inf approaches the perfect conductor
    big = Plasma(omega_p=1.0e22)
    xi = 1.0e15
    kappa = 1.0e8
    pair = fresnel_imag_axis(big, kappa, xi)
    assert pair.r_s == pytest.approx(-1.0, abs=1e-4)
    assert pair.r_p == pytest.approx(1.0, abs=1e-4)


def test_real_freq_branch_normal_incidence():
    # at k_par = 0 and omega = omega_p the permittivity vanishes; the
    # limit of r_p is -1 and of r_s is +1
    pair = fresnel_real_freq(PLASMA, 0.0, PLASMA.omega_p)
    assert complex(pair.r_p) == pytest.approx(-1.0, abs=1e-10)
    assert complex(pair.r_s) == pytest.approx(1.0, abs=1e-10)


def test_real_freq_continuity_at_light_line():
    w = 2.0e15
    k0 = w / sc.c
    below = fresnel_real_freq(GOLD, k0 * (1.0 - 1e-9), w)
    above = fresnel_real_freq(GOLD, k0 * (1.0 + 1e-9), w)
    assert complex(below.r_p) == pytest.approx(complex(above.r_p), abs=1e-3)
    assert complex(below.r_s) == pytest.approx(complex(above.r_s), abs=1e-3)


def test_kappa_perp_branch():
    w = 1.0e15
    k0 = w / sc.c
    prop = complex(kappa_perp_real_freq(0.5 * k0, w))
    evan = complex(kappa_perp_real_freq(2.0 * k0, w))
    assert prop.real == pytest.approx(0.0, abs=1e-20)
    assert prop.imag < 0.0
    assert evan.imag == pytest.approx(0.0, abs=1e-20)
    assert evan.real > 0.0


def test_lossless_plasma_outgoing_branch():
    # inside the gap (omega < omega_p) the transmitted wave must decay;
    # |r| = 1 for both polarizations in the propagating sector
    w = 0.5 * PLASMA.omega_p
    pair = fresnel_real_freq(PLASMA, 0.2 * w / sc.c, w)
    assert abs(complex(pair.r_s)) == pytest.approx(1.0, rel=1e-12)
    assert abs(complex(pair.r_p)) == pytest.approx(1.0, rel=1e-12)


def test_surface_plasmon_pole_region():
    # Re eps < -1 just below omega_p/sqrt(2): r_p grows large near the
    # evanescent pole for small loss
    w_res = GOLD.omega_p / math.sqrt(2.0)
    eps = permittivity_real_freq(GOLD, w_res * 0.999)
    assert eps.real < -1.0
    k_par = 10.0 * w_res / sc.c
    on = fresnel_real_freq(GOLD, k_par, w_res)
    off = fresnel_real_freq(GOLD, k_par, 0.5 * w_res)
    assert abs(complex(on.r_p)) > 10.0 * abs(complex(off.r_p))


@given(xi=st.floats(1e10, 1e18), kappa_factor=st.floats(1.0, 1e4))
@settings(max_examples=60, deadline=None)
def test_imag_axis_reflections_bounded(xi, kappa_factor):
    kappa = kappa_factor * xi / sc.c
    for model in (GOLD, PLASMA, PC):
        pair = fresnel_imag_axis(model, kappa, xi)
        assert -1.0 <= float(pair.r_s) <= 0.0
        assert 0.0 <= float(pair.r_p) <= 1.0


@given(w=st.floats(1e13, 1e17), k_factor=st.floats(0.0, 10.0))
@settings(max_examples=60, deadline=None)
def test_real_freq_passivity(w, k_factor):
    # propagating-sector reflectivity cannot exceed unity for a lossy model
    k_par = k_factor * w / sc.c
    pair = fresnel_real_freq(GOLD, k_par, w)
    if k_factor < 1.0:
        assert abs(complex(pair.r_s)) <= 1.0 + 1e-9
        assert abs(complex(pair.r_p)) <= 1.0 + 1e-9
