"""Shared fixtures: reference particle, gold-like surfaces, tolerances."""

import math

import pytest

from magcp import Drude, PerfectConductor, Plasma, QuadratureConfig, \
    build_particle

OMEGA_E = 2.0 * math.pi * 1.0e15
OMEGA_M = 2.0 * math.pi * 1.0e10
GOLD_OMEGA_P = 1.36e16
GOLD_GAMMA = 1.0e14


def make_particle(spin=100.0, m_s=None, omega_m=OMEGA_M, gamma_0=1.8e7):
    return build_particle(omega_e=OMEGA_E, omega_m=omega_m, spin=spin,
                          m_s=m_s, dipole_moment_au=0.5, gamma_0=gamma_0)


@pytest.fixture(scope="session")
def particle():
    return make_particle()


@pytest.fixture(scope="session")
def pc():
    return PerfectConductor()


@pytest.fixture(scope="session")
def gold_drude():
    return Drude(omega_p=GOLD_OMEGA_P, gamma=GOLD_GAMMA)


@pytest.fixture(scope="session")
def gold_plasma():
    return Plasma(omega_p=GOLD_OMEGA_P)


@pytest.fixture(scope="session")
def quad():
    return QuadratureConfig()


@pytest.fixture(scope="session")
def quad_fast():
    # metal double integrals are much cheaper at this tolerance and the
    # acceptance tolerances are percent-level
    return QuadratureConfig(rel_tol=1e-6, abs_tol=1e-14)
