"""Forces, equilibria and spin-repulsion thresholds.

Force components are minus the z-derivative of the corresponding
dimensionless potentials, computed by differentiating under the integral
sign (the only z-dependence of every integrand is an exponential).  Sign
convention: +z points away from the surface, so repulsion is positive and
gravity is negative.

For the perfect conductor the ground-state components are evaluated via
the equivalent single-integral representations, which are orders of
magnitude cheaper than the generic double integrals; the equivalence of
the two representations is covered by the test suite.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.constants as sc
from scipy.optimize import brentq

from .materials import PerfectConductor, SurfaceModel
from .params import EnvironmentSpec, Geometry, ParticleSpec, \
    gravity_force_dimensionless
from .potentials import (
    u_e_ground,
    u_e_pc_closed,
    u_m_excited0,
    u_m_ground_broadband,
    u_m_pc_closed,
    u_m_static,
)
from .quadrature import QuadratureConfig

log = logging.getLogger(__name__)


class BracketError(ValueError):
    pass


class NoEquilibrium(RuntimeError):
    pass


class NoPositiveRoot(RuntimeError):
    pass


class RegimeViolation(ValueError):
    pass


@dataclass(frozen=True)
class ForceBreakdown:
    f_e: float
    f_m_minus: float
    f_m_z: float
    f_gravity: float
    f_total: float
    f_total_cp: float
    f_m_excited0: float | None = None
    converged: bool = True


@dataclass(frozen=True)
class Equilibrium:
    z_tilde_eq: float
    stable: bool
    residual_force: float
    method: str
    analytic_estimate: float | None = None


def _component_forces(particle: ParticleSpec, surface: SurfaceModel,
                      geometry: Geometry, quad: QuadratureConfig,
                      mode: str, include_static: bool):
    """(f_e, f_m_minus or f_m_excited0, f_m_z, all_converged)."""
    pc = isinstance(surface, PerfectConductor)
    if pc:
        due, r1 = u_e_pc_closed(particle, geometry, quad, deriv=True,
                                strict=False)
    else:
        due, r1 = u_e_ground(particle, surface, geometry, quad, deriv=True,
                             strict=False)
    if mode == "ground":
        if pc:
            dum, r2 = u_m_pc_closed(particle, geometry, quad, deriv=True,
                                    strict=False)
        else:
            dum, r2 = u_m_ground_broadband(particle, surface, geometry, quad,
                                           deriv=True, strict=False)
    elif mode == "excited0":
        dum, r2 = u_m_excited0(particle, surface, geometry, quad, deriv=True,
                               strict=False)
    else:
        raise ValueError(f"mode must be ground or excited0, got {mode!r}")
    if include_static and mode == "ground":
        duz, r3 = u_m_static(particle, surface, geometry, quad, deriv=True,
                             strict=False)
    else:
        duz, r3 = 0.0, None
    ok = r1.converged and r2.converged and (r3 is None or r3.converged)
    return -due, -dum, -duz, ok


def _fd_component_forces(particle, surface, geometry, quad, mode,
                         include_static, rel_step: float = 1e-4):
    """Central finite-difference force path for cross-checks."""
    zt = geometry.z_tilde(particle)
    h = rel_step * zt
    out = []
    for sign in (+1.0, -1.0):
        g = Geometry((zt + sign * h) / particle.k_e)
        pc = isinstance(surface, PerfectConductor)
        if pc:
            ue, _ = u_e_pc_closed(particle, g, quad, strict=False)
        else:
            ue, _ = u_e_ground(particle, surface, g, quad, strict=False)
        if mode == "ground":
            if pc:
                um, _ = u_m_pc_closed(particle, g, quad, strict=False)
            else:
                um, _ = u_m_ground_broadband(particle, surface, g, quad,
                                             strict=False)
        else:
            um, _ = u_m_excited0(particle, surface, g, quad, strict=False)
        if include_static and mode == "ground":
            uz, _ = u_m_static(particle, surface, g, quad, strict=False)
        else:
            uz = 0.0
        out.append((ue, um, uz))
    (ue_p, um_p, uz_p), (ue_m, um_m, uz_m) = out
    return (-(ue_p - ue_m) / (2 * h), -(um_p - um_m) / (2 * h),
            -(uz_p - uz_m) / (2 * h))


def force_breakdown(particle: ParticleSpec, surface: SurfaceModel,
                    geometry: Geometry, quad: QuadratureConfig,
                    mode: str = "ground", include_static: bool = True,
                    environment: EnvironmentSpec = EnvironmentSpec(),
                    finite_difference: bool = False) -> ForceBreakdown:
    """All dimensionless force components (units hbar*Gamma0*k_e).

    f_total sums the mode's surface components and gravity; f_total_cp
    additionally excludes the magnetostatic image component.  The
    finite_difference flag swaps the analytic differentiation under the
    integral for a central difference of the potentials (step 1e-4 z).
    """
    f_g = gravity_force_dimensionless(particle, environment)
    if finite_difference:
        f_e, f_m, f_z = _fd_component_forces(
            particle, surface, geometry, quad, mode, include_static)
        ok = True
    else:
        f_e, f_m, f_z, ok = _component_forces(
            particle, surface, geometry, quad, mode, include_static)
    if mode == "ground":
        return ForceBreakdown(
            f_e=f_e, f_m_minus=f_m, f_m_z=f_z, f_gravity=f_g,
            f_total=f_e + f_m + f_z + f_g,
            f_total_cp=f_e + f_m + f_g,
            converged=ok,
        )
    return ForceBreakdown(
        f_e=f_e, f_m_minus=0.0, f_m_z=0.0, f_gravity=f_g,
        f_m_excited0=f_m,
        f_total=f_e + f_m + f_g,
        f_total_cp=f_e + f_m + f_g,
        converged=ok,
    )


def _total_force(particle, surface, quad, mode, include_static, environment,
                 use_cp_total):
    def f(zt: float) -> float:
        fb = force_breakdown(particle, surface, Geometry(zt / particle.k_e),
                             quad, mode=mode, include_static=include_static,
                             environment=environment)
        return fb.f_total_cp if use_cp_total else fb.f_total
    return f


def _analytic_equilibrium(particle: ParticleSpec,
                          environment: EnvironmentSpec,
                          mode: str, include_static: bool) -> float | None:
    """Quarter-power near-field estimates of the equilibrium position."""
    if environment.g == 0:
        return None
    base = particle.eta * sc.hbar * particle.gamma_0_free * particle.k_e \
        / (particle.mass_per_spin * environment.g)
    if mode == "ground" and not include_static:
        return (9.0 / 64.0 * base) ** 0.25
    if mode == "ground":
        return (9.0 / 32.0 * particle.spin * base) ** 0.25
    return (9.0 / 64.0 * particle.spin * base) ** 0.25


def find_equilibrium(particle: ParticleSpec, surface: SurfaceModel,
                     quad: QuadratureConfig, mode: str = "ground",
                     include_static: bool = True,
                     bracket: tuple[float, float] = (0.5, 100.0),
                     environment: EnvironmentSpec = EnvironmentSpec(),
                     rel_tol: float = 1e-6) -> Equilibrium:
    """Root of the total dimensionless force over a z_tilde bracket.

    The bracket endpoints must straddle a sign change of the total force.
    include_static=False balances only the Casimir-Polder parts against
    gravity (the f_total_cp convention).  Stability comes from the sign of
    the numerical force slope at the root.
    """
    lo, hi = bracket
    if not (0 < lo < hi):
        raise BracketError(f"need 0 < lo < hi, got {bracket}")
    f = _total_force(particle, surface, quad, mode, include_static,
                     environment, use_cp_total=not include_static)
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0 or f_hi == 0.0:
        root = lo if f_lo == 0.0 else hi
    elif f_lo * f_hi > 0:
        raise NoEquilibrium(
            f"total force has the same sign ({f_lo:.3g}, {f_hi:.3g}) at "
            f"both bracket ends {bracket}; no root to find")
    else:
        root = brentq(f, lo, hi, rtol=rel_tol)
    h = 1e-3 * root
    slope = (f(root + h) - f(root - h)) / (2 * h)
    return Equilibrium(
        z_tilde_eq=root,
        stable=slope < 0,
        residual_force=f(root),
        method="numeric-root",
        analytic_estimate=_analytic_equilibrium(particle, environment, mode,
                                                include_static),
    )


def spin_threshold(particle: ParticleSpec, surface: SurfaceModel,
                   geometry: Geometry, quad: QuadratureConfig,
                   mode: str = "with_static",
                   environment: EnvironmentSpec = EnvironmentSpec(),
                   gravity: bool = True) -> float:
    """Smallest spin making the total ground-state force repulsive (zero).

    The magnetic force is exactly A*S + B*S^2 (broadband linear, static
    image quadratic) and the electric part C is S-independent, so the
    threshold is the positive root of B*S^2 + (A+G)*S + C with G the
    per-spin gravity coefficient.  A and B are extracted from force
    evaluations at S = 1 and S = 2, exact by the scaling invariants.
    Returns inf when no positive root exists.
    """
    if mode not in ("with_static", "without_static"):
        raise ValueError(f"mode must be with_static or without_static, "
                         f"got {mode!r}")
    include_static = mode == "with_static"
    env = environment if gravity else EnvironmentSpec(g=0.0)

    p1 = particle.with_spin(1.0)
    p2 = particle.with_spin(2.0)
    fb1 = force_breakdown(p1, surface, geometry, quad, mode="ground",
                          include_static=include_static, environment=env)
    fb2 = force_breakdown(p2, surface, geometry, quad, mode="ground",
                          include_static=include_static, environment=env)
    c = fb1.f_e
    f_m1 = fb1.f_m_minus + fb1.f_m_z
    f_m2 = fb2.f_m_minus + fb2.f_m_z
    b = (f_m2 - 2.0 * f_m1) / 2.0
    a = f_m1 - b
    g_per_spin = fb1.f_gravity  # at S = 1, gravity is exactly per-spin
    lin = a + g_per_spin

    if abs(b) < 1e-30:
        if lin <= 0:
            log.warning("no positive threshold: linear coefficient %.3g <= 0",
                        lin)
            return math.inf
        return -c / lin
    disc = lin * lin - 4.0 * b * c
    if disc < 0:
        log.warning("no positive threshold: negative discriminant %.3g", disc)
        return math.inf
    sq = math.sqrt(disc)
    roots = [(-lin + sq) / (2.0 * b), (-lin - sq) / (2.0 * b)]
    pos = sorted(r for r in roots if r > 0)
    if not pos:
        log.warning("no positive threshold: roots %s", roots)
        return math.inf
    return pos[0]


def approx_total_force_excited(particle: ParticleSpec, geometry: Geometry,
                               environment: EnvironmentSpec = EnvironmentSpec(),
                               ) -> float:
    """Two-term near-field force on |S, 0> above a perfect conductor.

    9 eta S(S+1)/(64 z^4) minus the dimensionless weight M g; valid only
    while the magnetic transition is non-retarded.
    """
    zt = geometry.z_tilde(particle)
    if particle.omega_tilde * zt >= 0.1:
        raise RegimeViolation(
            f"omega_m*z0/c = {particle.omega_tilde * zt:.3g}: the two-term "
            "force needs the non-retarded regime")
    cp = 9.0 * particle.eta * particle.spin * (particle.spin + 1.0) \
        / (64.0 * zt**4)
    return cp + gravity_force_dimensionless(particle, environment)
