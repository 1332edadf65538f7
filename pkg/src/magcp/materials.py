"""Dielectric response models and Fresnel reflection coefficients.

Three surface response models are supported: a perfect conductor, a Drude
metal and a dissipationless plasma.  Reflection coefficients are provided
on the imaginary frequency axis (where they are real), in the static
xi -> 0 limit (handled analytically per model, the Drude limit being a
removable zero) and at real frequency (complex, with the propagating and
evanescent sectors on fixed branches).  Permeability is fixed at mu = 1.

Branch conventions at real frequency omega: for k_par < omega/c the
perpendicular decay constant is kappa_perp = -i*sqrt(omega^2/c^2 - k_par^2)
so that exp(-2*kappa_perp*z0) oscillates and stays bounded; for
k_par > omega/c, kappa_perp = +sqrt(k_par^2 - omega^2/c^2).  Inside the
medium kappa_2 takes the principal complex square root (Re >= 0).
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.constants as sc

log = logging.getLogger(__name__)


class NegativeFrequency(ValueError):
    pass


class DomainViolation(ValueError):
    """kappa_perp below the imaginary-axis integration domain xi/c."""


@dataclass(frozen=True)
class PerfectConductor:
    pass


@dataclass(frozen=True)
class Drude:
    omega_p: float  # rad/s
    gamma: float    # rad/s

    def __post_init__(self) -> None:
        if self.omega_p <= 0:
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.gamma > self.omega_p / 10:
            warnings.warn(
                f"gamma = {self.gamma:.3g} is not small against omega_p = "
                f"{self.omega_p:.3g}; the model assumes gamma << omega_p",
                stacklevel=2,
            )


@dataclass(frozen=True)
class Plasma:
    omega_p: float  # rad/s

    def __post_init__(self) -> None:
        if self.omega_p <= 0:
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")


SurfaceModel = PerfectConductor | Drude | Plasma


@dataclass(frozen=True)
class FresnelPair:
    r_s: complex
    r_p: complex


def permittivity_imag_axis(model: SurfaceModel, xi):
    """Real epsilon(i*xi) >= 1; PerfectConductor returns +inf."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise NegativeFrequency(f"xi must be >= 0, got {xi}")
    if isinstance(model, PerfectConductor):
        return np.full_like(xi, np.inf)
    if isinstance(model, Drude):
        with np.errstate(divide="ignore"):
            return 1.0 + model.omega_p**2 / (xi**2 + model.gamma * xi)
    if isinstance(model, Plasma):
        with np.errstate(divide="ignore"):
            return 1.0 + model.omega_p**2 / xi**2
    raise TypeError(f"unknown surface model {model!r}")


def permittivity_real_freq(model: SurfaceModel, omega: float) -> complex:
    """Analytic continuation of the imaginary-axis permittivity."""
    if omega <= 0:
        raise NegativeFrequency(f"omega must be positive, got {omega}")
    if isinstance(model, PerfectConductor):
        return complex(np.inf)
    if isinstance(model, Drude):
        return 1.0 - model.omega_p**2 / (omega**2 + 1j * model.gamma * omega)
    if isinstance(model, Plasma):
        return 1.0 - model.omega_p**2 / omega**2
    raise TypeError(f"unknown surface model {model!r}")


def _fresnel_from_eps(eps, kappa_perp, freq_over_c_sq):
    """r_s, r_p from epsilon and the vacuum kappa_perp.

    ``freq_over_c_sq`` is xi^2/c^2 on the imaginary axis (kappa_2^2 =
    kappa_perp^2 + (eps-1)*xi^2/c^2) and -omega^2/c^2 on the real axis.
    """
    kappa_2 = np.sqrt(kappa_perp**2 + (eps - 1.0) * freq_over_c_sq)
    r_s = (kappa_perp - kappa_2) / (kappa_perp + kappa_2)
    r_p = (eps * kappa_perp - kappa_2) / (eps * kappa_perp + kappa_2)
    return r_s, r_p


def fresnel_imag_axis(model: SurfaceModel, kappa_perp, xi: float) -> FresnelPair:
    """Reflection coefficients at imaginary frequency i*xi.

    ``kappa_perp`` may be a scalar or array; the integration domain
    requires kappa_perp >= xi/c.  xi = 0 dispatches to the analytic static
    limit.
    """
    if xi < 0:
        raise NegativeFrequency(f"xi must be >= 0, got {xi}")
    if xi == 0.0:
        return fresnel_static_limit(model, kappa_perp)
    kappa_perp = np.asarray(kappa_perp, dtype=float)
    if np.any(kappa_perp < xi / sc.c * (1.0 - 1e-12)):
        raise DomainViolation(
            f"kappa_perp = {kappa_perp!r} below xi/c = {xi / sc.c:.6g}")
    if isinstance(model, PerfectConductor):
        ones = np.ones_like(kappa_perp)
        return FresnelPair(-ones, ones)
    eps = permittivity_imag_axis(model, xi)
    r_s, r_p = _fresnel_from_eps(eps, kappa_perp, (xi / sc.c) ** 2)
    return FresnelPair(r_s, r_p)


def fresnel_static_limit(model: SurfaceModel, kappa_perp) -> FresnelPair:
    """xi -> 0 limit; r_p = +1 for every conducting model.

    r_s distinguishes the models: -1 (perfect conductor), 0 (Drude, the
    relaxation term kills the response) or the finite plasma value.
    """
    kappa_perp = np.asarray(kappa_perp, dtype=float)
    if np.any(kappa_perp <= 0):
        raise DomainViolation(f"kappa_perp must be positive, got {kappa_perp!r}")
    ones = np.ones_like(kappa_perp)
    if isinstance(model, PerfectConductor):
        return FresnelPair(-ones, ones)
    if isinstance(model, Drude):
        return FresnelPair(np.zeros_like(kappa_perp), ones)
    if isinstance(model, Plasma):
        root = np.sqrt(kappa_perp**2 + (model.omega_p / sc.c) ** 2)
        return FresnelPair((kappa_perp - root) / (kappa_perp + root), ones)
    raise TypeError(f"unknown surface model {model!r}")


def kappa_perp_real_freq(k_par, omega: float):
    """Vacuum decay constant at real frequency on the fixed branch.

    Propagating sector (k_par < omega/c): -i*sqrt(omega^2/c^2 - k_par^2).
    Evanescent sector: +sqrt(k_par^2 - omega^2/c^2).  Continuous at the
    light line.
    """
    k_par = np.asarray(k_par, dtype=float)
    k0_sq = (omega / sc.c) ** 2
    diff = k_par**2 - k0_sq
    return np.where(
        diff >= 0,
        np.sqrt(np.maximum(diff, 0.0)) + 0j,
        -1j * np.sqrt(np.maximum(-diff, 0.0)),
    )


def _fresnel_real(eps: complex, kappa_perp, omega: float) -> FresnelPair:
    """Fresnel pair from a complex permittivity at real frequency.

    kappa_2^2 = kappa_perp^2 - (eps - 1)*omega^2/c^2.  The principal
    square root (Re >= 0) is correct for lossy media; on the negative real
    axis (transparent medium below the light line in the medium) the
    outgoing-wave branch -i*sqrt(|.|) is taken, matching the gamma -> 0
    limit of the Drude model from below the real axis.
    """
    kappa_perp = np.asarray(kappa_perp, dtype=complex)
    w = kappa_perp**2 - (eps - 1.0) * (omega / sc.c) ** 2
    w = np.asarray(w, dtype=complex)
    neg_real = (w.imag == 0) & (w.real < 0)
    kappa_2 = np.where(neg_real,
                       -1j * np.sqrt(np.abs(w.real)),
                       np.sqrt(np.where(neg_real, 1.0, w)))
    r_s = (kappa_perp - kappa_2) / (kappa_perp + kappa_2)
    den_p = eps * kappa_perp + kappa_2
    # eps = 0 with k_par = 0 makes den_p vanish; the limit of r_p is -1.
    safe = np.where(den_p == 0, 1.0, den_p)
    r_p = np.where(den_p == 0, -1.0, (eps * kappa_perp - kappa_2) / safe)
    return FresnelPair(r_s, r_p)


def fresnel_real_freq(model: SurfaceModel, k_par, omega: float) -> FresnelPair:
    """Complex reflection coefficients at real frequency omega."""
    if omega <= 0:
        raise NegativeFrequency(f"omega must be positive, got {omega}")
    k_par = np.asarray(k_par, dtype=float)
    if np.any(k_par < 0):
        raise DomainViolation(f"k_par must be >= 0, got {k_par!r}")
    kappa_perp = kappa_perp_real_freq(k_par, omega)
    if isinstance(model, PerfectConductor):
        ones = np.ones_like(kappa_perp, dtype=float)
        return FresnelPair(-ones, ones)
    eps = permittivity_real_freq(model, omega)
    return _fresnel_real(eps, kappa_perp, omega)


def fresnel_real_freq_from_kappa(model: SurfaceModel, kappa_perp,
                                 omega: float) -> FresnelPair:
    """As fresnel_real_freq but parametrized directly by kappa_perp.

    Used by the substitution u = sqrt(k_m^2 - k_par^2) in the propagating
    sector, where kappa_perp = -i*u is known exactly and recomputing it
    from k_par would lose precision near the light line.
    """
    if isinstance(model, PerfectConductor):
        shape = np.shape(np.asarray(kappa_perp))
        ones = np.ones(shape) if shape else 1.0
        return FresnelPair(-ones, ones)
    eps = permittivity_real_freq(model, omega)
    return _fresnel_real(eps, kappa_perp, omega)
