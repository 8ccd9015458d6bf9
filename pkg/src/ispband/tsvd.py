"""Truncated-SVD inversion of boundary data through the analytic system.

Because the left singular functions are (phased) Fourier modes on the
measurement circle, the modal coefficients c_m = (U, phi_m) of sampled
data come straight out of one FFT. Reconstruction keeps the modes
|m| <= N and divides each coefficient by its sigma, which is exactly
where stopband noise blows up; choosing N is the whole game, and the
band-edge integers from the bandwidth module are the natural policies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bandwidth import bound_lower, bound_upper, report as band_report
from .forward import SourceField, BoundaryData, source_grid
from .singular_system import (ProblemGeometry, build_spectrum, psi_eval,
                              _signed_hankel_phase)

__all__ = [
    "SigmaUnderflowError",
    "ModalCoefficients",
    "Reconstruction",
    "modal_decompose",
    "tsvd_reconstruct",
    "pick_truncation",
]

_POLICIES = ("B", "B-", "B+", "N")


class SigmaUnderflowError(ArithmeticError):
    """A requested mode's singular value is too small to divide by."""


@dataclass(frozen=True)
class ModalCoefficients:
    """Coefficients (U, phi_m) for m = -m_max .. m_max; index with [m + m_max]."""

    geometry: ProblemGeometry
    m_max: int
    c: np.ndarray = field(repr=False)

    def coeff(self, m: int) -> complex:
        if abs(m) > self.m_max:
            raise IndexError(f"mode {m} outside |m| <= {self.m_max}")
        return complex(self.c[m + self.m_max])


@dataclass(frozen=True)
class Reconstruction:
    """TSVD estimate of the source together with its truncation metadata."""

    source: SourceField
    N: int
    residual: float
    policy: str = "N"


def modal_decompose(U: BoundaryData, m_max: int) -> ModalCoefficients:
    """Project boundary samples onto the left singular functions.

    c_m = (2 pi R / N_s) sum_j U(theta_j) conj(phi_m(theta_j)), evaluated
    for all m at once via the FFT; exact for trigonometric polynomials of
    degree below N_s - m_max.
    """
    m_max = int(m_max)
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    n_s = U.n_s
    if n_s < 2 * m_max + 1:
        raise ValueError(
            f"n_s={n_s} cannot resolve modes up to {m_max} without aliasing; "
            f"need n_s >= {2 * m_max + 1}")
    g = U.geometry
    bins = np.fft.fft(U.values)
    front = math.sqrt(2.0 * math.pi * g.R) / n_s
    ms = np.arange(-m_max, m_max + 1)
    phases = np.array([_signed_hankel_phase(int(m), g.kappa) for m in ms])
    c = front * np.exp(-1j * phases) * bins[ms % n_s]
    return ModalCoefficients(geometry=g, m_max=m_max, c=c)


def tsvd_reconstruct(c: ModalCoefficients, N: int, g: ProblemGeometry | None = None,
                     n_r: int = 64, n_theta: int | None = None,
                     policy: str = "N") -> Reconstruction:
    """Invert the retained modes onto a fresh source grid.

    shat = sum over |m| <= N of c_m / sigma_{|m|} psi_m. The residual is
    the relative misfit between the retained coefficients and the modal
    content of the reconstruction pushed back through the forward map
    (quadrature-level zero when the grid resolves every retained mode).
    """
    N = int(N)
    if N < 0:
        raise ValueError("truncation index must be nonnegative")
    if N > c.m_max:
        raise ValueError(f"truncation {N} exceeds available modes {c.m_max}")
    if g is None:
        g = c.geometry
    if n_theta is None:
        n_theta = max(64, 2 * N + 8)
    table = build_spectrum(g, max(N, 1))
    # refuse to divide by anything that lost all precision
    for m in range(N + 1):
        if not np.isfinite(table.log_sigma[m]) or table.sigma[m] == 0.0:
            raise SigmaUnderflowError(
                f"sigma_{m} underflows at kappa0={g.kappa0:g}, "
                f"kappa={g.kappa:g}; mode {m} is unusable")
    grid = source_grid(g, n_r, n_theta)
    values = np.zeros((grid.n_r, grid.n_theta), dtype=complex)
    for m in range(-N, N + 1):
        values = values + (c.coeff(m) / table.sigma[abs(m)]) * psi_eval(
            m, g, grid.rho[:, None], grid.theta[None, :])
    shat = SourceField(geometry=g, rho=grid.rho,
                       radial_weights=grid.radial_weights,
                       theta=grid.theta, values=values)
    # modal misfit of the reconstruction against the retained data
    wa = shat.area_weights
    num = 0.0
    den = 0.0
    for m in range(-N, N + 1):
        coef = np.sum(wa * shat.values * np.conj(psi_eval(
            m, g, shat.rho[:, None], shat.theta[None, :])))
        num += abs(table.sigma[abs(m)] * coef - c.coeff(m))**2
        den += abs(c.coeff(m))**2
    residual = math.sqrt(num / den) if den > 0.0 else 0.0
    return Reconstruction(source=shat, N=N, residual=residual, policy=policy)


def pick_truncation(g: ProblemGeometry, policy: str,
                    n: int | None = None) -> int:
    """Map a truncation policy to its integer.

    policy is one of "B", "B-", "B+" (band-edge integers of the geometry)
    or "N" (manual, takes n).
    """
    if policy not in _POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {_POLICIES}")
    if policy == "N":
        if n is None or int(n) < 0:
            raise ValueError("manual policy needs a nonnegative N")
        return int(n)
    if policy == "B":
        return band_report(g).B
    if policy == "B-":
        return bound_lower(g.kappa0)
    return bound_upper(g.kappa0)
