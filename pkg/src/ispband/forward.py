"""Discretized forward operator and synthetic boundary data.

The source disk is discretized on a polar tensor grid, Gauss-Legendre in
radius on (0, R0) and uniform in angle, so the area element rho drho dtheta
turns into positive weights that sum to pi R0^2 exactly. The measurement
circle carries N_s equispaced samples with the arc-length weight 2 pi R / N_s.

The collocation matrix is scaled symmetrically by square roots of both
weight sets. That makes its ordinary SVD approximate the continuous
operator's singular system, which is what the cross-validation against the
closed-form spectrum leans on.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .singular_system import (ProblemGeometry, a_m, build_spectrum,
                              default_m_max, phi_eval, psi_eval)

__all__ = [
    "SourceField",
    "BoundaryData",
    "ForwardMatrix",
    "source_grid",
    "assemble_forward",
    "apply_forward_analytic",
    "synthesize_measurement",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SourceField:
    """Complex samples of a source on the polar quadrature grid of the disk.

    values[i, j] belongs to the node (rho[i], theta[j]). area_weights
    carries the full 2D quadrature weight of each node and sums to the
    disk area within round-off.
    """

    geometry: ProblemGeometry
    rho: np.ndarray = field(repr=False)
    radial_weights: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if np.any(self.radial_weights <= 0.0):
            raise ValueError("quadrature weights must be positive")
        area = math.pi * self.geometry.R0**2
        if abs(self.area_weights.sum() - area) > 1e-12 * area:
            raise ValueError("quadrature weights do not integrate the disk area")
        if self.values.shape != (len(self.rho), len(self.theta)):
            raise ValueError("values must be shaped (n_r, n_theta)")

    @property
    def n_r(self) -> int:
        return len(self.rho)

    @property
    def n_theta(self) -> int:
        return len(self.theta)

    @property
    def area_weights(self) -> np.ndarray:
        w_ang = 2.0 * math.pi / self.n_theta
        return np.outer(self.radial_weights * self.rho,
                        np.full(self.n_theta, w_ang))

    def norm(self) -> float:
        """Discrete L2 norm over the disk."""
        return math.sqrt(float(np.sum(self.area_weights
                                      * np.abs(self.values)**2)))


@dataclass(frozen=True)
class BoundaryData:
    """Field samples at N_s equispaced angles theta_j = 2 pi j / N_s."""

    geometry: ProblemGeometry
    values: np.ndarray = field(repr=False)
    noise_level: float = 0.0

    def __post_init__(self):
        if self.noise_level < 0.0:
            raise ValueError("noise_level must be nonnegative")

    @property
    def n_s(self) -> int:
        return len(self.values)

    @property
    def theta(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_s) / self.n_s

    def norm(self) -> float:
        """Discrete L2 norm over the measurement circle."""
        w = 2.0 * math.pi * self.geometry.R / self.n_s
        return math.sqrt(w * float(np.sum(np.abs(self.values)**2)))


@dataclass(frozen=True)
class ForwardMatrix:
    """Symmetrically weighted collocation matrix of the forward operator."""

    geometry: ProblemGeometry
    entries: np.ndarray = field(repr=False)
    n_r: int
    n_theta: int
    n_s: int
    area_weights: np.ndarray = field(repr=False)
    boundary_weight: float


def source_grid(g: ProblemGeometry, n_r: int, n_theta: int,
                fn=None) -> SourceField:
    """Source field on the quadrature grid, filled from fn(rho, theta) or zero.

    fn receives broadcast-ready arrays shaped (n_r, 1) and (1, n_theta).
    """
    if n_r < 2 or n_theta < 2:
        raise ValueError("grid must have at least 2 nodes per direction")
    x, w = np.polynomial.legendre.leggauss(int(n_r))
    rho = 0.5 * g.R0 * (x + 1.0)
    wr = 0.5 * g.R0 * w
    theta = 2.0 * math.pi * np.arange(int(n_theta)) / int(n_theta)
    if fn is None:
        values = np.zeros((int(n_r), int(n_theta)), dtype=complex)
    else:
        values = np.asarray(fn(rho[:, None], theta[None, :]), dtype=complex)
        values = np.broadcast_to(values, (int(n_r), int(n_theta))).copy()
    return SourceField(geometry=g, rho=rho, radial_weights=wr,
                       theta=theta, values=values)


def assemble_forward(g: ProblemGeometry, n_r: int, n_theta: int,
                     n_s: int) -> ForwardMatrix:
    """Weighted kernel matrix, one boundary sample per row.

    Entry (j, i) is sqrt(w_j) H_0^(1)(k |x_j - y_i|) sqrt(w_i) with w_j the
    boundary arc weight and w_i the area weight of source node i (nodes
    flattened row-major over (rho, theta)).
    """
    n_r, n_theta, n_s = int(n_r), int(n_theta), int(n_s)
    if n_r < 8:
        raise ValueError("n_r must be at least 8")
    if n_theta < 2 * math.ceil(g.kappa0) + 16:
        raise ValueError(
            f"n_theta={n_theta} undersamples the source disk; "
            f"need at least {2 * math.ceil(g.kappa0) + 16}")
    if n_s < 2 * math.ceil(g.kappa) + 16:
        raise ValueError(
            f"n_s={n_s} undersamples the boundary; "
            f"need at least {2 * math.ceil(g.kappa) + 16}")
    grid = source_grid(g, n_r, n_theta)
    wa = grid.area_weights.ravel()
    nodes = (grid.rho[:, None] * np.exp(1j * grid.theta[None, :])).ravel()
    bangles = 2.0 * math.pi * np.arange(n_s) / n_s
    bpoints = g.R * np.exp(1j * bangles)
    dist = np.abs(bpoints[:, None] - nodes[None, :])
    if np.any(dist == 0.0):
        raise ArithmeticError("a source node coincides with a boundary sample")
    wb = 2.0 * math.pi * g.R / n_s
    entries = (math.sqrt(wb) * special.hankel1(0, g.k * dist)
               * np.sqrt(wa)[None, :])
    log.debug("assembled %dx%d forward matrix", n_s, n_r * n_theta)
    return ForwardMatrix(geometry=g, entries=entries, n_r=n_r,
                         n_theta=n_theta, n_s=n_s,
                         area_weights=grid.area_weights,
                         boundary_weight=wb)


def apply_forward_analytic(s: SourceField, modes: int,
                           n_s: int | None = None) -> BoundaryData:
    """Forward map through the closed-form singular system.

    U(theta_j) = sum over |m| <= modes of sigma_{|m|} (s, psi_m) phi_m,
    with the inner product taken by the source field's own quadrature.
    Degenerate modes (A_m = 0) are skipped with a warning.
    """
    g = s.geometry
    modes = int(modes)
    table = build_spectrum(g, max(modes, 1))
    if n_s is None:
        n_s = 2 * max(modes, default_m_max(g.kappa0)) + 2
    n_s = int(n_s)
    bangles = 2.0 * math.pi * np.arange(n_s) / n_s
    wa = s.area_weights
    out = np.zeros(n_s, dtype=complex)
    for m in range(-modes, modes + 1):
        if table.a[abs(m)] == 0.0:
            warnings.warn(f"skipping degenerate mode m={m} (A_m = 0)",
                          RuntimeWarning, stacklevel=2)
            continue
        coef = np.sum(wa * s.values * np.conj(psi_eval(m, g, s.rho[:, None],
                                                       s.theta[None, :])))
        out += table.sigma[abs(m)] * coef * phi_eval(m, g, bangles)
    return BoundaryData(geometry=g, values=out, noise_level=0.0)


def synthesize_measurement(s: SourceField, noise_level: float, seed: int,
                           modes: int | None = None,
                           n_s: int | None = None) -> BoundaryData:
    """Boundary data from a source, optionally perturbed by complex noise.

    The perturbation is additive circular Gaussian noise whose RMS equals
    noise_level times the RMS of the clean trace; it is drawn once from a
    seeded generator, so fixed arguments give bitwise identical output.
    """
    if noise_level < 0.0:
        raise ValueError("noise_level must be nonnegative")
    g = s.geometry
    if modes is None:
        modes = default_m_max(g.kappa0)
    clean = apply_forward_analytic(s, modes, n_s=n_s)
    if noise_level == 0.0:
        return clean
    rng = np.random.default_rng(seed)
    n = clean.n_s
    rms = math.sqrt(float(np.mean(np.abs(clean.values)**2)))
    noise = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
    values = clean.values + noise_level * rms * noise
    return BoundaryData(geometry=g, values=values,
                        noise_level=float(noise_level))
