"""Irreversible-process parameterizations.

Linear flux/force closures with Onsager-Casimir structure: a symmetric
positive-semidefinite matrix L for the vectorial processes (heat conduction,
diffusion, Soret/Dufour cross effects), a scalar matrix Lcal coupling bulk
viscosity and phase conversion whose cross block is antisymmetric, and the
Newtonian shear stress.  Column sums of the species rows vanish so diffusion
fluxes and conversion rates sum to zero identically.

Matrix layout: row/column 0 is the thermal (vectorial) or trace (scalar)
entry; rows 1..n follow ``species``.  Entries may be scalars or arrays with
trailing field dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

IDENTITY3 = np.eye(3)


@dataclass
class TransportCoeffs:
    """Transport coefficients for one fluid model.

    species: labels of the diffusing species (order of matrix rows 1..n).
    conversion: labels (a, b) of the pair whose chemical-potential difference
    drives phase conversion, or None.
    """

    species: tuple
    mu: float = 0.0
    zeta: float = 0.0
    L: Optional[np.ndarray] = None
    Lcal: Optional[np.ndarray] = None
    v_r_star: np.ndarray = field(default_factory=lambda: np.zeros(3))
    conversion: Optional[tuple] = ("v", "c")

    def __post_init__(self):
        n = 1 + len(self.species)
        if self.L is None:
            self.L = np.zeros((n, n))
        if self.Lcal is None:
            self.Lcal = np.zeros((n, n))
        self.v_r_star = np.asarray(self.v_r_star, dtype=float)

    @property
    def is_zero(self) -> bool:
        return (self.mu == 0.0 and self.zeta == 0.0
                and not np.any(self.L) and not np.any(self.Lcal)
                and not np.any(self.v_r_star))

    def validate(self, tol: float = 1e-10):
        """Hard-fail on any structural violation (used at config load)."""
        if self.mu < 0 or self.zeta < 0:
            raise ValueError("viscosities must be non-negative")
        n = 1 + len(self.species)
        for name, M in (("L", self.L), ("Lcal", self.Lcal)):
            if M.shape[:2] != (n, n):
                raise ValueError(f"{name} must be {(n, n)}, got {M.shape}")
        scale = max(float(np.max(np.abs(self.L))), 1e-300)
        if np.max(np.abs(self.L - _swap01(self.L))) > tol * scale:
            raise ValueError("vectorial matrix L is not symmetric")
        if _min_sym_eig(self.L) < -tol * scale:
            raise ValueError("vectorial matrix L is not positive semidefinite")
        col_sums = np.sum(self.L[1:], axis=0)
        if np.max(np.abs(col_sums)) > tol * scale:
            raise ValueError("species rows of L must sum to zero per column")
        scale_c = max(float(np.max(np.abs(self.Lcal))), 1e-300)
        cross = self.Lcal[0, 1:] + self.Lcal[1:, 0]
        if np.max(np.abs(cross)) > tol * scale_c:
            raise ValueError("scalar matrix cross block must be antisymmetric")
        block = self.Lcal[1:, 1:]
        if np.max(np.abs(block - _swap01(block))) > tol * scale_c:
            raise ValueError("scalar matrix species block is not symmetric")
        sym = 0.5 * (self.Lcal + _swap01(self.Lcal))
        if _min_sym_eig(sym) < -tol * scale_c:
            raise ValueError("symmetric part of scalar matrix is not PSD")
        col_sums = np.sum(self.Lcal[1:], axis=0)
        if np.max(np.abs(col_sums)) > tol * scale_c:
            raise ValueError("species rows of Lcal must sum to zero per column")
        return self


def _swap01(M):
    return np.swapaxes(M, 0, 1)


def _min_sym_eig(M):
    """Smallest eigenvalue of the symmetric part over all trailing points."""
    sym = 0.5 * (M + _swap01(M))
    if sym.ndim == 2:
        return float(np.min(np.linalg.eigvalsh(sym)))
    pts = np.moveaxis(sym.reshape(sym.shape[0], sym.shape[1], -1), -1, 0)
    return float(np.min(np.linalg.eigvalsh(pts)))


@dataclass
class FluxSet:
    """Thermodynamic fluxes produced by the closures at one state."""

    sigma_fr: np.ndarray                 # (3, 3, ...) viscous stress
    j_s: np.ndarray                      # (3, ...) entropy flux
    j_k: dict                            # species -> (3, ...)
    jdot_k: dict                         # species -> (...)
    trace_sigma: np.ndarray              # Tr sigma_fr from the scalar closure
    j_r_star: Optional[np.ndarray] = None
    j_sr_star: Optional[np.ndarray] = None
    sigma_r_star: Optional[np.ndarray] = None


def deformation(grad_v):
    """Symmetric part of the velocity gradient; grad_v[i, j] = d v_i / d x_j."""
    return 0.5 * (grad_v + _swap01(grad_v))


def viscous_stress(grad_v, mu, zeta):
    """Newtonian stress 2 mu Def v + (zeta - 2 mu / 3) (div v) delta."""
    grad_v = np.asarray(grad_v, dtype=float)
    div_v = np.trace(grad_v)
    shape = (3, 3) + div_v.shape
    delta = IDENTITY3.reshape((3, 3) + (1,) * div_v.ndim)
    return 2.0 * mu * deformation(grad_v) + (zeta - 2.0 * mu / 3.0) * div_v * delta


def vectorial_fluxes(grad_T, grad_mu, coeffs: TransportCoeffs):
    """Linear vectorial closure -(j_s, j_k)^T = L (grad T, grad mu_k/m_k)^T.

    grad_T has shape (3, ...); grad_mu maps species -> same shape.
    Returns (j_s, {k: j_k}).
    """
    X = np.stack([np.asarray(grad_T, dtype=float)]
                 + [np.asarray(grad_mu[k], dtype=float) for k in coeffs.species])
    J = -_matvec(coeffs.L, X)
    j_k = {k: J[1 + i] for i, k in enumerate(coeffs.species)}
    return J[0], j_k


def scalar_fluxes(div_v, mu_over_m, coeffs: TransportCoeffs):
    """Scalar closure (Tr sigma_fr, -jdot_k) = Lcal ((div v)/3, mu_k/m_k).

    Returns (trace contribution to the stress, {k: jdot_k}).
    """
    X = np.stack([np.asarray(div_v, dtype=float) / 3.0]
                 + [np.asarray(mu_over_m[k], dtype=float) for k in coeffs.species])
    Y = _matvec(coeffs.Lcal, X)
    jdot = {k: -Y[1 + i] for i, k in enumerate(coeffs.species)}
    return Y[0], jdot


def _matvec(M, X):
    M = np.asarray(M, dtype=float)
    if M.ndim == 2:
        return np.einsum("ab,b...->a...", M, X)
    return np.einsum("ab...,b...->a...", M, X)


def convert_A_from_L(L, T, eta_k):
    """Map the (j_s, grad T) matrix L to the (j_s_h, grad T / T) matrix A.

    A = M L M^T with M = [[T, -T eta_1, ...], [0, I]].
    eta_k is the sequence of partial specific entropies in species order.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    M = np.eye(n)
    M[0, 0] = T
    M[0, 1:] = -T * np.asarray(eta_k, dtype=float)
    return M @ L @ M.T


def sensible_heat_flux(j_s, j_k, eta_k, T):
    """j_s_h = T (j_s - sum_k eta_k j_k)."""
    total = np.asarray(j_s, dtype=float).copy()
    for k, flux in j_k.items():
        total = total - eta_k[k] * np.asarray(flux, dtype=float)
    return T * total


def rain_fluxes(rho, rho_r, eta_r, v, v_r_star):
    """Mass flux, entropy flux and stress of the precipitating component.

    j_r_star = rho_r v_r_star, j_sr_star = rho_r eta_r v_r_star and
    sigma_r_star = rho v (x) v_r_star (total density in the stress, as
    printed).  The rain entropy density is rho_r eta_r with eta_r the partial
    specific entropy of rain water.
    """
    rho_r = np.asarray(rho_r, dtype=float)
    v_r = np.asarray(v_r_star, dtype=float)
    if v_r.ndim == 1:
        v_r = v_r.reshape((3,) + (1,) * rho_r.ndim)
    j_r_star = rho_r * v_r
    j_sr_star = rho_r * np.asarray(eta_r, dtype=float) * v_r
    v = np.asarray(v, dtype=float)
    sigma_r_star = np.asarray(rho, dtype=float) * v[:, None] * v_r[None, :]
    return j_r_star, j_sr_star, sigma_r_star


def entropy_production(T, sigma_fr, grad_v, j_s, grad_T, j_k, grad_mu,
                       jdot_k, mu_over_m, form="natural", eta_k=None):
    """Internal entropy production density.

    form="natural" uses the (j_s, grad T), (j_k, grad mu_k) pairing;
    form="sensible" the algebraically identical sensible-heat-flux form with
    isothermal chemical-potential gradients (requires eta_k).
    """
    work = np.einsum("ij...,ij...->...", sigma_fr, grad_v)
    conv = sum(jdot_k[k] * mu_over_m[k] for k in jdot_k) if jdot_k else 0.0
    if form == "natural":
        heat = _dot(j_s, grad_T)
        diff = sum(_dot(j_k[k], grad_mu[k]) for k in j_k) if j_k else 0.0
        return (work - heat - diff - conv) / T
    if form == "sensible":
        if eta_k is None:
            raise ValueError("sensible form requires partial entropies")
        j_s_h = sensible_heat_flux(j_s, j_k, eta_k, T)
        heat = _dot(j_s_h, grad_T) / T
        diff = sum(_dot(j_k[k], grad_mu[k] + eta_k[k] * np.asarray(grad_T))
                   for k in j_k) if j_k else 0.0
        return (work - heat - diff - conv) / T
    raise ValueError(f"unknown form {form!r}")


def _dot(a, b):
    return np.einsum("i...,i...->...", np.asarray(a, dtype=float),
                     np.asarray(b, dtype=float))


def modified_force_fluxes(grad_T_star, grad_mu_star, div_v, mu_star,
                          coeffs: TransportCoeffs):
    """Closures driven by the modified (starred) forces of the constrained
    model; contracts are identical to the unstarred operations."""
    j_s, j_k = vectorial_fluxes(grad_T_star, grad_mu_star, coeffs)
    trace_sigma, jdot = scalar_fluxes(div_v, mu_star, coeffs)
    return j_s, j_k, trace_sigma, jdot


# ---------------------------------------------------------------------------
# default coefficient builders


def pair_exchange_matrix(species, a, b, value):
    """Species-block matrix for a single exchange a <-> b with column sums
    zero: fluxes j_a = -j_b = -value * grad(mu_a - mu_b)."""
    n = 1 + len(species)
    ia, ib = 1 + species.index(a), 1 + species.index(b)
    value = np.asarray(value, dtype=float)
    M = np.zeros((n, n) + value.shape)
    M[ia, ia] = value
    M[ib, ib] = value
    M[ia, ib] = -value
    M[ib, ia] = -value
    return M


def fourier_fick_moist(T, rho, comp, const, k_T=0.0, D_v=0.0, mu=0.0,
                       zeta=0.0, tau_c=np.inf, L_0v=0.0, v_r_star=(0.0, 0.0, 0.0)):
    """Default moist-air coefficients.

    Fourier conduction maps to L_ss = k_T / T; a single vapor diffusivity D_v
    maps onto the vapor/dry exchange block via the ideal-mixture force
    linearization; the condensation rate is a relaxation model
    jdot_v = -(rho / tau_c) (mu_v/m_v - mu_c/m_c) / (R_v T), optionally
    coupled to bulk viscosity through the antisymmetric cross term L_0v.
    """
    species = ("d", "v", "c")
    n = 4
    T = np.asarray(T, dtype=float)
    shape = np.broadcast(T, np.asarray(rho)).shape
    L = np.zeros((n, n) + shape)
    L[0, 0] = k_T / T
    if D_v:
        g_d = const.R_d * comp.q_d
        g_v = const.R_v * comp.q_v
        G = g_d + g_v
        qsum = comp.q_d + comp.q_v
        ell = rho * D_v * comp.q_v * comp.q_d * G / (
            T * const.R_v * const.R_d * qsum ** 2)
        L += pair_exchange_matrix(species, "v", "d", ell)
    Lcal = np.zeros((n, n) + shape)
    Lcal[0, 0] = 9.0 * zeta
    if np.isfinite(tau_c):
        Lcal[2, 2] = rho / (tau_c * const.R_v * T)
        Lcal[3, 3] = Lcal[2, 2]
        Lcal[2, 3] = -Lcal[2, 2]
        Lcal[3, 2] = -Lcal[2, 2]
    if L_0v:
        Lcal[0, 2] = L_0v + 0.0 * T
        Lcal[2, 0] = -Lcal[0, 2]
        Lcal[0, 3] = -Lcal[0, 2]
        Lcal[3, 0] = Lcal[0, 2]
    return TransportCoeffs(species=species, mu=mu, zeta=zeta, L=L, Lcal=Lcal,
                           v_r_star=np.asarray(v_r_star, dtype=float),
                           conversion=("v", "c"))


def fourier_fick_ocean(T, rho, q_sigma, const, k_T=0.0, D_sigma=0.0, mu=0.0,
                       zeta=0.0):
    """Default seawater coefficients: conduction plus salt/water exchange."""
    species = ("w", "sigma")
    T = np.asarray(T, dtype=float)
    shape = np.broadcast(T, np.asarray(rho)).shape
    L = np.zeros((3, 3) + shape)
    L[0, 0] = k_T / T
    if D_sigma:
        q = np.asarray(q_sigma, dtype=float)
        # j_sigma = -rho D grad q from the ideal-mixing force R_s T / (q(1-q))
        ell = rho * D_sigma * q * (1.0 - q) / (const.R_sigma * T)
        L += pair_exchange_matrix(species, "sigma", "w", ell)
    Lcal = np.zeros((3, 3) + shape)
    Lcal[0, 0] = 9.0 * zeta
    return TransportCoeffs(species=species, mu=mu, zeta=zeta, L=L, Lcal=Lcal,
                           conversion=None)
