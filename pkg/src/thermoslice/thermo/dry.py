"""Dry air as a perfect gas with constant specific heats."""

from __future__ import annotations

import numpy as np

from ..constants import GasConstants
from .base import EquationOfState


def dry_eos(rho, T, const: GasConstants):
    """Ideal-gas pressure p = rho R_d T.

    Raises ValueError on non-positive density or temperature.
    """
    rho = np.asarray(rho, dtype=float)
    T = np.asarray(T, dtype=float)
    if np.any(rho <= 0) or np.any(T <= 0):
        raise ValueError("dry_eos requires rho > 0 and T > 0")
    return rho * const.R_d * T


def dry_entropy_energy(T, p, const: GasConstants):
    """Specific internal energy and entropy of dry air at (T, p)."""
    T = np.asarray(T, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(T <= 0) or np.any(p <= 0):
        raise ValueError("dry_entropy_energy requires T > 0 and p > 0")
    u = const.C_vd * T
    eta = const.C_pd * np.log(T) - const.R_d * np.log(p) + const.eta0
    return u, eta


class DryAir(EquationOfState):
    """Single-component ideal gas; composition arguments are ignored."""

    species_all = ("d",)
    T_bracket = (120.0, 500.0)

    def __init__(self, const: GasConstants | None = None):
        self.const = const if const is not None else GasConstants()

    def reference_pressure(self):
        return self.const.p0

    def specific_volume(self, T, p, comp=None):
        return self.const.R_d * np.asarray(T, dtype=float) / np.asarray(p, dtype=float)

    def pressure_at_volume(self, T, v, comp=None):
        return self.const.R_d * np.asarray(T, dtype=float) / np.asarray(v, dtype=float)

    def entropy(self, T, p, comp=None):
        _, eta = dry_entropy_energy(T, p, self.const)
        return eta

    def internal_energy(self, T, p, comp=None):
        return self.const.C_vd * np.asarray(T, dtype=float)

    def partial_entropies(self, T, p, comp=None):
        return {"d": self.entropy(T, p, comp)}

    def partial_enthalpies(self, T, p, comp=None):
        return {"d": self.const.C_pd * np.asarray(T, dtype=float)}

    def heat_capacity_p(self, T, p, comp=None):
        return np.broadcast_to(self.const.C_pd, np.shape(T)).astype(float)

    def derivative_pack(self, T, p, comp=None):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        C_p = np.broadcast_to(float(c.C_pd), T.shape)
        C_v = np.broadcast_to(float(c.C_vd), T.shape)
        gamma = c.C_pd / c.C_vd
        c_s2 = gamma * c.R_d * T
        Gamma = c.R_d * T / (p * c.C_pd)
        Gamma1 = np.broadcast_to(gamma, T.shape)
        return C_v, C_p, c_s2, Gamma, Gamma1

    def exner(self, p):
        return (np.asarray(p, dtype=float) / self.const.p0) ** (self.const.R_d / self.const.C_pd)

    def shift_composition(self, comp, k, h):
        return comp
