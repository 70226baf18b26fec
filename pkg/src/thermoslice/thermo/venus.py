"""One-component ideal gas with power-law specific heat C_p(T) = C_p0 (T/T0)^nu."""

from __future__ import annotations

import numpy as np

from ..constants import VenusConstants
from .base import EquationOfState


class VenusGas(EquationOfState):
    """Ideal gas with temperature-dependent C_p (CO2-like atmosphere)."""

    species_all = ("g",)
    T_bracket = (100.0, 1200.0)

    def __init__(self, const: VenusConstants | None = None):
        self.const = const if const is not None else VenusConstants()

    def reference_pressure(self):
        return self.const.p0

    def specific_volume(self, T, p, comp=None):
        return self.const.R * np.asarray(T, dtype=float) / np.asarray(p, dtype=float)

    def pressure_at_volume(self, T, v, comp=None):
        return self.const.R * np.asarray(T, dtype=float) / np.asarray(v, dtype=float)

    def entropy(self, T, p, comp=None):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        return (c.C_p0 / c.nu) * ((T / c.T0) ** c.nu - 1.0) - c.R * np.log(p / c.p0)

    def internal_energy(self, T, p, comp=None):
        c = self.const
        T = np.asarray(T, dtype=float)
        return c.C_p0 * c.T0 / (c.nu + 1.0) * (T / c.T0) ** (c.nu + 1.0) - c.R * T

    def partial_entropies(self, T, p, comp=None):
        return {"g": self.entropy(T, p, comp)}

    def partial_enthalpies(self, T, p, comp=None):
        c = self.const
        T = np.asarray(T, dtype=float)
        return {"g": c.C_p0 * c.T0 / (c.nu + 1.0) * (T / c.T0) ** (c.nu + 1.0)}

    def heat_capacity_p(self, T, p, comp=None):
        return self.const.C_p(np.asarray(T, dtype=float))

    def derivative_pack(self, T, p, comp=None):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        C_p = c.C_p(T)
        C_v = C_p - c.R
        gamma = C_p / C_v
        c_s2 = gamma * c.R * T
        Gamma = c.R * T / (p * C_p)
        return C_v, C_p, c_s2, Gamma, gamma

    def shift_composition(self, comp, k, h):
        return comp
