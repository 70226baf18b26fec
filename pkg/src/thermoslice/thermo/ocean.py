"""Idealized two-component seawater (water + salt).

Everything derives from one Gibbs potential so the Gibbs relation holds
exactly:

    g(T, p, q) = a(T) + p_ref v_ref
               + (p - p_ref) v_ref (1 + alpha (T - T_ref) - beta q)
               - (kappa / 2) v_ref (p - p_ref)^2
               + mu_ref q + R_sigma T (q ln q + (1 - q) ln(1 - q)),

with a(T) = C_w (T - T ln(T/T_ref)) and q the salinity.  At the reference
pressure the density is exactly rho_ref / (1 + alpha (T - T_ref) - beta q)
and the internal energy is C_w T + mu_ref q plus O(p v_ref) corrections.
"""

from __future__ import annotations

import numpy as np

from ..constants import OceanConstants
from .base import EquationOfState


class OceanWater(EquationOfState):
    """Linear-expansion liquid with ideal salt mixing.

    The composition argument is the salinity q (scalar or array); the water
    concentration is 1 - q.
    """

    species_all = ("w", "sigma")
    T_bracket = (240.0, 330.0)

    def __init__(self, const: OceanConstants | None = None):
        self.const = const if const is not None else OceanConstants()

    def reference_pressure(self):
        return self.const.p_ref

    def _mixing(self, q):
        with np.errstate(divide="ignore", invalid="ignore"):
            term = np.where(q > 0, q * np.log(np.where(q > 0, q, 1.0)), 0.0)
            term = term + np.where(q < 1, (1 - q) * np.log(np.where(q < 1, 1 - q, 1.0)), 0.0)
        return term

    def gibbs(self, T, p, q):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        dp = p - c.p_ref
        a = c.C_w * (T - T * np.log(T / c.T_ref))
        return (a + c.p_ref * c.v_ref
                + dp * c.v_ref * (1.0 + c.alpha * (T - c.T_ref) - c.beta * q)
                - 0.5 * c.kappa * c.v_ref * dp ** 2
                + c.mu_ref * q + c.R_sigma * T * self._mixing(q))

    def specific_volume(self, T, p, comp):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        q = np.asarray(comp, dtype=float)
        return c.v_ref * (1.0 + c.alpha * (T - c.T_ref) - c.beta * q
                          - c.kappa * (p - c.p_ref))

    def pressure_at_volume(self, T, v, comp):
        c = self.const
        T = np.asarray(T, dtype=float)
        q = np.asarray(comp, dtype=float)
        return c.p_ref + (1.0 + c.alpha * (T - c.T_ref) - c.beta * q
                          - np.asarray(v, dtype=float) / c.v_ref) / c.kappa

    def entropy(self, T, p, comp):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        q = np.asarray(comp, dtype=float)
        return (c.C_w * np.log(T / c.T_ref) - c.alpha * c.v_ref * (p - c.p_ref)
                - c.R_sigma * self._mixing(q))

    def internal_energy(self, T, p, comp):
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        return (self.gibbs(T, p, comp) + T * self.entropy(T, p, comp)
                - p * self.specific_volume(T, p, comp))

    def chemical_potential_difference(self, T, p, q):
        """mu_sigma/m_sigma - mu_w/m_w = dg/dq at fixed (T, p)."""
        c = self.const
        q = np.asarray(q, dtype=float)
        return (-c.beta * c.v_ref * (np.asarray(p, dtype=float) - c.p_ref)
                + c.mu_ref + c.R_sigma * np.asarray(T, dtype=float)
                * np.log(q / (1.0 - q)))

    def chemical_potentials(self, T, p, comp):
        q = np.asarray(comp, dtype=float)
        g = self.gibbs(T, p, q)
        dmu = self.chemical_potential_difference(T, p, q)
        return {"w": g - q * dmu, "sigma": g + (1.0 - q) * dmu}

    def partial_entropies(self, T, p, comp):
        q = np.asarray(comp, dtype=float)
        eta = self.entropy(T, p, q)
        deta = -self.const.R_sigma * np.log(q / (1.0 - q))
        return {"w": eta - q * deta, "sigma": eta + (1.0 - q) * deta}

    def partial_enthalpies(self, T, p, comp):
        T = np.asarray(T, dtype=float)
        mu = self.chemical_potentials(T, p, comp)
        eta_k = self.partial_entropies(T, p, comp)
        return {k: mu[k] + T * eta_k[k] for k in mu}

    def heat_capacity_p(self, T, p, comp):
        return self.const.C_w + 0.0 * np.asarray(T, dtype=float)

    def derivative_pack(self, T, p, comp):
        c = self.const
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        v = self.specific_volume(T, p, comp)
        C_p = c.C_w + 0.0 * T
        v_T = c.alpha * c.v_ref
        v_p = -c.kappa * c.v_ref
        C_v = C_p + T * v_T ** 2 / v_p
        c_s2 = -v ** 2 * (C_p / C_v) / v_p
        Gamma = T * v_T / C_p
        Gamma1 = c_s2 / (v * p)
        return C_v, C_p, c_s2, Gamma, Gamma1

    def shift_composition(self, comp, k, h):
        q = np.asarray(comp, dtype=float)
        if k == "sigma":
            return q + h
        return q - h
