"""Moist air: dry air + vapor + airborne condensate + rain.

The gas phase is an ideal mixture of dry air and vapor; condensate and rain
are incompressible liquid water sharing the liquid specific heat and chemical
potential.  The mixture entropy is the ideal-mixture form

    eta = q_d (C_pd ln(T/T0) - R_d ln(p_d/p0))
        + q_v (C_pv ln(T/T0) - R_v ln(p_v/p0_star) + L(T0)/T0)
        + (q_c + q_r) C_l ln(T/T0),

with p_d, p_v the partial pressures.  With these reference constants the
Gibbs relation holds exactly and

    mu_v/m_v - mu_c/m_c = R_v T ln(p_v / p_star(T)),

so the condensation force vanishes exactly at saturation.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..constants import Composition, GasConstants
from .base import EquationOfState, SolverError, newton_bisect


def latent_heat(T, const: GasConstants):
    """Specific latent heat of vaporization L(T) = L00 + (C_pv - C_l) T."""
    return const.L00 + (const.C_pv - const.C_l) * np.asarray(T, dtype=float)


def saturation_vapor_pressure(T, const: GasConstants):
    """Clausius-Clapeyron integrated for the affine L(T)."""
    T = np.asarray(T, dtype=float)
    c = const
    return (c.p0_star * (T / c.T0) ** ((c.C_pv - c.C_l) / c.R_v)
            * np.exp((c.L00 / c.R_v) * (1.0 / c.T0 - 1.0 / T)))


def saturation_specific_humidity(p, T, const: GasConstants):
    """q_star = eps p_star / (p - (1 - eps) p_star).

    Raises ValueError where the denominator is not positive (the state is
    outside the validity of the saturation relation).
    """
    p = np.asarray(p, dtype=float)
    p_star = saturation_vapor_pressure(T, const)
    denom = p - (1.0 - const.epsilon) * p_star
    if np.any(denom <= 0):
        raise ValueError("saturation-dominated state: p <= (1 - eps) p_star(T)")
    return const.epsilon * p_star / denom


def saturated_vapor_concentration(p, T, q_w, q_r, const: GasConstants):
    """Vapor concentration of saturated moist air with condensate and rain.

    q_v_star = (1 - q_w - q_r) eps p_star / (p - p_star); the prefactor is the
    dry-air concentration.  Kept in one place so the relation can be swapped.
    """
    p = np.asarray(p, dtype=float)
    p_star = saturation_vapor_pressure(T, const)
    return (1.0 - np.asarray(q_w) - np.asarray(q_r)) * const.epsilon * p_star / (p - p_star)


def saturation_partition(p, T, q_w, q_r, const: GasConstants):
    """Split airborne water q_w into (q_v, q_c) by the saturation condition."""
    q_w = np.asarray(q_w, dtype=float)
    q_star = saturation_specific_humidity(p, T, const)
    saturated = q_w >= q_star
    q_v = np.where(saturated,
                   saturated_vapor_concentration(p, T, q_w, q_r, const), q_w)
    q_v = np.minimum(q_v, q_w)
    return q_v, q_w - q_v


def moist_pressure(rho, T, comp: Composition, const: GasConstants, form="partial"):
    """Moist equation of state p = (rho_d R_d + rho_v R_v) T.

    form="virtual" evaluates the algebraically identical virtual-temperature
    expression rho R_d T_v with T_v = (q_d + q_v / eps) T.
    """
    rho = np.asarray(rho, dtype=float)
    T = np.asarray(T, dtype=float)
    if form == "partial":
        return rho * (comp.q_d * const.R_d + comp.q_v * const.R_v) * T
    if form == "virtual":
        T_v = (comp.q_d + comp.q_v / const.epsilon) * T
        return rho * const.R_d * T_v
    raise ValueError(f"unknown form {form!r}")


def moist_internal_energy(T, comp: Composition, const: GasConstants, form="intercept"):
    """Specific internal energy of moist air.

    Both printed forms are available: "intercept" uses C_vv T + L00 for the
    vapor, "latent" uses L(T) - R_v T plus the liquid heat for all water.
    """
    T = np.asarray(T, dtype=float)
    c = const
    if form == "intercept":
        return (comp.q_d * c.C_vd * T
                + comp.q_v * (c.C_vv * T + c.L00)
                + (comp.q_c + comp.q_r) * c.C_l * T)
    if form == "latent":
        return (comp.q_d * c.C_vd * T
                + comp.q_v * (latent_heat(T, c) - c.R_v * T)
                + (comp.q_v + comp.q_c + comp.q_r) * c.C_l * T)
    raise ValueError(f"unknown form {form!r}")


def gas_mole_fractions(comp: Composition, const: GasConstants):
    """Mole fractions of dry air and vapor within the gas phase."""
    g_d = const.R_d * comp.q_d
    g_v = const.R_v * comp.q_v
    G = g_d + g_v
    return g_d / G, g_v / G


def partial_pressures(p, comp: Composition, const: GasConstants):
    x_d, x_v = gas_mole_fractions(comp, const)
    return x_d * np.asarray(p, dtype=float), x_v * np.asarray(p, dtype=float)


def _component_entropies(T, p, comp, const):
    """Partial specific entropies (eta_d, eta_v, eta_l) of the mixture.

    For the ideal mixture these coincide with the per-component entropies at
    the partial pressures.  Where a gas concentration vanishes the
    corresponding value is left at -inf; total entropy weights it by zero.
    """
    c = const
    T = np.asarray(T, dtype=float)
    p_d, p_v = partial_pressures(p, comp, const)
    lnT = np.log(T / c.T0)
    with np.errstate(divide="ignore", invalid="ignore"):
        eta_d = c.C_pd * lnT - c.R_d * np.log(p_d / c.p0)
        eta_v = (c.C_pv * lnT - c.R_v * np.log(p_v / c.p0_star)
                 + c.L_v_T0 / c.T0)
    eta_l = c.C_l * lnT
    return eta_d, eta_v, eta_l


def moist_entropy(T, p, comp: Composition, const: GasConstants):
    """Ideal-mixture specific entropy of moist air (see module docstring)."""
    eta_d, eta_v, eta_l = _component_entropies(T, p, comp, const)
    q_d = np.asarray(comp.q_d, dtype=float)
    q_v = np.asarray(comp.q_v, dtype=float)
    if np.any((q_d < 0) | (q_v < 0)):
        raise ValueError("negative gas concentration")
    with np.errstate(invalid="ignore"):
        term_d = np.where(q_d > 0, q_d * eta_d, 0.0)
        term_v = np.where(q_v > 0, q_v * eta_v, 0.0)
    return term_d + term_v + (comp.q_c + comp.q_r) * eta_l


class MoistAir(EquationOfState):
    """Equation of state of the dry-air / water mixture.

    Composition arguments are ``Composition`` instances; all state functions
    treat the four concentrations as independent coordinates (the constraint
    sum(q) = 1 holds on physical states).
    """

    species_all = ("d", "v", "c", "r")
    T_bracket = (150.0, 400.0)

    def __init__(self, const: GasConstants | None = None):
        self.const = const if const is not None else GasConstants()

    def reference_pressure(self):
        return self.const.p0

    def gas_constant(self, comp):
        return comp.q_d * self.const.R_d + comp.q_v * self.const.R_v

    def specific_volume(self, T, p, comp):
        return self.gas_constant(comp) * np.asarray(T, dtype=float) / np.asarray(p, dtype=float)

    def pressure_at_volume(self, T, v, comp):
        return self.gas_constant(comp) * np.asarray(T, dtype=float) / np.asarray(v, dtype=float)

    def entropy(self, T, p, comp):
        return moist_entropy(T, p, comp, self.const)

    def internal_energy(self, T, p, comp):
        return moist_internal_energy(T, comp, self.const)

    def partial_entropies(self, T, p, comp):
        eta_d, eta_v, eta_l = _component_entropies(T, p, comp, self.const)
        return {"d": eta_d, "v": eta_v, "c": eta_l, "r": eta_l}

    def partial_enthalpies(self, T, p, comp):
        c = self.const
        T = np.asarray(T, dtype=float)
        h_l = c.C_l * T
        return {"d": c.C_pd * T, "v": c.C_pv * T + c.L00, "c": h_l, "r": h_l}

    def heat_capacity_p(self, T, p, comp):
        c = self.const
        return (comp.q_d * c.C_pd + comp.q_v * c.C_pv
                + (comp.q_c + comp.q_r) * c.C_l) + 0.0 * np.asarray(T, dtype=float)

    def derivative_pack(self, T, p, comp):
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        C_p = self.heat_capacity_p(T, p, comp)
        R_m = self.gas_constant(comp) + 0.0 * T
        C_v = C_p - R_m
        gamma = C_p / C_v
        c_s2 = gamma * R_m * T
        Gamma = R_m * T / (p * C_p)
        Gamma1 = gamma + 0.0 * T
        return C_v, C_p, c_s2, Gamma, Gamma1

    def dp_dq_at_volume_entropy(self, T, p, comp):
        """Analytic dp/dq_k at fixed (v, eta) for the ideal mixture."""
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        C_v, C_p, _, _, _ = self.derivative_pack(T, p, comp)
        R_m = self.gas_constant(comp)
        eta_k = self.partial_entropies(T, p, comp)
        R_of = {"d": self.const.R_d, "v": self.const.R_v, "c": 0.0, "r": 0.0}
        return {k: p * (R_of[k] / R_m + (R_of[k] - eta_k[k]) / C_v)
                for k in self.species_all}

    def theta_closed_form(self, T, p, comp):
        """Gas-condensate potential temperature T (p0/p)^((C_p - C_v)/C_p)."""
        C_v, C_p, _, _, _ = self.derivative_pack(T, p, comp)
        return np.asarray(T, dtype=float) * (self.const.p0 / np.asarray(p, dtype=float)) ** ((C_p - C_v) / C_p)

    def shift_composition(self, comp, k, h):
        return replace(comp, **{f"q_{k}": getattr(comp, f"q_{k}") + h})

    # ---- state inversion with saturation partition -----------------------

    def solve_state(self, v, q_w, q_r=0.0, eta=None, u=None, T_init=None):
        """Diagnose (T, p, q_v, q_c) from specific volume, entropy or energy,
        airborne water and rain.

        Solves the unsaturated branch (q_v = q_w) first; points violating
        q_w < q_star are re-solved on the saturated branch where the vapor
        pressure equals p_star(T) and p = p_star + rho q_d R_d T.  The
        consistent branch is kept; at the boundary both coincide.
        """
        v = np.asarray(v, dtype=float)
        q_w = np.asarray(q_w, dtype=float)
        q_r = np.asarray(q_r, dtype=float)
        if (eta is None) == (u is None):
            raise ValueError("provide exactly one of eta, u")
        target = np.asarray(eta if u is None else u, dtype=float)
        out_shape = np.broadcast(v, q_w, q_r, target).shape
        shape = out_shape if out_shape != () else (1,)
        v_b = np.broadcast_to(v, shape).astype(float)
        q_w_b = np.broadcast_to(q_w, shape).astype(float)
        q_r_b = np.broadcast_to(q_r, shape).astype(float)
        t_b = np.broadcast_to(target, shape).astype(float)

        comp_u = Composition(q_d=1.0 - q_w_b - q_r_b, q_v=q_w_b,
                             q_c=np.zeros(shape), q_r=q_r_b)
        kw = {"eta": t_b} if u is None else {"u": t_b}
        T, p = self.solve_Tp(v_b, comp_u, T_init=T_init, **kw)
        q_v = q_w_b.copy()
        q_c = np.zeros(shape)

        q_star = saturation_specific_humidity(p, T, self.const)
        sat = np.asarray(q_w_b > q_star)
        if np.any(sat):
            Ts, ps, qvs = self._solve_saturated(
                v_b[sat], q_w_b[sat], q_r_b[sat], t_b[sat],
                use_eta=(u is None), T_init=np.asarray(T)[sat])
            keep = qvs <= q_w_b[sat]
            idx = np.flatnonzero(sat.ravel())[keep.ravel()]
            T = np.asarray(T).copy()
            p = np.asarray(p).copy()
            T.ravel()[idx] = Ts.ravel()[keep.ravel()]
            p.ravel()[idx] = ps.ravel()[keep.ravel()]
            q_v.ravel()[idx] = qvs.ravel()[keep.ravel()]
            q_c.ravel()[idx] = (q_w_b[sat][keep] - qvs[keep]).ravel()
        if out_shape == ():
            return (T.reshape(()), p.reshape(()), q_v.reshape(()), q_c.reshape(()))
        return T, p, q_v, q_c

    def _solve_saturated(self, v, q_w, q_r, target, use_eta, T_init):
        const = self.const
        rho = 1.0 / v
        q_d = 1.0 - q_w - q_r

        def state_of(T):
            p_star = saturation_vapor_pressure(T, const)
            p = p_star + rho * q_d * const.R_d * T
            q_v = p_star / (rho * const.R_v * T)
            comp = Composition(q_d=q_d, q_v=q_v, q_c=q_w - q_v, q_r=q_r)
            return p, comp

        def resid(T):
            p, comp = state_of(T)
            if use_eta:
                return moist_entropy(T, p, comp, const) - target
            return moist_internal_energy(T, comp, const) - target

        T = newton_bisect(resid, self.T_bracket, T_init=T_init, shape=v.shape)
        p, comp = state_of(T)
        return T, p, np.asarray(comp.q_v)
