"""Shared equation-of-state machinery.

Every EOS exposes the same primitive state functions of (T, p, composition):
specific volume, specific entropy and specific internal energy, plus an
explicit pressure law at fixed specific volume.  Everything else (specific
heats, sound speed, adiabatic gradient, partial quantities, temperature
inversions, potential temperature) is derived here, analytically where a
subclass overrides and by centered finite differences otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp


class SolverError(RuntimeError):
    """Nonlinear or linear solve failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass
class ThermoEval:
    """Diagnosed thermodynamic state at a point or over a field.

    Per-species entries are dicts keyed by the EOS species labels; rain uses
    the liquid-water values.
    """

    T: np.ndarray
    p: np.ndarray
    u: np.ndarray
    eta: np.ndarray
    mu_over_m: dict
    eta_k: dict
    h_k: dict
    C_v: np.ndarray
    C_p: np.ndarray
    c_s2: np.ndarray
    Gamma: np.ndarray
    Gamma1: np.ndarray
    theta: Optional[np.ndarray] = None


# relative step for centered finite differences on the EOS primitives
FD_STEP = 1e-6


class EquationOfState:
    """Base class; subclasses provide the primitives and may override any
    derived quantity with an analytic expression."""

    #: labels of the species appearing in partial derivatives
    species_all: tuple = ()
    #: default temperature bracket for inversion fallback [K]
    T_bracket: tuple = (150.0, 400.0)

    # ---- primitives -----------------------------------------------------

    def specific_volume(self, T, p, comp):
        raise NotImplementedError

    def entropy(self, T, p, comp):
        raise NotImplementedError

    def internal_energy(self, T, p, comp):
        raise NotImplementedError

    def pressure_at_volume(self, T, v, comp):
        """Explicit pressure law p(T, v, q)."""
        raise NotImplementedError

    # ---- simple derived quantities --------------------------------------

    def enthalpy(self, T, p, comp):
        return self.internal_energy(T, p, comp) + p * self.specific_volume(T, p, comp)

    def heat_capacity_p(self, T, p, comp):
        h = FD_STEP * T
        return T * (self.entropy(T + h, p, comp) - self.entropy(T - h, p, comp)) / (2 * h)

    def _volume_derivatives(self, T, p, comp):
        hT = FD_STEP * T
        hp = FD_STEP * p
        v_T = (self.specific_volume(T + hT, p, comp)
               - self.specific_volume(T - hT, p, comp)) / (2 * hT)
        v_p = (self.specific_volume(T, p + hp, comp)
               - self.specific_volume(T, p - hp, comp)) / (2 * hp)
        return v_T, v_p

    def partial_entropies(self, T, p, comp) -> dict:
        raise NotImplementedError

    def partial_enthalpies(self, T, p, comp) -> dict:
        raise NotImplementedError

    def chemical_potentials(self, T, p, comp) -> dict:
        """mu_k / m_k = h_k - T eta_k for each species."""
        eta_k = self.partial_entropies(T, p, comp)
        h_k = self.partial_enthalpies(T, p, comp)
        return {k: h_k[k] - T * eta_k[k] for k in h_k}

    # ---- full derivative pack -------------------------------------------

    def derivative_pack(self, T, p, comp):
        """(C_v, C_p, c_s2, Gamma, Gamma1) from the primitives.

        Uses the exact relations C_p - C_v = -T v_T^2 / v_p,
        c_s^2 = -v^2 (C_p/C_v) / v_p and Gamma = T v_T / C_p.
        """
        v = self.specific_volume(T, p, comp)
        C_p = self.heat_capacity_p(T, p, comp)
        v_T, v_p = self._volume_derivatives(T, p, comp)
        C_v = C_p + T * v_T ** 2 / v_p
        c_s2 = -v ** 2 * (C_p / C_v) / v_p
        Gamma = T * v_T / C_p
        Gamma1 = c_s2 / (v * p)
        return C_v, C_p, c_s2, Gamma, Gamma1

    def dp_deta_at_volume(self, T, p, comp):
        """dp/d(eta) at fixed (v, q); equals rho^2 c_s^2 Gamma."""
        v = self.specific_volume(T, p, comp)
        _, _, c_s2, Gamma, _ = self.derivative_pack(T, p, comp)
        return c_s2 * Gamma / v ** 2

    def dp_dq_at_volume_entropy(self, T, p, comp) -> dict:
        """dp/dq_k at fixed (v, eta); centered differences on the inversion."""
        v = self.specific_volume(T, p, comp)
        eta = self.entropy(T, p, comp)
        out = {}
        for k in self.species_all:
            h = FD_STEP
            cp_p = self.shift_composition(comp, k, +h)
            cp_m = self.shift_composition(comp, k, -h)
            Tp, pp = self.solve_Tp(v, eta=eta, comp=cp_p, T_init=T)
            Tm, pm = self.solve_Tp(v, eta=eta, comp=cp_m, T_init=T)
            out[k] = (pp - pm) / (2 * h)
        return out

    def shift_composition(self, comp, k, h):
        """Off-shell perturbation of the concentration q_k alone."""
        raise NotImplementedError

    def evaluate(self, T, p, comp=None, include_theta=False, theta_mode="inversion"):
        """Full ThermoEval at (T, p, comp)."""
        T = np.asarray(T, dtype=float)
        p = np.asarray(p, dtype=float)
        C_v, C_p, c_s2, Gamma, Gamma1 = self.derivative_pack(T, p, comp)
        ev = ThermoEval(
            T=T, p=p,
            u=self.internal_energy(T, p, comp),
            eta=self.entropy(T, p, comp),
            mu_over_m=self.chemical_potentials(T, p, comp),
            eta_k=self.partial_entropies(T, p, comp),
            h_k=self.partial_enthalpies(T, p, comp),
            C_v=C_v, C_p=C_p, c_s2=c_s2, Gamma=Gamma, Gamma1=Gamma1,
        )
        if include_theta:
            ev.theta = potential_temperature(self, p, T, comp, mode=theta_mode)
        return ev

    # ---- temperature inversions ------------------------------------------

    def reference_pressure(self) -> float:
        raise NotImplementedError

    def solve_Tp(self, v, comp, eta=None, u=None, T_init=None):
        """Invert (v, eta) or (v, u) for (T, p) at fixed composition.

        Newton iteration on T with the explicit pressure law p(T, v, q);
        monotone in T, with bisection safeguarding on the EOS bracket.
        """
        v = np.asarray(v, dtype=float)
        if (eta is None) == (u is None):
            raise ValueError("provide exactly one of eta, u")
        if eta is not None:
            target = np.asarray(eta, dtype=float)

            def resid(T):
                return self.entropy(T, self.pressure_at_volume(T, v, comp), comp) - target
        else:
            target = np.asarray(u, dtype=float)

            def resid(T):
                return self.internal_energy(T, self.pressure_at_volume(T, v, comp), comp) - target

        T = newton_bisect(resid, self.T_bracket, T_init=T_init,
                          shape=np.broadcast(v, target).shape)
        return T, self.pressure_at_volume(T, v, comp)


def newton_bisect(resid, bracket, T_init=None, shape=(), maxiter=60,
                  rtol=1e-14, scale=None):
    """Vectorized safeguarded Newton for residuals monotone increasing in T.

    The derivative is taken by a one-sided secant; steps leaving the current
    bracket fall back to bisection.  Iterates essentially to machine
    precision so round trips through the inversion are exact to rounding.
    """
    scalar_out = shape == ()
    work = (1,) if scalar_out else shape
    lo = np.full(work, float(bracket[0]))
    hi = np.full(work, float(bracket[1]))
    f_lo = resid(lo)
    f_hi = resid(hi)
    bad = (f_lo > 0) | (f_hi < 0)
    if np.any(bad):
        raise SolverError(
            f"temperature bracket {bracket} does not enclose a root "
            f"({int(np.sum(bad))} points)",
            residual=float(np.max(np.abs(np.where(bad, f_lo, 0.0)))))
    if T_init is None:
        T = 0.5 * (lo + hi)
    else:
        T = np.broadcast_to(np.asarray(T_init, dtype=float), work).copy()
    np.clip(T, lo, hi, out=T)
    f = resid(T)
    if scale is None:
        scale = np.maximum(np.abs(f_lo), np.abs(f_hi))
    converged = False
    for _ in range(maxiter):
        active = np.abs(f) > rtol * scale
        if not np.any(active):
            converged = True
            break
        pos = f > 0
        hi = np.where(pos & active, T, hi)
        lo = np.where(~pos & active, T, lo)
        h = 1e-7 * np.maximum(np.abs(T), 1.0)
        df = (resid(T + h) - f) / h
        with np.errstate(divide="ignore", invalid="ignore"):
            T_new = T - f / df
        fallback = ~np.isfinite(T_new) | (T_new <= lo) | (T_new >= hi)
        T_new = np.where(fallback, 0.5 * (lo + hi), T_new)
        T = np.where(active, T_new, T)
        f = resid(T)
    if not converged:
        worst = float(np.max(np.abs(f) / np.maximum(scale, 1e-300)))
        if worst > 1e-10:
            raise SolverError(
                f"temperature inversion did not converge, relative residual {worst:.3e}",
                residual=worst)
    return T.reshape(()) if scalar_out else T


def potential_temperature(eos, p, T, comp, mode="inversion", p_ref=None,
                          rtol=1e-10):
    """Temperature attained by adiabatic displacement to the reference pressure.

    mode="inversion" solves eta(theta, p_ref, q) = eta(T, p, q); the
    "integral" mode integrates dT/dp = Gamma(p, T, q) along the adiabat with
    an adaptive ODE solver (pointwise; intended for verification, not fields).
    """
    if p_ref is None:
        p_ref = eos.reference_pressure()
    p = np.asarray(p, dtype=float)
    T = np.asarray(T, dtype=float)
    if mode == "inversion":
        target = eos.entropy(T, p, comp)

        def resid(theta):
            return eos.entropy(theta, np.broadcast_to(p_ref, theta.shape), comp) - target

        lo, hi = eos.T_bracket
        shape = np.broadcast(p, T).shape
        return newton_bisect(resid, (0.3 * lo, 6.0 * hi), T_init=T, shape=shape)
    if mode == "integral":
        shape = np.broadcast(p, T).shape
        pb = np.broadcast_to(p, shape).ravel()
        Tb = np.broadcast_to(T, shape).ravel()
        out = np.empty(pb.shape)
        for i in range(pb.size):
            ci = _comp_at(comp, i, shape)

            def lapse(pp, TT):
                _, _, _, Gamma, _ = eos.derivative_pack(TT[0], pp, ci)
                return [Gamma]

            if pb[i] == p_ref:
                out[i] = Tb[i]
                continue
            sol = solve_ivp(lapse, (pb[i], p_ref), [Tb[i]], rtol=rtol,
                            atol=rtol * Tb[i], method="RK45", dense_output=False)
            if not sol.success:
                raise SolverError(f"adiabat integration failed: {sol.message}")
            out[i] = sol.y[0, -1]
        return out.reshape(shape) if shape else float(out[0])
    raise ValueError(f"unknown potential temperature mode {mode!r}")


def _comp_at(comp, i, shape):
    """Extract the composition of the i-th flattened point."""
    def pick(q):
        q = np.asarray(q, dtype=float)
        if q.shape == ():
            return q
        return np.broadcast_to(q, shape).ravel()[i]
    if hasattr(comp, "as_dict"):
        cls = type(comp)
        return cls(**{f"q_{k}": pick(q) for k, q in comp.as_dict().items()})
    return pick(comp)
