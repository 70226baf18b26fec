"""Named verification checks, shared by the CLI `verify` command and pytest.

Each suite returns a list of Check records; a suite passes when every check
does.  Checks are deterministic (fixed seeds).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import Composition, GasConstants, OceanConstants, VenusConstants
from .thermo import (DryAir, MoistAir, OceanWater, VenusGas,
                     potential_temperature)
from .thermo.moist import partial_pressures, saturation_vapor_pressure


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def _check(name, err, tol):
    return Check(name, bool(err <= tol), f"max err {err:.3e} (tol {tol:.1e})")


# ---------------------------------------------------------------------------
# random-state generators


def random_moist_states(rng, n):
    T = rng.uniform(235.0, 315.0, n)
    p = rng.uniform(4.0e4, 1.1e5, n)
    q_v = rng.uniform(1e-4, 0.025, n)
    q_c = rng.uniform(0.0, 0.008, n)
    q_r = rng.uniform(0.0, 0.008, n)
    return T, p, Composition.from_water(q_v, q_c, q_r)


def random_states_for(eos, rng, n):
    if isinstance(eos, MoistAir):
        return random_moist_states(rng, n)
    if isinstance(eos, DryAir):
        return rng.uniform(210.0, 320.0, n), rng.uniform(2e4, 1.1e5, n), None
    if isinstance(eos, VenusGas):
        return rng.uniform(200.0, 900.0, n), rng.uniform(1e3, 9.2e6, n), None
    if isinstance(eos, OceanWater):
        return (rng.uniform(272.0, 310.0, n), rng.uniform(1e5, 4e7, n),
                rng.uniform(0.005, 0.08, n))
    raise TypeError(type(eos))


def _probe_directions(eos, comp):
    if isinstance(eos, MoistAir):
        return ["d", "v", "c", "r"]
    if isinstance(eos, OceanWater):
        return ["sigma"]
    return []


# ---------------------------------------------------------------------------
# thermodynamics checks


def gibbs_relation_error(eos, T, p, comp, h_rel=1e-6):
    """Worst relative defect of du = T deta - p dv + sum_k mu_k/m_k dq_k
    under centered finite-difference probing of (T, p, q)."""
    worst = 0.0

    def defect(up, um, ep, em, vp, vm, dx, mu_term):
        du = (up - um) / (2 * dx)
        deta = (ep - em) / (2 * dx)
        dv = (vp - vm) / (2 * dx)
        lhs = du
        rhs = T * deta - p * dv + mu_term
        scale = np.maximum.reduce([np.abs(T * deta), np.abs(p * dv),
                                   np.abs(lhs), np.full_like(lhs, 1e2)])
        return float(np.max(np.abs(lhs - rhs) / scale))

    hT = h_rel * T
    worst = max(worst, defect(
        eos.internal_energy(T + hT, p, comp), eos.internal_energy(T - hT, p, comp),
        eos.entropy(T + hT, p, comp), eos.entropy(T - hT, p, comp),
        eos.specific_volume(T + hT, p, comp), eos.specific_volume(T - hT, p, comp),
        hT, 0.0))
    hp = h_rel * p
    worst = max(worst, defect(
        eos.internal_energy(T, p + hp, comp), eos.internal_energy(T, p - hp, comp),
        eos.entropy(T, p + hp, comp), eos.entropy(T, p - hp, comp),
        eos.specific_volume(T, p + hp, comp), eos.specific_volume(T, p - hp, comp),
        hp, 0.0))
    mu = eos.chemical_potentials(T, p, comp)
    for k in _probe_directions(eos, comp):
        h = h_rel
        cp = eos.shift_composition(comp, k, +h)
        cm = eos.shift_composition(comp, k, -h)
        mu_term = mu[k] if k != "sigma" else mu["sigma"] - mu["w"]
        worst = max(worst, defect(
            eos.internal_energy(T, p, cp), eos.internal_energy(T, p, cm),
            eos.entropy(T, p, cp), eos.entropy(T, p, cm),
            eos.specific_volume(T, p, cp), eos.specific_volume(T, p, cm),
            h, mu_term))
    return worst


def euler_homogeneity_error(eos, T, p, comp):
    """Relative defect of u = T eta - p v + sum_k (mu_k/m_k) q_k."""
    u = eos.internal_energy(T, p, comp)
    v = eos.specific_volume(T, p, comp)
    eta = eos.entropy(T, p, comp)
    mu = eos.chemical_potentials(T, p, comp)
    if isinstance(eos, MoistAir):
        q = comp.as_dict()
        mu_sum = sum(mu[k] * q[k] for k in q)
    elif isinstance(eos, OceanWater):
        q = np.asarray(comp, dtype=float)
        mu_sum = mu["w"] * (1 - q) + mu["sigma"] * q
    else:
        mu_sum = mu[next(iter(mu))]
    resid = u - (T * eta - p * v + mu_sum)
    return float(np.max(np.abs(resid) / np.maximum(np.abs(u), 1.0)))


def explicit_force_error(const: GasConstants, T, p, comp):
    """Relative error of mu_v/m_v - mu_c/m_c = R_v T ln(p_v / p_star(T))."""
    eos = MoistAir(const)
    mu = eos.chemical_potentials(T, p, comp)
    _, p_v = partial_pressures(p, comp, const)
    lhs = mu["v"] - mu["c"]
    rhs = const.R_v * T * np.log(p_v / saturation_vapor_pressure(T, const))
    scale = np.maximum(np.abs(rhs), const.R_v * np.asarray(T))
    return float(np.max(np.abs(lhs - rhs) / scale))


def explicit_gradient_error(const: GasConstants, T, p, comp, h_rel=3e-5):
    """Relative error of the isothermal-gradient identity
    d(mu_v/m_v - mu_d/m_d)_T = T (R_v dp_v/p_v - R_d dp_d/p_d),
    probed by centered differences in p and in q_v at fixed T.

    The probe step balances truncation against rounding in the ~3e6 J/kg
    latent-heat constant carried by the chemical potentials.
    """
    from dataclasses import replace
    eos = MoistAir(const)

    def dmu(pp, cc):
        mu = eos.chemical_potentials(T, pp, cc)
        return mu["v"] - mu["d"]

    hp = h_rel * p
    lhs_p = (dmu(p + hp, comp) - dmu(p - hp, comp)) / (2 * hp)
    rhs_p = T * (const.R_v - const.R_d) / p
    worst = float(np.max(np.abs(lhs_p - rhs_p) / np.abs(rhs_p)))

    hq = 2e-5 * comp.q_v
    cp = replace(comp, q_v=comp.q_v + hq)
    cm = replace(comp, q_v=comp.q_v - hq)
    lhs_q = (dmu(p, cp) - dmu(p, cm)) / (2 * hq)
    g_d = const.R_d * comp.q_d
    g_v = const.R_v * comp.q_v
    G = g_d + g_v
    x_d, x_v = g_d / G, g_v / G
    dxv_dqv = const.R_v * g_d / G ** 2
    rhs_q = T * (const.R_v / x_v + const.R_d / x_d) * dxv_dqv
    worst = max(worst, float(np.max(np.abs(lhs_q - rhs_q) / np.abs(rhs_q))))
    return worst


def theta_mode_agreement_error(eos, T, p, comp):
    th_inv = potential_temperature(eos, p, T, comp, mode="inversion")
    th_int = potential_temperature(eos, p, T, comp, mode="integral")
    return float(np.max(np.abs(th_inv - th_int) / np.abs(th_inv)))


def solve_state_roundtrip_error(const: GasConstants, rng, n=40):
    """Forward-evaluate equilibrium states on both saturation branches and
    recover (T, p) from (v, eta, q_w, q_r)."""
    from .thermo.moist import saturation_partition
    eos = MoistAir(const)
    worst = 0.0
    for _ in range(n):
        T = rng.uniform(245.0, 310.0)
        p = rng.uniform(5e4, 1.05e5)
        q_r = rng.uniform(0.0, 0.005)
        q_w = rng.uniform(1e-4, 0.03)
        q_v, q_c = saturation_partition(p, T, q_w, q_r, const)
        comp = Composition(q_d=1 - q_w - q_r, q_v=q_v, q_c=q_c, q_r=q_r)
        v = eos.specific_volume(T, p, comp)
        eta = eos.entropy(T, p, comp)
        T2, p2, q_v2, q_c2 = eos.solve_state(v, q_w, q_r, eta=eta)
        worst = max(worst,
                    abs(T2 - T) / T, abs(p2 - p) / p,
                    abs(q_v2 - q_v) / max(q_v, 1e-10))
    return worst


def suite_thermo(seed=0):
    rng = np.random.default_rng(seed)
    const = GasConstants()
    checks = []
    eoses = {
        "dry": DryAir(const),
        "moist": MoistAir(const),
        "venus": VenusGas(VenusConstants()),
        "ocean": OceanWater(OceanConstants()),
    }
    for name, eos in eoses.items():
        T, p, comp = random_states_for(eos, rng, 100)
        checks.append(_check(f"gibbs-relation-{name}",
                             gibbs_relation_error(eos, T, p, comp), 1e-6))
        checks.append(_check(f"euler-homogeneity-{name}",
                             euler_homogeneity_error(eos, T, p, comp), 1e-8))
    T, p, comp = random_moist_states(rng, 200)
    checks.append(_check("chemical-potential-saturation-form",
                         explicit_force_error(const, T, p, comp), 1e-8))
    checks.append(_check("chemical-potential-isothermal-gradient",
                         explicit_gradient_error(const, T, p, comp), 1e-8))
    for name, eos in eoses.items():
        T, p, comp = random_states_for(eos, rng, 50)
        checks.append(_check(f"theta-integral-vs-inversion-{name}",
                             theta_mode_agreement_error(eos, T, p, comp), 1e-7))
    d = eoses["dry"]
    T, p, _ = random_states_for(d, rng, 50)
    th = potential_temperature(d, p, T, None, mode="inversion")
    err = float(np.max(np.abs(th - T / d.exner(p)) / th))
    checks.append(_check("theta-dry-exner-form", err, 1e-8))
    checks.append(_check("solve-state-roundtrip",
                         solve_state_roundtrip_error(const, rng), 1e-9))
    return checks
