"""Physical constant sets and composition containers.

All constants live here (or in a config file mapped onto these dataclasses);
derived quantities such as R_d, C_vd or epsilon are always computed from the
primaries and never hard-coded a second time.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class GasConstants:
    """Constant set for the dry-air / water-substance mixture.

    Primaries are stored; Mayer-consistent specific heats at constant volume,
    the specific gas constants and epsilon are exposed as derived properties.

    Units: SI throughout (J, kg, mol, K, Pa).
    """

    R_star: float = 8.3145        # universal gas constant [J mol^-1 K^-1]
    m_d: float = 0.028965         # molar mass of dry air [kg mol^-1]
    m_v: float = 0.018015         # molar mass of water vapor [kg mol^-1]
    C_pd: float = 1004.0          # dry air, constant pressure [J kg^-1 K^-1]
    C_pv: float = 1885.0          # water vapor, constant pressure [J kg^-1 K^-1]
    C_l: float = 4186.0           # liquid water [J kg^-1 K^-1]
    L00: float = 3129518.15       # latent-heat intercept, L(T) = L00 + (C_pv - C_l) T
    T0: float = 273.15            # reference temperature [K]
    p0: float = 1.0e5             # reference pressure (entropy, theta) [Pa]
    p0_star: float = 611.2        # saturation vapor pressure at T0 [Pa]
    eta0: float = 0.0             # dry entropy offset [J kg^-1 K^-1]

    @property
    def R_d(self) -> float:
        return self.R_star / self.m_d

    @property
    def R_v(self) -> float:
        return self.R_star / self.m_v

    @property
    def C_vd(self) -> float:
        return self.C_pd - self.R_d

    @property
    def C_vv(self) -> float:
        return self.C_pv - self.R_v

    @property
    def epsilon(self) -> float:
        return self.m_v / self.m_d

    @property
    def L_v_T0(self) -> float:
        """Latent heat of vaporization at the reference temperature."""
        return self.L00 + (self.C_pv - self.C_l) * self.T0

    @classmethod
    def with_latent_heat_at_T0(cls, L_v_T0: float, **kwargs) -> "GasConstants":
        """Build a set from L(T0) instead of the intercept L00."""
        base = cls(**kwargs)
        return replace(base, L00=L_v_T0 - (base.C_pv - base.C_l) * base.T0)

    def molar_mass(self, species: str) -> float:
        if species == "d":
            return self.m_d
        if species in ("v", "c", "r"):
            return self.m_v
        raise KeyError(species)


@dataclass(frozen=True)
class VenusConstants:
    """One-component ideal gas with temperature-dependent specific heat.

    C_p(T) = C_p0 (T / T0)^nu; defaults approximate the CO2 atmosphere of
    Venus.
    """

    R_star: float = 8.3145
    m: float = 0.04401            # CO2 [kg mol^-1]
    C_p0: float = 1000.0          # C_p at T0 [J kg^-1 K^-1]
    nu: float = 0.35              # exponent of the power law
    T0: float = 460.0             # reference temperature [K]
    p0: float = 9.2e6             # reference (surface) pressure [Pa]

    @property
    def R(self) -> float:
        return self.R_star / self.m

    def C_p(self, T):
        return self.C_p0 * (np.asarray(T) / self.T0) ** self.nu

    def C_v(self, T):
        return self.C_p(T) - self.R


@dataclass(frozen=True)
class OceanConstants:
    """Idealized two-component (water + salt) liquid constants.

    The equation of state is generated from a Gibbs potential (see
    thermo.ocean) so that density is rho_ref (1 - alpha (T - T_ref) + beta q)
    at the reference pressure and the internal energy is C_w T + mu_ref q up
    to O(p v_ref) corrections, while the Gibbs relation holds exactly.
    """

    rho_ref: float = 1025.0       # [kg m^-3]
    T_ref: float = 283.0          # [K]
    p_ref: float = 1.0e5          # [Pa]
    alpha: float = 2.0e-4         # thermal expansion [K^-1]
    beta: float = 0.76            # haline contraction [-]
    kappa: float = 4.4e-10        # compressibility [Pa^-1]
    C_w: float = 3990.0           # specific heat [J kg^-1 K^-1]
    mu_ref: float = 70.0          # salt chemical-potential offset [J kg^-1]
    m_w: float = 0.018015         # water molar mass [kg mol^-1]
    m_sigma: float = 0.0585       # sea-salt molar mass [kg mol^-1]

    @property
    def v_ref(self) -> float:
        return 1.0 / self.rho_ref

    @property
    def R_sigma(self) -> float:
        """Mixing-entropy coefficient of the symmetric ideal-mixing term."""
        return 8.3145 / self.m_sigma


@dataclass
class Composition:
    """Mass concentrations of dry air, vapor, cloud condensate and rain.

    Entries may be scalars or broadcast-compatible arrays.
    """

    q_d: np.ndarray
    q_v: np.ndarray
    q_c: np.ndarray
    q_r: np.ndarray

    @classmethod
    def from_water(cls, q_v, q_c=0.0, q_r=0.0) -> "Composition":
        q_v = np.asarray(q_v, dtype=float)
        q_c = np.asarray(q_c, dtype=float)
        q_r = np.asarray(q_r, dtype=float)
        return cls(q_d=1.0 - q_v - q_c - q_r, q_v=q_v, q_c=q_c, q_r=q_r)

    @classmethod
    def dry(cls) -> "Composition":
        return cls(q_d=np.float64(1.0), q_v=np.float64(0.0),
                   q_c=np.float64(0.0), q_r=np.float64(0.0))

    @property
    def q_w(self):
        """Total airborne water (vapor + cloud)."""
        return self.q_v + self.q_c

    def as_dict(self) -> dict:
        return {"d": self.q_d, "v": self.q_v, "c": self.q_c, "r": self.q_r}

    def n(self, const: GasConstants) -> dict:
        """Molar concentrations n_k = q_k / m_k [mol kg^-1]."""
        return {k: q / const.molar_mass(k) for k, q in self.as_dict().items()}

    def validate(self, tol: float = 1e-12) -> None:
        for name, q in self.as_dict().items():
            if np.any(np.asarray(q) < -tol):
                raise ValueError(f"negative concentration q_{name}")
        total = self.q_d + self.q_v + self.q_c + self.q_r
        if np.any(np.abs(total - 1.0) > tol):
            raise ValueError("concentrations do not sum to one")
