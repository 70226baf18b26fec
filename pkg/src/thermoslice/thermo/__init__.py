"""Equilibrium thermodynamics: state functions, saturation, inversions."""

from .base import (EquationOfState, SolverError, ThermoEval,
                   potential_temperature)
from .dry import DryAir, dry_entropy_energy, dry_eos
from .moist import (MoistAir, latent_heat, moist_entropy,
                    moist_internal_energy, moist_pressure,
                    partial_pressures, saturation_partition,
                    saturation_specific_humidity,
                    saturation_vapor_pressure,
                    saturated_vapor_concentration)
from .ocean import OceanWater
from .venus import VenusGas

__all__ = [
    "EquationOfState", "SolverError", "ThermoEval", "potential_temperature",
    "DryAir", "dry_eos", "dry_entropy_energy",
    "MoistAir", "latent_heat", "moist_pressure", "moist_internal_energy",
    "moist_entropy", "partial_pressures", "saturation_vapor_pressure",
    "saturation_specific_humidity", "saturated_vapor_concentration",
    "saturation_partition",
    "VenusGas", "OceanWater",
]
