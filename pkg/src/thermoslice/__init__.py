"""Moist-atmosphere vertical-slice models with irreversible processes.

Compressible and pseudoincompressible solvers for dry, moist (with rain) and
idealized ocean fluids with arbitrary equations of state, Onsager-structured
closures for the irreversible processes, and diagnostics that audit every
conservation law and positivity property the formulation guarantees.
"""

__version__ = "0.1.0"
