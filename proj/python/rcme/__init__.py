"""Finite-time cumulant and Davies evolutions of small open quantum systems.

Thin Python surface over the C++ core: bath construction, two-frequency
rates, model factories, propagation, and map checks. See the project README
for the JSON configuration schema used by ``run_config``.
"""

from ._core import (
    Bath,
    ConfigError,
    InvariantError,
    Model,
    QuadratureError,
    gamma,
    gamma_matrix,
    gibbs_state,
    is_cptp,
    make_bath,
    occupation,
    propagate,
    qutrit_boson,
    rate,
    run_config,
    spectral_density,
    spin_boson,
    trace_distance,
)

__all__ = [
    "Bath",
    "ConfigError",
    "InvariantError",
    "Model",
    "QuadratureError",
    "gamma",
    "gamma_matrix",
    "gibbs_state",
    "is_cptp",
    "make_bath",
    "occupation",
    "propagate",
    "qutrit_boson",
    "rate",
    "run_config",
    "spectral_density",
    "spin_boson",
    "trace_distance",
]
