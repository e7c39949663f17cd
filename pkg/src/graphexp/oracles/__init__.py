"""Independent verification engines for the closed-form expectations."""

from .brute import (
    brute_force_matching,
    brute_force_S,
    is_tabloidal_by_permutation,
    matching_table,
    signed_component_polynomial,
)
from .lattice import (
    lattice_dp,
    lattice_dp_expected_forest_length,
    lattice_dp_expected_time,
    visit_probabilities,
)
from .montecarlo import MonteCarloResult, SimulationConfig, edge_times, monte_carlo, sample_values
from .stop import StopCondition, components_at_most, matching_at_least
from .sweep import fixed_time_sweep, kruskal_forest_length, min_assignment_length

__all__ = [
    "MonteCarloResult",
    "SimulationConfig",
    "StopCondition",
    "brute_force_S",
    "brute_force_matching",
    "components_at_most",
    "edge_times",
    "fixed_time_sweep",
    "is_tabloidal_by_permutation",
    "kruskal_forest_length",
    "lattice_dp",
    "lattice_dp_expected_forest_length",
    "lattice_dp_expected_time",
    "matching_at_least",
    "matching_table",
    "min_assignment_length",
    "monte_carlo",
    "sample_values",
    "signed_component_polynomial",
    "visit_probabilities",
]
