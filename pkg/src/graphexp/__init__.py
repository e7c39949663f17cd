"""Exact expected values for rate-labelled random graph processes.

Edges of K_n (or K_{m,n}) appear at independent exponential times with
individual rates.  This package computes, as exact rationals:

* the expected time until k components remain, and the expected length of
  the minimal spanning k-forest (:mod:`graphexp.forest`);
* the expected time until a k-assignment appears, and the expected minimal
  2-assignment length (:mod:`graphexp.assignment`);

and checks them against independent oracles (:mod:`graphexp.oracles`).
"""

from .assignment import (
    enumerate_tabloids,
    expected_min_2assignment_length_v1,
    expected_min_2assignment_length_v2,
    expected_time_to_k_assignment,
    numerator_S,
)
from .errors import (
    GraphExpError,
    InstanceTooLarge,
    ResourceCapError,
    UnreachableTarget,
    ValidationError,
)
from .forest import (
    derandomized_time,
    enumerate_clique_covers,
    expected_min_forest_length,
    expected_time_to_k_components,
    unit_rate_length,
    unit_rate_time,
)
from .graph import BipartiteRateGraph, CompleteRateGraph
from .numerics import binomial, build_stirling_tables, multinomial

__version__ = "0.1.0"
