"""Stopping predicates on edge masks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from ..errors import ValidationError
from ..graph import BipartiteRateGraph, CompleteRateGraph, component_count, matching_size


@dataclass(frozen=True)
class StopCondition:
    """``components_at_most``: kappa(A) <= k.  ``matching_at_least``: mu(A) >= k."""

    kind: Literal["components_at_most", "matching_at_least"]
    k: int

    def check_host(self, graph) -> None:
        if self.kind == "components_at_most" and not isinstance(graph, CompleteRateGraph):
            raise ValidationError("component stop condition needs a complete graph")
        if self.kind == "matching_at_least" and not isinstance(graph, BipartiteRateGraph):
            raise ValidationError("matching stop condition needs a bipartite graph")

    def holds(self, graph, mask: int) -> bool:
        if self.kind == "components_at_most":
            return component_count(graph, mask) <= self.k
        return matching_size(graph, mask) >= self.k


def components_at_most(k: int) -> StopCondition:
    return StopCondition("components_at_most", k)


def matching_at_least(k: int) -> StopCondition:
    return StopCondition("matching_at_least", k)
