"""JSON instance files.

Complete graph::

    {"type": "complete", "n": 3, "rates": [1, "2", "3/2"]}   # upper triangle, (0,1),(0,2),(1,2)

Bipartite graph::

    {"type": "bipartite", "m": 2, "n": 2, "rates": [[1, 2], [3, "1/4"]]}

``"rates": "unit"`` sets every rate to 1.  Rates are JSON numbers or exact
``"p/q"`` strings; serialization always writes strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from .errors import ValidationError
from .graph import BipartiteRateGraph, CompleteRateGraph
from .numerics import format_rational, parse_rational

Graph = Union[CompleteRateGraph, BipartiteRateGraph]


@dataclass(frozen=True)
class Instance:
    graph: Graph
    unit: bool = False

    @property
    def kind(self) -> str:
        return "complete" if isinstance(self.graph, CompleteRateGraph) else "bipartite"


def _dimension(doc: dict, key: str) -> int:
    if key not in doc:
        raise ValidationError(f"missing field {key!r}")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValidationError(f"field {key!r} must be an integer >= 1, got {value!r}")
    return value


def _rate_list(values: list, field: str) -> list:
    out = []
    for idx, v in enumerate(values):
        try:
            r = parse_rational(v)
        except ValidationError as exc:
            raise ValidationError(f"field '{field}[{idx}]': {exc}") from None
        if r < 0:
            raise ValidationError(f"field '{field}[{idx}]' is negative: {v!r}")
        out.append(r)
    return out


def parse_instance(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise ValidationError("instance must be a JSON object")
    kind = doc.get("type")
    if kind not in ("complete", "bipartite"):
        raise ValidationError(f"field 'type' must be 'complete' or 'bipartite', got {kind!r}")
    if "rates" not in doc:
        raise ValidationError("missing field 'rates'")
    rates = doc["rates"]
    unit = rates == "unit"
    if kind == "complete":
        n = _dimension(doc, "n")
        size = n * (n - 1) // 2
        if unit:
            return Instance(CompleteRateGraph.unit(n), unit=True)
        if not isinstance(rates, list):
            raise ValidationError("field 'rates' must be 'unit' or a list")
        if len(rates) != size:
            raise ValidationError(f"field 'rates' needs {size} entries for n={n}, got {len(rates)}")
        return Instance(CompleteRateGraph(n, _rate_list(rates, "rates")))
    m = _dimension(doc, "m")
    n = _dimension(doc, "n")
    if unit:
        return Instance(BipartiteRateGraph.unit(m, n), unit=True)
    if not isinstance(rates, list):
        raise ValidationError("field 'rates' must be 'unit' or a list")
    if rates and all(isinstance(row, list) for row in rates):
        if len(rates) != m:
            raise ValidationError(f"field 'rates' needs {m} rows, got {len(rates)}")
        flat = []
        for i, row in enumerate(rates):
            if len(row) != n:
                raise ValidationError(f"field 'rates[{i}]' needs {n} entries, got {len(row)}")
            flat.extend(_rate_list(row, f"rates[{i}]"))
    else:
        if len(rates) != m * n:
            raise ValidationError(f"field 'rates' needs {m * n} entries, got {len(rates)}")
        flat = _rate_list(rates, "rates")
    return Instance(BipartiteRateGraph(m, n, flat))


def serialize_instance(inst: Instance) -> dict:
    g = inst.graph
    if inst.kind == "complete":
        doc: dict = {"type": "complete", "n": g.n}
    else:
        doc = {"type": "bipartite", "m": g.m, "n": g.n}
    if inst.unit:
        doc["rates"] = "unit"
    elif inst.kind == "complete":
        doc["rates"] = [format_rational(r) for r in g.rates]
    else:
        doc["rates"] = [[format_rational(r) for r in row] for row in g.matrix()]
    return doc


def load_instance(path: str) -> Instance:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from None
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(doc)
