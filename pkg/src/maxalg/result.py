"""Machine-readable result document written by ``maxalg --json``.

Vertex indices are 1-based. Numbers are rounded to 12 significant
digits, so a document survives ``to_json``/``from_json`` unchanged. The
JSON Schema lives next to this module in ``result_schema.json``.
"""

from dataclasses import asdict, dataclass, field
import json
from importlib import resources

from .matrixfile import fmt

SCHEMA_VERSION = 1


def rnd(x):
    return float(fmt(x))


def load_schema():
    return json.loads(resources.files("maxalg").joinpath("result_schema.json").read_text())


@dataclass
class ResultDocument:
    mu: float | None = None
    critical_vertices: list | None = None
    critical_edges: list | None = None
    r: int | None = None
    disjoint_circuits: list | None = None
    sunflowers: list | None = None
    basis: list | None = None
    kleene_star: list | None = None
    verification: dict | None = None
    schema_version: int = field(default=SCHEMA_VERSION)

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(**data)


def critical_fields(doc, crit):
    doc.mu = rnd(crit.mu)
    doc.critical_vertices = [v + 1 for v in crit.critical_vertices]
    doc.critical_edges = [[i + 1, j + 1] for i, j in crit.critical_edges]
    doc.r = crit.r
    doc.disjoint_circuits = [list(c.one_based()) for c in crit.disjoint_circuits]
    return doc


def sunflower_entry(s):
    return {
        "source_circuit": list(s.source_circuit.one_based()),
        "entries": [[i, j, rnd(v)] for i, j, v in s.triplets()],
        "fill_trace": [
            {
                "circuit": list(step.circuit.one_based()),
                "rows": [v + 1 for v in step.rows],
                "fallback": step.fallback,
            }
            for step in s.fill_trace
        ],
    }


def basis_entries(basis):
    return [
        {
            "vector": [rnd(x) for x in v.values()],
            "source_circuit": list(s.source_circuit.one_based()),
        }
        for v, s in zip(basis.vectors, basis.provenance)
    ]


def _clean(obj):
    if isinstance(obj, float):
        return rnd(obj) if obj == obj and abs(obj) != float("inf") else str(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def verification_entry(report):
    return _clean(report.to_dict())
