"""Experiment reports: a small, regression-diffable result record.

Each run produces one ExperimentReport: the empirical value, the predicted
main term (midpoint and certified radius), their ratio, and run metadata.
JSON serialization round-trips losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1
PACKAGE_VERSION = "0.1.0"


@dataclass
class ExperimentReport:
    experiment: str
    params: dict = field(default_factory=dict)
    empirical: float | None = None
    predicted_mid: float | None = None
    predicted_rad: float | None = None
    runtime_seconds: float | None = None
    seed: int = 0
    version: str = PACKAGE_VERSION
    schema_version: int = SCHEMA_VERSION
    extra: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float | None:
        if self.empirical is None or not self.predicted_mid:
            return None
        return self.empirical / self.predicted_mid

    def to_dict(self, stable: bool = False) -> dict:
        out = {
            "schema_version": self.schema_version,
            "experiment": self.experiment,
            "params": self.params,
            "empirical": self.empirical,
            "predicted_mid": self.predicted_mid,
            "predicted_rad": self.predicted_rad,
            "seed": self.seed,
            "version": self.version,
        }
        if self.ratio is not None:
            out["ratio"] = self.ratio
        if not stable:
            out["runtime_seconds"] = self.runtime_seconds
        if self.extra:
            out["extra"] = self.extra
        return out

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable=stable), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        d = json.loads(text)
        return cls(
            experiment=d["experiment"],
            params=d.get("params", {}),
            empirical=d.get("empirical"),
            predicted_mid=d.get("predicted_mid"),
            predicted_rad=d.get("predicted_rad"),
            runtime_seconds=d.get("runtime_seconds"),
            seed=d.get("seed", 0),
            version=d.get("version", PACKAGE_VERSION),
            schema_version=d.get("schema_version", SCHEMA_VERSION),
            extra=d.get("extra", {}),
        )


def write_csv(path, rows, header) -> None:
    """Plain CSV writer for ratio/series output."""
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(row)
