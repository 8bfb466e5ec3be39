from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.config import settings
from app.models.classification import ClassifierConfig


class SetupId(str, Enum):
    GAUSSIAN = "gaussian-1"
    CAUCHY = "cauchy-2"
    FLAT = "flat-3"
    HALFMOONS = "halfmoons-4"
    RINGS = "rings-5"
    BIMODAL = "bimodal-6"

    @classmethod
    def parse(cls, value: str) -> "SetupId":
        """Accept the full id ('flat-3') or the bare setup number ('3')"""
        for member in cls:
            if value in (member.value, member.value.rsplit("-", 1)[1], member.name.lower()):
                return member
        raise ValueError(f"unknown setup {value!r}; choose from {[m.value for m in cls]}")


BENCHMARK_BETAS = (0.01, 0.05, 0.10, 0.40)


class BenchmarkConfig(BaseModel):
    """Monte Carlo comparison on one simulation setup"""

    model_config = ConfigDict(frozen=True)

    setup: SetupId
    n_train: int = Field(default=200, ge=2)
    n_test: int = Field(default=100, ge=1)
    replications: int = Field(default=250, ge=1)
    betas: tuple[float, ...] = BENCHMARK_BETAS
    roster: tuple[ClassifierConfig, ...] = ()
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0)
    workers: int = Field(default_factory=lambda: settings.BENCHMARK_WORKERS, ge=1)

    @field_validator("betas")
    @classmethod
    def _betas_in_range(cls, betas: tuple[float, ...]) -> tuple[float, ...]:
        if not betas or not all(0 < b < 1 for b in betas):
            raise ValueError("betas must be a nonempty set of values in (0, 1)")
        return betas

    def echo(self) -> Dict[str, Any]:
        """Every field as plain JSON data; the worker count does not affect results"""
        data = self.model_dump(mode="json")
        data.pop("workers")
        return data


class ReplicationRecord(BaseModel):
    """Test error of one classifier in one replication (None when fitting failed)"""

    replication: int
    classifier: str
    error_percent: Optional[float] = Field(default=None, ge=0, le=100)
    k: Optional[int] = None
    failure: Optional[str] = None


class ClassifierSummary(BaseModel):
    classifier: str
    replications: int
    failures: int
    mean: Optional[float] = None
    sd: Optional[float] = None
    q1: Optional[float] = None
    median: Optional[float] = None
    q3: Optional[float] = None

    @classmethod
    def from_errors(cls, classifier: str, errors: List[Optional[float]]) -> "ClassifierSummary":
        values = np.array([e for e in errors if e is not None], dtype=float)
        summary = cls(classifier=classifier, replications=len(errors), failures=len(errors) - values.size)
        if values.size == 0:
            return summary
        q1, median, q3 = np.percentile(values, [25, 50, 75])
        return summary.model_copy(
            update={
                "mean": float(np.mean(values)),
                "sd": float(np.std(values, ddof=1)) if values.size > 1 else 0.0,
                "q1": float(q1),
                "median": float(median),
                "q3": float(q3),
            }
        )


class ExperimentReport(BaseModel):
    """Per-replication errors, per-classifier summaries and the provenance of the run"""

    name: str
    config: Dict[str, Any]
    records: List[ReplicationRecord]
    summaries: List[ClassifierSummary]

    def summary_for(self, classifier: str) -> ClassifierSummary:
        for summary in self.summaries:
            if summary.classifier == classifier:
                return summary
        raise KeyError(classifier)

    def errors_for(self, classifier: str) -> List[Optional[float]]:
        return [r.error_percent for r in self.records if r.classifier == classifier]

    def long_rows(self) -> List[Dict[str, Any]]:
        """One row per replication and classifier, ready for boxplots"""
        return [record.model_dump() for record in self.records]

    def summary_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "config": self.config,
            "summaries": [s.model_dump() for s in self.summaries],
        }


def summarize(records: List[ReplicationRecord], classifiers: List[str]) -> List[ClassifierSummary]:
    return [
        ClassifierSummary.from_errors(name, [r.error_percent for r in records if r.classifier == name])
        for name in classifiers
    ]


class RiskEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    risk: float = Field(ge=0, le=1)
    standard_error: float = Field(ge=0)
    draws: int = Field(ge=1)


class CrossValidationResult(BaseModel):
    """Leave-one-out error counts over a k grid"""

    grid: List[int]
    errors: List[int]
    best_k: int
