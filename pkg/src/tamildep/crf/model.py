from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .templates import FeatureTemplate

FORMAT_VERSION = 1


class AlphabetError(ValueError):
    """A label outside the model's alphabet was supplied."""


@dataclass(frozen=True, eq=False)
class CrfModel:
    labels: tuple[str, ...]
    templates: tuple[FeatureTemplate, ...]
    weights: Mapping[str, float] = field(default_factory=dict)
    version: int = FORMAT_VERSION
    # Training provenance (hyperparameters, iterations); informational only.
    meta: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "templates", tuple(self.templates))
        object.__setattr__(self, "weights", dict(self.weights))
        object.__setattr__(self, "meta", dict(self.meta))
        if not self.labels:
            raise ValueError("label alphabet must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("label alphabet contains duplicates")
        for feat, w in self.weights.items():
            if not math.isfinite(w):
                raise ValueError(f"non-finite weight for {feat!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrfModel):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.templates == other.templates
            and self.version == other.version
            and self.weights.keys() == other.weights.keys()
            and all(_same_bits(w, other.weights[k]) for k, w in self.weights.items())
        )

    __hash__ = None

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlphabetError(f"label {label!r} not in alphabet {list(self.labels)}") from None

    def feature_index(self) -> tuple[dict[str, int], np.ndarray]:
        cached = self.__dict__.get("_index")
        if cached is None:
            names = sorted(self.weights)
            index = {name: i for i, name in enumerate(names)}
            vector = np.array([self.weights[n] for n in names], dtype=float)
            cached = (index, vector)
            object.__setattr__(self, "_index", cached)
        return cached

    @classmethod
    def zeros(cls, labels: Sequence[str], templates: Sequence[FeatureTemplate]) -> "CrfModel":
        return cls(tuple(labels), tuple(templates), {})


def _same_bits(a: float, b: float) -> bool:
    return float(a).hex() == float(b).hex()
