"""Edge precision/recall/F and sentence exact match."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .core import DependencyTree

Prediction = Union[DependencyTree, Sequence[Optional[int]]]


class AlignmentError(ValueError):
    """Gold and predicted data disagree on sentence or token counts."""


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean, 0 when both inputs are 0."""
    total = precision + recall
    return 2.0 * precision * recall / total if total > 0 else 0.0


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f_measure: float
    correct_sentences: int = 0
    total_sentences: int = 0

    @classmethod
    def from_pr(cls, precision: float, recall: float, correct: int = 0, total: int = 0) -> "Metrics":
        return cls(precision, recall, f_measure(precision, recall), correct, total)

    @property
    def sentence_accuracy(self) -> float:
        return self.correct_sentences / self.total_sentences if self.total_sentences else 0.0


def _heads(pred: Prediction) -> tuple[Optional[int], ...]:
    return tuple(pred.heads) if isinstance(pred, DependencyTree) else tuple(pred)


def _aligned(gold: Sequence[DependencyTree], predicted: Sequence[Prediction]):
    if len(gold) != len(predicted):
        raise AlignmentError(f"{len(gold)} gold sentences but {len(predicted)} predicted")
    pairs = []
    for k, (g, p) in enumerate(zip(gold, predicted), 1):
        heads = _heads(p)
        if len(heads) != len(g):
            raise AlignmentError(f"sentence {k}: {len(g)} gold tokens but {len(heads)} predicted")
        pairs.append((g.heads, heads))
    return pairs


def edge_prf(gold: Sequence[DependencyTree], predicted: Sequence[Prediction]) -> Metrics:
    """Unlabeled edge P/R/F over a corpus.

    A predicted head of ``None`` means the token was left unattached: it
    costs recall but not precision. The edge to ROOT counts like any other.
    """
    n_pred = n_gold = n_correct = exact = 0
    pairs = _aligned(gold, predicted)
    for g, p in pairs:
        n_gold += len(g)
        n_pred += sum(h is not None for h in p)
        n_correct += sum(h is not None and h == gh for gh, h in zip(g, p))
        exact += tuple(g) == tuple(p)
    precision = n_correct / n_pred if n_pred else 0.0
    recall = n_correct / n_gold if n_gold else 0.0
    return Metrics.from_pr(precision, recall, exact, len(pairs))


def sentence_accuracy(gold: Sequence[DependencyTree], predicted: Sequence[Prediction]) -> tuple[int, int]:
    pairs = _aligned(gold, predicted)
    return sum(tuple(g) == tuple(p) for g, p in pairs), len(pairs)


def format_percent(value: float) -> str:
    return f"{100.0 * value:.2f}"
