"""Hybrid clause-boundary identification.

RULE_1 flags a relative clause marker followed by a verb, pronoun,
adjective or noun as a clause beginning; RULE_2 flags a verb or auxiliary
followed by a symbol (or a sentence-final auxiliary) as a clause end. The
flags become CRF observation attributes; decoding is followed by the
stack-based span repair in :func:`tamildep.core.clause_spans_from_labels`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import (
    CLAUSE_BEGIN_REL,
    CLAUSE_END,
    CLAUSE_LABELS,
    CLAUSE_OUTSIDE,
    AnnotatedSentence,
    ClauseSpan,
    PosTag,
    chunks_to_bio,
    clause_spans_from_labels,
)
from .crf import CrfModel, FeatureTemplate, TrainingParams, train, viterbi


class PipelineOrderError(ValueError):
    """A stage was run before the annotations it needs exist."""


class ModelCompatibilityError(ValueError):
    pass


class RuleKind(str, enum.Enum):
    RULE1_BEGIN = "RULE1_BEGIN"
    RULE2_END = "RULE2_END"


@dataclass(frozen=True)
class RuleFlag:
    position: int
    kind: RuleKind


RULE1_SUCCESSORS = frozenset({PosTag.V, PosTag.PRP, PosTag.ADJ, PosTag.N})
RULE2_HEADS = frozenset({PosTag.VAUX, PosTag.V})


def rule1_candidates(pos_tags: Sequence[PosTag]) -> list[RuleFlag]:
    # The flag sits on the marker itself (position 0 of the rule pattern).
    return [
        RuleFlag(i, RuleKind.RULE1_BEGIN)
        for i in range(len(pos_tags) - 1)
        if pos_tags[i] is PosTag.RCM and pos_tags[i + 1] in RULE1_SUCCESSORS
    ]


def rule2_candidates(pos_tags: Sequence[PosTag]) -> list[RuleFlag]:
    flags = []
    last = len(pos_tags) - 1
    for i, tag in enumerate(pos_tags):
        if tag not in RULE2_HEADS:
            continue
        if (i < last and pos_tags[i + 1] is PosTag.SYM) or (i == last and tag is PosTag.VAUX):
            flags.append(RuleFlag(i, RuleKind.RULE2_END))
    return flags


ATTRIBUTES = ("word", "pos", "chunk", "rule1", "rule2")
WINDOW = (-2, -1, 0, 1, 2)


def _default_templates() -> tuple[FeatureTemplate, ...]:
    ids = ["bias", "trans"]
    ids += [f"word[{o}]" for o in (-1, 0, 1)]
    ids += [f"pos[{o}]" for o in WINDOW]
    ids += ["pos[-1]/pos[0]", "pos[0]/pos[1]"]
    ids += [f"chunk[{o}]" for o in (-1, 0, 1)]
    ids += [f"rule1[{o}]" for o in WINDOW]
    ids += [f"rule2[{o}]" for o in WINDOW]
    ids += ["T:rule1[0]", "T:rule2[0]"]
    return tuple(FeatureTemplate.parse(i) for i in ids)


CLAUSE_TEMPLATES = _default_templates()


def clause_features(sentence: AnnotatedSentence) -> list[dict[str, str]]:
    if sentence.pos is None or sentence.chunks is None:
        raise PipelineOrderError("clause features need POS tags and chunks")
    n = len(sentence)
    r1 = {f.position for f in rule1_candidates(sentence.pos)}
    r2 = {f.position for f in rule2_candidates(sentence.pos)}
    bio = chunks_to_bio(sentence.chunks, n)
    return [
        {
            "word": tok.surface,
            "pos": PosTag(sentence.pos[i]).value,
            "chunk": bio[i],
            "rule1": "1" if i in r1 else "0",
            "rule2": "1" if i in r2 else "0",
        }
        for i, tok in enumerate(sentence.tokens)
    ]


def rule_labels(pos_tags: Sequence[PosTag]) -> list[str]:
    """Labels implied by the rules alone."""
    labels = [CLAUSE_OUTSIDE] * len(pos_tags)
    for f in rule1_candidates(pos_tags):
        labels[f.position] = CLAUSE_BEGIN_REL
    for f in rule2_candidates(pos_tags):
        labels[f.position] = CLAUSE_END
    return labels


def check_model(model: CrfModel) -> None:
    if set(model.labels) != set(CLAUSE_LABELS) or len(model.labels) != len(CLAUSE_LABELS):
        raise ModelCompatibilityError(
            f"clause model alphabet {list(model.labels)} does not match {list(CLAUSE_LABELS)}"
        )


def decode_clauses(
    sentence: AnnotatedSentence, model: Optional[CrfModel] = None
) -> tuple[list[str], list[ClauseSpan]]:
    """Clause labels and repaired spans; rules only when ``model`` is None."""
    if model is not None:
        check_model(model)
    if not len(sentence):
        return [], []
    if model is None:
        if sentence.pos is None:
            raise PipelineOrderError("clause decoding needs POS tags")
        labels = rule_labels(sentence.pos)
    else:
        labels, _ = viterbi(clause_features(sentence), model)
    return labels, clause_spans_from_labels(labels)


def training_corpus(sentences: Iterable[AnnotatedSentence]) -> list[tuple[list[dict[str, str]], list[str]]]:
    corpus = []
    for n, s in enumerate(sentences, 1):
        if s.clause_labels is None:
            raise PipelineOrderError(f"sentence {n} has no clause labels")
        if len(s):
            corpus.append((clause_features(s), list(s.clause_labels)))
    return corpus


def train_clause_model(
    sentences: Iterable[AnnotatedSentence],
    params: TrainingParams = TrainingParams(),
    templates: Sequence[FeatureTemplate] = CLAUSE_TEMPLATES,
) -> CrfModel:
    return train(training_corpus(sentences), templates, CLAUSE_LABELS, params)
