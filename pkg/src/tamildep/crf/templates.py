"""Feature templates and featurization for the linear-chain CRF.

A template reads attribute values at fixed offsets around the current
position. State templates pair the observation with the current label;
transition templates (identifier prefix ``T:``) pair it with the
(previous, current) label pair. Identifiers fully describe the recipe, so
models can store templates by identifier alone::

    bias            -> "bias|CE"
    trans           -> "trans|O>CE"
    pos[-1]/pos[0]  -> "pos[-1]/pos[0]=N/V|O"
    T:rule1[0]      -> "T:rule1[0]=1|O>CB-REL"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

BEGIN = "__BEGIN__"
BOS = "__BOS__"
EOS = "__EOS__"

Observation = Mapping[str, str]

_FIELD = re.compile(r"([A-Za-z_][\w-]*)\[([+-]?\d+)\]")


@dataclass(frozen=True)
class FeatureTemplate:
    fields: tuple[tuple[str, int], ...] = ()
    transition: bool = False

    @classmethod
    def parse(cls, identifier: str) -> "FeatureTemplate":
        if identifier == "bias":
            return cls()
        if identifier == "trans":
            return cls((), True)
        transition = identifier.startswith("T:")
        body = identifier[2:] if transition else identifier
        fields = []
        for part in body.split("/"):
            m = _FIELD.fullmatch(part)
            if m is None:
                raise ValueError(f"malformed template identifier {identifier!r}")
            fields.append((m.group(1), int(m.group(2))))
        return cls(tuple(fields), transition)

    @property
    def identifier(self) -> str:
        if not self.fields:
            return "trans" if self.transition else "bias"
        body = "/".join(f"{attr}[{off}]" for attr, off in self.fields)
        return f"T:{body}" if self.transition else body

    def __str__(self) -> str:
        return self.identifier

    def observation_key(self, seq: Sequence[Observation], t: int) -> str:
        """The label-independent part of this template's feature at ``t``."""
        if not self.fields:
            return self.identifier
        values = []
        for attr, off in self.fields:
            j = t + off
            if j < 0:
                values.append(BOS)
            elif j >= len(seq):
                values.append(EOS)
            else:
                values.append(seq[j][attr])
        return f"{self.identifier}={'/'.join(values)}"


def feature_string(template: FeatureTemplate, key: str, prev: str, cur: str) -> str:
    return f"{key}|{prev}>{cur}" if template.transition else f"{key}|{cur}"


def observation_keys(seq: Sequence[Observation], templates: Sequence[FeatureTemplate]) -> list[list[str]]:
    return [[tpl.observation_key(seq, t) for tpl in templates] for t in range(len(seq))]


def featurize(
    seq: Sequence[Observation], templates: Sequence[FeatureTemplate], labels: Sequence[str]
) -> list[dict[tuple[str, str], list[str]]]:
    """Active features for every (previous, current) label pair at every position.

    The previous-label alphabet is ``BEGIN`` plus ``labels`` at each position;
    ``BEGIN`` is the only previous label that inference uses at position 0.
    """
    prevs = [BEGIN, *labels]
    out = []
    for keys in observation_keys(seq, templates):
        table = {}
        for prev in prevs:
            for cur in labels:
                table[(prev, cur)] = [feature_string(tpl, key, prev, cur) for tpl, key in zip(templates, keys)]
        out.append(table)
    return out


def active_features(seq, templates, labels: Sequence[str]) -> list[str]:
    """Features fired by one labeling (``BEGIN`` precedes position 0)."""
    feats = []
    prev = BEGIN
    for keys, cur in zip(observation_keys(seq, templates), labels):
        feats.extend(feature_string(tpl, key, prev, cur) for tpl, key in zip(templates, keys))
        prev = cur
    return feats
