"""Grammar-rule chunking: a greedy longest-match cascade over POS tags.

The seven productions are compiled in as :data:`GRAMMAR`. Chunks are flat:
a chunk-valued symbol on a right-hand side (``PP`` inside ``NP``, ``NP``
inside ``VP``/``PP``) is expanded one level deep and never swallows a noun,
so every nominal surfaces in an NP chunk of its own.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .core import Chunk, ChunkLabel, PosTag, chunk_head

Symbol = Union[PosTag, ChunkLabel, str]


class Occurs(enum.Enum):
    REQUIRED = ""
    OPTIONAL = "?"
    STAR = "*"


@dataclass(frozen=True)
class GrammarRule:
    lhs: Symbol
    rhs: tuple[tuple[Symbol, Occurs], ...]

    def __post_init__(self):
        # Chunk rules must consume something; the sentence rule may be empty.
        if isinstance(self.lhs, ChunkLabel) and not any(occ is Occurs.REQUIRED for _, occ in self.rhs):
            raise ValueError(f"rule for {self.lhs} has no required symbol")

    def __str__(self) -> str:
        parts = []
        for sym, occ in self.rhs:
            name = getattr(sym, "value", sym)
            parts.append(f"({name})" if occ is Occurs.OPTIONAL else f"({name})*" if occ is Occurs.STAR else name)
        return f"{getattr(self.lhs, 'value', self.lhs)} -> {' '.join(parts)}"


_R, _O, _S = Occurs.REQUIRED, Occurs.OPTIONAL, Occurs.STAR
NP, VP, PP, ADJP, ADVP = ChunkLabel.NP, ChunkLabel.VP, ChunkLabel.PP, ChunkLabel.ADJP, ChunkLabel.ADVP

# ADJP and ADVP have no required symbol as written; ADJ and ADV are taken as required.
GRAMMAR = (
    GrammarRule(NP, ((PosTag.DET, _O), (PosTag.ADJ, _O), (PosTag.N, _R), (PP, _O))),
    GrammarRule(VP, ((PosTag.V, _R), (NP, _O), (PP, _O), (PosTag.ADV, _O))),
    GrammarRule(PP, ((PosTag.P, _R), (NP, _O))),
    GrammarRule(ADJP, ((PosTag.CRD, _O), (PosTag.ADJ, _R))),
    GrammarRule(ADVP, ((PosTag.ADV, _R), (PosTag.INT, _O), (PosTag.CRD, _O))),
    GrammarRule(NP, ((NP, _O), (PosTag.CNJ, _R), (NP, _O))),
    GrammarRule("S", ((NP, _S), (VP, _O))),
)

# The N slot of the NP rule also admits pronouns and numerals, with an
# optional numeral premodifier after the determiner.
NOMINAL = frozenset({PosTag.N, PosTag.PRP, PosTag.CRD})


def _opt(tags, i, allowed) -> int:
    return 1 if i < len(tags) and tags[i] in allowed else 0


def _match_np(tags, i) -> int:
    j = i
    j += _opt(tags, j, {PosTag.DET})
    if j < len(tags) and tags[j] is PosTag.CRD and j + 1 < len(tags) and tags[j + 1] in (PosTag.ADJ, PosTag.N, PosTag.PRP):
        j += 1
    j += _opt(tags, j, {PosTag.ADJ})
    if not _opt(tags, j, NOMINAL):
        return 0
    j += 1
    # (PP) one level deep: the bare postposition.
    j += _opt(tags, j, {PosTag.P})
    return j - i


def _match_vp(tags, i) -> int:
    if not _opt(tags, i, {PosTag.V}):
        return 0
    j = i + 1
    # (NP) is never absorbed; (PP) one level deep is the bare postposition.
    j += _opt(tags, j, {PosTag.P})
    j += _opt(tags, j, {PosTag.ADV})
    return j - i


def _match_pp(tags, i) -> int:
    return _opt(tags, i, {PosTag.P})


def _match_adjp(tags, i) -> int:
    j = i + _opt(tags, i, {PosTag.CRD})
    return j + 1 - i if _opt(tags, j, {PosTag.ADJ}) else 0


def _match_advp(tags, i) -> int:
    if not _opt(tags, i, {PosTag.ADV}):
        return 0
    j = i + 1
    j += _opt(tags, j, {PosTag.INT})
    j += _opt(tags, j, {PosTag.CRD})
    return j - i


# Tie order for equal-length matches.
_MATCHERS = (
    (NP, _match_np),
    (VP, _match_vp),
    (PP, _match_pp),
    (ADJP, _match_adjp),
    (ADVP, _match_advp),
)

_ABSORBED = {
    VP: frozenset({PosTag.VAUX, PosTag.RCM}),
    NP: frozenset({PosTag.RCM}),
}


def _cascade(tags: Sequence[PosTag]) -> list[Chunk]:
    chunks: list[Chunk] = []
    i = 0
    while i < len(tags):
        best_label, best_len = None, 0
        for label, matcher in _MATCHERS:
            length = matcher(tags, i)
            if length > best_len:
                best_label, best_len = label, length
        if best_label is None:
            i += 1
            continue
        end = i + best_len
        absorbed = _ABSORBED.get(best_label, ())
        while end < len(tags) and tags[end] in absorbed:
            end += 1
        chunks.append(Chunk(best_label, i, end, chunk_head(best_label, tags, i, end)))
        i = end
    return chunks


def merge_conjunctions(chunks: Sequence[Chunk], tags: Sequence[PosTag]) -> list[Chunk]:
    """Merge every ``NP CNJ NP`` triple (CNJ left unchunked) into one NP."""
    out: list[Chunk] = []
    for c in chunks:
        if (
            out
            and c.label is NP
            and out[-1].label is NP
            and c.start == out[-1].end + 1
            and tags[out[-1].end] is PosTag.CNJ
        ):
            left = out.pop()
            c = Chunk(NP, left.start, c.end, chunk_head(NP, tags, left.start, c.end))
        out.append(c)
    return out


def chunk(tags: Sequence[PosTag]) -> list[Chunk]:
    tags = [PosTag(t) for t in tags]
    if PosTag.UNK in tags:
        raise ValueError("chunking requires fully resolved tags (found UNK)")
    return merge_conjunctions(_cascade(tags), tags)


class SentenceVerdict(NamedTuple):
    valid: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


_S_SHAPE = re.compile(r"((NP|PP|ADJP|ADVP) )*(VP )?")


def validate_sentence(chunks: Sequence[Chunk]) -> SentenceVerdict:
    """Advisory check of the chunk label string against ``S -> (NP)* (VP)``."""
    labels = "".join(f"{c.label.value} " for c in chunks)
    if _S_SHAPE.fullmatch(labels):
        return SentenceVerdict(True)
    vps = [i for i, c in enumerate(chunks) if c.label is VP]
    if len(vps) > 1:
        return SentenceVerdict(False, f"{len(vps)} VPs; at most one allowed")
    return SentenceVerdict(False, "VP not final")
