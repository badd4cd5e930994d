"""Lexicon POS tagging with morphological fallback for untagged words."""

from __future__ import annotations

from typing import Sequence

from ..core import PosTag, Token
from .resources import Lexicon, SuffixTable
from .stemmer import MorphAnalysis, RootCategory, stem
from .text import is_punct


def is_symbol(surface: str) -> bool:
    return all(is_punct(ch) for ch in surface)


def tag_with_lexicon(tokens: Sequence[Token], lexicon: Lexicon) -> list[PosTag]:
    tags = []
    for tok in tokens:
        hit = lexicon.lookup(tok.surface)
        if hit is not None:
            tags.append(hit)
        elif is_symbol(tok.surface):
            tags.append(PosTag.SYM)
        else:
            tags.append(PosTag.UNK)
    return tags


def _lexical_analysis(surface: str, tag: PosTag) -> MorphAnalysis:
    category = {PosTag.V: RootCategory.VERB, PosTag.N: RootCategory.NOUN}.get(tag)
    return MorphAnalysis(surface, (), category, tag)


def tag_sentence(
    tokens: Sequence[Token], lexicon: Lexicon, rules: SuffixTable
) -> tuple[list[PosTag], list[MorphAnalysis]]:
    """Tag from the lexicon, then resolve every UNK through :func:`stem`."""
    tags = tag_with_lexicon(tokens, lexicon)
    analyses = []
    for i, (tok, tag) in enumerate(zip(tokens, tags)):
        if tag is PosTag.UNK:
            analysis = stem(tok.surface, rules, lexicon)
            tags[i] = analysis.derived_tag
        else:
            analysis = _lexical_analysis(tok.surface, tag)
        analyses.append(analysis)
    return tags, analyses
