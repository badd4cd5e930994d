from .resources import (
    Lexicon,
    ResourceFormatError,
    SuffixCategory,
    SuffixRule,
    SuffixTable,
    load_lexicon,
    load_suffix_table,
    parse_lexicon,
    parse_suffix_table,
)
from .stemmer import MorphAnalysis, RootCategory, stem
from .tagger import tag_sentence, tag_with_lexicon
from .text import detokenize, split_graphemes, tokenize

__all__ = [
    "Lexicon",
    "MorphAnalysis",
    "ResourceFormatError",
    "RootCategory",
    "SuffixCategory",
    "SuffixRule",
    "SuffixTable",
    "detokenize",
    "load_lexicon",
    "load_suffix_table",
    "parse_lexicon",
    "parse_suffix_table",
    "split_graphemes",
    "stem",
    "tag_sentence",
    "tag_with_lexicon",
    "tokenize",
]
