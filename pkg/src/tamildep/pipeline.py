"""End-to-end composition: tokenize, tag, chunk, clauses, tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chunker import chunk
from .clauses import decode_clauses
from .core import AnnotatedSentence, Token
from .crf import CrfModel
from .depparse import build_tree
from .lexical import Lexicon, SuffixTable, load_lexicon, load_suffix_table, tag_sentence, tokenize


@dataclass(frozen=True)
class Pipeline:
    lexicon: Lexicon
    suffixes: SuffixTable
    model: Optional[CrfModel] = None

    @classmethod
    def load(cls, lexicon=None, suffixes=None, model: Optional[CrfModel] = None) -> "Pipeline":
        """Build from file paths; ``None`` selects the bundled resources."""
        return cls(load_lexicon(lexicon), load_suffix_table(suffixes), model)

    def tag(self, tokens: list[Token]) -> AnnotatedSentence:
        tags, morph = tag_sentence(tokens, self.lexicon, self.suffixes)
        return AnnotatedSentence(tuple(tokens), pos=tuple(tags), morph=tuple(morph))

    def chunk(self, sentence: AnnotatedSentence) -> AnnotatedSentence:
        return sentence.replace(chunks=tuple(chunk(sentence.pos)))

    def clauses(self, sentence: AnnotatedSentence) -> AnnotatedSentence:
        labels, spans = decode_clauses(sentence, self.model)
        return sentence.replace(clause_labels=tuple(labels), clause_spans=tuple(spans))

    def tree(self, sentence: AnnotatedSentence) -> AnnotatedSentence:
        return sentence.replace(tree=build_tree(sentence))

    def parse_tokens(self, tokens: list[Token]) -> AnnotatedSentence:
        return self.tree(self.clauses(self.chunk(self.tag(tokens))))

    def parse(self, text: str) -> list[AnnotatedSentence]:
        return [self.parse_tokens(tokens) for tokens in tokenize(text)]
