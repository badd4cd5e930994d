"""Shared sentence data model, BIO / clause-label codecs and tree validation."""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence


class StructureError(ValueError):
    """Raised when chunks, spans or per-token annotations are malformed."""


class CodecError(ValueError):
    """Raised on an illegal BIO continuation; ``index`` is the offending tag."""

    def __init__(self, index: int, message: str):
        super().__init__(f"tag {index}: {message}")
        self.index = index


class PosTag(str, enum.Enum):
    N = "N"
    V = "V"
    ADJ = "ADJ"
    ADV = "ADV"
    DET = "DET"
    P = "P"
    PRP = "PRP"
    CRD = "CRD"
    INT = "INT"
    CNJ = "CNJ"
    RCM = "RCM"
    VAUX = "VAUX"
    SYM = "SYM"
    UNK = "UNK"

    def __str__(self) -> str:
        return self.value


class ChunkLabel(str, enum.Enum):
    NP = "NP"
    VP = "VP"
    PP = "PP"
    ADJP = "ADJP"
    ADVP = "ADVP"

    def __str__(self) -> str:
        return self.value


# Clause labels are plain strings: the CRF alphabet is configurable.
CLAUSE_OUTSIDE = "O"
CLAUSE_BEGIN_REL = "CB-REL"
CLAUSE_END = "CE"
CLAUSE_LABELS = (CLAUSE_OUTSIDE, CLAUSE_BEGIN_REL, CLAUSE_END)

ROOT_REL = "root"
DEP_REL = "dep"


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class Token:
    surface: str
    index: int

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise StructureError(f"invalid token surface {self.surface!r}")
        if self.index < 0:
            raise StructureError(f"negative token index {self.index}")
        object.__setattr__(self, "surface", nfc(self.surface))


def make_tokens(surfaces: Sequence[str]) -> tuple[Token, ...]:
    return tuple(Token(s, i) for i, s in enumerate(surfaces))


@dataclass(frozen=True)
class Chunk:
    label: ChunkLabel
    start: int
    end: int
    head: int

    def __post_init__(self):
        object.__setattr__(self, "label", ChunkLabel(self.label))
        if not (0 <= self.start < self.end):
            raise StructureError(f"empty or negative chunk span [{self.start}, {self.end})")
        if not (self.start <= self.head < self.end):
            raise StructureError(f"chunk head {self.head} outside [{self.start}, {self.end})")

    def __contains__(self, index: int) -> bool:
        return self.start <= index < self.end

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class ClauseSpan:
    """A clause over tokens ``start``..``end``, both inclusive."""

    start: int
    end: int
    kind: str = "REL"

    def __post_init__(self):
        if not (0 <= self.start <= self.end):
            raise StructureError(f"invalid clause span ({self.start}, {self.end})")

    def __contains__(self, index: int) -> bool:
        return self.start <= index <= self.end

    def contains_span(self, other: "ClauseSpan") -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class DependencyTree:
    """Heads use the 1-based convention: ``heads[i] == 0`` marks the root,
    ``heads[i] == j > 0`` points at token ``j - 1``."""

    heads: tuple[int, ...]
    relations: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(int(h) for h in self.heads))
        object.__setattr__(self, "relations", tuple(self.relations))

    @classmethod
    def from_heads(cls, heads: Sequence[int]) -> "DependencyTree":
        return cls(tuple(heads), tuple(ROOT_REL if h == 0 else DEP_REL for h in heads))

    def __len__(self) -> int:
        return len(self.heads)

    @property
    def root(self) -> Optional[int]:
        roots = [i for i, h in enumerate(self.heads) if h == 0]
        return roots[0] if len(roots) == 1 else None

    def children(self, index: Optional[int]) -> list[int]:
        """0-based children of token ``index``; ``None`` asks for ROOT's children."""
        target = 0 if index is None else index + 1
        return [i for i, h in enumerate(self.heads) if h == target]


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: tuple[Token, ...]
    pos: Optional[tuple[PosTag, ...]] = None
    morph: Optional[tuple] = None
    chunks: Optional[tuple[Chunk, ...]] = None
    clause_labels: Optional[tuple[str, ...]] = None
    clause_spans: Optional[tuple[ClauseSpan, ...]] = None
    tree: Optional[DependencyTree] = None
    # Head/relation pairs with ``None`` for unattached tokens; only set when
    # a corpus file carries a partially filled HEAD column.
    partial_arcs: Optional[tuple[Optional[tuple[int, str]], ...]] = None
    comments: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = len(self.tokens)
        for i, tok in enumerate(self.tokens):
            if tok.index != i:
                raise StructureError(f"token {tok.surface!r} has index {tok.index}, expected {i}")
        for name in ("pos", "morph", "clause_labels", "partial_arcs"):
            value = getattr(self, name)
            if value is not None and len(value) != n:
                raise StructureError(f"{name} has length {len(value)}, sentence has {n} tokens")
        if self.tree is not None and len(self.tree) != n:
            raise StructureError(f"tree has {len(self.tree)} heads, sentence has {n} tokens")
        if self.chunks is not None:
            check_chunks(self.chunks, n)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def replace(self, **changes) -> "AnnotatedSentence":
        return replace(self, **changes)


def check_chunks(chunks: Sequence[Chunk], n: int) -> None:
    prev_end = 0
    for c in chunks:
        if c.end > n:
            raise StructureError(f"chunk {c.label}[{c.start}, {c.end}) exceeds sentence length {n}")
        if c.start < prev_end:
            raise StructureError(f"chunk {c.label}[{c.start}, {c.end}) overlaps or is out of order")
        prev_end = c.end


# -- BIO codec ---------------------------------------------------------------

def chunks_to_bio(chunks: Sequence[Chunk], n: int) -> list[str]:
    check_chunks(chunks, n)
    tags = ["O"] * n
    for c in chunks:
        tags[c.start] = f"B-{c.label}"
        for i in range(c.start + 1, c.end):
            tags[i] = f"I-{c.label}"
    return tags


def _parse_bio(tag: str, index: int) -> tuple[str, Optional[ChunkLabel]]:
    if tag == "O":
        return "O", None
    prefix, sep, label = tag.partition("-")
    if not sep or prefix not in ("B", "I"):
        raise CodecError(index, f"malformed chunk tag {tag!r}")
    try:
        return prefix, ChunkLabel(label)
    except ValueError:
        raise CodecError(index, f"unknown chunk label in {tag!r}") from None


def bio_to_chunks(tags: Sequence[str], pos: Optional[Sequence[PosTag]] = None) -> list[Chunk]:
    """Decode BIO tags into chunks.

    Heads come from :func:`chunk_head` when POS tags are supplied; otherwise
    the rightmost token of each chunk is used.
    """
    spans: list[tuple[ChunkLabel, int, int]] = []
    current: Optional[ChunkLabel] = None
    for i, tag in enumerate(tags):
        prefix, label = _parse_bio(tag, i)
        if prefix == "I":
            if current is None or label is not current:
                raise CodecError(i, f"{tag} cannot continue {tags[i - 1] if i else 'sentence start'}")
            lab, start, _ = spans[-1]
            spans[-1] = (lab, start, i + 1)
        elif prefix == "B":
            spans.append((label, i, i + 1))
            current = label
        else:
            current = None
    chunks = []
    for label, start, end in spans:
        head = chunk_head(label, pos, start, end) if pos is not None else end - 1
        chunks.append(Chunk(label, start, end, head))
    return chunks


_NOMINAL = frozenset({PosTag.N, PosTag.PRP, PosTag.CRD})
_HEAD_RULES = {
    # label: (admissible head tags, pick rightmost?)
    ChunkLabel.NP: (_NOMINAL, True),
    ChunkLabel.VP: (frozenset({PosTag.V}), False),
    ChunkLabel.PP: (frozenset({PosTag.P}), False),
    ChunkLabel.ADJP: (frozenset({PosTag.ADJ}), True),
    ChunkLabel.ADVP: (frozenset({PosTag.ADV}), True),
}


def chunk_head(label: ChunkLabel, pos: Sequence[PosTag], start: int, end: int) -> int:
    """Head token of a chunk span.

    NP: rightmost N/PRP/CRD; VP: leftmost V; PP: the P token; ADJP: rightmost
    ADJ; ADVP: rightmost ADV. Falls back to the last token when no token of
    the admissible class is present (possible for hand-written BIO input).
    """
    admissible, rightmost = _HEAD_RULES[ChunkLabel(label)]
    order = range(end - 1, start - 1, -1) if rightmost else range(start, end)
    for i in order:
        if PosTag(pos[i]) in admissible:
            return i
    return end - 1


# -- clause labels -------------------------------------------------------------

def is_clause_begin(label: str) -> bool:
    return label.startswith("CB-")


def clause_spans_from_labels(labels: Sequence[str]) -> list[ClauseSpan]:
    """Pair each ``CB-*`` with the nearest following ``CE`` (stack discipline).

    Spans are emitted in closing order, so inner clauses precede the clauses
    that contain them. Unmatched begins close at the last token; stray ends
    are dropped.
    """
    stack: list[tuple[int, str]] = []
    spans: list[ClauseSpan] = []
    for i, label in enumerate(labels):
        if is_clause_begin(label):
            stack.append((i, label[3:]))
        elif label == CLAUSE_END and stack:
            start, kind = stack.pop()
            spans.append(ClauseSpan(start, i, kind))
    last = len(labels) - 1
    while stack:
        start, kind = stack.pop()
        spans.append(ClauseSpan(start, last, kind))
    return spans


def spans_well_nested(spans: Sequence[ClauseSpan]) -> bool:
    for a in spans:
        for b in spans:
            if a is b:
                continue
            disjoint = a.end < b.start or b.end < a.start
            if not (disjoint or a.contains_span(b) or b.contains_span(a)):
                return False
    return True


# -- tree validation -------------------------------------------------------------

class TreeVerdict(NamedTuple):
    valid: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


def validate_tree(tree: DependencyTree) -> TreeVerdict:
    heads, rels = tree.heads, tree.relations
    n = len(heads)
    if len(rels) != n:
        return TreeVerdict(False, f"length: {n} heads but {len(rels)} relations")
    for i, h in enumerate(heads):
        if not (0 <= h <= n):
            return TreeVerdict(False, f"range: token {i + 1} has head {h} outside 0..{n}")
        if h == i + 1:
            return TreeVerdict(False, f"self-loop: token {i + 1} heads itself")
    roots = [i for i, h in enumerate(heads) if h == 0]
    if len(roots) != 1:
        return TreeVerdict(False, f"single-root: {len(roots)} tokens attach to ROOT")
    for i, rel in enumerate(rels):
        if (rel == ROOT_REL) != (heads[i] == 0):
            return TreeVerdict(False, f"root-relation: token {i + 1} has relation {rel!r} with head {heads[i]}")
        if rel not in (ROOT_REL, DEP_REL):
            return TreeVerdict(False, f"relation: unknown label {rel!r} on token {i + 1}")
    for start in range(n):
        node, steps = start, 0
        while heads[node] != 0:
            node = heads[node] - 1
            steps += 1
            if steps > n:
                return TreeVerdict(False, f"cycle: following heads from token {start + 1} never reaches ROOT")
    return TreeVerdict(True)


def check_tree(tree: DependencyTree) -> None:
    verdict = validate_tree(tree)
    if not verdict:
        raise StructureError(f"invalid dependency tree ({verdict.reason})")
