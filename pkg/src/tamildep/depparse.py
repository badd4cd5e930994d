"""Head-dependent tree construction from chunks and clause spans, plus DOT
and indented-text rendering."""

from __future__ import annotations

from typing import Optional, Sequence

from .core import (
    AnnotatedSentence,
    ChunkLabel,
    ClauseSpan,
    DependencyTree,
    PosTag,
    StructureError,
    Token,
    check_tree,
    clause_spans_from_labels,
)


class EmptySentenceError(StructureError):
    pass


def _innermost_first(spans: Sequence[ClauseSpan]) -> list[ClauseSpan]:
    return sorted(set(spans), key=lambda s: (s.end - s.start, s.start))


def build_tree(sentence: AnnotatedSentence) -> DependencyTree:
    """Attach every token to a head.

    1. Non-head chunk tokens attach to their chunk head.
    2. The head of the last VP is the root (last chunk head without a VP).
    3. Clauses, innermost first: chunk heads inside attach to the clause's
       own verbal head, which in turn attaches to the nearest chunk head
       after the clause.
    4. Remaining PP heads attach to the nearest preceding NP head outside
       any clause; other remaining chunk heads attach to the root.
    5. Unchunked tokens attach to the next chunk head (symbols and tokens
       with nothing to their right attach to the root).
    """
    n = len(sentence)
    if n == 0:
        raise EmptySentenceError("cannot build a tree for an empty sentence")
    if sentence.pos is None or sentence.chunks is None:
        raise StructureError("tree building needs POS tags and chunks")
    pos = [PosTag(p) for p in sentence.pos]
    chunks = list(sentence.chunks)
    if sentence.clause_spans is not None:
        spans = list(sentence.clause_spans)
    else:
        spans = clause_spans_from_labels(sentence.clause_labels or ())
    head: list[Optional[int]] = [None] * n  # 0-based head, -1 for ROOT

    for c in chunks:
        for i in range(c.start, c.end):
            if i != c.head:
                head[i] = c.head

    vps = [c for c in chunks if c.label is ChunkLabel.VP]
    if vps:
        root = vps[-1].head
    elif chunks:
        root = chunks[-1].head
    else:
        root = max((i for i in range(n) if pos[i] is not PosTag.SYM), default=n - 1)
    head[root] = -1

    chunk_heads = [c.head for c in chunks]
    label_of = {c.head: c.label for c in chunks}
    claimed: set[int] = set()  # chunk heads already inside an inner clause
    for span in _innermost_first(spans):
        members = [h for h in chunk_heads if h in span and h not in claimed]
        verbs = [h for h in members if label_of[h] is ChunkLabel.VP]
        if not verbs:
            continue
        verb = verbs[-1]
        for h in members:
            if h != verb and h != root:
                head[h] = verb
        if verb != root:
            following = [h for h in chunk_heads if h > span.end]
            head[verb] = following[0] if following else root
        claimed.update(members)

    in_clause = {h for h in chunk_heads if any(h in s for s in spans)}
    for h in chunk_heads:
        if head[h] is not None:
            continue
        target = root
        if label_of[h] is ChunkLabel.PP:
            nps = [
                g for g in chunk_heads
                if g < h and label_of[g] is ChunkLabel.NP and g not in in_clause
            ]
            if nps:
                target = nps[-1]
        head[h] = target

    for i in range(n):
        if head[i] is not None:
            continue
        following = [h for h in chunk_heads if h > i]
        head[i] = root if pos[i] is PosTag.SYM or not following else following[0]

    return DependencyTree.from_heads([h + 1 for h in head])


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def render_dot(tree: DependencyTree, tokens: Sequence[Token]) -> str:
    """DOT digraph with dependent -> head edges; node 0 is ROOT."""
    check_tree(tree)
    if len(tokens) != len(tree):
        raise StructureError(f"{len(tokens)} tokens for a tree of {len(tree)} nodes")
    lines = ["digraph dependencies {", '  0 [label="ROOT"];']
    for i, tok in enumerate(tokens, 1):
        lines.append(f'  {i} [label="{_dot_escape(f"{i}:{tok.surface}")}"];')
    for i, h in enumerate(tree.heads, 1):
        lines.append(f'  {i} -> {h} [label="{tree.relations[i - 1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_text(tree: DependencyTree, tokens: Sequence[Token]) -> str:
    check_tree(tree)
    if len(tokens) != len(tree):
        raise StructureError(f"{len(tokens)} tokens for a tree of {len(tree)} nodes")
    lines: list[str] = []

    def walk(i: int, depth: int) -> None:
        lines.append("  " * depth + tokens[i].surface)
        for child in tree.children(i):
            walk(child, depth + 1)

    for r in tree.children(None):
        walk(r, 0)
    return "\n".join(lines) + "\n"
