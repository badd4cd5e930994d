"""Corpus and model files.

Corpus files hold one token per line with seven tab-separated columns
(INDEX FORM POS CHUNK CLAUSE HEAD DEPREL), ``_`` for absent values, a blank
line after every sentence and ``#`` comment lines. Model files are
line-oriented text, versioned and sorted by feature string.
"""

from __future__ import annotations

import json
import os
from typing import Iterable, Optional, Sequence, TextIO, Union

from .core import (
    CLAUSE_LABELS,
    AnnotatedSentence,
    CodecError,
    DependencyTree,
    PosTag,
    StructureError,
    bio_to_chunks,
    chunks_to_bio,
    clause_spans_from_labels,
    make_tokens,
    validate_tree,
)
from .crf import FORMAT_VERSION, CrfModel, FeatureTemplate

PathLike = Union[str, os.PathLike]

ABSENT = "_"
COLUMNS = ("INDEX", "FORM", "POS", "CHUNK", "CLAUSE", "HEAD", "DEPREL")
MODEL_HEADER = "# tamildep crf model"


class CorpusFormatError(ValueError):
    def __init__(self, line: int, message: str, source: str = "<corpus>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


class CorpusValidationError(ValueError):
    def __init__(self, sentence: int, message: str, source: str = "<corpus>"):
        super().__init__(f"{source}: sentence {sentence}: {message}")
        self.sentence = sentence


class ModelFormatError(ValueError):
    def __init__(self, line: int, message: str, source: str = "<model>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


class ModelVersionError(ValueError):
    """The model file was written by an incompatible format version."""


# -- corpus --------------------------------------------------------------------

def _column(rows, col: int):
    values = [r[col] for r in rows]
    if all(v == ABSENT for v in values):
        return None
    return values


def _build_sentence(rows, comments, number: int, source: str) -> AnnotatedSentence:
    """``rows`` are (line number, fields) pairs for one sentence."""
    n = len(rows)
    for k, (lineno, fields) in enumerate(rows, 1):
        if fields[0] != str(k):
            raise CorpusFormatError(lineno, f"INDEX {fields[0]!r}, expected {k}", source)
    fields = [f for _, f in rows]

    def mixed(col: int) -> None:
        values = [f[col] for f in fields]
        if ABSENT in values and any(v != ABSENT for v in values):
            lineno = rows[values.index(ABSENT)][0]
            raise CorpusFormatError(lineno, f"{COLUMNS[col]} is only partly filled in", source)

    for col in (2, 3, 4):
        mixed(col)

    tokens = make_tokens([f[1] for f in fields])
    pos = None
    if (values := _column(fields, 2)) is not None:
        try:
            pos = tuple(PosTag(v) for v in values)
        except ValueError as exc:
            raise CorpusValidationError(number, str(exc), source) from None
    chunks = None
    if (values := _column(fields, 3)) is not None:
        try:
            chunks = tuple(bio_to_chunks(values, pos))
        except CodecError as exc:
            raise CorpusFormatError(rows[exc.index][0], str(exc), source) from None
    labels = _column(fields, 4)
    if labels is not None:
        for (lineno, _), label in zip(rows, labels):
            if label not in CLAUSE_LABELS:
                raise CorpusFormatError(lineno, f"unknown clause label {label!r}", source)

    arcs: list[Optional[tuple[int, str]]] = []
    for lineno, f in rows:
        head, rel = f[5], f[6]
        if (head == ABSENT) != (rel == ABSENT):
            raise CorpusFormatError(lineno, "HEAD and DEPREL must be given together", source)
        if head == ABSENT:
            arcs.append(None)
            continue
        if not head.isdigit():
            raise CorpusFormatError(lineno, f"HEAD {head!r} is not a number", source)
        if int(head) > n:
            raise CorpusValidationError(number, f"HEAD {head} outside 0..{n} at line {lineno}", source)
        arcs.append((int(head), rel))

    tree = partial = None
    if arcs and all(a is not None for a in arcs):
        tree = DependencyTree(tuple(h for h, _ in arcs), tuple(r for _, r in arcs))
        verdict = validate_tree(tree)
        if not verdict:
            raise CorpusValidationError(number, verdict.reason, source)
    elif any(a is not None for a in arcs):
        partial = tuple(arcs)

    try:
        return AnnotatedSentence(
            tokens,
            pos=pos,
            chunks=chunks,
            clause_labels=tuple(labels) if labels is not None else None,
            clause_spans=tuple(clause_spans_from_labels(labels)) if labels is not None else None,
            tree=tree,
            partial_arcs=partial,
            comments=tuple(comments),
        )
    except StructureError as exc:
        raise CorpusValidationError(number, str(exc), source) from None


def parse_corpus(lines: Iterable[str], source: str = "<corpus>") -> list[AnnotatedSentence]:
    sentences: list[AnnotatedSentence] = []
    rows: list[tuple[int, list[str]]] = []
    comments: list[str] = []
    lineno = 0

    def flush() -> None:
        if rows:
            sentences.append(_build_sentence(rows, comments, len(sentences) + 1, source))
        elif comments:
            raise CorpusFormatError(lineno, "comment block without tokens", source)
        rows.clear()
        comments.clear()

    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if line.startswith("#"):
            comments.append(line[2:] if line.startswith("# ") else line[1:])
        elif not line.strip():
            flush()
        else:
            fields = line.split("\t")
            if len(fields) != len(COLUMNS):
                raise CorpusFormatError(lineno, f"expected {len(COLUMNS)} tab-separated columns, got {len(fields)}", source)
            if not fields[1] or fields[1] == ABSENT:
                raise CorpusFormatError(lineno, "FORM is required", source)
            rows.append((lineno, fields))
    lineno += 1
    flush()
    return sentences


def read_corpus(path: PathLike) -> list[AnnotatedSentence]:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh, source=os.fspath(path))


def format_sentence(sentence: AnnotatedSentence) -> str:
    n = len(sentence)
    if n == 0:
        raise StructureError("cannot write an empty sentence")
    pos = [p.value for p in map(PosTag, sentence.pos)] if sentence.pos is not None else [ABSENT] * n
    bio = chunks_to_bio(sentence.chunks, n) if sentence.chunks is not None else [ABSENT] * n
    clause = list(sentence.clause_labels) if sentence.clause_labels is not None else [ABSENT] * n
    if sentence.tree is not None:
        arcs = [(str(h), r) for h, r in zip(sentence.tree.heads, sentence.tree.relations)]
    elif sentence.partial_arcs is not None:
        arcs = [(str(a[0]), a[1]) if a is not None else (ABSENT, ABSENT) for a in sentence.partial_arcs]
    else:
        arcs = [(ABSENT, ABSENT)] * n
    lines = [f"# {c}" for c in sentence.comments]
    for i, tok in enumerate(sentence.tokens):
        lines.append("\t".join((str(i + 1), tok.surface, pos[i], bio[i], clause[i], *arcs[i])))
    return "\n".join(lines) + "\n\n"


def write_corpus_to(fh: TextIO, sentences: Iterable[AnnotatedSentence]) -> None:
    for s in sentences:
        fh.write(format_sentence(s))


def write_corpus(path: PathLike, sentences: Iterable[AnnotatedSentence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_corpus_to(fh, sentences)


# -- model ---------------------------------------------------------------------

def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def format_model(model: CrfModel) -> str:
    lines = [MODEL_HEADER, f"version {model.version}"]
    lines.append("labels " + " ".join(_quote(y) for y in model.labels))
    lines += [f"template {_quote(t.identifier)}" for t in model.templates]
    lines += [f"meta {_quote(k)} {_quote(v)}" for k, v in sorted(model.meta.items())]
    lines += [f"weight {_quote(f)} {model.weights[f]!r}" for f in sorted(model.weights)]
    return "\n".join(lines) + "\n"


def save_model(model: CrfModel, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_model(model))


_decoder = json.JSONDecoder()


def _strings(text: str, lineno: int, source: str) -> tuple[list[str], str]:
    """Leading JSON strings of ``text`` and whatever follows them."""
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos] == " ":
            pos += 1
        if pos >= len(text) or text[pos] != '"':
            return out, text[pos:]
        try:
            value, pos = _decoder.raw_decode(text, pos)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(lineno, f"bad quoted string: {exc.msg}", source) from None
        out.append(value)


def parse_model(text: str, source: str = "<model>") -> CrfModel:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MODEL_HEADER:
        raise ModelFormatError(1, "missing model header", source)
    if len(lines) < 2 or not lines[1].startswith("version "):
        raise ModelFormatError(2, "missing version line", source)
    version = lines[1][len("version "):]
    if version != str(FORMAT_VERSION):
        raise ModelVersionError(f"{source}: model format version {version!r} is not supported (expected {FORMAT_VERSION})")
    labels: Optional[list[str]] = None
    templates: list[FeatureTemplate] = []
    meta: dict[str, str] = {}
    weights: dict[str, float] = {}
    for lineno, line in enumerate(lines[2:], 3):
        keyword, _, rest = line.partition(" ")
        values, tail = _strings(rest, lineno, source)
        if keyword == "labels" and labels is None and not tail:
            labels = values
        elif keyword == "template" and len(values) == 1 and not tail:
            try:
                templates.append(FeatureTemplate.parse(values[0]))
            except ValueError as exc:
                raise ModelFormatError(lineno, str(exc), source) from None
        elif keyword == "meta" and len(values) == 2 and not tail:
            meta[values[0]] = values[1]
        elif keyword == "weight" and len(values) == 1:
            if values[0] in weights:
                raise ModelFormatError(lineno, f"duplicate feature {values[0]!r}", source)
            try:
                weights[values[0]] = float(tail)
            except ValueError:
                raise ModelFormatError(lineno, f"bad weight {tail!r}", source) from None
        else:
            raise ModelFormatError(lineno, f"unrecognized line {line[:40]!r}", source)
    if labels is None:
        raise ModelFormatError(len(lines), "no labels line", source)
    try:
        return CrfModel(tuple(labels), tuple(templates), weights, FORMAT_VERSION, meta)
    except ValueError as exc:
        raise ModelFormatError(len(lines), str(exc), source) from None


def load_model(path: PathLike) -> CrfModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), source=os.fspath(path))


def sentence_heads(sentence: AnnotatedSentence) -> Sequence[Optional[int]]:
    """Head column of a sentence, ``None`` where no head was assigned."""
    if sentence.tree is not None:
        return sentence.tree.heads
    if sentence.partial_arcs is not None:
        return tuple(a[0] if a is not None else None for a in sentence.partial_arcs)
    return (None,) * len(sentence)
