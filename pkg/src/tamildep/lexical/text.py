"""Tokenization, grapheme segmentation and the letter-level Tamil encoding
used by the stemmer."""

from __future__ import annotations

import unicodedata

from ..core import Token, make_tokens, nfc

SENTENCE_TERMINALS = frozenset(".?!")

VIRAMA = "்"
INHERENT_A = "அ"
_VOWEL_SIGNS = {
    "ா": "ஆ",
    "ி": "இ",
    "ீ": "ஈ",
    "ு": "உ",
    "ூ": "ஊ",
    "ெ": "எ",
    "ே": "ஏ",
    "ை": "ஐ",
    "ொ": "ஒ",
    "ோ": "ஓ",
    "ௌ": "ஔ",
}
_SIGN_FOR_VOWEL = {v: s for s, v in _VOWEL_SIGNS.items()}
VOWELS = frozenset("அஆஇஈஉஊஎஏஐஒஓஔ")
_JOINERS = frozenset("‌‍")


def is_consonant(ch: str) -> bool:
    return "க" <= ch <= "ஹ" and ch not in VOWELS and unicodedata.category(ch) == "Lo"


def is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def split_graphemes(word: str) -> list[str]:
    """Split into base characters each followed by its combining marks."""
    clusters: list[str] = []
    for ch in nfc(word):
        if clusters and (unicodedata.category(ch).startswith("M") or ch in _JOINERS):
            clusters[-1] += ch
        else:
            clusters.append(ch)
    return clusters


def to_letters(text: str) -> str:
    """Rewrite Tamil syllables as explicit consonant + vowel letters.

    ``படி`` becomes ``ப்அட்இ``: every consonant carries a virama and its vowel
    follows as an independent letter. Morphemes concatenate as plain strings
    in this encoding; :func:`from_letters` restores the written form.
    """
    out: list[str] = []
    text = nfc(text)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if is_consonant(ch):
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == VIRAMA:
                out.append(ch + VIRAMA)
                i += 2
                continue
            if nxt in _VOWEL_SIGNS:
                out.append(ch + VIRAMA + _VOWEL_SIGNS[nxt])
                i += 2
                continue
            out.append(ch + VIRAMA + INHERENT_A)
        else:
            out.append(ch)
        i += 1
    return "".join(out)


def from_letters(letters: str) -> str:
    out: list[str] = []
    i, n = 0, len(letters)
    while i < n:
        ch = letters[i]
        if is_consonant(ch) and i + 2 < n and letters[i + 1] == VIRAMA and letters[i + 2] in VOWELS:
            vowel = letters[i + 2]
            out.append(ch if vowel == INHERENT_A else ch + _SIGN_FOR_VOWEL[vowel])
            i += 3
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def ends_with_vowel(letters: str) -> bool:
    return bool(letters) and letters[-1] in VOWELS


def _split_word(chunk: str) -> list[str]:
    pieces: list[str] = []
    buf = ""
    for ch in chunk:
        if is_punct(ch):
            if buf:
                pieces.append(buf)
                buf = ""
            pieces.append(ch)
        else:
            buf += ch
    if buf:
        pieces.append(buf)
    return pieces


def tokenize(text: str) -> list[list[Token]]:
    """Split text into sentences of tokens.

    Sentences end after a run of ``.``, ``?`` or ``!``; every punctuation
    character is its own token.
    """
    surfaces: list[str] = []
    for chunk in nfc(text).split():
        surfaces.extend(_split_word(chunk))
    sentences: list[list[str]] = []
    current: list[str] = []
    for i, s in enumerate(surfaces):
        current.append(s)
        next_terminal = i + 1 < len(surfaces) and surfaces[i + 1] in SENTENCE_TERMINALS
        if s in SENTENCE_TERMINALS and not next_terminal:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return [list(make_tokens(s)) for s in sentences]


def detokenize(tokens: list[Token]) -> str:
    return " ".join(t.surface for t in tokens)
