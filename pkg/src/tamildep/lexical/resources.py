"""Lexicon and suffix-table resources and their TSV file formats."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from ..core import PosTag, nfc
from .text import to_letters

PathLike = Union[str, Path]


class ResourceFormatError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


class SuffixCategory(str, enum.Enum):
    VERB = "V"
    NOUN = "N"
    CASE = "CASE"


# Tie order for equal-length, equal-priority matches.
_CATEGORY_RANK = {SuffixCategory.VERB: 0, SuffixCategory.NOUN: 1, SuffixCategory.CASE: 2}


@dataclass(frozen=True)
class SuffixRule:
    pattern: str
    category: SuffixCategory
    features: tuple[tuple[str, str], ...] = ()
    priority: int = 0
    letters: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.pattern:
            raise ValueError("suffix pattern must be non-empty")
        object.__setattr__(self, "pattern", nfc(self.pattern))
        object.__setattr__(self, "category", SuffixCategory(self.category))
        object.__setattr__(self, "features", tuple(self.features))
        object.__setattr__(self, "letters", to_letters(self.pattern))

    def feature(self, key: str, default: Optional[str] = None) -> Optional[str]:
        for k, v in self.features:
            if k == key:
                return v
        return default

    @property
    def feature_string(self) -> str:
        return "|".join(f"{k}={v}" for k, v in self.features)

    def sort_key(self):
        return (-len(self.letters), -self.priority, _CATEGORY_RANK[self.category], self.pattern)


def parse_features(text: str) -> tuple[tuple[str, str], ...]:
    if text in ("", "_"):
        return ()
    pairs = []
    for item in text.split("|"):
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"feature {item!r} is not key=value")
        pairs.append((key, value))
    return tuple(pairs)


class SuffixTable:
    """Suffix rules ordered for longest-match lookup."""

    def __init__(self, rules: Iterable[SuffixRule]):
        rules = list(rules)
        seen = set()
        for r in rules:
            key = (r.pattern, r.category)
            if key in seen:
                raise ValueError(f"duplicate suffix rule {r.pattern!r} ({r.category.value})")
            seen.add(key)
        self.rules: tuple[SuffixRule, ...] = tuple(sorted(rules, key=SuffixRule.sort_key))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def matches(self, letters: str) -> list[SuffixRule]:
        """Rules whose pattern ends ``letters`` and leaves a non-empty stem,
        best match first."""
        return [r for r in self.rules if len(r.letters) < len(letters) and letters.endswith(r.letters)]


@dataclass(frozen=True)
class Lexicon:
    tags: Mapping[str, PosTag]
    verb_roots: frozenset = frozenset()
    noun_roots: frozenset = frozenset()

    def __post_init__(self):
        tags = {}
        for form, tag in self.tags.items():
            tag = PosTag(tag)
            if tag is PosTag.UNK:
                raise ValueError(f"lexicon entry {form!r} maps to UNK")
            tags[nfc(form)] = tag
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "verb_roots", frozenset(nfc(r) for r in self.verb_roots))
        object.__setattr__(self, "noun_roots", frozenset(nfc(r) for r in self.noun_roots))

    def lookup(self, form: str) -> Optional[PosTag]:
        return self.tags.get(nfc(form))

    def __contains__(self, form: str) -> bool:
        return nfc(form) in self.tags

    def __len__(self) -> int:
        return len(self.tags)

    @property
    def roots(self) -> frozenset:
        return self.verb_roots | self.noun_roots


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, raw.rstrip("\r\n").split("\t")


def parse_lexicon(text: str, source: str = "<lexicon>") -> Lexicon:
    """Parse ``FORM<TAB>TAG[<TAB>ROOT]`` lines; ROOT is ``VR`` or ``NR``."""
    tags: dict[str, PosTag] = {}
    verb_roots, noun_roots = set(), set()
    for lineno, cols in _data_lines(text):
        if len(cols) not in (2, 3):
            raise ResourceFormatError(source, lineno, f"expected 2 or 3 columns, got {len(cols)}")
        form = nfc(cols[0].strip())
        try:
            tag = PosTag(cols[1].strip())
        except ValueError:
            raise ResourceFormatError(source, lineno, f"unknown tag {cols[1]!r}") from None
        if tag is PosTag.UNK:
            raise ResourceFormatError(source, lineno, "lexicon entries may not map to UNK")
        if form in tags and tags[form] is not tag:
            raise ResourceFormatError(source, lineno, f"{form!r} already tagged {tags[form].value}")
        tags[form] = tag
        if len(cols) == 3:
            flag = cols[2].strip()
            if flag == "VR":
                verb_roots.add(form)
            elif flag == "NR":
                noun_roots.add(form)
            elif flag not in ("", "_"):
                raise ResourceFormatError(source, lineno, f"unknown root flag {flag!r}")
    return Lexicon(tags, frozenset(verb_roots), frozenset(noun_roots))


def parse_suffix_table(text: str, source: str = "<suffixes>") -> SuffixTable:
    """Parse ``PATTERN<TAB>CATEGORY<TAB>FEATURES<TAB>PRIORITY`` lines."""
    rules = []
    for lineno, cols in _data_lines(text):
        if len(cols) != 4:
            raise ResourceFormatError(source, lineno, f"expected 4 columns, got {len(cols)}")
        pattern, category, features, priority = (c.strip() for c in cols)
        try:
            rules.append(SuffixRule(pattern, SuffixCategory(category), parse_features(features), int(priority)))
        except ValueError as exc:
            raise ResourceFormatError(source, lineno, str(exc)) from None
    try:
        return SuffixTable(rules)
    except ValueError as exc:
        raise ResourceFormatError(source, 0, str(exc)) from None


def load_lexicon(path: Optional[PathLike] = None) -> Lexicon:
    if path is None:
        return parse_lexicon(_bundled("lexicon.tsv"), "lexicon.tsv")
    return parse_lexicon(Path(path).read_text(encoding="utf-8"), str(path))


def load_suffix_table(path: Optional[PathLike] = None) -> SuffixTable:
    if path is None:
        return parse_suffix_table(_bundled("suffixes.tsv"), "suffixes.tsv")
    return parse_suffix_table(Path(path).read_text(encoding="utf-8"), str(path))


def _bundled(name: str) -> str:
    return resources.files("tamildep.data").joinpath(name).read_text(encoding="utf-8")


def bundled_text(name: str) -> str:
    return _bundled(name)
