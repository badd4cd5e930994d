"""Rule-based forward stemming: root lookup, sandhi stripping and
longest-match suffix removal."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from ..core import PosTag, nfc
from .resources import Lexicon, SuffixCategory, SuffixRule, SuffixTable
from .text import VOWELS, ends_with_vowel, from_letters, to_letters

MAX_STRIP_ITERATIONS = 8
SANDHI_STOPS = ("க்", "ச்", "த்", "ப்")


class RootCategory(str, enum.Enum):
    VERB = "VerbRoot"
    NOUN = "NounRoot"


@dataclass(frozen=True)
class JunctionEdit:
    """A stem alternation at the root/suffix boundary, e.g. மரம் -> மரத்-."""

    name: str
    root_ending: str
    surface_ending: str


OBLIQUE = JunctionEdit("oblique", "ம்", "த்த்")
PLURAL_NASAL = JunctionEdit("nasal", "ம்", "ங்")
GLIDE_V = JunctionEdit("glide", "", "வ்")
GLIDE_Y = JunctionEdit("glide", "", "ய்")
JUNCTION_EDITS = (OBLIQUE, PLURAL_NASAL, GLIDE_V, GLIDE_Y)

# Slot sequences a root may carry, read left to right from the root. Chains
# containing rules without a slot feature are left unconstrained.
SLOT_PATTERNS = {
    RootCategory.VERB: frozenset({(), ("tense", "png"), ("nonfinite",)}),
    RootCategory.NOUN: frozenset({(), ("number",), ("case",), ("number", "case")}),
}


def _slots(chain) -> tuple:
    return tuple(s.feature("slot") for s in chain)


def _admissible(chain, category: RootCategory) -> bool:
    slots = _slots(chain)
    return None in slots or slots in SLOT_PATTERNS[category]


def _viable(chain) -> bool:
    """Whether more suffixes to the left could still complete ``chain``."""
    slots = _slots(chain)
    if None in slots:
        return True
    k = len(slots)
    return any(len(p) >= k and p[len(p) - k:] == slots for ps in SLOT_PATTERNS.values() for p in ps)


@dataclass(frozen=True)
class MorphAnalysis:
    root: str
    suffixes: tuple[SuffixRule, ...]
    category: Optional[RootCategory]
    derived_tag: PosTag
    junction: Optional[JunctionEdit] = None
    sandhi: Optional[str] = None
    fallback: bool = False

    def surface(self) -> str:
        """Rebuild the analysed word from its parts."""
        letters = to_letters(self.root)
        if self.junction is not None:
            cut = len(to_letters(self.junction.root_ending))
            letters = letters[: len(letters) - cut] + to_letters(self.junction.surface_ending)
        letters += "".join(s.letters for s in self.suffixes)
        if self.sandhi:
            letters += to_letters(self.sandhi)
        return from_letters(letters)

    @property
    def case(self) -> Optional[str]:
        if self.category is not RootCategory.NOUN:
            return None
        cases = [s.feature("case") for s in self.suffixes if s.category is SuffixCategory.CASE]
        cases = [c for c in cases if c]
        return cases[-1] if cases else "nom"

    def describe(self) -> str:
        """Compact ``root+suffix<features>`` rendering used by the CLI."""
        parts = [self.root]
        for s in self.suffixes:
            feats = ",".join(v for k, v in s.features if k != "slot")
            parts.append(f"{s.pattern}<{feats}>" if feats else s.pattern)
        text = "+".join(parts)
        if self.sandhi:
            text += f"+{self.sandhi}<sandhi>"
        if self.fallback:
            text += "?"
        return text


def _root_index(lexicon: Lexicon) -> dict[str, tuple[str, RootCategory]]:
    index = getattr(lexicon, "_root_letters", None)
    if index is None:
        index = {}
        for root in sorted(lexicon.noun_roots):
            index[to_letters(root)] = (root, RootCategory.NOUN)
        for root in sorted(lexicon.verb_roots):
            index[to_letters(root)] = (root, RootCategory.VERB)
        object.__setattr__(lexicon, "_root_letters", index)
    return index


def _analysis(root, chain, root_category, junction=None, sandhi=None, fallback=False) -> MorphAnalysis:
    if any(s.category is SuffixCategory.VERB for s in chain):
        category = RootCategory.VERB
    elif chain:
        category = RootCategory.NOUN
    else:
        category = root_category
    tag = PosTag.V if category is RootCategory.VERB else PosTag.N
    return MorphAnalysis(root, tuple(chain), category, tag, junction, sandhi, fallback)


def _strip_sandhi(letters: str) -> tuple[str, Optional[str]]:
    for stop in SANDHI_STOPS:
        rest = letters[: -len(stop)]
        if letters.endswith(stop) and ends_with_vowel(rest):
            return rest, stop
    return letters, None


def _known_root(letters, chain, roots):
    if letters in roots:
        root, category = roots[letters]
        if _admissible(chain, category):
            return root, category, None
    if not chain:
        return None
    for edit in JUNCTION_EDITS:
        surface = to_letters(edit.surface_ending)
        if not letters.endswith(surface):
            continue
        base = letters[: len(letters) - len(surface)] + to_letters(edit.root_ending)
        if base not in roots:
            continue
        if edit.root_ending == "" and not (ends_with_vowel(base) and chain[0].letters[0] in VOWELS):
            continue
        root, category = roots[base]
        if _admissible(chain, category):
            return root, category, edit
    return None


def _segment(letters: str, table: SuffixTable, roots) -> Optional[tuple]:
    """Depth-first search over suffix splits, longest match first, for a
    segmentation that ends in a known root."""
    failed: set[tuple] = set()

    def search(rest: str, chain: list[SuffixRule]):
        hit = _known_root(rest, chain, roots)
        if hit is not None:
            return hit + (chain,)
        depth = len(chain)
        slots = _slots(chain)
        shape = tuple(s.pattern for s in chain) if None in slots else slots
        key = (rest, shape, bool(chain) and chain[0].letters[0] in VOWELS)
        if depth == MAX_STRIP_ITERATIONS or key in failed:
            return None
        for rule in table.matches(rest):
            if not _viable([rule] + chain):
                continue
            found = search(rest[: -len(rule.letters)], [rule] + chain)
            if found is not None:
                return found
        failed.add(key)
        return None

    return search(letters, [])


def _greedy(letters: str, table: SuffixTable) -> tuple[str, list[SuffixRule]]:
    chain: list[SuffixRule] = []
    for _ in range(MAX_STRIP_ITERATIONS):
        candidates = table.matches(letters)
        if not candidates:
            break
        best = candidates[0]
        chain.insert(0, best)
        letters = letters[: -len(best.letters)]
    return letters, chain


def stem(word: str, rules: SuffixTable | Sequence[SuffixRule], lexicon: Lexicon) -> MorphAnalysis:
    """Analyse ``word`` into root + suffix chain.

    Known roots come back unchanged. Otherwise a trailing sandhi stop after a
    vowel is stripped and suffixes are removed right to left, longest match
    first; when several splits exist, the first one that reaches a lexicon
    root wins. Words nothing can be stripped from become noun roots with
    ``fallback`` set.
    """
    if not word:
        raise ValueError("cannot stem an empty word")
    word = nfc(word)
    table = rules if isinstance(rules, SuffixTable) else SuffixTable(rules)
    roots = _root_index(lexicon)
    if word in lexicon.verb_roots:
        return _analysis(word, [], RootCategory.VERB)
    if word in lexicon.noun_roots:
        return _analysis(word, [], RootCategory.NOUN)

    letters, sandhi = _strip_sandhi(to_letters(word))
    found = _segment(letters, table, roots)
    if found is not None:
        root, root_category, junction, chain = found
        return _analysis(root, chain, root_category, junction, sandhi)

    rest, chain = _greedy(letters, table)
    if not chain:
        return _analysis(from_letters(rest), [], RootCategory.NOUN, sandhi=sandhi, fallback=True)
    return _analysis(from_letters(rest), chain, RootCategory.NOUN, sandhi=sandhi)
