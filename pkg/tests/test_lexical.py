import pytest
import regex
from hypothesis import given
from hypothesis import strategies as st

from tamildep.core import PosTag, make_tokens
from tamildep.lexical import (
    Lexicon,
    ResourceFormatError,
    RootCategory,
    SuffixCategory,
    SuffixRule,
    SuffixTable,
    parse_lexicon,
    parse_suffix_table,
    split_graphemes,
    stem,
    tag_sentence,
    tag_with_lexicon,
    tokenize,
)
from tamildep.lexical.text import from_letters, to_letters

CONSONANTS = "கஙசஞடணதநபமயரலவழளறனஜஷஸஹ"
SIGNS = ["", "்", "ா", "ி", "ீ", "ு", "ூ", "ெ", "ே", "ை", "ொ", "ோ", "ௌ"]
VOWEL_LETTERS = "அஆஇஈஉஊஎஏஐஒஓஔ"

syllables = st.builds(lambda c, s: c + s, st.sampled_from(CONSONANTS), st.sampled_from(SIGNS))
tamil_words = st.builds(
    lambda v, rest: v + "".join(rest),
    st.sampled_from(["", *VOWEL_LETTERS]),
    st.lists(syllables, min_size=1, max_size=8),
)
# Tamil block code points plus the joiners and some ASCII.
tamil_text = st.text(
    alphabet=st.sampled_from([chr(c) for c in range(0x0B80, 0x0C00)] + ["‌", "‍", "a", "1"]),
    max_size=20,
)


@given(tamil_text)
def test_graphemes_match_regex_oracle(text):
    import unicodedata

    text = unicodedata.normalize("NFC", text)
    assert split_graphemes(text) == regex.findall(r"\X", text)


def test_grapheme_examples():
    assert split_graphemes("படித்தான்") == ["ப", "டி", "த்", "தா", "ன்"]
    assert "".join(split_graphemes("கிருஷ்ணன்")) == "கிருஷ்ணன்"


def test_letter_encoding_example():
    assert to_letters("படி") == "ப்அட்இ"
    assert from_letters("ப்அட்இத்த்ஆன்") == "படித்தான்"


@given(tamil_words)
def test_letter_encoding_round_trips(word):
    assert from_letters(to_letters(word)) == word


def test_tokenize_splits_sentences_and_punctuation():
    sents = tokenize("அவன் வந்தான். நான் பார்த்தேன்?! சரி")
    assert [[t.surface for t in s] for s in sents] == [
        ["அவன்", "வந்தான்", "."],
        ["நான்", "பார்த்தேன்", "?", "!"],
        ["சரி"],
    ]
    assert tokenize("   ") == []


@given(st.lists(tamil_words, min_size=1, max_size=10))
def test_tokenize_keeps_words(words):
    sents = tokenize(" ".join(words))
    assert [t.surface for s in sents for t in s] == words
    assert all(t.index == i for s in sents for i, t in enumerate(s))


@pytest.mark.parametrize(
    "word,root,patterns,category",
    [
        ("படித்தான்", "படி", ["த்த்", "ஆன்"], RootCategory.VERB),
        ("கொடுக்கும்", "கொடு", ["க்க்", "உம்"], RootCategory.VERB),
        ("நடக்கிறார்கள்", "நட", ["க்கிற்", "ஆர்கள்"], RootCategory.VERB),
        ("போவோம்", "போ", ["வ்", "ஓம்"], RootCategory.VERB),
        ("பையனைக்", "பையன்", ["ஐ"], RootCategory.NOUN),
        ("கூடத்தில்", "கூடம்", ["இல்"], RootCategory.NOUN),
        ("இந்தியாவின்", "இந்தியா", ["இன்"], RootCategory.NOUN),
        ("வருடங்களாக", "வருடம்", ["கள்", "ஆக"], RootCategory.NOUN),
        ("ராமன்", "ராமன்", [], RootCategory.NOUN),
    ],
)
def test_stem_examples(word, root, patterns, category, lexicon, suffixes):
    a = stem(word, suffixes, lexicon)
    assert a.root == root
    assert [s.pattern for s in a.suffixes] == patterns
    assert a.category is category
    assert a.derived_tag is (PosTag.V if category is RootCategory.VERB else PosTag.N)
    assert a.surface() == word


def test_stem_records_sandhi_and_junctions(lexicon, suffixes):
    a = stem("பையனைக்", suffixes, lexicon)
    assert a.sandhi == "க்" and a.case == "acc"
    assert stem("கூடத்தில்", suffixes, lexicon).junction.name == "oblique"
    assert stem("வருடங்களாக", suffixes, lexicon).junction.name == "nasal"
    assert stem("இந்தியாவின்", suffixes, lexicon).junction.name == "glide"


def test_stem_fallback_and_empty(lexicon, suffixes):
    a = stem("ஜஜஜ", suffixes, lexicon)
    assert a.fallback and a.root == "ஜஜஜ" and a.derived_tag is PosTag.N and a.case == "nom"
    with pytest.raises(ValueError):
        stem("", suffixes, lexicon)


@given(tamil_words)
def test_stem_reconstructs_any_word(word):
    from tamildep.lexical import load_lexicon, load_suffix_table

    a = stem(word, load_suffix_table(), load_lexicon())
    assert a.surface() == word
    assert a.derived_tag in (PosTag.N, PosTag.V)


def test_tagging_uses_lexicon_then_stemmer(lexicon, suffixes):
    toks = make_tokens(["நான்", "பாடம்", "படித்தேன்", "."])
    assert tag_with_lexicon(toks, lexicon) == [PosTag.PRP, PosTag.N, PosTag.UNK, PosTag.SYM]
    tags, morph = tag_sentence(toks, lexicon, suffixes)
    assert tags == [PosTag.PRP, PosTag.N, PosTag.V, PosTag.SYM]
    assert morph[2].root == "படி"


def test_parse_lexicon_and_errors():
    lex = parse_lexicon("# c\nபடி\tV\tVR\nமரம்\tN\tNR\nஒரு\tDET\n")
    assert lex.lookup("படி") is PosTag.V and "மரம்" in lex.noun_roots and len(lex) == 3
    for bad in ("x\tZZZ\n", "x\tUNK\n", "x\n", "x\tN\tQQ\n", "x\tN\nx\tV\n"):
        with pytest.raises(ResourceFormatError):
            parse_lexicon(bad)
    with pytest.raises(ValueError):
        Lexicon({"x": PosTag.UNK})


def test_parse_suffix_table_and_errors():
    table = parse_suffix_table("ஐ\tCASE\tslot=case|case=acc\t0\nஇல்\tCASE\tcase=loc\t1\n")
    assert [r.pattern for r in table] == ["இல்", "ஐ"]
    assert table.rules[1].feature("case") == "acc"
    for bad in ("ஐ\tCASE\tcase=acc\n", "ஐ\tXX\t_\t0\n", "ஐ\tCASE\tnovalue\t0\n", "ஐ\tCASE\t_\t0\nஐ\tCASE\t_\t0\n"):
        with pytest.raises(ResourceFormatError):
            parse_suffix_table(bad)


def test_suffix_table_longest_match_order():
    table = SuffixTable([SuffixRule("த்", SuffixCategory.VERB), SuffixRule("த்த்", SuffixCategory.VERB)])
    assert [r.pattern for r in table.matches(to_letters("படித்த்"))] == ["த்த்", "த்"]
    # A match must leave a non-empty stem.
    assert table.matches(to_letters("த்")) == []
