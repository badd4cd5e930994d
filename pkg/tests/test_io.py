import random

import pytest

from tamildep.core import PosTag
from tamildep.crf import CrfModel, FeatureTemplate, viterbi
from tamildep.io import (
    CorpusFormatError,
    CorpusValidationError,
    ModelFormatError,
    ModelVersionError,
    format_model,
    format_sentence,
    load_model,
    parse_corpus,
    parse_model,
    read_corpus,
    save_model,
    sentence_heads,
    write_corpus,
)

from oracles import random_crf_model, random_model, random_sentence, random_sequence

GOLDEN_CONLL = (
    "# sent_id = golden\n"
    "1\tகிருஷ்ணன்\tN\tB-NP\tO\t3\tdep\n"
    "2\tபாடம்\tN\tB-NP\tO\t3\tdep\n"
    "3\tபடித்தான்\tV\tB-VP\tCE\t0\troot\n"
    "\n"
)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.conll"
    path.write_text("", encoding="utf-8")
    assert read_corpus(path) == []


def test_canonical_file_round_trips_bytes(tmp_path):
    src = tmp_path / "in.conll"
    src.write_bytes(GOLDEN_CONLL.encode("utf-8"))
    sents = read_corpus(src)
    assert len(sents) == 1
    s = sents[0]
    assert s.tree.heads == (3, 3, 0) and s.comments == ("sent_id = golden",)
    assert s.pos == (PosTag.N, PosTag.N, PosTag.V)
    assert [c.head for c in s.chunks] == [0, 1, 2]
    out = tmp_path / "out.conll"
    write_corpus(out, sents)
    assert out.read_bytes() == src.read_bytes()


def test_head_out_of_range_names_sentence():
    text = GOLDEN_CONLL.replace("3\tdep\n2", "7\tdep\n2", 1)
    with pytest.raises(CorpusValidationError) as exc:
        parse_corpus(text.splitlines(True))
    assert exc.value.sentence == 1 and "sentence 1" in str(exc.value)


def test_second_sentence_error_is_numbered():
    text = GOLDEN_CONLL + GOLDEN_CONLL.replace("\t0\troot", "\t3\tdep")
    with pytest.raises(CorpusValidationError) as exc:
        parse_corpus(text.splitlines(True))
    assert exc.value.sentence == 2


@pytest.mark.parametrize(
    "line,lineno",
    [
        ("1\tx\tN\tB-NP\tO\t0", 2),  # six columns
        ("2\tx\tN\tB-NP\tO\t0\troot", 2),  # bad index
        ("1\tx\tN\tI-NP\tO\t0\troot", 2),  # I- without B-
        ("1\tx\tN\tB-NP\tXX\t0\troot", 2),  # clause label
        ("1\tx\tN\tB-NP\tO\t0\t_", 2),  # HEAD without DEPREL
        ("1\tx\tN\tB-NP\tO\tq\tdep", 2),  # non-numeric head
        ("1\t_\tN\tB-NP\tO\t0\troot", 2),  # missing form
    ],
)
def test_malformed_lines_report_line_numbers(line, lineno):
    with pytest.raises(CorpusFormatError) as exc:
        parse_corpus(["# c\n", line + "\n"])
    assert exc.value.line == lineno


def test_partial_heads_are_kept():
    text = "1\ta\t_\t_\t_\t2\tdep\n2\tb\t_\t_\t_\t_\t_\n\n"
    (s,) = parse_corpus(text.splitlines(True))
    assert s.tree is None and s.partial_arcs == ((2, "dep"), None)
    assert sentence_heads(s) == (2, None)
    assert format_sentence(s) == text


def test_random_corpora_round_trip(tmp_path):
    rng = random.Random(11)
    sents = [random_sentence(rng) for _ in range(60)]
    path = tmp_path / "r.conll"
    write_corpus(path, sents)
    back = read_corpus(path)
    assert back == sents
    write_corpus(tmp_path / "r2.conll", back)
    assert (tmp_path / "r2.conll").read_bytes() == path.read_bytes()


def test_model_round_trip_preserves_bits(tmp_path):
    rng = random.Random(5)
    for _ in range(30):
        model = random_crf_model(rng)
        path = tmp_path / "m.txt"
        save_model(model, path)
        back = load_model(path)
        assert back == model and back.meta == model.meta
        assert format_model(back) == path.read_text(encoding="utf-8")


def test_model_round_trip_keeps_decoding(tmp_path):
    rng = random.Random(2)
    seqs = [random_sequence(rng, rng.randint(1, 5)) for _ in range(10)]
    model = random_model(rng, seqs, 3)
    save_model(model, tmp_path / "m")
    back = load_model(tmp_path / "m")
    assert [viterbi(s, back) for s in seqs] == [viterbi(s, model) for s in seqs]


def test_empty_weight_model():
    model = CrfModel(("O",), (FeatureTemplate.parse("bias"),))
    back = parse_model(format_model(model))
    assert back.weights == {} and back == model


def test_model_file_errors():
    good = format_model(CrfModel(("O", "CE"), (), {"bias|O": 1.5}))
    with pytest.raises(ModelVersionError):
        parse_model(good.replace("version 1", "version 2"))
    for bad in (
        "",
        good.replace("# tamildep crf model", "# something else"),
        good.replace("version 1\n", ""),
        good.replace("1.5", "1.5x"),
        good.replace("1.5", "nan"),
        good + "weight \"bias|O\" 2.0\n",
        good + "mystery line\n",
        good.replace('labels "O" "CE"\n', ""),
        good + 'template "pos["\n',
        good.replace('"bias|O"', '"bias|O'),
    ):
        with pytest.raises(ModelFormatError):
            parse_model(bad)
