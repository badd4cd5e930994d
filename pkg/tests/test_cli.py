import io
import sys

import pytest

from tamildep.cli import main
from tamildep.lexical.resources import bundled_text

GOLDEN_TEXT = "கிருஷ்ணன் பாடம் படித்தான்\n"


def run(argv, capsysbinary, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin.encode("utf-8")), encoding="utf-8"))
    status = main(argv)
    out, err = capsysbinary.readouterr()
    return status, out.decode("utf-8"), err.decode("utf-8")


@pytest.fixture
def minicorpus(tmp_path):
    path = tmp_path / "mini.txt"
    path.write_text(bundled_text("minicorpus.txt"), encoding="utf-8")
    return path


@pytest.fixture
def golden(tmp_path):
    path = tmp_path / "golden.txt"
    path.write_text(GOLDEN_TEXT, encoding="utf-8")
    return path


def heads(conll: str):
    return [line.split("\t")[5] for line in conll.splitlines() if line and not line.startswith("#")]


def test_parse_golden(golden, capsysbinary):
    status, out, err = run(["parse", str(golden)], capsysbinary)
    assert status == 0 and err == ""
    assert heads(out) == ["3", "3", "0"]


def test_parse_formats(golden, capsysbinary):
    _, dot, _ = run(["parse", "--format", "dot", str(golden)], capsysbinary)
    assert dot.startswith("digraph dependencies {") and '3 -> 0 [label="root"]' in dot
    _, text, _ = run(["parse", "--format", "text", str(golden)], capsysbinary)
    assert text == "படித்தான்\n  கிருஷ்ணன்\n  பாடம்\n"


def test_stdin_and_output_file(tmp_path, capsysbinary, monkeypatch):
    out_path = tmp_path / "o.conll"
    status, out, _ = run(["parse", "-o", str(out_path)], capsysbinary, GOLDEN_TEXT, monkeypatch)
    assert status == 0 and out == ""
    assert heads(out_path.read_text(encoding="utf-8")) == ["3", "3", "0"]


def test_stage_outputs(golden, capsysbinary):
    _, toks, _ = run(["tokenize", str(golden)], capsysbinary)
    assert toks == "கிருஷ்ணன்\nபாடம்\nபடித்தான்\n\n"
    _, tagged, _ = run(["tag", str(golden)], capsysbinary)
    rows = [line.split("\t") for line in tagged.splitlines() if line]
    assert [r[2] for r in rows] == ["N", "N", "V"]
    assert rows[2][3].startswith("படி+த்த்")
    _, chunked, _ = run(["chunk", str(golden)], capsysbinary)
    assert [line.split("\t")[4] for line in chunked.splitlines() if line] == ["B-NP", "B-NP", "B-VP"]
    _, clauses, _ = run(["clauses", str(golden)], capsysbinary)
    assert all(len(line.split("\t")) == 6 for line in clauses.splitlines() if line)


def test_stages_compose(minicorpus, tmp_path, capsysbinary):
    _, direct, _ = run(["parse", str(minicorpus)], capsysbinary)
    current = minicorpus
    for stage in ("tokenize", "tag", "chunk", "clauses"):
        argv = [stage, str(current)] + (["--tokenized"] if current != minicorpus else [])
        status, out, _ = run(argv, capsysbinary)
        assert status == 0
        current = tmp_path / f"{stage}.out"
        current.write_text(out, encoding="utf-8")
    _, chained, _ = run(["parse", "--tokenized", str(current)], capsysbinary)
    assert chained == direct
    assert direct.count("\n\n") == 20


def test_eval_identity_and_figure(golden, tmp_path, capsysbinary):
    gold = tmp_path / "gold.conll"
    run(["parse", str(golden), "-o", str(gold)], capsysbinary)
    figure = tmp_path / "prf.png"
    status, out, _ = run(["eval", str(gold), str(gold), "--figure", str(figure)], capsysbinary)
    assert status == 0
    assert "P=100.00 R=100.00 F=100.00" in out
    assert out.splitlines()[0] == "system\tP(%)\tR(%)\tF(%)\texact"
    assert figure.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_eval_partial_prediction(tmp_path, capsysbinary):
    gold = tmp_path / "gold.conll"
    gold.write_text("1\ta\t_\t_\t_\t2\tdep\n2\tb\t_\t_\t_\t0\troot\n\n", encoding="utf-8")
    pred = tmp_path / "pred.conll"
    pred.write_text("1\ta\t_\t_\t_\t2\tdep\n2\tb\t_\t_\t_\t_\t_\n\n", encoding="utf-8")
    status, out, _ = run(["eval", str(gold), str(pred), str(gold), "--names", "partial", "full"], capsysbinary)
    assert status == 0
    assert "partial\t100.00\t50.00\t66.67\t0/1" in out
    assert "full: P=100.00 R=100.00 F=100.00 sentences=1/1" in out


def test_train_is_deterministic_and_usable(minicorpus, tmp_path, capsysbinary):
    corpus = tmp_path / "train.conll"
    run(["parse", str(minicorpus), "-o", str(corpus)], capsysbinary)
    models = []
    for k in range(2):
        path = tmp_path / f"m{k}.txt"
        status, _, err = run(["train", str(corpus), "-o", str(path), "--seed", "3", "--l2", "0.5", "--max-iters", "50"], capsysbinary)
        assert status == 0 and err.startswith("trained ")
        models.append(path.read_bytes())
    assert models[0] == models[1]
    status, out, _ = run(["parse", "--model", str(tmp_path / "m0.txt"), str(minicorpus)], capsysbinary)
    assert status == 0 and out.count("\n\n") == 20


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["parse", "--format", "xml"], ["train", "x.conll"], ["eval", "g"], ["tag", "--nope"]],
)
def test_usage_errors(argv, capsysbinary):
    status, out, err = run(argv, capsysbinary)
    assert status == 1 and out == ""
    assert err.startswith("tamildep: usage error: ")


def test_data_errors(tmp_path, golden, capsysbinary):
    bad = tmp_path / "bad.conll"
    bad.write_text("1\tx\tN\n\n", encoding="utf-8")
    status, _, err = run(["eval", str(bad), str(bad)], capsysbinary)
    assert status == 2 and err.startswith("tamildep: data error: ") and ":1:" in err
    model = tmp_path / "m.txt"
    model.write_text("# tamildep crf model\nversion 9\nlabels \"O\"\n", encoding="utf-8")
    status, _, err = run(["parse", "--model", str(model), str(golden)], capsysbinary)
    assert status == 2 and "version" in err
    status, _, err = run(["parse", str(tmp_path / "missing.txt")], capsysbinary)
    assert status == 2 and err.startswith("tamildep: io error: ")
    lex = tmp_path / "lex.tsv"
    lex.write_text("x\tNOPE\n", encoding="utf-8")
    status, _, err = run(["parse", "--lexicon", str(lex), str(golden)], capsysbinary)
    assert status == 2 and err.startswith("tamildep: data error: ")


def test_misaligned_eval_is_data_error(tmp_path, capsysbinary):
    gold = tmp_path / "g.conll"
    gold.write_text("1\ta\t_\t_\t_\t0\troot\n\n", encoding="utf-8")
    pred = tmp_path / "p.conll"
    pred.write_text("1\ta\t_\t_\t_\t0\troot\n\n1\tb\t_\t_\t_\t0\troot\n\n", encoding="utf-8")
    status, _, err = run(["eval", str(gold), str(pred)], capsysbinary)
    assert status == 2 and "predicted" in err
