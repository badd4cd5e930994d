"""Command-line interface.

Every stage reads raw text by default. With ``--tokenized`` it reads the
output of an earlier stage instead (one token per line, or tab-separated
columns) and reuses whatever annotation columns are present, so stages can
be piped into each other::

    tamildep tokenize in.txt | tamildep tag --tokenized | tamildep parse --tokenized
"""

from __future__ import annotations

import argparse
import os
import sys
from io import StringIO
from typing import Optional, Sequence

from .core import AnnotatedSentence, PosTag, bio_to_chunks, chunks_to_bio, clause_spans_from_labels, make_tokens
from .crf import TrainingParams
from .depparse import render_dot, render_text
from .evaluation import edge_prf, format_percent
from .io import load_model, parse_corpus, read_corpus, save_model, sentence_heads, write_corpus_to
from .lexical import tokenize
from .pipeline import Pipeline

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
PROG = "tamildep"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().strip()}")


# -- input / output ------------------------------------------------------------

def _read_input(path: str) -> str:
    if path == "-":
        data = sys.stdin.buffer.read() if hasattr(sys.stdin, "buffer") else sys.stdin.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return
    buffer = getattr(sys.stdout, "buffer", None)
    if buffer is not None:
        sys.stdout.flush()
        buffer.write(text.encode("utf-8"))
        buffer.flush()
    else:
        sys.stdout.write(text)


# Column layouts of stage outputs, keyed by column count.
_LAYOUTS = {
    1: ("FORM",),
    4: ("INDEX", "FORM", "POS", "MORPH"),
    5: ("INDEX", "FORM", "POS", "MORPH", "CHUNK"),
    6: ("INDEX", "FORM", "POS", "MORPH", "CHUNK", "CLAUSE"),
    7: ("INDEX", "FORM", "POS", "CHUNK", "CLAUSE", "HEAD", "DEPREL"),
}


def _blocks(text: str):
    block: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if block:
                yield block
            block = []
        elif not line.startswith("#"):
            block.append((lineno, line.split("\t")))
    if block:
        yield block


def _stage_sentences(text: str) -> list[AnnotatedSentence]:
    """Sentences from an earlier stage's output, keeping its annotations."""
    sentences = []
    for block in _blocks(text):
        width = len(block[0][1])
        layout = _LAYOUTS.get(width)
        for lineno, fields in block:
            if len(fields) != width or layout is None:
                raise ValueError(f"line {lineno}: expected one of {sorted(_LAYOUTS)} columns consistently, got {len(fields)}")
        cols = {name: [f[k] for _, f in block] for k, name in enumerate(layout)}
        s = AnnotatedSentence(make_tokens(cols["FORM"]))
        if "POS" in cols and "_" not in cols["POS"]:
            s = s.replace(pos=tuple(PosTag(p) for p in cols["POS"]))
            if "MORPH" in cols:
                s = s.replace(morph=tuple(cols["MORPH"]))
        if "CHUNK" in cols and "_" not in cols["CHUNK"] and s.pos is not None:
            s = s.replace(chunks=tuple(bio_to_chunks(cols["CHUNK"], s.pos)))
        if "CLAUSE" in cols and "_" not in cols["CLAUSE"] and s.chunks is not None:
            labels = tuple(cols["CLAUSE"])
            s = s.replace(clause_labels=labels, clause_spans=tuple(clause_spans_from_labels(labels)))
        sentences.append(s)
    return sentences


def _sentences(args) -> list[AnnotatedSentence]:
    text = _read_input(args.input)
    if args.tokenized:
        return _stage_sentences(text)
    return [AnnotatedSentence(tuple(tokens)) for tokens in tokenize(text)]


def _pipeline(args) -> Pipeline:
    model = load_model(args.model) if args.model else None
    return Pipeline.load(args.lexicon, args.suffixes, model)


def _run(pipe: Pipeline, s: AnnotatedSentence, upto: str) -> AnnotatedSentence:
    """Run the stages up to ``upto`` that the sentence does not carry yet."""
    if s.pos is None:
        tagged = pipe.tag(list(s.tokens))
        s = s.replace(pos=tagged.pos, morph=tagged.morph)
    if upto == "tag":
        return s
    if s.chunks is None:
        s = pipe.chunk(s)
    if upto == "chunk":
        return s
    if s.clause_labels is None:
        s = pipe.clauses(s)
    if upto == "clauses":
        return s
    return pipe.tree(s)


def _morph(s: AnnotatedSentence, i: int) -> str:
    if s.morph is None:
        return "_"
    m = s.morph[i]
    return m if isinstance(m, str) else m.describe()


def _columns(s: AnnotatedSentence, upto: str) -> str:
    bio = chunks_to_bio(s.chunks, len(s)) if s.chunks is not None else None
    lines = []
    for i, tok in enumerate(s.tokens):
        row = [str(i + 1), tok.surface, PosTag(s.pos[i]).value, _morph(s, i)]
        if upto in ("chunk", "clauses"):
            row.append(bio[i])
        if upto == "clauses":
            row.append(s.clause_labels[i])
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n\n"


# -- commands --------------------------------------------------------------------

def cmd_tokenize(args) -> int:
    out = "".join("".join(f"{t.surface}\n" for t in s.tokens) + "\n" for s in _sentences(args))
    _emit(out, args.output)
    return EXIT_OK


def _stage_command(upto: str):
    def command(args) -> int:
        pipe = _pipeline(args)
        out = "".join(_columns(_run(pipe, s, upto), upto) for s in _sentences(args))
        _emit(out, args.output)
        return EXIT_OK

    return command


def cmd_parse(args) -> int:
    pipe = _pipeline(args)
    parsed = [_run(pipe, s, "parse") for s in _sentences(args)]
    if args.format == "dot":
        out = "\n".join(render_dot(s.tree, s.tokens) for s in parsed)
    elif args.format == "text":
        out = "\n".join(render_text(s.tree, s.tokens) for s in parsed)
    else:
        buf = StringIO()
        write_corpus_to(buf, [s.replace(morph=None) for s in parsed])
        out = buf.getvalue()
    _emit(out, args.output)
    return EXIT_OK


def cmd_train(args) -> int:
    from .clauses import train_clause_model

    corpus = read_corpus(args.corpus)
    params = TrainingParams(l2=args.l2, max_iters=args.max_iters, tolerance=args.tolerance, seed=args.seed)
    model = train_clause_model(corpus, params)
    save_model(model, args.output)
    print(
        f"trained {len(model.weights)} features in {model.meta['iterations']} iterations"
        f" (converged: {model.meta['converged']})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_eval(args) -> int:
    gold = read_corpus(args.gold)
    missing = [k for k, s in enumerate(gold, 1) if s.tree is None]
    if missing:
        raise ValueError(f"{args.gold}: gold sentence {missing[0]} has no complete HEAD column")
    names = args.names or [os.path.basename(p) for p in args.predicted]
    if len(names) != len(args.predicted):
        raise UsageError(f"--names lists {len(names)} names for {len(args.predicted)} predicted files")
    results = []
    for name, path in zip(names, args.predicted):
        predicted = read_corpus(path)
        results.append((name, edge_prf([s.tree for s in gold], [sentence_heads(s) for s in predicted])))
    lines = ["system\tP(%)\tR(%)\tF(%)\texact"]
    for name, m in results:
        lines.append(
            f"{name}\t{format_percent(m.precision)}\t{format_percent(m.recall)}\t"
            f"{format_percent(m.f_measure)}\t{m.correct_sentences}/{m.total_sentences}"
        )
    lines.append("")
    for name, m in results:
        lines.append(
            f"{name}: P={format_percent(m.precision)} R={format_percent(m.recall)} "
            f"F={format_percent(m.f_measure)} sentences={m.correct_sentences}/{m.total_sentences}"
        )
    _emit("\n".join(lines) + "\n", args.output)
    if args.figure:
        from .plotting import plot_metrics

        plot_metrics(results, args.figure)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--lexicon", help="lexicon TSV (default: bundled)")
    shared.add_argument("--suffixes", help="suffix table TSV (default: bundled)")
    shared.add_argument("--model", help="clause-boundary CRF model (default: rules only)")
    shared.add_argument("-o", "--output", help="output file (default: stdout)")

    reader = _Parser(add_help=False)
    reader.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    reader.add_argument(
        "--tokenized", action="store_true",
        help="input is the output of an earlier stage rather than raw text",
    )

    parser = _Parser(prog=PROG, description="Rule-based + CRF dependency parsing for Tamil.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tokenize", parents=[shared, reader], help="one token per line")
    p.set_defaults(func=cmd_tokenize)
    for name, help_text in (
        ("tag", "INDEX FORM POS MORPH columns"),
        ("chunk", "adds a BIO chunk column"),
        ("clauses", "adds a clause-boundary column"),
    ):
        p = sub.add_parser(name, parents=[shared, reader], help=help_text)
        p.set_defaults(func=_stage_command(name))
    p = sub.add_parser("parse", parents=[shared, reader], help="full pipeline")
    p.add_argument("--format", choices=("conll", "dot", "text"), default="conll")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("train", parents=[shared], help="train a clause-boundary model")
    p.add_argument("corpus", help="corpus file with POS, CHUNK and CLAUSE columns")
    p.add_argument("--l2", type=float, default=TrainingParams.l2)
    p.add_argument("--max-iters", type=int, default=TrainingParams.max_iters)
    p.add_argument("--tolerance", type=float, default=TrainingParams.tolerance)
    p.add_argument("--seed", type=int, default=TrainingParams.seed)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", parents=[shared], help="edge precision/recall/F against a gold corpus")
    p.add_argument("gold")
    p.add_argument("predicted", nargs="+")
    p.add_argument("--names", nargs="+", help="system names for the report (default: file names)")
    p.add_argument("--figure", help="also render a P/R/F bar chart to this file")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "train" and not args.output:
            raise UsageError("train needs -o/--output for the model file")
        return args.func(args)
    except UsageError as exc:
        print(f"{PROG}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"{PROG}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"{PROG}: io error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
