"""Command-line interface: train, evaluate, embed, nearest-neighbor search.

Exit codes: 0 success, 1 runtime failure, 2 usage error. Reports go to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import checkpoint as ckpt_io
from . import data as data_io
from . import evaluate, trainer
from .data import DataError, parse_event, format_event
from .ops import cosine

# config keys that may appear in a `key = value` config file
_CONFIG_FIELDS = tuple(f.name for f in dataclasses.fields(trainer.TrainingConfig))


def parse_config_file(path: str) -> dict:
    """Parse `key = value` lines mirroring TrainingConfig field names."""
    defaults = trainer.TrainingConfig()
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataError(path, lineno, "expected `key = value`")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _CONFIG_FIELDS:
                raise DataError(path, lineno, f"unknown config key {key!r}")
            field_type = type(getattr(defaults, key))
            try:
                values[key] = field_type(value)
            except ValueError as exc:
                raise DataError(path, lineno, f"bad value for {key!r}: {exc}") from exc
    return values


def _build_config(args: argparse.Namespace) -> trainer.TrainingConfig:
    values = trainer.TrainingConfig().to_dict()
    if args.config:
        values.update(parse_config_file(args.config))
    if args.preset:
        alpha, beta, gamma = trainer.PRESETS[args.preset]
        values.update(alpha=alpha, beta=beta, gamma=gamma)
    for key in _CONFIG_FIELDS:
        override = getattr(args, key, None)
        if override is not None:
            values[key] = override
    config = trainer.TrainingConfig.from_dict(values)
    config.validate()
    return config


def _cmd_train(args: argparse.Namespace) -> int:
    config = _build_config(args)
    corpus = data_io.load_corpus(args.corpus)
    print(f"loaded {len(corpus)} events from {args.corpus}", file=sys.stderr)
    annotations = data_io.load_annotations(args.annotations) if args.annotations else []
    if args.annotations:
        print(f"loaded {len(annotations)} annotations from {args.annotations}", file=sys.stderr)
    word_vectors = data_io.load_word_vectors(args.vectors) if args.vectors else None
    if word_vectors is not None:
        vocab, table = word_vectors
        print(
            f"loaded {len(vocab) - 1} word vectors of dimension {table.shape[1]} "
            f"from {args.vectors}",
            file=sys.stderr,
        )
    lexicon = data_io.load_lexicon(args.lexicon) if args.lexicon else None
    if lexicon is not None:
        print(f"loaded {len(lexicon)} lexicon entries from {args.lexicon}", file=sys.stderr)

    def report(metrics: trainer.EpochMetrics) -> None:
        print(f"epoch {metrics.epoch}: {metrics.line()}", file=sys.stderr)

    trainer.train(
        config,
        corpus,
        annotations,
        word_vectors=word_vectors,
        lexicon=lexicon,
        out_dir=args.out,
        progress=report,
    )
    final = os.path.join(args.out, "final.ckpt")
    print(final)
    return 0


def _load_model(path: str):
    ckpt = ckpt_io.load_checkpoint(path)
    return ckpt_io.build_model(ckpt), ckpt


def _cmd_eval_hard(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.checkpoint)
    instances = data_io.load_hardsim(args.data)
    accuracy = evaluate.hard_similarity_accuracy(instances, model.embed_event)
    print(
        evaluate.format_report(
            "hard_similarity_accuracy", args.data, accuracy, len(instances)
        )
    )
    return 0


def _cmd_eval_transitive(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.checkpoint)
    instances = data_io.load_transitive(args.data)
    rho = evaluate.evaluate_transitive(instances, model.embed_event)
    print(
        evaluate.format_report(
            "transitive_spearman_rho", args.data, rho, len(instances)
        )
    )
    return 0


def _cmd_embed(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.checkpoint)
    for event in data_io.load_corpus(args.events):
        vec = model.embed_event(event)
        print("\t".join(f"{x:.10g}" for x in vec))
    return 0


def _cmd_nn(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.checkpoint)
    query = parse_event(args.query, "<query>", 0)
    events = data_io.load_corpus(args.corpus)
    if not events:
        raise ValueError(f"{args.corpus}: no events to search")
    query_vec = model.embed_event(query)
    scored = [(cosine(query_vec, model.embed_event(e)), e) for e in events]
    # stable sort: ties keep input order
    ranked = sorted(range(len(scored)), key=lambda i: -scored[i][0])
    for i in ranked[: args.top]:
        score, event = scored[i]
        print(f"{score:.6f}\t{format_event(event)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eventemb",
        description="Train and evaluate commonsense-supervised event embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a model and write checkpoints")
    p_train.add_argument("--corpus", required=True, help="event corpus file")
    p_train.add_argument("--out", required=True, help="output directory")
    p_train.add_argument("--annotations", help="intent/emotion annotation file")
    p_train.add_argument("--vectors", help="pretrained word-vector file")
    p_train.add_argument("--lexicon", help="sentiment lexicon TSV")
    p_train.add_argument("--config", help="key = value config file")
    p_train.add_argument(
        "--preset",
        choices=sorted(trainer.PRESETS),
        help="loss-weight preset (overrides config file alpha/beta/gamma)",
    )
    p_train.add_argument("--alpha", type=float)
    p_train.add_argument("--beta", type=float)
    p_train.add_argument("--gamma", type=float)
    p_train.add_argument("--learning-rate", dest="learning_rate", type=float)
    p_train.add_argument("--batch-size", dest="batch_size", type=int)
    p_train.add_argument("--lambda-l2", dest="lambda_l2", type=float)
    p_train.add_argument("--d", type=int, help="word-vector dimension")
    p_train.add_argument("--k", type=int, help="slice count / embedding width")
    p_train.add_argument("--n", type=int, help="tensor decomposition rank")
    p_train.add_argument("--epochs", type=int)
    p_train.add_argument("--seed", type=int)
    p_train.add_argument(
        "--corruption-target", dest="corruption_target", choices=("actor", "object")
    )
    p_train.set_defaults(func=_cmd_train)

    p_hard = sub.add_parser("eval-hard", help="hard-similarity accuracy")
    p_hard.add_argument("--checkpoint", required=True)
    p_hard.add_argument("--data", required=True)
    p_hard.set_defaults(func=_cmd_eval_hard)

    p_trans = sub.add_parser("eval-transitive", help="transitive-similarity Spearman rho")
    p_trans.add_argument("--checkpoint", required=True)
    p_trans.add_argument("--data", required=True)
    p_trans.set_defaults(func=_cmd_eval_transitive)

    p_embed = sub.add_parser("embed", help="print event embeddings")
    p_embed.add_argument("--checkpoint", required=True)
    p_embed.add_argument("--events", required=True)
    p_embed.set_defaults(func=_cmd_embed)

    p_nn = sub.add_parser("nn", help="nearest events by cosine similarity")
    p_nn.add_argument("--checkpoint", required=True)
    p_nn.add_argument("--query", required=True, help="event as actor|predicate|object")
    p_nn.add_argument("--corpus", required=True)
    p_nn.add_argument("--top", type=int, default=10)
    p_nn.set_defaults(func=_cmd_nn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
