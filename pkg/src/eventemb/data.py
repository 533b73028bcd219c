"""Corpus, annotation, lexicon and word-vector ingestion.

All on-disk formats are line-oriented UTF-8 text; `#`-prefixed lines are
comments and blank lines are ignored. See the README for the exact grammar
of each file type. Parsed structures are immutable and freely shareable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

UNKNOWN_TOKEN = "<unk>"
UNKNOWN_INDEX = 0


class DataError(ValueError):
    """Malformed input file; message carries file path and line number."""

    def __init__(self, path: str, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


def tokenize(text: str) -> tuple[str, ...]:
    """Lowercase and split on whitespace; placeholder tokens stay whole."""
    return tuple(text.lower().split())


@dataclass(frozen=True)
class EventTuple:
    """(actor, predicate, object) as word lists."""

    actor: tuple[str, ...]
    predicate: tuple[str, ...]
    object: tuple[str, ...]

    def __post_init__(self) -> None:
        for field in ("actor", "predicate", "object"):
            if not getattr(self, field):
                raise ValueError(f"event tuple: empty {field}")

    def words(self) -> tuple[str, ...]:
        return self.actor + self.predicate + self.object

    def replace_argument(self, argument: str, words: Sequence[str]) -> "EventTuple":
        if argument not in ("actor", "predicate", "object"):
            raise ValueError(f"unknown event argument '{argument}'")
        parts = {
            "actor": self.actor,
            "predicate": self.predicate,
            "object": self.object,
        }
        parts[argument] = tuple(words)
        return EventTuple(parts["actor"], parts["predicate"], parts["object"])


@dataclass(frozen=True)
class AnnotatedExample:
    """An event plus optional intent sentence and emotion words / polarity."""

    event: EventTuple
    intent: tuple[str, ...] | None = None
    emotion_words: tuple[str, ...] | None = None
    polarity: int | None = None


@dataclass(frozen=True)
class HardSimInstance:
    similar: tuple[EventTuple, EventTuple]
    dissimilar: tuple[EventTuple, EventTuple]


@dataclass(frozen=True)
class TransitiveSimInstance:
    pair: tuple[EventTuple, EventTuple]
    gold: float


class Vocabulary:
    """Dense word index with a reserved unknown entry at index 0."""

    def __init__(self, words: Iterable[str] = ()) -> None:
        self._words: list[str] = [UNKNOWN_TOKEN]
        self._index: dict[str, int] = {UNKNOWN_TOKEN: UNKNOWN_INDEX}
        for w in words:
            self._add(w)

    def _add(self, word: str) -> int:
        idx = self._index.get(word)
        if idx is None:
            idx = len(self._words)
            self._words.append(word)
            self._index[word] = idx
        return idx

    def index(self, word: str) -> int:
        return self._index.get(word, UNKNOWN_INDEX)

    def word(self, index: int) -> str:
        return self._words[index]

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def __len__(self) -> int:
        return len(self._words)

    @property
    def words(self) -> list[str]:
        return list(self._words)

    def extended(self, tokens: Iterable[str]) -> "Vocabulary":
        """New vocabulary with unseen tokens appended in first-appearance order."""
        vocab = Vocabulary(self._words[1:])
        for t in tokens:
            vocab._add(t)
        return vocab


def _records(path: str) -> Iterable[tuple[int, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def load_word_vectors(path: str) -> tuple[Vocabulary, np.ndarray]:
    """Parse `word v1 ... vd` lines into a vocabulary and embedding table.

    The dimension is inferred from the first record; every later record must
    match it. The unknown row (index 0) is the mean of all loaded rows.
    """
    words: list[str] = []
    rows: list[np.ndarray] = []
    dim: int | None = None
    for lineno, line in _records(path):
        parts = line.split()
        if len(parts) < 2:
            raise DataError(path, lineno, "expected a word followed by vector entries")
        word = parts[0].lower()
        try:
            vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
        except ValueError as exc:
            raise DataError(path, lineno, f"bad vector entry: {exc}") from exc
        if dim is None:
            dim = vec.size
        elif vec.size != dim:
            raise DataError(
                path, lineno, f"vector has {vec.size} entries, expected {dim}"
            )
        words.append(word)
        rows.append(vec)
    if dim is None:
        raise DataError(path, 0, "no word vectors found")
    vocab = Vocabulary(words)
    table = np.empty((len(vocab), dim), dtype=np.float64)
    table[UNKNOWN_INDEX] = np.mean(rows, axis=0)
    for i, row in enumerate(rows, start=1):
        table[i] = row
    return vocab, table


def extend_embeddings(
    vocab: Vocabulary,
    table: np.ndarray,
    tokens: Iterable[str],
    rng: np.random.Generator,
    init_range: float = 0.1,
) -> tuple[Vocabulary, np.ndarray]:
    """Grow (vocab, table) to cover `tokens`; new rows init uniform [-r, r]."""
    extended = vocab.extended(tokens)
    n_new = len(extended) - len(vocab)
    if n_new == 0:
        return extended, table
    fresh = rng.uniform(-init_range, init_range, size=(n_new, table.shape[1]))
    return extended, np.vstack([table, fresh])


def average_argument(
    words: Sequence[str], table: np.ndarray, vocab: Vocabulary
) -> np.ndarray:
    """Arithmetic mean of the word rows; unknown words use the unknown row."""
    if not words:
        raise ValueError("average_argument: empty word list")
    rows = table[[vocab.index(w) for w in words]]
    return rows.mean(axis=0)


def derive_polarity(
    emotion_words: Sequence[str], lexicon: dict[str, int]
) -> int | None:
    """Sign of the summed lexicon polarities; None on an exact zero sum.

    Words absent from the lexicon contribute 0; duplicates contribute once
    per occurrence.
    """
    total = sum(lexicon.get(w, 0) for w in emotion_words)
    if total > 0:
        return 1
    if total < 0:
        return -1
    return None


def parse_event(text: str, path: str = "<string>", lineno: int = 0) -> EventTuple:
    parts = text.split("|")
    if len(parts) != 3:
        raise DataError(
            path, lineno, f"event needs 3 pipe-delimited arguments, got {len(parts)}"
        )
    args = [tokenize(p) for p in parts]
    for name, arg in zip(("actor", "predicate", "object"), args):
        if not arg:
            raise DataError(path, lineno, f"event has an empty {name}")
    return EventTuple(*args)


def format_event(event: EventTuple) -> str:
    return "|".join(
        " ".join(arg) for arg in (event.actor, event.predicate, event.object)
    )


def load_corpus(path: str) -> list[EventTuple]:
    """One event per line: `actor words|predicate words|object words`."""
    return [parse_event(line, path, lineno) for lineno, line in _records(path)]


def save_corpus(path: str, events: Iterable[EventTuple]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in events:
            fh.write(format_event(e) + "\n")


def load_annotations(path: str) -> list[AnnotatedExample]:
    """`event<TAB>intent or -<TAB>comma-separated emotion words or -` lines."""
    examples = []
    for lineno, line in _records(path):
        fields = line.split("\t")
        if len(fields) != 3:
            raise DataError(
                path, lineno, f"annotation needs 3 tab-separated fields, got {len(fields)}"
            )
        event = parse_event(fields[0], path, lineno)
        intent = None if fields[1].strip() == "-" else tokenize(fields[1])
        if intent == ():
            raise DataError(path, lineno, "annotation has an empty intent field")
        emotions: tuple[str, ...] | None
        if fields[2].strip() == "-":
            emotions = None
        else:
            emotions = tuple(
                w for item in fields[2].split(",") for w in tokenize(item)
            )
            if not emotions:
                raise DataError(path, lineno, "annotation has an empty emotion field")
        if intent is None and emotions is None:
            raise DataError(
                path, lineno, "annotation carries neither an intent nor emotion words"
            )
        examples.append(AnnotatedExample(event, intent, emotions))
    return examples


def format_annotation(example: AnnotatedExample) -> str:
    intent = " ".join(example.intent) if example.intent else "-"
    emotions = ",".join(example.emotion_words) if example.emotion_words else "-"
    return f"{format_event(example.event)}\t{intent}\t{emotions}"


def save_annotations(path: str, examples: Iterable[AnnotatedExample]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(format_annotation(ex) + "\n")


def load_hardsim(path: str) -> list[HardSimInstance]:
    """Four tab-separated events per line: similar pair, then dissimilar pair."""
    instances = []
    for lineno, line in _records(path):
        fields = line.split("\t")
        if len(fields) != 4:
            raise DataError(
                path, lineno, f"hard-similarity record needs 4 events, got {len(fields)}"
            )
        e1, e2, e3, e4 = (parse_event(f, path, lineno) for f in fields)
        instances.append(HardSimInstance(similar=(e1, e2), dissimilar=(e3, e4)))
    return instances


def save_hardsim(path: str, instances: Iterable[HardSimInstance]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            events = (*inst.similar, *inst.dissimilar)
            fh.write("\t".join(format_event(e) for e in events) + "\n")


def load_transitive(path: str) -> list[TransitiveSimInstance]:
    """Two tab-separated events plus a gold score in [1, 7] per line."""
    instances = []
    for lineno, line in _records(path):
        fields = line.split("\t")
        if len(fields) != 3:
            raise DataError(
                path, lineno,
                f"transitive record needs 2 events and a gold score, got {len(fields)} fields",
            )
        e1 = parse_event(fields[0], path, lineno)
        e2 = parse_event(fields[1], path, lineno)
        try:
            gold = float(fields[2])
        except ValueError as exc:
            raise DataError(path, lineno, f"bad gold score: {fields[2]!r}") from exc
        if not (1.0 <= gold <= 7.0):
            raise DataError(path, lineno, f"gold score {gold} outside [1, 7]")
        instances.append(TransitiveSimInstance(pair=(e1, e2), gold=gold))
    return instances


def save_transitive(path: str, instances: Iterable[TransitiveSimInstance]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(
                f"{format_event(inst.pair[0])}\t{format_event(inst.pair[1])}\t{inst.gold:g}\n"
            )


def load_lexicon(path: str) -> dict[str, int]:
    """`word<TAB>+1|-1` lines; later duplicates override earlier ones."""
    lexicon: dict[str, int] = {}
    for lineno, line in _records(path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise DataError(
                path, lineno, f"lexicon record needs 2 tab-separated fields, got {len(fields)}"
            )
        word = fields[0].strip().lower()
        value = fields[1].strip()
        if value in ("+1", "1"):
            polarity = 1
        elif value == "-1":
            polarity = -1
        else:
            raise DataError(path, lineno, f"lexicon polarity must be +1 or -1, got {value!r}")
        if not word:
            raise DataError(path, lineno, "lexicon record has an empty word")
        lexicon[word] = polarity
    return lexicon


def save_lexicon(path: str, lexicon: dict[str, int]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for word, polarity in lexicon.items():
            fh.write(f"{word}\t{'+1' if polarity > 0 else '-1'}\n")
