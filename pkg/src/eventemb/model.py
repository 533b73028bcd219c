"""Joint model: shared embedding table, event composer, intent encoder, sentiment head."""

from __future__ import annotations

import numpy as np

from .composer import EventComposer
from .data import EventTuple, Vocabulary
from .intent import BiLstmEncoder
from .params import ParameterStore
from .sentiment import SentimentHead


class JointModel:
    """All trainable components wired over one ParameterStore.

    The embedding table is shared: event arguments and intent sentences
    both read (and fine-tune) the same word vectors. Construction order is
    fixed so that parameter initialization is a deterministic function of
    the rng seed.
    """

    def __init__(
        self,
        vocab: Vocabulary,
        embeddings: np.ndarray,
        d: int,
        k: int,
        n: int,
        rng: np.random.Generator,
    ) -> None:
        if k % 2 != 0:
            raise ValueError(f"k={k} must be even: the intent hidden size is k/2")
        if not (1 <= n <= min(d, k)):
            raise ValueError(f"rank n={n} must satisfy 1 <= n <= min(d={d}, k={k})")
        embeddings = np.ascontiguousarray(embeddings, dtype=np.float64)
        if embeddings.shape != (len(vocab), d):
            raise ValueError(
                f"embedding table has shape {embeddings.shape}, "
                f"expected {(len(vocab), d)}"
            )
        self.vocab = vocab
        self.d = d
        self.k = k
        self.n = n
        self.store = ParameterStore()
        table = self.store.add("embeddings", embeddings)
        table_grad = self.store.grad("embeddings")
        self.embeddings = table
        self.composer = EventComposer(self.store, vocab, table, table_grad, d, k, n, rng)
        self.intent = BiLstmEncoder(self.store, vocab, table, table_grad, d, k // 2, rng)
        self.sentiment = SentimentHead(self.store, k, rng)

    # Frozen-model conveniences used by evaluation and the CLI.

    def embed_event(self, event: EventTuple) -> np.ndarray:
        return self.composer.embed_event(event)

    def score_event(self, event: EventTuple) -> float:
        return self.composer.score_event(event)

    def encode_intent(self, words) -> np.ndarray:
        return self.intent.encode_intent(words)

    def load_arrays(self, arrays: dict[str, np.ndarray]) -> None:
        """Overwrite all parameters from `arrays`; shapes must match exactly."""
        missing = set(self.store.params) - set(arrays)
        if missing:
            raise ValueError(f"missing parameter arrays: {sorted(missing)}")
        extra = set(arrays) - set(self.store.params)
        if extra:
            raise ValueError(f"unknown parameter arrays: {sorted(extra)}")
        for name, current in self.store.params.items():
            incoming = arrays[name]
            if incoming.shape != current.shape:
                raise ValueError(
                    f"array '{name}' has shape {incoming.shape}, expected {current.shape}"
                )
            current[...] = incoming
