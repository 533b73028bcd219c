import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from eventemb.data import EventTuple, Vocabulary
from eventemb.model import JointModel

REPO_ROOT = Path(__file__).resolve().parent.parent
SYNTHETIC_DIR = REPO_ROOT / "data" / "synthetic"

WORDS = [
    "alice", "bob", "carol", "dave", "threw", "caught", "built", "ball",
    "bomb", "house", "cake", "to", "have", "fun", "run", "fast",
]


def make_model(seed=0, n_words=12, d=6, k=4, n=2, scale=1.0):
    """Small joint model over a fixed word list with random embeddings."""
    rng = np.random.default_rng(seed)
    vocab = Vocabulary(WORDS[:n_words])
    table = rng.uniform(-scale, scale, (len(vocab), d))
    model = JointModel(vocab, table, d, k, n, rng)
    return model, vocab, rng


def random_event(vocab, rng, max_words=2):
    words = vocab.words[1:]
    pick = lambda: [words[int(rng.integers(len(words)))] for _ in range(int(rng.integers(1, max_words + 1)))]
    return EventTuple(tuple(pick()), tuple(pick()), tuple(pick()))


@pytest.fixture
def synthetic_dir():
    assert SYNTHETIC_DIR.is_dir(), "bundled synthetic dataset missing"
    return SYNTHETIC_DIR
