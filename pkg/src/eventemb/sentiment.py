"""Binary softmax sentiment classifier over event embeddings.

Class order is fixed as [negative, positive]; polarity +1 maps to class 1
and -1 to class 0, trained with one-hot cross entropy.
"""

from __future__ import annotations

import numpy as np

from .params import ParameterStore


def softmax(logits: np.ndarray) -> np.ndarray:
    """Stable softmax via max subtraction."""
    shifted = logits - logits.max()
    e = np.exp(shifted)
    return e / e.sum()


def polarity_class(polarity: int) -> int:
    if polarity == 1:
        return 1
    if polarity == -1:
        return 0
    raise ValueError(f"sentiment polarity must be +1 or -1, got {polarity!r}")


class SentimentHead:
    def __init__(self, store: ParameterStore, k: int, rng: np.random.Generator) -> None:
        r = 1.0 / np.sqrt(k)
        self.k = k
        self.w = store.add("sentiment.w", rng.uniform(-r, r, (2, k)))
        self.b = store.add("sentiment.b", np.zeros(2))
        self.g_w = store.grad("sentiment.w")
        self.g_b = store.grad("sentiment.b")

    def forward(self, v_e: np.ndarray) -> np.ndarray:
        """Probability pair (negative, positive)."""
        if v_e.shape != (self.k,):
            raise ValueError(f"sentiment: input has shape {v_e.shape}, expected {(self.k,)}")
        return softmax(self.w @ v_e + self.b)

    def loss(self, v_e: np.ndarray, polarity: int) -> float:
        probs = self.forward(v_e)
        return float(-np.log(probs[polarity_class(polarity)]))

    def loss_backward(
        self, v_e: np.ndarray, polarity: int, weight: float = 1.0
    ) -> tuple[float, np.ndarray]:
        """Cross-entropy loss and d(loss)/d(v_e); parameter grads accumulate."""
        probs = self.forward(v_e)
        cls = polarity_class(polarity)
        loss = float(-np.log(probs[cls]))
        dlogits = probs.copy()
        dlogits[cls] -= 1.0
        dlogits *= weight
        self.g_w += np.outer(dlogits, v_e)
        self.g_b += dlogits
        return loss, self.w.T @ dlogits
