"""Independent brute-force oracles used to validate the production code.

These deliberately avoid the vectorized implementations they check: dense
matrices are materialized, math is done in scalar loops, and ranks are
computed by counting comparisons.
"""

import math

import numpy as np


def dense_slice_matrix(left, right, diag):
    """Materialize left @ right + diag(diag) with explicit loops."""
    d, n = left.shape
    m = np.zeros((d, d))
    for i in range(d):
        for j in range(d):
            acc = 0.0
            for r in range(n):
                acc += left[i, r] * right[r, j]
            m[i, j] = acc
        m[i, i] += diag[i]
    return m


def dense_bilinear(a, m, p):
    """a' M p as a double scalar loop."""
    total = 0.0
    for i in range(len(a)):
        for j in range(len(p)):
            total += a[i] * m[i, j] * p[j]
    return total


def dense_compose(x, y, mats, w, b):
    """tanh of per-slice dense bilinear values plus the affine part."""
    k = len(mats)
    xy = list(x) + list(y)
    out = np.zeros(k)
    for i in range(k):
        affine = 0.0
        for j, value in enumerate(xy):
            affine += w[i, j] * value
        out[i] = math.tanh(dense_bilinear(x, mats[i], y) + affine + b[i])
    return out


def scalar_affine_tanh(x, w, b, bilinear):
    k = w.shape[0]
    out = np.zeros(k)
    for i in range(k):
        acc = bilinear[i] + b[i]
        for j in range(w.shape[1]):
            acc += w[i, j] * x[j]
        out[i] = math.tanh(acc)
    return out


def scalar_mean_rows(rows):
    n = len(rows)
    dim = len(rows[0])
    out = np.zeros(dim)
    for j in range(dim):
        acc = 0.0
        for row in rows:
            acc += row[j]
        out[j] = acc / n
    return out


def scalar_lstm_step(x, h_prev, c_prev, weights, biases):
    """One LSTM transition evaluated entry by entry.

    weights/biases are dicts over gates 'i', 'f', 'o', 'c'.
    """

    def sig(v):
        return 1.0 / (1.0 + math.exp(-v))

    z = list(x) + list(h_prev)
    h_size = len(h_prev)
    gates = {}
    for gate in ("i", "f", "o", "c"):
        activ = []
        for row in range(h_size):
            acc = biases[gate][row]
            for col, value in enumerate(z):
                acc += weights[gate][row, col] * value
            activ.append(math.tanh(acc) if gate == "c" else sig(acc))
        gates[gate] = activ
    c = np.zeros(h_size)
    h = np.zeros(h_size)
    for row in range(h_size):
        c[row] = gates["f"][row] * c_prev[row] + gates["i"][row] * gates["c"][row]
        h[row] = gates["o"][row] * math.tanh(c[row])
    return h, c


def counting_ranks(values):
    """1-based average ranks computed by counting comparisons (O(n^2))."""
    ranks = []
    for x in values:
        less = sum(1 for y in values if y < x)
        equal = sum(1 for y in values if y == x)
        ranks.append(less + (equal + 1) / 2.0)
    return ranks


def spearman_bruteforce(pred, gold):
    """Rank both vectors by counting, then textbook Pearson."""
    rp = counting_ranks(list(pred))
    rg = counting_ranks(list(gold))
    n = len(rp)
    mp = sum(rp) / n
    mg = sum(rg) / n
    num = sum((a - mp) * (b - mg) for a, b in zip(rp, rg))
    den = math.sqrt(
        sum((a - mp) ** 2 for a in rp) * sum((b - mg) ** 2 for b in rg)
    )
    return num / den


def softmax_scalar(logits):
    biggest = max(logits)
    exps = [math.exp(v - biggest) for v in logits]
    total = sum(exps)
    return [v / total for v in exps]


def polarity_by_counting(words, lexicon):
    """Count positive and negative hits separately, then compare."""
    positives = sum(1 for w in words if lexicon.get(w, 0) == 1)
    negatives = sum(1 for w in words if lexicon.get(w, 0) == -1)
    if positives > negatives:
        return 1
    if negatives > positives:
        return -1
    return None


def hard_sim_by_counting(sim_scores, dissim_scores):
    """Accuracy from precomputed cosine pairs, strict comparison."""
    wins = 0
    for s, d in zip(sim_scores, dissim_scores):
        if s > d:
            wins += 1
    return wins / len(sim_scores)
