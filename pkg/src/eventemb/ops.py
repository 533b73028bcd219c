"""Low-level numeric primitives shared by all model components.

Everything here is double precision and operates on caller-owned numpy
arrays. Each differentiable operation comes in two flavours: a plain
forward (`f(...)`) and a gradient companion (`f_grads(...)`) returning the
exact analytic derivatives that the finite-difference checker validates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def sigmoid(x: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def cosine(u: np.ndarray, v: np.ndarray, eps: float = 1e-8) -> float:
    """Cosine similarity with an epsilon-guarded denominator.

    Returns 0.0 when either vector is all-zero. Raises on length mismatch.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"cosine: length mismatch {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv + eps))


def cosine_grads(
    u: np.ndarray, v: np.ndarray, eps: float = 1e-8
) -> tuple[float, np.ndarray, np.ndarray]:
    """Cosine similarity plus gradients w.r.t. both inputs."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"cosine: length mismatch {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0, np.zeros_like(u), np.zeros_like(v)
    denom = nu * nv + eps
    c = float(np.dot(u, v) / denom)
    du = (v - c * nv * u / nu) / denom
    dv = (u - c * nu * v / nv) / denom
    return c, du, dv


@dataclass(frozen=True)
class LowRankSlice:
    """One bilinear slice stored in factored form: left @ right + diag(diag).

    left is (d, n), right is (n, d), diag is (d,), with 1 <= n <= d. The
    dense d x d matrix is never materialized outside of test oracles.
    """

    left: np.ndarray
    right: np.ndarray
    diag: np.ndarray

    def __post_init__(self) -> None:
        d, n = self.left.shape
        if not (1 <= n <= d):
            raise ValueError(f"low-rank slice: rank n={n} must satisfy 1 <= n <= d={d}")
        if self.right.shape != (n, d):
            raise ValueError(
                f"low-rank slice: right factor is {self.right.shape}, expected {(n, d)}"
            )
        if self.diag.shape != (d,):
            raise ValueError(
                f"low-rank slice: diag is {self.diag.shape}, expected {(d,)}"
            )

    @property
    def d(self) -> int:
        return self.left.shape[0]

    @property
    def n(self) -> int:
        return self.left.shape[1]


def bilinear_lowrank(a: np.ndarray, p: np.ndarray, slc: LowRankSlice) -> float:
    """a' (left @ right + diag) p, evaluated factored in O(dn).

    Computed as (a' left)(right p) + sum_i a_i diag_i p_i; the dense d x d
    matrix never exists.
    """
    a = np.asarray(a, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    if a.shape != (slc.d,):
        raise ValueError(f"bilinear_lowrank: a has shape {a.shape}, expected {(slc.d,)}")
    if p.shape != (slc.d,):
        raise ValueError(f"bilinear_lowrank: p has shape {p.shape}, expected {(slc.d,)}")
    u = a @ slc.left
    v = slc.right @ p
    return float(u @ v + np.dot(a * slc.diag, p))


def bilinear_lowrank_grads(
    a: np.ndarray, p: np.ndarray, slc: LowRankSlice
) -> tuple[float, dict[str, np.ndarray]]:
    """Forward value plus gradients w.r.t. a, p, left, right, diag."""
    a = np.asarray(a, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    u = a @ slc.left
    v = slc.right @ p
    value = float(u @ v + np.dot(a * slc.diag, p))
    grads = {
        "a": slc.left @ v + slc.diag * p,
        "p": slc.right.T @ u + slc.diag * a,
        "left": np.outer(a, v),
        "right": np.outer(u, p),
        "diag": a * p,
    }
    return value, grads


def affine_tanh(
    x: np.ndarray, w: np.ndarray, b: np.ndarray, bilinear: np.ndarray
) -> np.ndarray:
    """tanh(bilinear + w @ x + b), the shared nonlinearity of every layer."""
    x = np.asarray(x, dtype=np.float64)
    k, m = w.shape
    if x.shape != (m,):
        raise ValueError(f"affine_tanh: x has shape {x.shape}, expected {(m,)}")
    if b.shape != (k,):
        raise ValueError(f"affine_tanh: b has shape {b.shape}, expected {(k,)}")
    if bilinear.shape != (k,):
        raise ValueError(
            f"affine_tanh: bilinear has shape {bilinear.shape}, expected {(k,)}"
        )
    return np.tanh(bilinear + w @ x + b)


def affine_tanh_backward(
    out: np.ndarray, x: np.ndarray, w: np.ndarray, dout: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Backward for affine_tanh given its output.

    Returns (d_bilinear, dx, dw, db); d_bilinear equals db since both are
    pre-activation terms.
    """
    dpre = dout * (1.0 - out * out)
    dw = np.outer(dpre, x)
    dx = w.T @ dpre
    return dpre, dx, dw, dpre.copy()
