"""Pure numpy/Python implementations of the compiled kernels."""

from __future__ import annotations

import math

import numpy as np


def count_triples(labels: np.ndarray, nrel: int) -> np.ndarray:
    """counts[x, y, a*nrel + b] = #{z : labels[x, z] == a and labels[z, y] == b}."""
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    onehot = np.zeros((n, n, nrel), dtype=np.int64)
    np.put_along_axis(onehot, labels[:, :, None], 1, axis=2)
    left = onehot.transpose(0, 2, 1).reshape(n * nrel, n)     # (x, a) x z
    right = onehot.reshape(n, n * nrel)                        # z x (y, b)
    prod = (left @ right).reshape(n, nrel, n, nrel)            # x, a, y, b
    return prod.transpose(0, 2, 1, 3).reshape(n, n, nrel * nrel).astype(np.int32)


def square_scan(kind: str, lo: int, hi: int) -> list[int]:
    """Arguments v in [lo, hi] for which the kind's polynomial is a perfect square."""
    out = []
    for v in range(lo, hi + 1):
        if kind == "a":
            val = v * (v + 1) * (v + 4)
        elif kind == "b":
            val = v * (v - 2) * (2 * v - 3)
        else:
            raise ValueError(f"unknown scan kind {kind!r}")
        if val < 0:
            continue
        r = math.isqrt(val)
        if r * r == val:
            out.append(v)
    return out
