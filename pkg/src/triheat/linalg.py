"""Dense complex matrix primitives shared by every other module.

All operators and states are plain ``numpy.ndarray`` with complex entries,
stored row-major (numpy's default). Matrices are square; dimensions here are
tiny (at most 144), so everything stays dense.
"""

from __future__ import annotations

import string

import numpy as np


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, entry ((i*db+k),(j*db+l)) = a[i,j]*b[k,l]."""
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ab - ba. Raises ValueError on dimension mismatch."""
    if a.shape != b.shape:
        raise ValueError(f"commutator dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ab + ba. Raises ValueError on dimension mismatch."""
    if a.shape != b.shape:
        raise ValueError(f"anticommutator dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b + b @ a


def trace(a: np.ndarray) -> complex:
    """Sum of diagonal entries."""
    return complex(np.trace(a))


def partial_trace(rho: np.ndarray, dims: list[int], keep: int) -> np.ndarray:
    """Trace out every tensor factor except ``dims[keep]``.

    ``rho`` must act on the tensor-product space with factor dimensions
    ``dims`` (leftmost factor slowest, matching ``kron`` order). The result
    has dimension ``dims[keep]`` and the same trace as ``rho``.
    """
    dims = list(dims)
    n = len(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"partial_trace: dims {dims} inconsistent with shape {rho.shape}")
    if not 0 <= keep < n:
        raise ValueError(f"partial_trace: keep index {keep} out of range for {n} subsystems")
    letters = string.ascii_lowercase
    rows = list(letters[:n])
    cols = [letters[n + i] if i == keep else rows[i] for i in range(n)]
    sub = "".join(rows) + "".join(cols) + "->" + rows[keep] + cols[keep]
    return np.einsum(sub, rho.reshape(tuple(dims) * 2))
