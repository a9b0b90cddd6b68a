"""Seeded random sign projection of the co-occurrence matrix.

Each column entity owns a pseudo-random row of +/-1 signs derived from a
counter-based hash of ``(column identity, block, seed)``; the full sign
matrix is a pure function that is never materialized, only streamed in
fixed-size column blocks. Accumulation is 64-bit integer, so projecting
raw counts is exact and linear.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from semcontext.cooccur import CooccurrenceMatrix
from semcontext.errors import ProjectionError

DEFAULT_DIMS = 600
_BITS_PER_BLOCK = 512  # one blake2b digest


@dataclass(frozen=True)
class ProjectionSpec:
    """Target dimensionality and seed of the sign projection."""

    dims: int = DEFAULT_DIMS
    seed: int = 0
    scheme: str = "dense_pm1"

    def __post_init__(self) -> None:
        if self.dims < 2:
            raise ProjectionError(f"projection dims must be >= 2, got {self.dims}")
        if self.scheme != "dense_pm1":
            raise ProjectionError(f"unknown projection scheme {self.scheme!r}")


def sign_row(column_identity: str, spec: ProjectionSpec) -> np.ndarray:
    """The +/-1 sign vector of one column entity, shape ``(dims,)``, int8.

    Deterministic across runs and platforms: bit ``j`` comes from the
    blake2b digest of ``"<seed>|<block>|<identity>"`` where
    ``block = j // 512``.
    """
    n_blocks = -(-spec.dims // _BITS_PER_BLOCK)
    chunks = []
    for block in range(n_blocks):
        digest = hashlib.blake2b(
            f"{spec.seed}|{block}|{column_identity}".encode("utf-8"), digest_size=64
        ).digest()
        chunks.append(np.frombuffer(digest, dtype=np.uint8))
    bits = np.unpackbits(np.concatenate(chunks))[: spec.dims]
    return (bits.astype(np.int8) * 2 - 1)


def project_rows(
    C: CooccurrenceMatrix, spec: ProjectionSpec, block_size: int = 1024, damp_log: bool = False
) -> np.ndarray:
    """Dense image of the sparse counts under the sign projection.

    Returns an array of shape ``(n_rows, dims)`` equal to ``counts @ R``
    with ``R[c] = sign_row(cols[c])``: int64 (exact) on raw counts,
    float64 when ``damp_log`` replaces each count x with log(1+x).
    Column blocks of at most ``block_size`` sign rows exist at a time.
    """
    n_rows, n_cols = C.shape
    dtype = np.float64 if damp_log else np.int64
    out = np.zeros((n_rows, spec.dims), dtype=dtype)
    if n_cols == 0 or C.counts.nnz == 0:
        return out
    csc = C.counts.tocsc()
    if damp_log:
        csc = csc.astype(np.float64)
        csc.data = np.log1p(csc.data)
    for start in range(0, n_cols, block_size):
        stop = min(start + block_size, n_cols)
        signs = np.empty((stop - start, spec.dims), dtype=dtype)
        for offset, col in enumerate(range(start, stop)):
            signs[offset] = sign_row(C.cols[col].canonical(), spec)
        block = csc[:, start:stop]
        out += block @ signs
    return out
