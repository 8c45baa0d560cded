"""Dense exact linear algebra over GF(q).

Matrices are integer numpy arrays with entries in [0, q).  Functions never
mutate their arguments.  Pivoting takes the first nonzero entry in a
column, so results are deterministic.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .errors import SingularMatrixError


class RrefResult(NamedTuple):
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]


def rref(a, q: int) -> RrefResult:
    """Reduced row-echelon form of ``a`` over GF(q).

    Returns the reduced matrix, its rank and the pivot column indices.
    Row updates are vectorised over the whole matrix; products of entries
    below q stay far inside the int64 range before each reduction.
    """
    r = np.array(a, dtype=np.int64, copy=True) % q
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        p = row + int(nz[0])
        if p != row:
            r[[row, p]] = r[[p, row]]
        r[row] = r[row] * pow(int(r[row, col]), -1, q) % q
        factor = r[:, col].copy()
        factor[row] = 0
        if np.any(factor):
            r -= np.outer(factor, r[row])
            r %= q
        pivots.append(col)
        row += 1
    return RrefResult(r, row, tuple(pivots))


def rank(a, q: int) -> int:
    return rref(a, q).rank


def kernel(a, q: int) -> np.ndarray:
    """Basis of the right kernel of ``a``, one basis vector per row.

    The basis is in the standard rref parametrisation: basis vector j has a
    1 in the j-th free column and the negated reduced entries in the pivot
    columns.
    """
    a = np.atleast_2d(np.asarray(a))
    red, rk, pivots = rref(a, q)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, p in enumerate(pivots):
            basis[j, p] = (-red[i, f]) % q
    return basis


def invert(a, q: int) -> np.ndarray:
    """Inverse of a square matrix over GF(q).

    Raises:
        SingularMatrixError: if the matrix is not invertible.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    aug = np.hstack([a % q, np.eye(n, dtype=np.int64)])
    red, rk, _ = rref(aug, q)
    if rk < n or not np.array_equal(red[:, :n], np.eye(n, dtype=np.int64)):
        raise SingularMatrixError("matrix is singular over GF(%d)" % q)
    return red[:, n:]


def block_diag(blocks: Sequence[np.ndarray], q: int) -> np.ndarray:
    """Block-diagonal assembly of square blocks over a common GF(q)."""
    blocks = [np.asarray(b) for b in blocks]
    for b in blocks:
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError("all blocks must be square")
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    pos = 0
    for b in blocks:
        w = b.shape[0]
        out[pos:pos + w, pos:pos + w] = b % q
        pos += w
    return out


def block_permutation(sigma, lam: int) -> np.ndarray:
    """Permutation matrix on width-``lam`` blocks.

    Built as the Kronecker product of the plain n x n permutation matrix of
    ``sigma`` with the lam x lam identity.  Right-multiplying by the result
    moves column block i to column block sigma[i].
    """
    sigma = np.asarray(sigma)
    n = sigma.size
    if sorted(sigma.tolist()) != list(range(n)):
        raise ValueError("sigma is not a permutation of 0..n-1")
    p = np.zeros((n, n), dtype=np.int64)
    p[np.arange(n), sigma] = 1
    return np.kron(p, np.eye(lam, dtype=np.int64))


def matmul(a, b, q: int) -> np.ndarray:
    """Exact matrix product mod q with reduction delayed to the end.

    When the accumulator bound allows (inner_dim * (q-1)^2 < 2^52 , always
    the case at this package's sizes), the product runs through float64
    BLAS where every partial sum is an exactly representable integer.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if inner * (q - 1) ** 2 < 2 ** 52:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return prod.astype(np.int64) % q
    return (a @ b) % q
