"""Expansion of codes from GF(q^m) down to GF(q).

A matrix over the extension field turns into a base-field matrix m times
as large: each source column h blows up into the m columns obtained by
applying the coordinate map to h, gamma*h, ..., gamma^(m-1)*h, and each
source row g into the m rows given by the images of gamma^j * g.  Columns
stay grouped per source position, which is the layout every downstream
index computation (shortening sets, block scramblers) relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .fields import ExtField


@dataclass(frozen=True)
class ExpandedParity:
    """Base-field parity check of the expanded code.

    ``matrix`` has shape (m*rows, m*cols); ``block_map`` gives, for each
    expanded column, the index of the source column it came from.
    """
    matrix: np.ndarray
    block_map: np.ndarray
    field: ExtField


@dataclass(frozen=True)
class ExpandedGenerator:
    matrix: np.ndarray
    block_map: np.ndarray
    field: ExtField


def _power_images(a: np.ndarray, field: ExtField) -> np.ndarray:
    """Stack of phi(gamma^l * a) for l = 0..m-1; shape (m, rows, cols, m)."""
    return np.stack([field.phi(field.mul(field.pow(field.gamma, l), a))
                     for l in range(field.m)])


def expand_parity(h, field: ExtField) -> ExpandedParity:
    """Expanded parity-check matrix of the code with parity check ``h``.

    Expanded column m*j + l is the coordinate image of gamma^l times the
    j-th source column, so the result annihilates exactly the coordinate
    images of the source code's words.
    """
    h = np.atleast_2d(np.asarray(h, dtype=np.int64))
    rows, cols = h.shape
    stack = _power_images(h, field)              # (l, i, j, a)
    mat = stack.transpose(1, 3, 2, 0).reshape(rows * field.m, cols * field.m)
    return ExpandedParity(mat, np.repeat(np.arange(cols), field.m), field)


def expand_generator(g, field: ExtField) -> ExpandedGenerator:
    """Expanded generator matrix: row block i holds the coordinate images
    of gamma^l * g_i for l = 0..m-1."""
    g = np.atleast_2d(np.asarray(g, dtype=np.int64))
    rows, cols = g.shape
    stack = _power_images(g, field)              # (l, i, j, a)
    mat = stack.transpose(1, 0, 2, 3).reshape(rows * field.m, cols * field.m)
    return ExpandedGenerator(mat, np.repeat(np.arange(cols), field.m), field)


def ext_rank(a, field: ExtField) -> int:
    """Rank of a matrix over GF(q^m), computed through its expansion."""
    a = np.atleast_2d(np.asarray(a))
    if a.size == 0:
        return 0
    return linalg.rank(expand_generator(a, field).matrix, field.q) // field.m


def check_prop1(g, h, field: ExtField, trials: int = 100,
                rng: np.random.Generator | None = None,
                exhaustive: bool = False) -> bool:
    """Check that expansion commutes with encoding and with syndromes.

    Tests, on random message vectors xs and word vectors ys, that
    phi(x G) equals phi(x) Ghat and that phi(H y^T) equals Hhat phi(y)^T.
    With ``exhaustive`` set, xs and ys run over every scaled standard
    basis vector instead, which spans the whole space over GF(q), so the
    two identities being linear makes the check complete.
    """
    g = np.atleast_2d(np.asarray(g, dtype=np.int64))
    h = np.atleast_2d(np.asarray(h, dtype=np.int64))
    k, n = g.shape
    if h.shape[1] != n:
        raise ValueError("generator and parity check disagree on the length")
    rng = rng if rng is not None else np.random.default_rng()
    ghat = expand_generator(g, field).matrix
    hhat = expand_parity(h, field).matrix

    if exhaustive:
        xs = np.zeros((field.order * k, k), dtype=np.int64)
        for i in range(k):
            xs[i * field.order:(i + 1) * field.order, i] = np.arange(field.order)
        ys = np.zeros((field.order * n, n), dtype=np.int64)
        for j in range(n):
            ys[j * field.order:(j + 1) * field.order, j] = np.arange(field.order)
    else:
        xs = rng.integers(0, field.order, size=(trials, k))
        ys = rng.integers(0, field.order, size=(trials, n))

    lhs1 = field.phi_n(field.matmul(xs, g))
    rhs1 = linalg.matmul(field.phi_n(xs), ghat, field.q)
    if not np.array_equal(lhs1, rhs1):
        return False
    lhs2 = field.phi_n(field.matmul(ys, h.T))
    rhs2 = linalg.matmul(field.phi_n(ys), hhat.T, field.q)
    return bool(np.array_equal(lhs2, rhs2))
