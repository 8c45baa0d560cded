"""Componentwise (Schur) products and square-code dimension experiments.

The square of a code is spanned by all componentwise products of pairs of
codewords.  Algebraically structured codes tend to have squares of
abnormally low dimension, so comparing the square dimension of a code
against the generic value min(k(k+1)/2, n) is a cheap distinguisher.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import linalg
from ..cryptosystem import SchemeParams, keygen
from ..expansion import expand_generator
from ..grs import generator_matrix


def schur_row_count(k: int) -> int:
    """Rows of the Schur matrix of a k-row matrix: k(k+1)/2."""
    return k * (k + 1) // 2


def schur_product(x, y, q: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch {x.shape} vs {y.shape}")
    return (x * y) % q


def schur_matrix(g, q: int) -> np.ndarray:
    """All products of row pairs g_i * g_j, i <= j, in lexicographic order."""
    g = np.atleast_2d(np.asarray(g, dtype=np.int64))
    iu, ju = np.triu_indices(g.shape[0])
    return (g[iu] * g[ju]) % q


@dataclass(frozen=True)
class SquareReport:
    label: str
    dim: int
    max_possible: int
    deficient: bool


def square_dim(g, q: int, label: str = "") -> SquareReport:
    """Dimension of the square of the code generated by ``g``.

    The input is row-reduced first so the generic ceiling uses the true
    dimension.
    """
    g = np.atleast_2d(np.asarray(g, dtype=np.int64))
    red, rk, _ = linalg.rref(g, q)
    basis = red[:rk]
    dim = int(linalg.rank(schur_matrix(basis, q), q))
    max_possible = min(schur_row_count(rk), g.shape[1])
    return SquareReport(label, dim, max_possible, dim < max_possible)


@dataclass(frozen=True)
class DistinguisherReport:
    params: SchemeParams
    seed: object
    expanded: SquareReport
    public: SquareReport
    random: SquareReport

    @property
    def arms(self):
        return (self.expanded, self.public, self.random)


def distinguisher_experiment(params: SchemeParams, seed=None) -> DistinguisherReport:
    """Square dimensions of three codes built from one key draw.

    The arms are (a) the expanded secret code itself, (b) the public code
    (kernel of the published parity check, i.e. after per-block shortening
    and scrambling), and (c) a random code with the public code's
    dimensions as a control.
    """
    rng = np.random.default_rng(seed)
    q = params.q
    sk, pk = keygen(params, rng)

    ghat = expand_generator(generator_matrix(sk.code), sk.field).matrix
    expanded = square_dim(ghat, q, "expanded-grs")

    pub_gen = linalg.kernel(pk.h_prime, q)
    public = square_dim(pub_gen, q, "public")

    k_prime, cols = pub_gen.shape
    while True:
        ctrl = rng.integers(0, q, size=(k_prime, cols))
        if linalg.rank(ctrl, q) == k_prime:
            break
    control = square_dim(ctrl, q, "random")

    return DistinguisherReport(params, seed, expanded, public, control)
