"""The public-key scheme: key generation, encryption, decryption, and the
constant-block-weight plaintext encoding.

Key generation expands a secret generalized Reed-Solomon parity check over
GF(q^m) down to GF(q), deletes m - lambda columns from each width-m column
block, and hides the result by right-multiplying with Q = T * P_sigma,
where T is block diagonal with invertible lambda x lambda blocks and
P_sigma permutes the blocks.  A plaintext is a vector in GF(q)^(lambda*n)
supported on at most t width-lambda blocks; the ciphertext is its syndrome
under the public matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from . import linalg
from .errors import DecodingFailure, DecryptionError, ParameterError
from .expansion import expand_parity
from .fields import ExtField, int_digits, pack_digits
from .grs import GrsCode, syndrome_decode, vandermonde_parity


@dataclass(frozen=True)
class SchemeParams:
    """Scheme parameters (q, m, lambda, n, k, t).

    t defaults to the unique decoding radius floor((n - k) / 2).  The
    constraint k/n > 1 - lambda/m (positive public code dimension k') is
    what makes the shortened expanded code usable at all.
    """
    q: int
    m: int
    lam: int
    n: int
    k: int
    t: int = dc_field(default=-1)

    def __post_init__(self):
        if self.m < 3:
            raise ParameterError(
                f"m={self.m}: quadratic and trivial extensions are not allowed (need m >= 3)")
        if not 2 <= self.lam <= self.m - 1:
            raise ParameterError(
                f"lambda={self.lam}: block width must satisfy 2 <= lambda <= m-1")
        if not 0 < self.k < self.n:
            raise ParameterError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.n > self.q ** self.m:
            raise ParameterError(
                f"n={self.n} exceeds the field size q^m={self.q ** self.m}")
        if self.k_prime <= 0:
            raise ParameterError(
                f"rate k/n={self.k / self.n:.4f} violates k/n > 1 - lambda/m"
                f"={1 - self.lam / self.m:.4f} (public dimension k'={self.k_prime})")
        radius = (self.n - self.k) // 2
        if self.t < 0:
            object.__setattr__(self, "t", radius)
        elif not 1 <= self.t <= radius:
            raise ParameterError(
                f"t={self.t} outside [1, floor((n-k)/2)={radius}]")

    @property
    def k_prime(self) -> int:
        """Dimension of the public code: m*k - (m - lambda)*n."""
        return self.m * self.k - (self.m - self.lam) * self.n

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def public_rows(self) -> int:
        return self.m * (self.n - self.k)

    @property
    def public_cols(self) -> int:
        return self.lam * self.n


PRESETS = {
    "type1": SchemeParams(q=13, m=3, lam=2, n=1258, k=1031),
    "type2": SchemeParams(q=7, m=4, lam=2, n=1872, k=1666),
    "toy": SchemeParams(q=3, m=3, lam=2, n=20, k=14),
    "micro": SchemeParams(q=3, m=3, lam=2, n=10, k=8),
}


@dataclass(eq=False)
class BlockErrorVector:
    """A plaintext: values on at most t width-lambda blocks, zero elsewhere.

    ``support_blocks`` holds distinct block indices in [0, n) in increasing
    order, ``values`` one length-lambda row per support block.
    """
    support_blocks: tuple[int, ...]
    values: np.ndarray
    lam: int
    n: int

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.support_blocks)
        values = np.asarray(self.values, dtype=np.int64).reshape(len(blocks), self.lam)
        if len(set(blocks)) != len(blocks):
            raise ParameterError("support blocks must be distinct")
        if blocks and not (0 <= min(blocks) and max(blocks) < self.n):
            raise ParameterError("support block index out of range")
        order = np.argsort(blocks) if blocks else []
        self.support_blocks = tuple(blocks[i] for i in order)
        self.values = values[list(order)] if blocks else values

    @property
    def block_weight(self) -> int:
        return len(self.support_blocks)

    def to_flat(self) -> np.ndarray:
        flat = np.zeros(self.lam * self.n, dtype=np.int64)
        for b, v in zip(self.support_blocks, self.values):
            flat[self.lam * b:self.lam * (b + 1)] = v
        return flat

    @classmethod
    def from_flat(cls, flat, lam: int) -> "BlockErrorVector":
        flat = np.asarray(flat, dtype=np.int64)
        if flat.size % lam:
            raise ParameterError("flat vector length is not a multiple of lambda")
        blocks = flat.reshape(-1, lam)
        support = np.nonzero(blocks.any(axis=1))[0]
        return cls(tuple(int(b) for b in support), blocks[support], lam, flat.size // lam)

    def __eq__(self, other):
        return (isinstance(other, BlockErrorVector)
                and self.lam == other.lam and self.n == other.n
                and self.support_blocks == other.support_blocks
                and np.array_equal(self.values, other.values))


@dataclass(frozen=True)
class Ciphertext:
    syndrome: np.ndarray


@dataclass(frozen=True)
class PublicKey:
    params: SchemeParams
    h_prime: np.ndarray

    def __post_init__(self):
        p = self.params
        h = np.asarray(self.h_prime, dtype=np.int64)
        if h.shape != (p.public_rows, p.public_cols):
            raise ParameterError(
                f"public matrix must be {p.public_rows} x {p.public_cols}, got {h.shape}")
        object.__setattr__(self, "h_prime", h)

    @property
    def t(self) -> int:
        return self.params.t


@dataclass(frozen=True)
class PrivateKey:
    params: SchemeParams
    code: GrsCode
    shortened: np.ndarray      # (n, m - lambda) absolute expanded-column indices
    t_blocks: np.ndarray       # (n, lambda, lambda) invertible scramblers
    sigma: np.ndarray          # block permutation, as an image list

    def __post_init__(self):
        object.__setattr__(self, "shortened",
                           np.asarray(self.shortened, dtype=np.int64))
        object.__setattr__(self, "t_blocks",
                           np.asarray(self.t_blocks, dtype=np.int64))
        object.__setattr__(self, "sigma", np.asarray(self.sigma, dtype=np.int64))
        p = self.params
        if self.shortened.shape != (p.n, p.m - p.lam):
            raise ParameterError("shortening set has the wrong shape")
        # cached per-block inverses of the scramblers (Q^{-1} in block form)
        inv = np.stack([linalg.invert(b, p.q) for b in self.t_blocks])
        object.__setattr__(self, "_t_inv", inv)
        kept = self._kept_relative()
        object.__setattr__(self, "_kept_rel", kept)

    def _kept_relative(self) -> np.ndarray:
        p = self.params
        rel = self.shortened - p.m * np.arange(p.n)[:, None]
        if np.any(rel < 0) or np.any(rel >= p.m):
            raise ParameterError("shortening indices leave their column blocks")
        kept = np.empty((p.n, p.lam), dtype=np.int64)
        for i in range(p.n):
            mask = np.ones(p.m, dtype=bool)
            mask[rel[i]] = False
            kept[i] = np.nonzero(mask)[0]
        return kept

    @property
    def field(self) -> ExtField:
        return self.code.field


def keygen(params: SchemeParams, seed=None) -> tuple[PrivateKey, PublicKey]:
    """Generate a key pair; deterministic for a given seed.

    Draw order is fixed: evaluation points, column multipliers, the
    per-block shortening sets, the block scramblers, then the block
    permutation.
    """
    rng = np.random.default_rng(seed)
    q, m, lam, n, k = params.q, params.m, params.lam, params.n, params.k
    field = ExtField(q, m)
    x = rng.choice(field.order, size=n, replace=False)
    y = rng.integers(1, field.order, size=n)
    code = GrsCode(field, n, k, x, y, t=params.t)

    hhat = expand_parity(vandermonde_parity(code), field).matrix

    drop_rel = np.sort(rng.permuted(np.tile(np.arange(m), (n, 1)), axis=1)[:, :m - lam],
                       axis=1)
    shortened = drop_rel + m * np.arange(n)[:, None]
    keep_mask = np.ones((n, m), dtype=bool)
    np.put_along_axis(keep_mask, drop_rel, False, axis=1)
    kept_abs = (np.nonzero(keep_mask)[1] + m * np.repeat(np.arange(n), lam))
    h_s = hhat[:, kept_abs]

    t_blocks = np.empty((n, lam, lam), dtype=np.int64)
    for i in range(n):
        while True:
            cand = rng.integers(0, q, size=(lam, lam))
            if linalg.rank(cand, q) == lam:
                t_blocks[i] = cand
                break

    sigma = rng.permutation(n)

    mixed = np.einsum("rnl,nlj->rnj", h_s.reshape(-1, n, lam), t_blocks) % q
    h_prime3 = np.empty_like(mixed)
    h_prime3[:, sigma, :] = mixed
    pk = PublicKey(params, h_prime3.reshape(-1, lam * n))
    sk = PrivateKey(params, code, shortened, t_blocks, sigma)
    return sk, pk


def encrypt(pk: PublicKey, y: BlockErrorVector) -> Ciphertext:
    """Syndrome of the block error vector under the public matrix."""
    p = pk.params
    if y.lam != p.lam or y.n != p.n:
        raise ParameterError("error vector does not match the key's block layout")
    if y.block_weight > p.t:
        raise ParameterError(
            f"support spans {y.block_weight} blocks, more than t={p.t}")
    c = np.zeros(p.public_rows, dtype=np.int64)
    for b, v in zip(y.support_blocks, y.values):
        cols = pk.h_prime[:, p.lam * b:p.lam * (b + 1)]
        c += cols @ v
    return Ciphertext(c % p.q)


def decrypt(sk: PrivateKey, ct: Ciphertext) -> BlockErrorVector:
    """Invert an encryption: map the syndrome back over GF(q^m), decode the
    secret code, re-embed, and undo the block scrambling.

    Raises DecryptionError when the ciphertext is not the syndrome of any
    valid plaintext.
    """
    p = sk.params
    f = sk.field
    c = np.asarray(ct.syndrome, dtype=np.int64)
    if c.shape != (p.public_rows,):
        raise DecryptionError(f"syndrome must have length {p.public_rows}")
    try:
        e = syndrome_decode(sk.code, f.phi_n_inv(c))
    except DecodingFailure as exc:
        raise DecryptionError(f"syndrome decoding failed: {exc}") from exc

    ybar = f.phi_n(e).reshape(p.n, p.m)
    drop_rel = sk.shortened - p.m * np.arange(p.n)[:, None]
    if np.any(np.take_along_axis(ybar, drop_rel, axis=1)):
        raise DecryptionError("decoded word is nonzero on a shortened position")
    w = np.take_along_axis(ybar, sk._kept_rel, axis=1)     # blocks of Q y^T

    support_u = np.nonzero(w.any(axis=1))[0]
    if support_u.size > p.t:
        raise DecryptionError("decoded support exceeds the block budget")
    dest = sk.sigma[support_u]
    vals = np.einsum("blj,bj->bl", sk._t_inv[support_u], w[support_u]) % p.q
    return BlockErrorVector(tuple(int(b) for b in dest), vals, p.lam, p.n)


def assemble_q(sk: PrivateKey) -> np.ndarray:
    """The full lambda*n x lambda*n scrambler Q = T * P_sigma (test sizes only)."""
    p = sk.params
    t_full = linalg.block_diag(list(sk.t_blocks), p.q)
    return linalg.matmul(t_full, linalg.block_permutation(sk.sigma, p.lam), p.q)


# ---------------------------------------------------------------------------
# plaintext encoding: integers <-> block error vectors of exactly t blocks
# ---------------------------------------------------------------------------

def message_capacity(params: SchemeParams) -> int:
    """Number of distinct plaintexts: C(n, t) * (q^lambda - 1)^t."""
    v = params.q ** params.lam - 1
    return comb(params.n, params.t) * v ** params.t


def _unrank_subset(rank: int, n: int, t: int) -> list[int]:
    out = []
    prev = -1
    for i in range(t):
        a = prev + 1
        while comb(n - 1 - a, t - 1 - i) <= rank:
            rank -= comb(n - 1 - a, t - 1 - i)
            a += 1
        out.append(a)
        prev = a
    return out


def _rank_subset(blocks, n: int, t: int) -> int:
    rank = 0
    prev = -1
    for i, b in enumerate(blocks):
        for a in range(prev + 1, b):
            rank += comb(n - 1 - a, t - 1 - i)
        prev = b
    return rank


def encode_plaintext(rank: int, params: SchemeParams) -> BlockErrorVector:
    """Bijective map from [0, capacity) onto exactly-t-block error vectors.

    The quotient by (q^lambda - 1)^t picks the support through subset
    unranking in lexicographic order; the remainder picks, per block in
    increasing order, one of the q^lambda - 1 nonzero value patterns.
    """
    v = params.q ** params.lam - 1
    cap = message_capacity(params)
    if not 0 <= rank < cap:
        raise ParameterError(f"plaintext rank out of range [0, {cap})")
    subset_rank, value_rank = divmod(rank, v ** params.t)
    blocks = _unrank_subset(subset_rank, params.n, params.t)
    vals = np.empty((params.t, params.lam), dtype=np.int64)
    for i in range(params.t):
        value_rank, d = divmod(value_rank, v)
        vals[i] = int_digits(d + 1, params.q, params.lam)
    return BlockErrorVector(tuple(blocks), vals, params.lam, params.n)


def decode_plaintext(y: BlockErrorVector, params: SchemeParams) -> int:
    """Inverse of :func:`encode_plaintext`."""
    v = params.q ** params.lam - 1
    if y.block_weight != params.t:
        raise ParameterError(
            f"expected exactly t={params.t} support blocks, got {y.block_weight}")
    patterns = pack_digits(y.values, params.q)
    if np.any(patterns == 0):
        raise ParameterError("support blocks must carry nonzero values")
    value_rank = 0
    for pat in patterns[::-1]:
        value_rank = value_rank * v + (int(pat) - 1)
    subset_rank = _rank_subset(y.support_blocks, params.n, params.t)
    return subset_rank * v ** params.t + value_rank
