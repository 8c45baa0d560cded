"""Information-set decoding against block-supported errors: a cost model
for a Stern-style algorithm working on whole width-lambda blocks, and a
toy-scale executable attack for validating the model.

Model conventions (all costs in field operations, reported as log2):

* N = n blocks, K = floor(k'/lambda) information blocks, R = lambda*n - k'
  redundancy columns, v = q^lambda - 1 nonzero patterns per block.
* An iteration succeeds when the t error blocks fall as exactly p into
  each half X, Y of the information set, none into the lambda*ell columns
  of Z, and the rest outside:
      P(p, ell) = C(|X|,p) C(|Y|,p) C(N-K-ell, t-2p) / C(N, t).
* Per-iteration cost = R^2 * lambda*n      (Gaussian elimination)
    + (L1 + L2) * (p*lambda * ell*lambda)  (partial syndromes on Z)
    + L1 * L2 / q^(lambda*ell) * R         (surviving collision pairs),
  with list sizes L = C(half, p) * v^p.

The same routine with lambda = 1, weight lambda*t and value space q - 1
yields the classical column-weight Stern baseline that ignores the block
structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import inf, lgamma, log2

import numpy as np

from .. import linalg
from ..cryptosystem import BlockErrorVector, Ciphertext, PublicKey, SchemeParams
from ..errors import AttackBudgetExceeded, ParameterError, SingularMatrixError
from ..fields import int_digits

_LOG2E_INV = 0.6931471805599453  # ln 2


def _log2_comb(n: int, k: int) -> float:
    if k < 0 or n < 0 or k > n:
        return -inf
    return (lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)) / _LOG2E_INV


def _log2_sum(*vals: float) -> float:
    vals = [v for v in vals if v != -inf]
    if not vals:
        return -inf
    top = max(vals)
    return top + log2(sum(2.0 ** (v - top) for v in vals))


@dataclass(frozen=True)
class IsdCostReport:
    p: int
    ell: int
    N: int
    K: int
    iterations: float   # log2 of the expected iteration count
    iter_cost: float    # log2 of the per-iteration cost in field ops
    total_bits: float   # iterations + iter_cost


def _config_cost(N: int, K: int, R: int, t: int, lam: int, q: int,
                 p: int, ell: int):
    """(log2 iterations, log2 iteration cost) for one (p, ell), or None."""
    x_half, y_half = (K + 1) // 2, K // 2
    if p < 0 or ell < 0 or p > y_half or t - 2 * p < 0:
        return None
    if ell > N - K or t - 2 * p > N - K - ell:
        return None
    log_p = (_log2_comb(x_half, p) + _log2_comb(y_half, p)
             + _log2_comb(N - K - ell, t - 2 * p) - _log2_comb(N, t))
    if log_p == -inf:
        return None
    log_v = log2(q ** lam - 1)
    l1 = _log2_comb(x_half, p) + p * log_v
    l2 = _log2_comb(y_half, p) + p * log_v
    elim = 2 * log2(R) + log2(lam * N)
    build = (_log2_sum(l1, l2) + log2(p * lam * ell * lam)) if p * ell else -inf
    collide = l1 + l2 - ell * lam * log2(q) + log2(R)
    return -log_p, _log2_sum(elim, build, collide)


def _dims(params: SchemeParams, t_override):
    t = params.t if t_override is None else int(t_override)
    k_prime = params.k_prime
    return params.n, k_prime // params.lam, params.lam * params.n - k_prime, t


def isd_estimate_grid(params: SchemeParams, t_override: int | None = None):
    """Full (p, ell) grid of the block cost model plus the optimum.

    Returns (best IsdCostReport, grid dict mapping (p, ell) to total bits).
    ``t_override`` prices an error budget other than the key's own t, e.g.
    a rounded-up table convention.
    """
    N, K, R, t = _dims(params, t_override)
    if t > N - K:
        raise ParameterError(f"t={t} exceeds the {N - K} blocks outside the information set")
    grid, best = {}, None
    for p in range(0, min(t // 2, K // 2) + 1):
        for ell in range(0, N - K - (t - 2 * p) + 1):
            res = _config_cost(N, K, R, t, params.lam, params.q, p, ell)
            if res is None:
                continue
            iters, cost = res
            grid[(p, ell)] = iters + cost
            if best is None or iters + cost < best.total_bits:
                best = IsdCostReport(p, ell, N, K, iters, cost, iters + cost)
    return best, grid


def isd_estimate(params: SchemeParams, t_override: int | None = None,
                 p: int | None = None, ell: int | None = None) -> IsdCostReport:
    """Cheapest block-Stern attack cost; optionally pinned to one (p, ell)."""
    if p is not None and ell is not None:
        N, K, R, t = _dims(params, t_override)
        res = _config_cost(N, K, R, t, params.lam, params.q, p, ell)
        if res is None:
            raise ParameterError(f"(p={p}, ell={ell}) is infeasible for these parameters")
        return IsdCostReport(p, ell, N, K, res[0], res[1], res[0] + res[1])
    best, _ = isd_estimate_grid(params, t_override)
    return best


def stern_baseline(params: SchemeParams, t_override: int | None = None) -> IsdCostReport:
    """Classical column-weight Stern cost, ignoring the block structure.

    Treats the error as a plain weight lambda*t vector of the same length
    and dimension; the gap to :func:`isd_estimate` is the speedup the
    block pattern hands an attacker.
    """
    _, _, R, t = _dims(params, t_override)
    cols = params.lam * params.n
    k_prime = params.k_prime
    w = params.lam * t
    best = None
    for p in range(0, min(w // 2, k_prime // 2) + 1):
        for ell in range(0, cols - k_prime - (w - 2 * p) + 1):
            res = _config_cost(cols, k_prime, R, w, 1, params.q, p, ell)
            if res is None:
                continue
            iters, cost = res
            if best is None or iters + cost < best.total_bits:
                best = IsdCostReport(p, ell, cols, k_prime, iters, cost, iters + cost)
    return best


# ---------------------------------------------------------------------------
# executable attack (toy scale)
# ---------------------------------------------------------------------------

class _AttackContext:
    def __init__(self, pk: PublicKey, ct: Ciphertext, p: int, ell: int):
        params = pk.params
        self.q, self.lam, self.t = params.q, params.lam, params.t
        self.N = params.n
        k_prime = params.k_prime
        if k_prime % params.lam:
            raise ParameterError(
                "executable attack needs lambda to divide k' so the "
                "information set is block aligned")
        self.K = k_prime // params.lam
        self.R = params.public_rows
        self.p, self.ell = p, ell
        if p > min(self.K // 2, self.t // 2):
            raise ParameterError(f"p={p} too large for K={self.K}, t={self.t}")
        if self.t - 2 * p > self.N - self.K - ell or ell > self.N - self.K:
            raise ParameterError(f"ell={ell} infeasible")
        self.h = pk.h_prime
        self.c = np.asarray(ct.syndrome, dtype=np.int64)
        self.x_half = (self.K + 1) // 2
        v = self.q ** self.lam - 1
        self.patterns = int_digits(np.arange(1, v + 1), self.q, self.lam)

    def _block_cols(self, blocks) -> np.ndarray:
        return (self.lam * np.asarray(blocks)[:, None]
                + np.arange(self.lam)).ravel()

    def _enumerate_side(self, h_part: np.ndarray, blocks: range):
        """All (support choice, pattern choice) pairs on one half, with the
        R-row contribution of each candidate.  h_part has the information
        set's columns."""
        out = []
        for combo in itertools.combinations(blocks, self.p):
            cols = [h_part[:, self.lam * b:self.lam * (b + 1)] for b in combo]
            for pats in itertools.product(range(self.patterns.shape[0]),
                                          repeat=self.p):
                contrib = np.zeros(self.h.shape[0], dtype=np.int64)
                for blk_cols, pi in zip(cols, pats):
                    contrib += blk_cols @ self.patterns[pi]
                out.append((combo, pats, contrib % self.q))
        return out

    def iteration(self, rng: np.random.Generator):
        """One information-set draw; returns the flat error or None.

        Permutations whose redundancy columns are singular are redrawn
        without counting, matching how the success model treats an
        iteration as one completed elimination.
        """
        while True:
            perm = rng.permutation(self.N)
            j_blocks = perm[self.K:]
            try:
                u = linalg.invert(self.h[:, self._block_cols(j_blocks)], self.q)
                break
            except SingularMatrixError:
                continue
        i_cols = self._block_cols(perm[:self.K])
        h_i = linalg.matmul(u, self.h[:, i_cols], self.q)
        c_t = (u @ self.c) % self.q
        zrows = self.ell * self.lam  # Z blocks own the first ell*lam pivot rows

        if self.p == 0:
            if np.any(c_t[:zrows]):
                return None
            return self._finish(perm, (), (), (), (), c_t)

        x_side = self._enumerate_side(h_i, range(self.x_half))
        y_side = self._enumerate_side(h_i, range(self.x_half, self.K))
        buckets = {}
        for combo, pats, contrib in x_side:
            buckets.setdefault(contrib[:zrows].tobytes(), []).append(
                (combo, pats, contrib))
        for y_combo, y_pats, y_contrib in y_side:
            key = (((c_t - y_contrib) % self.q)[:zrows]).tobytes()
            for x_combo, x_pats, x_contrib in buckets.get(key, ()):
                rhs = (c_t - x_contrib - y_contrib) % self.q
                found = self._finish(perm, x_combo, x_pats, y_combo, y_pats, rhs)
                if found is not None:
                    return found
        return None

    def _finish(self, perm, x_combo, x_pats, y_combo, y_pats, rhs):
        rhs = rhs % self.q
        j_vals = rhs.reshape(self.N - self.K, self.lam)
        nz = np.nonzero(j_vals.any(axis=1))[0]
        if nz.size > self.t - 2 * self.p or np.any(nz < self.ell):
            return None
        flat = np.zeros(self.lam * self.N, dtype=np.int64)
        for b, pi in zip(x_combo + y_combo, x_pats + y_pats):
            blk = perm[b]
            flat[self.lam * blk:self.lam * (blk + 1)] = self.patterns[pi]
        for s in nz:
            blk = perm[self.K + s]
            flat[self.lam * blk:self.lam * (blk + 1)] = j_vals[s]
        if np.any(linalg.matmul(self.h, flat, self.q) != self.c):
            return None
        return flat


def isd_attack(pk: PublicKey, ct: Ciphertext, p: int, ell: int,
               max_iters: int, seed=None) -> BlockErrorVector:
    """Run the block-Stern attack until it finds a matching error vector.

    Raises AttackBudgetExceeded after ``max_iters`` information-set draws.
    """
    if not np.any(np.asarray(ct.syndrome)):
        return BlockErrorVector((), np.zeros((0, pk.params.lam)),
                                pk.params.lam, pk.params.n)
    ctx = _AttackContext(pk, ct, p, ell)
    rng = np.random.default_rng(seed)
    for _ in range(max_iters):
        flat = ctx.iteration(rng)
        if flat is not None:
            return BlockErrorVector.from_flat(flat, pk.params.lam)
    raise AttackBudgetExceeded(f"no solution within {max_iters} iterations")


def attack_success_count(pk: PublicKey, ct: Ciphertext, p: int, ell: int,
                         iters: int, seed=None) -> int:
    """Number of independent iterations (out of ``iters``) that succeed.

    Used to compare the empirical per-iteration success rate against the
    model's P(p, ell).
    """
    ctx = _AttackContext(pk, ct, p, ell)
    rng = np.random.default_rng(seed)
    return sum(ctx.iteration(rng) is not None for _ in range(iters))
