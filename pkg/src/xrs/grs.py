"""Generalized Reed-Solomon codes over GF(q^m): canonical matrices,
encoding, and syndrome decoding up to the unique-decoding radius.

A code is described by pairwise-distinct evaluation points x and nonzero
column multipliers y; its canonical parity check is the weighted
Vandermonde matrix with rows y_j * x_j^i for i = 0 .. n-k-1.

The decoder is syndrome-native: decryption hands it a syndrome rather
than a received word, so it solves the key equation directly with the
extended Euclidean algorithm, locates errors by a root search over the
evaluation points, and recovers magnitudes with the derivative formula
adapted to the column multipliers.  An evaluation point equal to zero is
invisible to the locator polynomial, so a second pass re-runs the solver
on the shifted syndrome sequence and accounts for that position
separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DecodingFailure, ParameterError
from .fields import ExtField


@dataclass(frozen=True, eq=False)
class GrsCode:
    field: ExtField
    n: int
    k: int
    x: np.ndarray
    y: np.ndarray
    t: int = dc_field(default=-1)

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ParameterError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.n > self.field.order:
            raise ParameterError(
                f"length n={self.n} exceeds field size {self.field.order}")
        x = np.asarray(self.x, dtype=np.int64)
        y = np.asarray(self.y, dtype=np.int64)
        if (x.shape != (self.n,) or np.unique(x).size != self.n
                or np.any(x < 0) or np.any(x >= self.field.order)):
            raise ParameterError("evaluation points must be n pairwise-distinct elements")
        if y.shape != (self.n,) or np.any(y == 0) or np.any(y >= self.field.order):
            raise ParameterError("column multipliers must be n nonzero elements")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if self.t < 0:
            object.__setattr__(self, "t", (self.n - self.k) // 2)
        elif self.t > (self.n - self.k) // 2:
            raise ParameterError(
                f"t={self.t} exceeds the unique decoding radius {(self.n - self.k) // 2}")

    @property
    def r(self) -> int:
        return self.n - self.k


def random_code(field: ExtField, n: int, k: int, rng: np.random.Generator) -> GrsCode:
    """Sample a code with uniform distinct points and uniform nonzero multipliers."""
    x = rng.choice(field.order, size=n, replace=False)
    y = rng.integers(1, field.order, size=n)
    return GrsCode(field, n, k, x, y)


def vandermonde(field: ExtField, x, y, rows: int) -> np.ndarray:
    """Weighted Vandermonde matrix with entries y_j * x_j^i, i = 0..rows-1."""
    x = np.asarray(x, dtype=np.int64)
    out = np.empty((rows, x.size), dtype=np.int64)
    row = np.asarray(y, dtype=np.int64).copy()
    for i in range(rows):
        out[i] = row
        row = field.mul(row, x)
    return out


def vandermonde_parity(code: GrsCode) -> np.ndarray:
    """Canonical (n-k) x n parity-check matrix of the code."""
    return vandermonde(code.field, code.x, code.y, code.r)


def dual_multipliers(code: GrsCode) -> np.ndarray:
    """Column multipliers y' making the k-row weighted Vandermonde on the
    same points a generator matrix of the code, i.e. an annihilator of the
    canonical parity check.

    Uses the closed form y'_i = (y_i * prod_{j != i} (x_i - x_j))^(-1),
    which is quadratic in n and guarantees nonzero entries.
    """
    f = code.field
    diff = f.sub(code.x[:, None], code.x[None, :])
    np.fill_diagonal(diff, 1)
    return f.inv(f.mul(code.y, f.prod(diff, axis=1)))


def generator_matrix(code: GrsCode) -> np.ndarray:
    """k x n generator matrix: the weighted Vandermonde on the dual multipliers."""
    return vandermonde(code.field, code.x, dual_multipliers(code), code.k)


def encode(code: GrsCode, msg) -> np.ndarray:
    """Encode a length-k message vector into a codeword."""
    msg = np.asarray(msg, dtype=np.int64)
    if msg.shape[-1] != code.k:
        raise ValueError(f"message length must be k={code.k}")
    return code.field.matmul(msg, generator_matrix(code))


# ---------------------------------------------------------------------------
# polynomial helpers over GF(q^m); coefficient arrays low degree first
# ---------------------------------------------------------------------------

def _deg(p: np.ndarray) -> int:
    nz = np.nonzero(p)[0]
    return int(nz[-1]) if nz.size else -1


def _trim(p: np.ndarray) -> np.ndarray:
    d = _deg(p)
    return p[:d + 1] if d >= 0 else p[:0]


def _poly_mul(f: ExtField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i, c in enumerate(a):
        if c:
            out[i:i + b.size] = f.add(out[i:i + b.size], f.mul(c, b))
    return out


def _poly_divmod(f: ExtField, a: np.ndarray, b: np.ndarray):
    db = _deg(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = a.copy()
    da = _deg(rem)
    quo = np.zeros(max(da - db, 0) + 1, dtype=np.int64)
    lead_inv = f.inv(b[db])
    while da >= db:
        c = f.mul(rem[da], lead_inv)
        quo[da - db] = c
        rem[da - db:da + 1] = f.sub(rem[da - db:da + 1], f.mul(c, b[:db + 1]))
        da = _deg(rem)
    return quo, rem


def _poly_eval(f: ExtField, poly: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Horner evaluation of one polynomial at many points."""
    if poly.size == 0:
        return np.zeros_like(pts)
    acc = np.full_like(pts, poly[-1])
    for c in poly[-2::-1]:
        acc = f.add(f.mul(acc, pts), c)
    return acc


def _poly_derivative(f: ExtField, poly: np.ndarray) -> np.ndarray:
    if poly.size <= 1:
        return np.zeros(0, dtype=np.int64)
    scal = np.arange(1, poly.size, dtype=np.int64) % f.q
    return f.mul(poly[1:], scal)


def _key_equation(f: ExtField, syndromes: np.ndarray, locator_bound: int):
    """Partial extended Euclid on (z^r, S(z)).

    Stops as soon as the remainder degree drops below r - locator_bound,
    which caps the Bezout coefficient (the candidate locator) at degree
    ``locator_bound``.  Returns (locator, evaluator) normalised so that the
    locator has constant term 1, or None when no valid pair comes out.
    """
    r = syndromes.size
    theta = r - locator_bound
    r0 = np.zeros(r + 1, dtype=np.int64)
    r0[r] = 1
    r1 = _trim(syndromes.copy())
    u0 = np.zeros(1, dtype=np.int64)
    u1 = np.ones(1, dtype=np.int64)
    while _deg(r1) >= theta:
        quo, rem = _poly_divmod(f, r0, r1)
        r0, r1 = r1, _trim(rem)
        u0, u1 = u1, _trim(_poly_sub(f, u0, _poly_mul(f, quo, u1)))
    if u1.size == 0 or u1[0] == 0:
        return None
    scale = f.inv(u1[0])
    return f.mul(u1, scale), f.mul(r1, scale) if r1.size else r1


def _poly_sub(f: ExtField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.int64)
    out[:a.size] = a
    out[:b.size] = f.sub(out[:b.size], b)
    return out


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------

def _verify_syndrome(code: GrsCode, positions, values, syndrome) -> bool:
    f = code.field
    positions = np.asarray(positions, dtype=np.int64)
    acc = f.mul(np.asarray(values, dtype=np.int64), code.y[positions])
    xs = code.x[positions]
    for i in range(code.r):
        if f.sum(acc) != syndrome[i]:
            return False
        acc = f.mul(acc, xs)
    return True


def _locate_and_correct(code: GrsCode, syndromes: np.ndarray, radius: int,
                        shifted: bool):
    """Shared solver for both decoding passes.

    ``shifted`` distinguishes the second pass, where the syndrome sequence
    was shifted by one power of x and the magnitude formula loses one
    factor of x_j accordingly.  Returns (positions, values) restricted to
    nonzero evaluation points, or None.
    """
    f = code.field
    if radius < 0:
        return None
    if not syndromes.any():
        return [], []
    pair = _key_equation(f, syndromes, radius)
    if pair is None:
        return None
    locator, evaluator = pair
    v = _deg(locator)
    if v > radius:
        return None
    if v == 0:
        # nonzero syndrome but empty locator: nothing to correct here
        return None
    nz = np.nonzero(code.x)[0]
    inv_pts = f.inv(code.x[nz])
    root_mask = _poly_eval(f, locator, inv_pts) == 0
    if int(root_mask.sum()) != v:
        return None
    positions = nz[root_mask]
    pts = inv_pts[root_mask]
    deriv = _poly_eval(f, _poly_derivative(f, locator), pts)
    if np.any(deriv == 0):
        return None
    omega = _poly_eval(f, evaluator, pts) if evaluator.size else np.zeros_like(pts)
    num = omega if shifted else f.mul(code.x[positions], omega)
    values = f.neg(f.mul(num, f.inv(f.mul(code.y[positions], deriv))))
    if np.any(values == 0):
        return None
    return list(positions), list(values)


def syndrome_decode(code: GrsCode, syndrome) -> np.ndarray:
    """Recover the unique error vector of weight <= t with this syndrome.

    The syndrome is a length n-k vector over GF(q^m), as produced by the
    canonical parity check.  Raises DecodingFailure when no error vector
    within the radius matches.
    """
    f = code.field
    s = np.asarray(syndrome, dtype=np.int64)
    if s.shape != (code.r,):
        raise ValueError(f"syndrome must have length {code.r}")
    e = np.zeros(code.n, dtype=np.int64)
    if not s.any():
        return e

    # pass 1: assume no error sits on a zero evaluation point
    sol = _locate_and_correct(code, s, code.t, shifted=False)
    if sol is not None:
        positions, values = sol
        if _verify_syndrome(code, positions, values, s):
            e[positions] = values
            return e

    # pass 2: an error on the zero point (if the code has one) touches only
    # the first syndrome entry; decode the rest from the shifted sequence
    zero_pos = np.nonzero(code.x == 0)[0]
    if zero_pos.size:
        j0 = int(zero_pos[0])
        sol = _locate_and_correct(code, s[1:], code.t - 1, shifted=True)
        if sol is not None:
            positions, values = sol
            rest = f.sum(f.mul(np.asarray(values, dtype=np.int64),
                               code.y[positions])) if positions else 0
            e0 = f.mul(f.sub(s[0], rest), f.inv(code.y[j0]))
            if e0:
                positions = positions + [j0]
                values = values + [int(e0)]
            if _verify_syndrome(code, positions, values, s):
                e[positions] = values
                return e

    raise DecodingFailure(
        f"no error vector of weight <= {code.t} matches the syndrome")
