"""Exact arithmetic in GF(q) and GF(q^m) plus the base-field coordinate maps.

Elements of GF(q^m) are carried around as plain integers in [0, q^m): the
base-q digits of the integer are the coefficients, lowest degree first, of
the residue polynomial in the construction variable X.  Every arithmetic
method accepts scalars or numpy arrays and broadcasts.

The coordinate map ``phi`` is taken with respect to the power basis
(1, gamma, ..., gamma^(m-1)) of the chosen multiplicative generator gamma,
which in general is not the X-power basis, so ``phi`` applies a fixed
change of basis on the digit vectors.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError


def is_prime(n: int) -> bool:
    """Trial-division primality test; fine for the small moduli used here."""
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def int_digits(a, base: int, width: int) -> np.ndarray:
    """Base-``base`` digits of non-negative integers, lowest digit first.

    The result has one extra trailing axis of length ``width``.
    """
    a = np.asarray(a, dtype=np.int64)
    powers = base ** np.arange(width, dtype=np.int64)
    return (a[..., None] // powers) % base


def pack_digits(digits, base: int) -> np.ndarray:
    """Inverse of :func:`int_digits`; collapses the trailing digit axis."""
    digits = np.asarray(digits, dtype=np.int64)
    powers = base ** np.arange(digits.shape[-1], dtype=np.int64)
    return digits @ powers


class PrimeField:
    """GF(q) for a prime q, elements as least non-negative residues."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ParameterError(f"q={q} is not prime")
        self.q = int(q)
        inv = np.zeros(self.q, dtype=np.int64)
        for v in range(1, self.q):
            inv[v] = pow(v, -1, self.q)
        self._inv = inv

    def add(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.q

    def sub(self, a, b):
        return (np.asarray(a) - np.asarray(b)) % self.q

    def neg(self, a):
        return (-np.asarray(a)) % self.q

    def mul(self, a, b):
        return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.q

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a % self.q == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[a % self.q]

    def elements(self) -> np.ndarray:
        return np.arange(self.q)

    def __repr__(self):
        return f"PrimeField({self.q})"


# ---------------------------------------------------------------------------
# polynomial helpers over GF(q); coefficient lists low degree first
# ---------------------------------------------------------------------------

def _poly_mod(a: list[int], g: list[int], q: int) -> list[int]:
    """Remainder of a modulo the monic polynomial g."""
    r = [c % q for c in a]
    dg = len(g) - 1
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        c = r[-1]
        shift = len(r) - 1 - dg
        for i, gi in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gi) % q
        while r and r[-1] == 0:
            r.pop()
    return r


def _is_irreducible(f: list[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree up to deg(f)//2."""
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    for d in range(1, m // 2 + 1):
        for idx in range(q ** d):
            g = list(int_digits(idx, q, d)) + [1]
            if not _poly_mod(f, [int(c) for c in g], q):
                return False
    return True


def _first_irreducible(q: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, scanning the low coefficients
    in base-q counting order.  Deterministic in (q, m)."""
    for idx in range(q ** m):
        f = [int(c) for c in int_digits(idx, q, m)] + [1]
        if _is_irreducible(f, q):
            return tuple(f)
    raise ParameterError(f"no irreducible polynomial of degree {m} over GF({q})")


class ExtField:
    """The field GF(q^m) with its generator gamma and coordinate maps.

    Construction is deterministic given (q, m): the modulus is the first
    monic irreducible polynomial in base-q counting order, and gamma is the
    first element (again in counting order) of full multiplicative order.
    Both can be overridden, e.g. when reloading a serialized key.
    """

    def __init__(self, q: int, m: int, modulus=None, gamma=None):
        if not is_prime(q):
            raise ParameterError(f"q={q} is not prime")
        if m < 1:
            raise ParameterError(f"extension degree m={m} must be >= 1")
        self.q = int(q)
        self.m = int(m)
        self.order = self.q ** self.m

        if modulus is None:
            modulus = _first_irreducible(self.q, self.m)
        else:
            modulus = tuple(int(c) % self.q for c in modulus)
            if len(modulus) != self.m + 1 or modulus[-1] != 1:
                raise ParameterError("modulus must be monic of degree m")
            if not _is_irreducible(list(modulus), self.q):
                raise ParameterError("modulus is reducible")
        self.modulus = tuple(modulus)

        # X^i mod modulus for i up to 2m-2, as digit vectors
        xpow = np.zeros((max(2 * self.m - 1, 1), self.m), dtype=np.int64)
        cur = [1] + [0] * (self.m - 1)
        for i in range(xpow.shape[0]):
            xpow[i] = cur
            cur = self._shift_reduce(cur)
        self._xpow = xpow

        # multiplication tensor: X^a * X^b = sum_c R[a, b, c] X^c
        self._red = np.empty((self.m, self.m, self.m), dtype=np.int64)
        for a in range(self.m):
            for b in range(self.m):
                self._red[a, b] = xpow[a + b]

        if gamma is None:
            gamma = self._find_generator()
        self.gamma = int(gamma)
        if not 0 < self.gamma < self.order:
            raise ParameterError("gamma out of range")

        self._build_tables()
        self._build_basis()

    # -- construction internals --------------------------------------------

    def _shift_reduce(self, digits: list[int]) -> list[int]:
        """Multiply a digit vector by X and reduce mod the modulus."""
        carry = digits[-1]
        out = [0] + list(digits[:-1])
        if carry:
            for i in range(self.m):
                out[i] = (out[i] - carry * self.modulus[i]) % self.q
        return out

    def _mul_int(self, a: int, b: int) -> int:
        """Table-free product of two packed elements (used while the
        exp/log tables are being built)."""
        da = int_digits(a, self.q, self.m)
        db = int_digits(b, self.q, self.m)
        acc = np.zeros(self.m, dtype=np.int64)
        for i in range(self.m):
            if da[i] == 0:
                continue
            for j in range(self.m):
                if db[j] == 0:
                    continue
                acc += da[i] * db[j] * self._xpow[i + j]
        return int(pack_digits(acc % self.q, self.q))

    def _pow_int(self, a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = self._mul_int(out, base)
            base = self._mul_int(base, base)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        n = self.order - 1
        factors = set()
        d, rem = 2, n
        while d * d <= rem:
            while rem % d == 0:
                factors.add(d)
                rem //= d
            d += 1
        if rem > 1:
            factors.add(rem)
        for cand in range(1, self.order):
            if all(self._pow_int(cand, n // p) != 1 for p in factors):
                return cand
        raise ParameterError("no multiplicative generator found")  # unreachable

    def _build_tables(self):
        n = self.order - 1
        exps = np.empty(n, dtype=np.int64)
        e = 1
        for i in range(n):
            exps[i] = e
            e = self._mul_int(e, self.gamma)
        if e != 1 or np.unique(exps).size != n:
            raise ParameterError("gamma does not have full multiplicative order")
        sentinel = 2 * self.order - 3 if self.order > 2 else 2
        log = np.full(self.order, sentinel, dtype=np.int64)
        log[exps] = np.arange(n)
        exp_big = np.zeros(2 * sentinel + 1, dtype=np.int64)
        idx = np.arange(min(2 * n - 1, exp_big.size))
        exp_big[idx] = exps[idx % n]
        self._exps = exps
        self._log = log
        self._exp_big = exp_big

    def _build_basis(self):
        # columns of B are the X-basis digits of gamma^j
        from . import linalg

        b = int_digits(self._exps[: self.m], self.q, self.m).T.copy()
        self._basis = b
        self._basis_inv = linalg.invert(b, self.q)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        d = int_digits(np.asarray(a) % self.order, self.q, self.m) \
            + int_digits(np.asarray(b) % self.order, self.q, self.m)
        return pack_digits(d % self.q, self.q)

    def neg(self, a):
        d = (-int_digits(np.asarray(a) % self.order, self.q, self.m)) % self.q
        return pack_digits(d, self.q)

    def sub(self, a, b):
        d = int_digits(np.asarray(a) % self.order, self.q, self.m) \
            - int_digits(np.asarray(b) % self.order, self.q, self.m)
        return pack_digits(d % self.q, self.q)

    def mul(self, a, b):
        return self._exp_big[self._log[np.asarray(a)] + self._log[np.asarray(b)]]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        n = self.order - 1
        return self._exps[(n - self._log[a]) % n]

    def pow(self, a, e: int):
        """Elementwise a**e for an integer exponent (negative allowed)."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return np.ones_like(a)  # 0^0 = 1 by convention
        n = self.order - 1
        out = self._exps[(self._log[a] % n) * (e % n) % n]
        return np.where(a == 0, 0, out)

    def prod(self, a, axis=None):
        """Product along an axis; returns 0 wherever a zero participates."""
        a = np.asarray(a)
        n = self.order - 1
        zero = (a == 0).any(axis=axis)
        logs = np.where(a == 0, 0, self._log[a])
        res = self._exps[logs.sum(axis=axis) % n]
        return np.where(zero, 0, res)

    def sum(self, a, axis=None):
        d = int_digits(np.asarray(a), self.q, self.m)
        ax = axis if axis is not None else tuple(range(d.ndim - 1))
        return pack_digits(d.sum(axis=ax) % self.q, self.q)

    # -- coordinate maps ----------------------------------------------------

    def phi(self, a) -> np.ndarray:
        """Coordinates in the (1, gamma, ..., gamma^(m-1)) basis.

        Adds one trailing axis of length m.
        """
        d = int_digits(np.asarray(a), self.q, self.m)
        return (d @ self._basis_inv.T) % self.q

    def phi_inv(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        if coords.shape[-1] != self.m:
            raise ValueError(f"expected {self.m} coordinates per element")
        return pack_digits((coords @ self._basis.T) % self.q, self.q)

    def phi_n(self, v) -> np.ndarray:
        """Concatenated per-coordinate phi image of a vector (or batch)."""
        v = np.asarray(v)
        c = self.phi(v)
        return c.reshape(v.shape[:-1] + (v.shape[-1] * self.m,))

    def phi_n_inv(self, w) -> np.ndarray:
        w = np.asarray(w)
        if w.shape[-1] % self.m:
            raise ValueError(
                f"length {w.shape[-1]} is not a multiple of m={self.m}")
        c = w.reshape(w.shape[:-1] + (w.shape[-1] // self.m, self.m))
        return self.phi_inv(c)

    # -- X-basis digit access (serialization, tests) -------------------------

    def to_coeffs(self, a) -> np.ndarray:
        """X-basis digit vector(s) of packed element(s)."""
        return int_digits(np.asarray(a), self.q, self.m)

    def from_coeffs(self, coeffs) -> np.ndarray:
        return pack_digits(np.asarray(coeffs) % self.q, self.q)

    # -- dense products -------------------------------------------------------

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over GF(q^m) of packed integer matrices.

        Works digit-wise: the m^2 base-field matrix products are computed
        with float64 BLAS (exact, entries stay far below 2**53) and then
        recombined through the X^a * X^b reduction tensor.
        """
        a = np.asarray(a)
        b = np.asarray(b)
        a2 = np.atleast_2d(a)
        b2 = b[:, None] if b.ndim == 1 else b
        if a2.shape[1] != b2.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a2.shape[1] * (self.q - 1) ** 2 >= 2 ** 52:
            raise ValueError("inner dimension too large for exact float product")
        ad = int_digits(a2, self.q, self.m)
        bd = int_digits(b2, self.q, self.m)
        acc = np.zeros((self.m, a2.shape[0], b2.shape[1]), dtype=np.int64)
        for i in range(self.m):
            af = ad[:, :, i].astype(np.float64)
            for j in range(self.m):
                prod = (af @ bd[:, :, j].astype(np.float64)).astype(np.int64) % self.q
                acc += self._red[i, j][:, None, None] * prod
        out = pack_digits(np.moveaxis(acc % self.q, 0, -1), self.q)
        if a.ndim == 1:
            out = out[0]
        if b.ndim == 1:
            out = out[..., 0]
        return out

    # -- misc -----------------------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def __eq__(self, other):
        return (isinstance(other, ExtField)
                and (self.q, self.m, self.modulus, self.gamma)
                == (other.q, other.m, other.modulus, other.gamma))

    def __hash__(self):
        return hash((self.q, self.m, self.modulus, self.gamma))

    def __repr__(self):
        return f"ExtField(q={self.q}, m={self.m}, modulus={self.modulus}, gamma={self.gamma})"
