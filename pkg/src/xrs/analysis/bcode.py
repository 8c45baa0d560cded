"""The length-mn extension-field code whose subfield subcode matches the
expanded code, used as analysis scaffolding for the square experiments.

Concatenating the generator-scaled parity blocks V(x, gamma^l * y) for
l = 0..m-1 gives a parity check over GF(q^m) whose GF(q)-kernel equals
the expanded code up to the interleaving permutation that regroups
coordinates by power instead of by position.
"""

from __future__ import annotations

import numpy as np

from .. import linalg
from ..fields import ExtField
from ..grs import GrsCode, dual_multipliers, vandermonde


def build_bcode_parity(code: GrsCode) -> np.ndarray:
    """r x (m*n) parity check [V(x,y) | V(x,gamma*y) | ... ] over GF(q^m)."""
    f = code.field
    blocks = [vandermonde(f, code.x, f.mul(f.pow(f.gamma, l), code.y), code.r)
              for l in range(f.m)]
    return np.hstack(blocks)


def bcode_generator(code: GrsCode) -> np.ndarray:
    """A (m*n - r) x (m*n) generator of the kernel of the block parity check.

    Top rows: per column block l, the generator rows of the source code
    scaled by gamma^(-l), which are annihilated block-locally.  Bottom
    rows: glue pairs that cancel between column block i and the last
    block; their multipliers continue the dual-multiplier Vandermonde to
    the powers k..n-1, so together the rows reach the full kernel rank.
    """
    f = code.field
    n, k, r, m = code.n, code.k, code.r, f.m
    yp = dual_multipliers(code)
    ypp = f.mul(f.pow(code.x, k), yp)
    vk = vandermonde(f, code.x, yp, k)
    vr = vandermonde(f, code.x, ypp, r)

    out = np.zeros((m * k + (m - 1) * r, m * n), dtype=np.int64)
    for l in range(m):
        out[l * k:(l + 1) * k, l * n:(l + 1) * n] = f.mul(f.pow(f.gamma, -l), vk)
    last = f.neg(f.mul(f.pow(f.gamma, -(m - 1)), vr))
    for i in range(m - 1):
        row0 = m * k + i * r
        out[row0:row0 + r, i * n:(i + 1) * n] = f.mul(f.pow(f.gamma, -i), vr)
        out[row0:row0 + r, (m - 1) * n:m * n] = last
    return out


def interleave_permutation(n: int, m: int) -> np.ndarray:
    """Coordinate permutation from position-grouped to power-grouped layout.

    pi[m*j + l] = l*n + j: applying ``w_new[pi] = w`` moves the expanded
    code's coordinate (position j, power l) to block l of the concatenated
    layout.
    """
    j, l = np.divmod(np.arange(m * n), m)
    return l * n + j


def subfield_kernel(h_ext, field: ExtField) -> np.ndarray:
    """GF(q)-kernel of a matrix over GF(q^m).

    Each extension-field row constraint flattens into m base-field row
    constraints through the coordinate map applied entrywise.
    """
    h_ext = np.atleast_2d(np.asarray(h_ext, dtype=np.int64))
    rows, cols = h_ext.shape
    coords = field.phi(h_ext)                      # (rows, cols, m)
    flat = coords.transpose(0, 2, 1).reshape(rows * field.m, cols)
    return linalg.kernel(flat, field.q)
