"""Parameter catalog and public-key size accounting.

The catalog lists the reference parameter sets for extension degrees 3
and 4 (block width 2 throughout) together with their nominal public key
sizes in bits.  ``reproduce_tables`` recomputes every key size from the
dimension formula and prices every row with the block ISD estimator, so a
regression in either shows up as a mismatch flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, getcontext

from ..cryptosystem import SchemeParams
from .isd import isd_estimate

# (rate, q, n, k, t, key size in bits); m = 3, lambda = 2
TABLE_M3 = (
    (0.60, 13, 1382, 829, 277, 6783627),
    (0.65, 13, 1270, 825, 223, 5952804),
    (0.70, 13, 1207, 844, 182, 5339456),
    (0.75, 13, 1192, 894, 149, 4929077),
    (0.80, 13, 1230, 984, 123, 4702652),
    (0.82, 13, 1258, 1031, 114, 4624198),
    (0.85, 13, 1340, 1139, 101, 4634545),
    (0.87, 13, 1420, 1235, 93, 4692805),
    (0.90, 13, 1602, 1441, 81, 4863276),
)

# (rate, q, n, k, t, key size in bits); m = 4, lambda = 2
TABLE_M4 = (
    (0.65, 7, 2360, 1534, 413, 13134108),
    (0.70, 7, 1945, 1361, 292, 10191102),
    (0.75, 7, 1738, 1303, 218, 8480009),
    (0.80, 7, 1662, 1329, 167, 7448878),
    (0.85, 7, 1700, 1445, 128, 6815134),
    (0.87, 7, 1770, 1539, 116, 6785893),
    (0.89, 7, 1872, 1666, 103, 6754721),
    (0.91, 7, 2024, 1841, 92, 6814326),
)


def key_size_bits(params: SchemeParams) -> int:
    """floor((lambda*n - m*(n-k)) * m*(n-k) * log2(q)).

    This is the systematic-form storage count of the public parity check:
    k' * m(n-k) entries of log2(q) bits each.  Evaluated with 50-digit
    decimals so the floor is exact.
    """
    rows = params.m * (params.n - params.k)
    entries = (params.lam * params.n - rows) * rows
    getcontext().prec = 50
    bits = Decimal(entries) * Decimal(params.q).ln() / Decimal(2).ln()
    return int(bits)


@dataclass(frozen=True)
class TableRowReport:
    m: int
    rate: float
    q: int
    n: int
    k: int
    t: int
    listed_bits: int
    computed_bits: int
    bits_match: bool
    t_is_half_ceil: bool
    security_bits: float | None
    p: int | None
    ell: int | None


def _row_report(m: int, lam: int, row, with_security: bool) -> TableRowReport:
    rate, q, n, k, t, listed = row
    params = SchemeParams(q=q, m=m, lam=lam, n=n, k=k)
    computed = key_size_bits(params)
    if with_security:
        est = isd_estimate(params, t_override=t)
        sec, p, ell = est.total_bits, est.p, est.ell
    else:
        sec = p = ell = None
    return TableRowReport(
        m=m, rate=rate, q=q, n=n, k=k, t=t,
        listed_bits=listed, computed_bits=computed,
        bits_match=computed == listed,
        t_is_half_ceil=t == -((k - n) // 2),   # ceil((n-k)/2)
        security_bits=sec, p=p, ell=ell,
    )


def reproduce_tables(with_security: bool = True) -> list[TableRowReport]:
    """Check every catalog row: key size recomputation and attack pricing."""
    rows = [_row_report(3, 2, row, with_security) for row in TABLE_M3]
    rows += [_row_report(4, 2, row, with_security) for row in TABLE_M4]
    return rows
