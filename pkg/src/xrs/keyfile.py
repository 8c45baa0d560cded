"""Textual serialization of keys, ciphertexts and error vectors.

Every file starts with the line ``XRS-1 <kind>``.  The remaining lines are
``name value...`` records with all integers in decimal; vectors and
matrices are flattened row-major.  Element integers for the extension
field are packed base-q digit vectors (X-power basis, lowest degree
first); gamma and the field modulus are spelled out digit by digit so a
key file fully pins down the field.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .cryptosystem import (BlockErrorVector, Ciphertext, PrivateKey,
                           PublicKey, SchemeParams)
from .errors import FormatError
from .fields import ExtField, pack_digits
from .grs import GrsCode

FORMAT_TAG = "XRS-1"


def params_digest(params: SchemeParams) -> str:
    text = (f"q={params.q},m={params.m},lambda={params.lam},"
            f"n={params.n},k={params.k},t={params.t}")
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _write(path, kind: str, records: list[tuple[str, object]]):
    lines = [f"{FORMAT_TAG} {kind}"]
    for name, value in records:
        if isinstance(value, np.ndarray):
            value = " ".join(map(str, value.ravel().tolist()))
        lines.append(f"{name} {value}")
    Path(path).write_text("\n".join(lines) + "\n")


def _read(path, kind: str) -> dict[str, str]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not lines or lines[0] != f"{FORMAT_TAG} {kind}":
        raise FormatError(
            f"{path}: expected leading tag '{FORMAT_TAG} {kind}'")
    records = {}
    for ln in lines[1:]:
        if not ln.strip():
            continue
        name, _, rest = ln.partition(" ")
        records[name] = rest
    return records


def _ints(records: dict[str, str], name: str) -> np.ndarray:
    if name not in records:
        raise FormatError(f"missing field '{name}'")
    try:
        return np.array(records[name].split(), dtype=np.int64)
    except ValueError as exc:
        raise FormatError(f"field '{name}' is not a decimal integer list") from exc


def _int(records: dict[str, str], name: str) -> int:
    v = _ints(records, name)
    if v.size != 1:
        raise FormatError(f"field '{name}' must be a single integer")
    return int(v[0])


def _params(records) -> SchemeParams:
    return SchemeParams(q=_int(records, "q"), m=_int(records, "m"),
                        lam=_int(records, "lambda"), n=_int(records, "n"),
                        k=_int(records, "k"), t=_int(records, "t"))


def _param_records(params: SchemeParams) -> list[tuple[str, object]]:
    return [("q", params.q), ("m", params.m), ("lambda", params.lam),
            ("n", params.n), ("k", params.k), ("t", params.t)]


def save_public_key(path, pk: PublicKey):
    _write(path, "public-key", _param_records(pk.params)
           + [("h-prime", pk.h_prime)])


def load_public_key(path) -> PublicKey:
    rec = _read(path, "public-key")
    params = _params(rec)
    h = _ints(rec, "h-prime")
    if h.size != params.public_rows * params.public_cols:
        raise FormatError("h-prime has the wrong number of entries")
    return PublicKey(params, h.reshape(params.public_rows, params.public_cols))


def save_private_key(path, sk: PrivateKey):
    f = sk.field
    recs = _param_records(sk.params) + [
        ("modulus", np.array(f.modulus)),
        ("gamma", f.to_coeffs(f.gamma)),
        ("x", sk.code.x),
        ("y", sk.code.y),
        ("shortened", sk.shortened),
        ("t-blocks", sk.t_blocks),
        ("sigma", sk.sigma),
    ]
    _write(path, "private-key", recs)


def load_private_key(path) -> PrivateKey:
    rec = _read(path, "private-key")
    params = _params(rec)
    modulus = _ints(rec, "modulus")
    if modulus.size != params.m + 1:
        raise FormatError("modulus must have m+1 coefficients")
    gamma_coeffs = _ints(rec, "gamma")
    if gamma_coeffs.size != params.m:
        raise FormatError("gamma must have m coefficients")
    field = ExtField(params.q, params.m, modulus=modulus.tolist(),
                     gamma=int(pack_digits(gamma_coeffs % params.q, params.q)))
    code = GrsCode(field, params.n, params.k,
                   _ints(rec, "x"), _ints(rec, "y"), t=params.t)
    shortened = _ints(rec, "shortened").reshape(params.n, params.m - params.lam)
    t_blocks = _ints(rec, "t-blocks").reshape(params.n, params.lam, params.lam)
    sigma = _ints(rec, "sigma")
    return PrivateKey(params, code, shortened, t_blocks, sigma)


def save_ciphertext(path, ct: Ciphertext, params: SchemeParams):
    _write(path, "ciphertext", [("params-digest", params_digest(params)),
                                ("syndrome", np.asarray(ct.syndrome))])


def load_ciphertext(path, params: SchemeParams) -> Ciphertext:
    rec = _read(path, "ciphertext")
    if rec.get("params-digest") != params_digest(params):
        raise FormatError("ciphertext was produced under different parameters")
    syn = _ints(rec, "syndrome")
    if syn.size != params.public_rows:
        raise FormatError("syndrome has the wrong length")
    return Ciphertext(syn)


def save_error_vector(path, y: BlockErrorVector, params: SchemeParams):
    _write(path, "error-vector", [
        ("params-digest", params_digest(params)),
        ("blocks", np.array(y.support_blocks, dtype=np.int64)),
        ("values", y.values),
    ])


def load_error_vector(path, params: SchemeParams) -> BlockErrorVector:
    rec = _read(path, "error-vector")
    if rec.get("params-digest") != params_digest(params):
        raise FormatError("error vector was produced under different parameters")
    blocks = _ints(rec, "blocks")
    values = _ints(rec, "values").reshape(blocks.size, params.lam)
    return BlockErrorVector(tuple(int(b) for b in blocks), values,
                            params.lam, params.n)
