"""Command-line surface.

Subcommands: keygen, encrypt, decrypt, encode, decode, analyze-square,
isd-estimate, isd-attack, tables.  Every randomized subcommand prints the
seed in effect, so any run can be reproduced afterwards.

Exit codes: 0 success, 2 usage error, 3 parameter rejection, 4 malformed
input file, 5 decryption failure, 6 attack budget exhausted.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from . import keyfile, report
from .analysis import (distinguisher_experiment, isd_attack,
                       isd_estimate_grid, key_size_bits, reproduce_tables,
                       stern_baseline)
from .cryptosystem import (PRESETS, SchemeParams, decode_plaintext, decrypt,
                           encode_plaintext, encrypt, keygen,
                           message_capacity)
from .errors import (AttackBudgetExceeded, DecryptionError, FormatError,
                     ParameterError)

EXIT_PARAMS = 3
EXIT_FORMAT = 4
EXIT_DECRYPT = 5
EXIT_BUDGET = 6

_SENTINEL = b"\x01"   # length-preserving framing byte for byte plaintexts


def _add_param_flags(p: argparse.ArgumentParser):
    p.add_argument("--preset", choices=sorted(PRESETS),
                   help="named parameter set")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)


def _params_from(args) -> SchemeParams:
    if args.preset:
        base = PRESETS[args.preset]
        if args.t is not None:
            return SchemeParams(base.q, base.m, base.lam, base.n, base.k, args.t)
        return base
    missing = [f for f in ("q", "m", "lam", "n", "k")
               if getattr(args, f) is None]
    if missing:
        raise ParameterError(
            "need --preset or all of --q --m --lambda --n --k"
            f" (missing {', '.join(missing)})")
    return SchemeParams(args.q, args.m, args.lam, args.n, args.k,
                        args.t if args.t is not None else -1)


def _seed_from(args) -> int:
    if args.seed is None:
        seed = secrets.randbits(63)
    else:
        seed = args.seed
    print(f"seed: {seed}")
    return seed


def _bytes_to_rank(data: bytes) -> int:
    return int.from_bytes(_SENTINEL + data, "big")


def _rank_to_bytes(rank: int) -> bytes:
    raw = rank.to_bytes(max((rank.bit_length() + 7) // 8, 1), "big")
    if raw[:1] != _SENTINEL:
        raise DecryptionError("plaintext framing byte missing")
    return raw[1:]


def _plaintext_rank(path, params) -> int:
    data = Path(path).read_bytes()
    rank = _bytes_to_rank(data)
    cap = message_capacity(params)
    if rank >= cap:
        raise ParameterError(
            f"plaintext too long: {len(data)} bytes exceeds the "
            f"{(cap.bit_length() - 1) // 8 - 1} byte capacity of these parameters")
    return rank


def _cmd_keygen(args) -> int:
    params = _params_from(args)
    seed = _seed_from(args)
    sk, pk = keygen(params, seed)
    keyfile.save_private_key(args.priv, sk)
    keyfile.save_public_key(args.pub, pk)
    print(f"public key:  {args.pub}")
    print(f"private key: {args.priv}")
    print(f"public key size: {key_size_bits(params)} bits (systematic form)")
    return 0


def _cmd_encrypt(args) -> int:
    pk = keyfile.load_public_key(args.pub)
    rank = _plaintext_rank(args.infile, pk.params)
    ct = encrypt(pk, encode_plaintext(rank, pk.params))
    keyfile.save_ciphertext(args.out, ct, pk.params)
    print(f"ciphertext: {args.out}")
    return 0


def _cmd_decrypt(args) -> int:
    sk = keyfile.load_private_key(args.priv)
    ct = keyfile.load_ciphertext(args.infile, sk.params)
    y = decrypt(sk, ct)
    data = _rank_to_bytes(decode_plaintext(y, sk.params))
    Path(args.out).write_bytes(data)
    print(f"plaintext: {args.out} ({len(data)} bytes)")
    return 0


def _cmd_encode(args) -> int:
    params = _params_from(args)
    rank = _plaintext_rank(args.infile, params)
    keyfile.save_error_vector(args.out, encode_plaintext(rank, params), params)
    print(f"error vector: {args.out}")
    return 0


def _cmd_decode(args) -> int:
    params = _params_from(args)
    y = keyfile.load_error_vector(args.infile, params)
    Path(args.out).write_bytes(_rank_to_bytes(decode_plaintext(y, params)))
    print(f"plaintext: {args.out}")
    return 0


def _cmd_analyze_square(args) -> int:
    params = _params_from(args)
    seed = _seed_from(args)
    rows, last = [], None
    for trial in range(args.trials):
        last = distinguisher_experiment(params, seed + trial)
        for arm in last.arms:
            rows.append([trial, arm.label, arm.dim, arm.max_possible,
                         arm.deficient])
    headers = ["trial", "code", "square_dim", "max_possible", "deficient"]
    print(report.format_table(headers, rows))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        report.write_tsv(outdir / "square_dims.tsv", headers, rows)
        report.save_square_figure(outdir / "square_dims.png", last.arms)
        print(f"records and figure in {outdir}/")
    return 0


def _cmd_isd_estimate(args) -> int:
    params = _params_from(args)
    t_attack = args.t_attack
    best, grid = isd_estimate_grid(params, t_override=t_attack)
    if args.p is not None and args.ell is not None:
        from .analysis import isd_estimate
        best = isd_estimate(params, t_override=t_attack, p=args.p, ell=args.ell)
    base = stern_baseline(params, t_override=t_attack)
    headers = ["model", "p", "ell", "log2_iterations", "log2_iter_cost",
               "total_bits"]
    rows = [
        ["block-stern", best.p, best.ell, f"{best.iterations:.2f}",
         f"{best.iter_cost:.2f}", f"{best.total_bits:.2f}"],
        ["column-stern-baseline", base.p, base.ell, f"{base.iterations:.2f}",
         f"{base.iter_cost:.2f}", f"{base.total_bits:.2f}"],
    ]
    print(report.format_table(headers, rows))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        report.write_tsv(outdir / "isd_estimate.tsv", headers, rows)
        report.save_isd_figure(outdir / "isd_landscape.png", grid, best)
        print(f"records and figure in {outdir}/")
    return 0


def _cmd_isd_attack(args) -> int:
    pk = keyfile.load_public_key(args.pub)
    ct = keyfile.load_ciphertext(args.infile, pk.params)
    seed = _seed_from(args)
    y = isd_attack(pk, ct, args.p, args.ell, args.max_iters, seed)
    keyfile.save_error_vector(args.out, y, pk.params)
    print(f"recovered error vector: {args.out} "
          f"({y.block_weight} support blocks)")
    return 0


def _cmd_tables(args) -> int:
    reports = reproduce_tables(with_security=not args.no_security)
    headers = ["m", "rate", "q", "n", "k", "t", "listed_bits", "computed_bits",
               "size_match", "t_half_ceil", "security_bits", "p", "ell"]
    rows = []
    for r in reports:
        sec = f"{r.security_bits:.1f}" if r.security_bits is not None else "-"
        rows.append([r.m, f"{r.rate:.2f}", r.q, r.n, r.k, r.t, r.listed_bits,
                     r.computed_bits, "ok" if r.bits_match else "MISMATCH",
                     "ok" if r.t_is_half_ceil else "MISMATCH", sec,
                     r.p if r.p is not None else "-",
                     r.ell if r.ell is not None else "-"])
    print(report.format_table(headers, rows))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        report.write_tsv(outdir / "key_size_tables.tsv", headers, rows)
        report.save_key_size_figure(outdir / "key_size_vs_rate.png", reports)
        print(f"records and figure in {outdir}/")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="xrs",
        description="encryption from shortened expanded Reed-Solomon codes, "
                    "with square-code and ISD analysis tools")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_param_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--pub", required=True)
    p.add_argument("--priv", required=True)
    p.set_defaults(fn=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a byte-string file")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_decrypt)

    p = sub.add_parser("encode", help="map a byte-string file to an error vector")
    _add_param_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("decode", help="map an error vector back to bytes")
    _add_param_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_decode)

    p = sub.add_parser("analyze-square",
                       help="square-code dimensions of secret, public and random codes")
    _add_param_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", help="directory for tsv records and figure")
    p.set_defaults(fn=_cmd_analyze_square)

    p = sub.add_parser("isd-estimate", help="block-Stern attack cost model")
    _add_param_flags(p)
    p.add_argument("--t-attack", type=int,
                   help="price an error budget other than the key's t")
    p.add_argument("--p", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--out", help="directory for tsv records and figure")
    p.set_defaults(fn=_cmd_isd_estimate)

    p = sub.add_parser("isd-attack", help="run the toy-scale decoding attack")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=_cmd_isd_attack)

    p = sub.add_parser("tables", help="recheck the parameter catalog")
    p.add_argument("--no-security", action="store_true",
                   help="skip the ISD pricing column")
    p.add_argument("--out", help="directory for tsv records and figure")
    p.set_defaults(fn=_cmd_tables)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except FormatError as exc:
        print(f"file format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except DecryptionError as exc:
        print(f"decryption failed: {exc}", file=sys.stderr)
        return EXIT_DECRYPT
    except AttackBudgetExceeded as exc:
        print(f"attack gave up: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
