import numpy as np
import pytest

from xrs import cli, keyfile
from xrs.analysis import key_size_bits
from xrs.cryptosystem import PRESETS


def run(*argv):
    return cli.main(list(argv))


@pytest.fixture()
def toy_key_files(tmp_path):
    pub, priv = tmp_path / "toy.pub", tmp_path / "toy.priv"
    assert run("keygen", "--preset", "toy", "--seed", "5",
               "--pub", str(pub), "--priv", str(priv)) == 0
    return pub, priv


def test_keygen_writes_loadable_keys(toy_key_files):
    pub, priv = toy_key_files
    pk = keyfile.load_public_key(pub)
    sk = keyfile.load_private_key(priv)
    assert pk.params == PRESETS["toy"] == sk.params


def test_keygen_deterministic_bytes(tmp_path):
    paths = []
    for tag in ("a", "b"):
        pub, priv = tmp_path / f"{tag}.pub", tmp_path / f"{tag}.priv"
        assert run("keygen", "--preset", "toy", "--seed", "99",
                   "--pub", str(pub), "--priv", str(priv)) == 0
        paths.append((pub, priv))
    assert paths[0][0].read_bytes() == paths[1][0].read_bytes()
    assert paths[0][1].read_bytes() == paths[1][1].read_bytes()


def test_keygen_reports_key_size(capsys, tmp_path):
    assert run("keygen", "--preset", "toy", "--seed", "1",
               "--pub", str(tmp_path / "p"), "--priv", str(tmp_path / "s")) == 0
    out = capsys.readouterr().out
    assert f"{key_size_bits(PRESETS['toy'])} bits" in out
    assert "seed: 1" in out


def test_encrypt_decrypt_round_trip(tmp_path, toy_key_files):
    pub, priv = toy_key_files
    msg = tmp_path / "msg"
    msg.write_bytes(b"\x00\xfe")
    ct = tmp_path / "msg.ct"
    out = tmp_path / "msg.out"
    assert run("encrypt", "--pub", str(pub), "--in", str(msg),
               "--out", str(ct)) == 0
    assert run("decrypt", "--priv", str(priv), "--in", str(ct),
               "--out", str(out)) == 0
    assert out.read_bytes() == b"\x00\xfe"
    # identical runs produce identical ciphertext bytes
    ct2 = tmp_path / "msg2.ct"
    assert run("encrypt", "--pub", str(pub), "--in", str(msg),
               "--out", str(ct2)) == 0
    assert ct.read_bytes() == ct2.read_bytes()


def test_encode_decode_round_trip(tmp_path):
    msg = tmp_path / "m"
    msg.write_bytes(b"\x07")
    ev = tmp_path / "m.ev"
    back = tmp_path / "m.back"
    assert run("encode", "--preset", "toy", "--in", str(msg),
               "--out", str(ev)) == 0
    assert run("decode", "--preset", "toy", "--in", str(ev),
               "--out", str(back)) == 0
    assert back.read_bytes() == b"\x07"


def test_plaintext_too_long(tmp_path, toy_key_files):
    pub, _ = toy_key_files
    msg = tmp_path / "big"
    msg.write_bytes(b"x" * 64)
    assert run("encrypt", "--pub", str(pub), "--in", str(msg),
               "--out", str(tmp_path / "c")) == cli.EXIT_PARAMS


def test_exit_codes(tmp_path, toy_key_files):
    pub, priv = toy_key_files
    # malformed key file
    bad = tmp_path / "bad.pub"
    bad.write_text("not a key\n")
    assert run("encrypt", "--pub", str(bad), "--in", str(bad),
               "--out", str(tmp_path / "c")) == cli.EXIT_FORMAT
    # parameter rejection
    assert run("keygen", "--q", "3", "--m", "3", "--lambda", "2",
               "--n", "20", "--k", "6",
               "--pub", str(tmp_path / "p"), "--priv", str(tmp_path / "s"),
               "--seed", "1") == cli.EXIT_PARAMS
    # decryption failure on a corrupted ciphertext
    msg = tmp_path / "m"
    msg.write_bytes(b"a")
    ct = tmp_path / "c"
    assert run("encrypt", "--pub", str(pub), "--in", str(msg),
               "--out", str(ct)) == 0
    pk = keyfile.load_public_key(pub)
    ctx = keyfile.load_ciphertext(ct, pk.params)
    syn = ctx.syndrome.copy()
    rng = np.random.default_rng(0)
    syn = (syn + rng.integers(1, 3, syn.size)) % 3   # far from any valid word
    from xrs.cryptosystem import Ciphertext
    keyfile.save_ciphertext(ct, Ciphertext(syn), pk.params)
    code = run("decrypt", "--priv", str(priv), "--in", str(ct),
               "--out", str(tmp_path / "o"))
    assert code in (cli.EXIT_DECRYPT, 0)   # decoding may still land in radius
    # usage error from argparse
    with pytest.raises(SystemExit) as exc:
        run("no-such-command")
    assert exc.value.code == 2


def test_isd_estimate_and_outputs(tmp_path, capsys):
    outdir = tmp_path / "rep"
    assert run("isd-estimate", "--preset", "toy", "--out", str(outdir)) == 0
    out = capsys.readouterr().out
    assert "block-stern" in out and "column-stern-baseline" in out
    assert (outdir / "isd_estimate.tsv").exists()
    assert (outdir / "isd_landscape.png").exists()


def test_isd_attack_cli(tmp_path, toy_key_files):
    pub, _ = toy_key_files
    msg = tmp_path / "m"
    msg.write_bytes(b"B")
    ct = tmp_path / "c"
    assert run("encrypt", "--pub", str(pub), "--in", str(msg),
               "--out", str(ct)) == 0
    ev = tmp_path / "recovered.ev"
    assert run("isd-attack", "--pub", str(pub), "--in", str(ct),
               "--out", str(ev), "--p", "0", "--ell", "0",
               "--max-iters", "3000", "--seed", "4") == 0
    pk = keyfile.load_public_key(pub)
    y = keyfile.load_error_vector(ev, pk.params)
    from xrs.cryptosystem import encrypt
    assert np.array_equal(encrypt(pk, y).syndrome,
                          keyfile.load_ciphertext(ct, pk.params).syndrome)
    # budget exhaustion is a distinct exit code
    assert run("isd-attack", "--pub", str(pub), "--in", str(ct),
               "--out", str(ev), "--p", "0", "--ell", "0",
               "--max-iters", "1", "--seed", "4") == cli.EXIT_BUDGET


def test_analyze_square_outputs(tmp_path, capsys):
    outdir = tmp_path / "sq"
    assert run("analyze-square", "--q", "13", "--m", "3", "--lambda", "2",
               "--n", "24", "--k", "18", "--seed", "3",
               "--out", str(outdir)) == 0
    out = capsys.readouterr().out
    assert "expanded-grs" in out and "public" in out and "random" in out
    assert (outdir / "square_dims.tsv").exists()
    assert (outdir / "square_dims.png").exists()


def test_analyze_square_deterministic(tmp_path):
    dirs = []
    for tag in ("r1", "r2"):
        outdir = tmp_path / tag
        assert run("analyze-square", "--q", "13", "--m", "3", "--lambda", "2",
                   "--n", "24", "--k", "18", "--seed", "3",
                   "--out", str(outdir)) == 0
        dirs.append(outdir)
    assert (dirs[0] / "square_dims.tsv").read_bytes() == \
        (dirs[1] / "square_dims.tsv").read_bytes()
    assert (dirs[0] / "square_dims.png").read_bytes() == \
        (dirs[1] / "square_dims.png").read_bytes()


def test_tables_cli(tmp_path, capsys):
    outdir = tmp_path / "tab"
    assert run("tables", "--no-security", "--out", str(outdir)) == 0
    out = capsys.readouterr().out
    assert "4624198" in out
    assert out.count("MISMATCH") == 3   # the off-convention catalog entries
    assert (outdir / "key_size_tables.tsv").exists()
    assert (outdir / "key_size_vs_rate.png").exists()


def test_explicit_flags_require_complete_set(tmp_path):
    assert run("keygen", "--q", "3", "--m", "3",
               "--pub", str(tmp_path / "p"),
               "--priv", str(tmp_path / "s")) == cli.EXIT_PARAMS


def test_cli_keygen_matches_library(tmp_path, toy_key_files):
    from xrs.cryptosystem import keygen
    pub, _ = toy_key_files            # written with --seed 5
    pk_cli = keyfile.load_public_key(pub)
    _, pk_lib = keygen(PRESETS["toy"], seed=5)
    assert np.array_equal(pk_cli.h_prime, pk_lib.h_prime)


def test_type1_keygen_reports_catalog_size(capsys, tmp_path):
    assert run("keygen", "--preset", "type1", "--seed", "7",
               "--pub", str(tmp_path / "t1.pub"),
               "--priv", str(tmp_path / "t1.priv")) == 0
    assert "4624198 bits" in capsys.readouterr().out
    pk = keyfile.load_public_key(tmp_path / "t1.pub")
    assert pk.h_prime.shape == (681, 2516)
