import math

import numpy as np
import pytest

from xrs import linalg
from xrs.analysis import (TABLE_M3, TABLE_M4, attack_success_count,
                          bcode_generator, build_bcode_parity,
                          distinguisher_experiment, interleave_permutation,
                          isd_attack, isd_estimate, isd_estimate_grid,
                          key_size_bits, reproduce_tables, schur_matrix,
                          schur_product, schur_row_count, square_dim,
                          stern_baseline, subfield_kernel)
from xrs.cryptosystem import (PRESETS, SchemeParams, encode_plaintext,
                              encrypt, keygen, message_capacity)
from xrs.errors import AttackBudgetExceeded, ParameterError
from xrs.expansion import expand_parity, ext_rank
from xrs.fields import ExtField
from xrs.grs import generator_matrix, random_code, vandermonde_parity

TOY = PRESETS["toy"]


# -- schur ------------------------------------------------------------------

def test_schur_product_basics():
    x = np.array([1, 2, 3])
    assert np.array_equal(schur_product(x, np.ones(3, dtype=np.int64), 7), x)
    assert not schur_product(x, np.zeros(3, dtype=np.int64), 7).any()
    assert np.array_equal(schur_product(x, np.array([2, 2, 2]), 7),
                          np.array([2, 4, 6]))
    with pytest.raises(ValueError):
        schur_product(x, np.ones(4, dtype=np.int64), 7)


def test_schur_product_bilinear():
    rng = np.random.default_rng(0)
    q = 13
    for _ in range(20):
        x, y, z = rng.integers(0, q, (3, 12))
        a, b = rng.integers(0, q, 2)
        left = schur_product((a * x + b * y) % q, z, q)
        right = (a * schur_product(x, z, q) + b * schur_product(y, z, q)) % q
        assert np.array_equal(left, right)


def test_schur_matrix_shape_and_small_cases():
    assert schur_row_count(4) == 10
    g = np.array([[1, 2, 0]])
    assert np.array_equal(schur_matrix(g, 7), np.array([[1, 4, 0]]))
    eye2 = np.eye(2, dtype=np.int64)
    sm = schur_matrix(eye2, 7)
    assert sm.shape == (3, 2)
    assert np.array_equal(sm, np.array([[1, 0], [0, 0], [0, 1]]))
    assert linalg.rank(sm, 7) == 2
    assert schur_matrix(np.ones((4, 5), dtype=np.int64), 7).shape == (10, 5)


def test_square_dim_grs_is_2k_minus_1():
    f = ExtField(23, 1)
    rng = np.random.default_rng(1)
    for _ in range(5):
        code = random_code(f, 20, 5, rng)
        rep = square_dim(generator_matrix(code), 23)
        assert rep.dim == 9 and rep.deficient
        assert rep.max_possible == min(schur_row_count(5), 20)


def test_square_dim_random_full_and_k1():
    rng = np.random.default_rng(2)
    full = 0
    for _ in range(10):
        g = rng.integers(0, 13, (10, 40))
        rep = square_dim(g, 13)
        full += rep.dim == rep.max_possible == 40
    assert full >= 9
    one = square_dim(rng.integers(1, 13, (1, 6)), 13)
    assert one.dim == 1 and one.max_possible == 1


def test_square_dim_invariances():
    rng = np.random.default_rng(3)
    q = 13
    g = rng.integers(0, q, (6, 25))
    base = square_dim(g, q).dim
    # row operations
    mixed = g.copy()
    mixed[0] = (mixed[0] + 4 * mixed[3]) % q
    assert square_dim(mixed, q).dim == base
    # column permutation
    assert square_dim(g[:, rng.permutation(25)], q).dim == base
    # invertible diagonal scaling
    d = rng.integers(1, q, 25)
    assert square_dim((g * d) % q, q).dim == base


def test_distinguisher_experiment_small():
    params = SchemeParams(q=13, m=3, lam=2, n=24, k=18)
    rep = distinguisher_experiment(params, seed=5)
    assert rep.expanded.label == "expanded-grs"
    assert rep.public.label == "public" and rep.random.label == "random"
    for arm in rep.arms:
        assert 0 <= arm.dim <= arm.max_possible
    assert rep.public.max_possible == min(schur_row_count(params.k_prime),
                                          params.lam * params.n)


# -- bcode ------------------------------------------------------------------

@pytest.fixture(scope="module")
def tiny_code():
    f = ExtField(3, 3)
    return random_code(f, 8, 5, np.random.default_rng(4))


def test_bcode_parity_degenerate_m1():
    f = ExtField(13, 1)
    code = random_code(f, 6, 3, np.random.default_rng(5))
    assert np.array_equal(build_bcode_parity(code), vandermonde_parity(code))


def test_bcode_generator_annihilates_and_spans(tiny_code):
    f = tiny_code.field
    hb = build_bcode_parity(tiny_code)
    gb = bcode_generator(tiny_code)
    assert hb.shape == (3, 24) and gb.shape == (21, 24)
    assert not np.any(f.matmul(gb, hb.T))
    assert ext_rank(gb, f) == 21   # full kernel rank m*n - r


def test_subfield_kernel_dimension(tiny_code):
    f = tiny_code.field
    sfs = subfield_kernel(build_bcode_parity(tiny_code), f)
    assert sfs.shape[0] == f.m * tiny_code.k


def test_expanded_equals_permuted_subfield_subcode(tiny_code):
    f = tiny_code.field
    n, m, k = tiny_code.n, f.m, tiny_code.k
    hhat = expand_parity(vandermonde_parity(tiny_code), f).matrix
    exp_gen = linalg.kernel(hhat, f.q)
    pi = interleave_permutation(n, m)
    moved = np.zeros_like(exp_gen)
    moved[:, pi] = exp_gen
    # permuted expanded codewords satisfy the concatenated parity check
    assert not np.any(f.matmul(build_bcode_parity(tiny_code), moved.T))
    # and the two subspaces coincide
    sfs = subfield_kernel(build_bcode_parity(tiny_code), f)
    assert linalg.rank(np.vstack([moved, sfs]), f.q) == m * k
    assert linalg.rank(moved, f.q) == linalg.rank(sfs, f.q) == m * k


# -- isd estimator ----------------------------------------------------------

def test_isd_prange_block_counts_exact():
    est = isd_estimate(TOY, p=0, ell=0)
    assert est.N == 20 and est.K == 11
    expect = math.comb(20, 3) / math.comb(9, 3)
    assert 2 ** est.iterations == pytest.approx(expect, rel=1e-9)
    assert est.total_bits == pytest.approx(est.iterations + est.iter_cost)


def test_isd_grid_optimum_not_worse_than_pinned():
    best, grid = isd_estimate_grid(TOY)
    assert grid[(best.p, best.ell)] == pytest.approx(best.total_bits)
    for (p, ell), bits in grid.items():
        assert best.total_bits <= bits + 1e-9


def test_isd_monotone_in_t_and_n():
    base = SchemeParams(q=13, m=3, lam=2, n=300, k=246)
    bits = [isd_estimate(base, t_override=t).total_bits
            for t in (10, 14, 18, 22)]
    assert bits == sorted(bits)
    # scale n at fixed rate and t-ratio
    grown = [isd_estimate(SchemeParams(q=13, m=3, lam=2, n=n, k=int(0.82 * n)),
                          t_override=n // 12).total_bits
             for n in (200, 400, 600)]
    assert grown == sorted(grown)


def test_isd_security_bands():
    e1 = isd_estimate(PRESETS["type1"], t_override=114)
    e2 = isd_estimate(PRESETS["type2"], t_override=103)
    assert 246 <= e1.total_bits <= 271
    assert 246 <= e2.total_bits <= 271


def test_isd_baseline_is_slower():
    base = stern_baseline(PRESETS["type1"], t_override=114)
    block = isd_estimate(PRESETS["type1"], t_override=114)
    assert base.total_bits > block.total_bits + 50


def test_isd_infeasible_configs_rejected():
    with pytest.raises(ParameterError):
        isd_estimate(TOY, p=2, ell=0)   # 2p > t
    with pytest.raises(ParameterError):
        isd_estimate(TOY, p=0, ell=9)   # t errors cannot avoid Z


# -- isd attack -------------------------------------------------------------

@pytest.fixture(scope="module")
def attack_setup():
    sk, pk = keygen(TOY, seed=21)
    rng = np.random.default_rng(22)
    y = encode_plaintext(int(rng.integers(0, message_capacity(TOY))), TOY)
    return pk, y, encrypt(pk, y)


def test_attack_zero_syndrome(attack_setup):
    pk, _, _ = attack_setup
    from xrs.cryptosystem import Ciphertext
    out = isd_attack(pk, Ciphertext(np.zeros(18, dtype=np.int64)), 0, 0, 1)
    assert out.block_weight == 0


def test_attack_recovers_planted(attack_setup):
    pk, y, ct = attack_setup
    assert isd_attack(pk, ct, 0, 0, 2000, seed=1) == y
    assert isd_attack(pk, ct, 1, 1, 2000, seed=2) == y


def test_attack_budget_exhaustion(attack_setup):
    pk, _, ct = attack_setup
    with pytest.raises(AttackBudgetExceeded):
        isd_attack(pk, ct, 0, 0, 1, seed=3)  # one iteration almost surely fails


def test_attack_success_rate_tracks_model(attack_setup):
    pk, _, ct = attack_setup
    n_iter = 1500
    for p, ell in ((0, 0), (1, 1)):
        model = 2.0 ** -isd_estimate(TOY, p=p, ell=ell).iterations
        emp = attack_success_count(pk, ct, p, ell, n_iter, seed=7) / n_iter
        assert abs(emp - model) < 4 * math.sqrt(model * (1 - model) / n_iter) + 0.01


def test_attack_requires_block_aligned_information_set():
    params = SchemeParams(q=3, m=3, lam=2, n=21, k=16)   # k' = 27, odd
    assert params.k_prime % params.lam == 1
    sk, pk = keygen(params, seed=1)
    y = encode_plaintext(0, params)
    ct = encrypt(pk, y)
    with pytest.raises(ParameterError, match="block aligned"):
        isd_attack(pk, ct, 0, 0, 10, seed=1)


# -- tables -----------------------------------------------------------------

def test_key_size_values_from_catalog():
    assert key_size_bits(PRESETS["type1"]) == 4624198
    assert key_size_bits(SchemeParams(q=13, m=3, lam=2, n=1382, k=829)) == 6783627
    # exact fractional parts straddle an integer here: floor keeps 6754720
    assert key_size_bits(PRESETS["type2"]) == 6754720


def test_key_size_matches_public_matrix_shape():
    params = TOY
    bits = key_size_bits(params)
    rows, cols = params.public_rows, params.public_cols
    manual = math.floor((cols - rows) * rows * math.log2(params.q))
    assert bits == manual


def test_reproduce_tables_rows():
    rows = reproduce_tables(with_security=False)
    assert len(rows) == len(TABLE_M3) + len(TABLE_M4) == 17
    assert all(r.t_is_half_ceil for r in rows)
    mismatches = {(r.n, r.k): r for r in rows if not r.bits_match}
    # the three catalog entries that do not follow the floor convention
    assert set(mismatches) == {(1192, 894), (1738, 1303), (1872, 1666)}
    for r in rows:
        if r.bits_match:
            assert r.computed_bits == r.listed_bits
