import numpy as np
import pytest

from xrs import linalg
from xrs.expansion import (check_prop1, expand_generator, expand_parity,
                           ext_rank)
from xrs.fields import ExtField
from xrs.grs import encode, generator_matrix, random_code, vandermonde_parity


@pytest.fixture(scope="module")
def setup():
    f = ExtField(3, 3)
    code = random_code(f, 8, 5, np.random.default_rng(0))
    return f, code, generator_matrix(code), vandermonde_parity(code)


def test_scalar_one_expands_to_identity():
    f = ExtField(3, 3)
    assert np.array_equal(expand_parity(np.array([[1]]), f).matrix,
                          np.eye(3, dtype=np.int64))
    assert np.array_equal(expand_generator(np.array([[1]]), f).matrix,
                          np.eye(3, dtype=np.int64))


def test_shapes_ranks_and_block_map(setup):
    f, code, g, h = setup
    gh = expand_generator(g, f)
    hh = expand_parity(h, f)
    assert gh.matrix.shape == (15, 24) and hh.matrix.shape == (9, 24)
    assert linalg.rank(gh.matrix, 3) == 15          # dimension m*k
    assert linalg.rank(hh.matrix, 3) == 9
    assert np.array_equal(hh.block_map, np.repeat(np.arange(8), 3))


def test_expanded_annihilation(setup):
    f, code, g, h = setup
    gh = expand_generator(g, f).matrix
    hh = expand_parity(h, f).matrix
    assert not np.any(linalg.matmul(gh, hh.T, 3))
    rng = np.random.default_rng(1)
    for _ in range(20):
        cw = encode(code, rng.integers(0, 27, code.k))
        assert not np.any(linalg.matmul(hh, f.phi_n(cw), 3))


def test_expanded_column_blocks_match_definition(setup):
    f, code, g, h = setup
    hh = expand_parity(h, f).matrix
    # column m*j + l must be phi applied to gamma^l times source column j
    for j in (0, 3, 7):
        for l in range(3):
            want = f.phi_n(f.mul(f.pow(f.gamma, l), h[:, j]))
            assert np.array_equal(hh[:, 3 * j + l], want)


def test_ext_rank(setup):
    f, code, g, h = setup
    assert ext_rank(g, f) == code.k
    assert ext_rank(np.vstack([g, g]), f) == code.k
    assert ext_rank(np.zeros((2, 4), dtype=np.int64), f) == 0


def test_prop1_random_and_exhaustive(setup):
    f, code, g, h = setup
    assert check_prop1(g, h, f, trials=100, rng=np.random.default_rng(2))
    assert check_prop1(g, h, f, exhaustive=True)


def test_prop1_zero_and_codeword_cases(setup):
    f, code, g, h = setup
    gh = expand_generator(g, f).matrix
    hh = expand_parity(h, f).matrix
    # x = 0 maps to zero on both sides
    x = np.zeros(code.k, dtype=np.int64)
    assert not f.phi_n(f.matmul(x, g)).any()
    assert not linalg.matmul(f.phi_n(x), gh, 3).any()
    # y a codeword: both sides are zero syndromes
    cw = encode(code, np.random.default_rng(3).integers(0, 27, code.k))
    assert not f.phi_n(f.matmul(cw, h.T)).any()
    assert not linalg.matmul(f.phi_n(cw), hh.T, 3).any()


def test_prop1_shape_mismatch_rejected(setup):
    f, code, g, h = setup
    with pytest.raises(ValueError):
        check_prop1(g, h[:, :-1], f)
