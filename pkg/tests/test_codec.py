from __future__ import annotations

import itertools

import numpy as np
import pytest

from msrcode import linalg
from msrcode.codec import Codec, Codeword, encode, parity_residual, reconstruct
from msrcode.errors import CorruptionError, InsufficientDataError
from oracles import SlowField, solve_oracle

from conftest import certified

ROUND_TRIP = [(4, 2, 3), (5, 2, 3), (5, 3, 4), (6, 3, 4)]


def test_zero_message_gives_zero_codeword():
    pc = certified(4, 2, 3)
    cw = encode(np.zeros(8, dtype=np.uint8), pc)
    assert not cw.blocks.any()
    assert not parity_residual(cw, pc).any()


def test_linearity():
    pc = certified(5, 2, 3)
    rng = np.random.default_rng(1)
    m1, m2 = (pc.field.random(rng, 16) for _ in range(2))
    assert encode(m1, pc).blocks.tolist() != encode(m2, pc).blocks.tolist()
    assert np.array_equal(encode(m1, pc).blocks ^ encode(m2, pc).blocks, encode(m1 ^ m2, pc).blocks)


def test_encode_matches_dense_oracle_and_decodes_from_3_4():
    pc = certified(4, 2, 3)
    sf = SlowField(8, 0x11B)
    p = pc.params
    rng = np.random.default_rng(2024)
    msg = pc.field.random(rng, p.k * p.alpha)
    cw = encode(msg, pc)

    # parity: solve H(:,P) y = H(:,K) m with the scalar oracle
    HK = pc.submatrix(range(1, p.k + 1)).tolist()
    HP = pc.submatrix(range(p.k + 1, p.n + 1)).tolist()
    rhs = [0] * len(HK)
    for i, row in enumerate(HK):
        for coef, v in zip(row, msg.tolist()):
            rhs[i] ^= sf.mul(coef, v)
    expected_parity = solve_oracle(sf, HP, rhs)
    assert cw.blocks[p.k :].reshape(-1).tolist() == expected_parity
    assert np.array_equal(cw.blocks[: p.k].reshape(-1), msg)

    back = reconstruct({3: cw.block(3), 4: cw.block(4)}, pc)
    assert back == cw


@pytest.mark.parametrize("nkd", ROUND_TRIP)
def test_round_trip_every_k_subset(nkd):
    pc = certified(*nkd)
    p = pc.params
    codec = Codec(pc)
    rng = np.random.default_rng(sum(nkd))
    msgs = pc.field.random(rng, (20, p.k * p.alpha))
    cws = codec.encode_stripes(msgs)
    assert np.array_equal(cws[:, : p.k].reshape(20, -1), msgs)
    assert not codec.residual_stripes(cws).any()
    for subset in itertools.combinations(range(1, p.n + 1), p.k):
        out = codec.reconstruct_stripes({j: cws[:, j - 1] for j in subset})
        assert np.array_equal(out, cws)


def test_all_nodes_is_identity_and_k_minus_1_fails():
    pc = certified(5, 2, 3)
    rng = np.random.default_rng(9)
    cw = encode(pc.field.random(rng, 16), pc)
    assert reconstruct({j: cw.block(j) for j in range(1, 6)}, pc) == cw
    with pytest.raises(InsufficientDataError):
        reconstruct({4: cw.block(4)}, pc)


def test_inconsistent_blocks_raise_corruption():
    pc = certified(5, 2, 3)
    rng = np.random.default_rng(10)
    cw = encode(pc.field.random(rng, 16), pc)
    blocks = {j: cw.block(j).copy() for j in (1, 2, 4)}
    blocks[4][3] ^= 0x10
    with pytest.raises(CorruptionError):
        reconstruct(blocks, pc)


@pytest.mark.parametrize("nkd", [(4, 2, 3), (5, 2, 3), (6, 3, 4)])
def test_single_symbol_flip_is_detected(nkd):
    pc = certified(*nkd)
    p = pc.params
    cw = encode(pc.field.random(np.random.default_rng(4), p.k * p.alpha), pc)
    flat = cw.flat()
    for pos in range(flat.size):
        bad = flat.copy()
        bad[pos] ^= 1
        assert parity_residual(bad.reshape(p.n, p.alpha), pc).any()


@pytest.mark.parametrize("nkd", ROUND_TRIP + [(6, 4, 5), (7, 4, 5), (9, 4, 6), (4, 2, 2)])
def test_code_dimension(nkd):
    pc = certified(*nkd)
    p = pc.params
    assert linalg.rank(pc.field, pc.dense) == (p.n - p.k) * p.alpha


def test_codeword_accessors():
    pc = certified(4, 2, 3)
    cw = encode(np.arange(8, dtype=np.uint8), pc)
    assert cw.n == 4
    assert cw.symbol(1, 3) == 3 and cw.symbol(2, 0) == 4
    assert isinstance(cw, Codeword)
