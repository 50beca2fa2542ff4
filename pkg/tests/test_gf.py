from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from msrcode.errors import ParameterError
from msrcode.gf import Field, clmul_mod, get_field, is_irreducible
from oracles import brute_inverse, slow_mul


def test_add_examples(gf8):
    assert gf8.add(0x03, 0x03) == 0
    assert gf8.add(0x57, 0x83) == 0xD4
    for x in (0, 1, 0x80, 0xFF):
        assert gf8.add(x, 0) == x


def test_mul_and_inv_examples(gf8):
    # inverse of 0x02 found by exhaustive search in the oracle
    assert brute_inverse(0x02, 0x11B, 8) == 0x8D
    assert gf8.mul(0x02, 0x8D) == 0x01
    assert gf8.inv(0x8D) == 0x02
    assert gf8.inv(1) == 1
    for x in (0, 1, 0x53, 0xFF):
        assert gf8.mul(x, 1) == x
        assert gf8.mul(x, 0) == 0


def test_inv_zero_raises(gf8, gf16):
    with pytest.raises(ZeroDivisionError):
        gf8.inv(0)
    with pytest.raises(ZeroDivisionError):
        gf16.inv(0)


def test_mul_table_matches_bitwise_oracle_exhaustively(gf8):
    a = np.arange(256)[:, None]
    b = np.arange(256)[None, :]
    table = gf8.mul_array(a, b)
    for x in range(256):
        for y in range(256):
            assert table[x, y] == slow_mul(x, y, 0x11B, 8)


def test_field_axioms_exhaustive_width8(gf8):
    v = np.arange(256)
    ab = gf8.mul_array(v[:, None], v[None, :])
    assert np.array_equal(ab, ab.T)
    for a in range(256):
        # (a*b)*c == a*(b*c) and a*(b+c) == a*b + a*c for all b, c
        left = gf8.mul_array(ab[a][:, None], v[None, :])
        right = gf8.mul_array(a, ab)
        assert np.array_equal(left, right)
        dist = gf8.mul_array(a, v[:, None] ^ v[None, :])
        assert np.array_equal(dist, ab[a][:, None] ^ ab[a][None, :])


def test_inverse_exhaustive_width8(gf8):
    for a in range(1, 256):
        assert gf8.mul(a, gf8.inv(a)) == 1
    nz = np.arange(1, 256)
    assert np.all(gf8.mul_array(nz, gf8.inv_array(nz)) == 1)


def test_field_axioms_sampled_width16(gf16):
    rng = np.random.default_rng(20240601)
    a, b, c = (rng.integers(0, 1 << 16, size=100_000) for _ in range(3))
    m = gf16.mul_array
    assert np.array_equal(m(a, b), m(b, a))
    assert np.array_equal(m(m(a, b), c), m(a, m(b, c)))
    assert np.array_equal(m(a, b ^ c), m(a, b) ^ m(a, c))
    assert np.array_equal((a ^ b) ^ c, a ^ (b ^ c))
    nz = a[a != 0]
    assert np.all(m(nz, gf16.inv_array(nz)) == 1)


def test_width16_matches_bitwise_oracle(gf16):
    rng = np.random.default_rng(7)
    for a, b in rng.integers(0, 1 << 16, size=(500, 2)):
        assert gf16.mul(int(a), int(b)) == slow_mul(int(a), int(b), 0x1100B, 16)


@given(st.integers(0, 255), st.integers(0, 255))
def test_add_is_involution(x, y):
    f = get_field(8)
    assert f.add(f.add(x, y), y) == x


@given(st.integers(1, 0xFFFF), st.integers(0, 20))
def test_pow_matches_repeated_mul(a, e):
    f = get_field(16)
    acc = 1
    for _ in range(e):
        acc = f.mul(acc, a)
    assert f.pow(a, e) == acc


def test_irreducibility():
    assert is_irreducible(0x11B)
    assert is_irreducible(0x11D)
    assert is_irreducible(0x1100B)
    assert not is_irreducible(0x100)  # x^8
    assert not is_irreducible(0x105)  # (x^4 + x + 1)^2
    with pytest.raises(ParameterError):
        Field(8, 0x100)
    with pytest.raises(ParameterError):
        Field(12)


def test_alternate_polynomial_builds_consistent_tables():
    f = Field(8, 0x11D)
    assert f.generator == 2
    for a in (1, 2, 0x53, 0xCA):
        for b in (3, 0x8D, 0xFF):
            assert f.mul(a, b) == clmul_mod(a, b, 0x11D, 8)


def test_scale_handles_zero_and_one(gf8):
    arr = np.array([0, 1, 2, 0xFF], dtype=np.uint8)
    assert not gf8.scale(0, arr).any()
    assert np.array_equal(gf8.scale(1, arr), arr)
    assert gf8.scale(3, np.uint8(7)).shape == ()
