from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minimalcodes.gf2core import (DEFAULT_MODULI, BitVector, GF2Matrix, GF2t, clmul, dot,
                                  dual_basis, gf2t_mul, independent_rows, is_irreducible,
                                  poly_mod, rank, row_reduce)


def long_division_remainder(a: int, m: int) -> int:
    """Schoolbook division on coefficient lists, highest degree first."""
    num = [int(c) for c in bin(a)[2:]] if a else [0]
    den = [int(c) for c in bin(m)[2:]]
    while len(num) >= len(den):
        if num[0]:
            for i, c in enumerate(den):
                num[i] ^= c
        num.pop(0)
    return int("".join(map(str, num)) or "0", 2)


def schoolbook_product(a: int, b: int) -> int:
    coeffs = [0] * (a.bit_length() + b.bit_length() + 1)
    for i in range(a.bit_length()):
        for j in range(b.bit_length()):
            coeffs[i + j] ^= ((a >> i) & 1) & ((b >> j) & 1)
    return sum(c << k for k, c in enumerate(coeffs))


def brute_rank(rows: list[int]) -> int:
    size = len({np.bitwise_xor.reduce([r for j, r in enumerate(rows) if (m >> j) & 1] or [0])
                for m in range(1 << len(rows))})
    return size.bit_length() - 1


# ---------------------------------------------------------------------------
# bit vectors


def test_bitvector_string_is_msb_first():
    v = BitVector.from_string("0101")
    assert v.value == 5 and v.n == 4
    assert v[0] == 1 and v[1] == 0 and v[2] == 1
    assert str(v) == "0101"


def test_bitvector_rejects_overflow():
    with pytest.raises(ValueError):
        BitVector(16, 4)


def test_dot_examples():
    assert dot(BitVector.from_string("0101"), BitVector.from_string("0111")) == 0
    assert dot(BitVector.from_string("1111"), BitVector.from_string("1000")) == 1


def test_dot_dimension_mismatch():
    with pytest.raises(ValueError):
        dot(BitVector(1, 3), BitVector(1, 4))


@given(st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1),
                        st.integers(0, (1 << n) - 1))))
def test_dot_is_bilinear(args):
    n, x, y, z = args
    X, Y, Z = BitVector(x, n), BitVector(y, n), BitVector(z, n)
    assert dot(X + Y, Z) == dot(X, Z) ^ dot(Y, Z)
    assert dot(X, Y) == dot(Y, X)
    assert dot(X, Y) == sum(X[i] * Y[i] for i in range(n)) % 2


# ---------------------------------------------------------------------------
# polynomials and fields


@given(st.integers(0, 1 << 20), st.integers(0, 1 << 12))
def test_clmul_matches_schoolbook(a, b):
    assert clmul(a, b) == schoolbook_product(a, b)


@given(st.integers(0, 1 << 24), st.integers(2, 1 << 10))
def test_poly_mod_matches_long_division(a, m):
    assert poly_mod(a, m) == long_division_remainder(a, m)


def test_irreducibility_known_cases():
    assert is_irreducible(0b111) and is_irreducible(0b1011) and is_irreducible(0b10011)
    assert not is_irreducible(0b101)  # (x + 1)^2
    assert not is_irreducible(0b1111)  # (x + 1)(x^2 + x + 1)
    # there are 3 irreducible quartics and 6 irreducible quintics over F_2
    assert sum(is_irreducible(p) for p in range(16, 32)) == 3
    assert sum(is_irreducible(p) for p in range(32, 64)) == 6


@pytest.mark.parametrize("t", sorted(DEFAULT_MODULI))
def test_default_moduli_are_irreducible(t):
    assert is_irreducible(DEFAULT_MODULI[t])
    assert DEFAULT_MODULI[t].bit_length() - 1 == t


def test_gf8_examples():
    m = 0b1011
    assert gf2t_mul(0b010, 0b100, m) == 0b011  # x * x^2 = x + 1
    assert gf2t_mul(1, 0b101, m) == 0b101
    assert gf2t_mul(0, 0b111, m) == 0


def test_gf2t_rejects_bad_modulus():
    with pytest.raises(ValueError):
        GF2t(3, 0b1111)
    with pytest.raises(ValueError):
        GF2t(3, 0b111)


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_field_axioms_exhaustive(t):
    field = GF2t(t)
    els = list(field.elements())
    table = np.array([[field.mul(a, b) for b in els] for a in els])
    assert np.array_equal(table, table.T)
    # each nonzero row is a permutation of the nonzero elements: no zero divisors
    for a in els[1:]:
        assert sorted(table[a, 1:]) == els[1:]
        assert field.mul(a, field.inv(a)) == 1
    for a, b, c in itertools.product(els[:6], repeat=3):
        assert field.mul(a, b ^ c) == field.mul(a, b) ^ field.mul(a, c)
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))


def test_multiplicative_group_is_cyclic_of_order_q_minus_1():
    field = GF2t(4)
    for a in range(1, 16):
        assert field.pow(a, 15) == 1
    orders = {min(e for e in range(1, 16) if field.pow(a, e) == 1) for a in range(1, 16)}
    assert 15 in orders


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF2t(3).inv(0)


# ---------------------------------------------------------------------------
# matrices


def test_rank_examples():
    assert rank(GF2Matrix.identity(5)) == 5
    assert rank(GF2Matrix.from_array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert rank(GF2Matrix((), 4)) == 0


@settings(max_examples=200)
@given(st.lists(st.integers(0, (1 << 10) - 1), min_size=0, max_size=9))
def test_rank_matches_span_size(rows):
    assert rank(GF2Matrix(tuple(rows), 10)) == brute_rank(rows)


@given(st.lists(st.integers(0, (1 << 8) - 1), min_size=1, max_size=10))
def test_row_reduce_preserves_span_and_is_reduced(rows):
    m = GF2Matrix(tuple(rows), 8)
    reduced, pivots = row_reduce(m)
    assert set(GF2Matrix(tuple(reduced), 8).span().tolist()) == set(m.span().tolist())
    for r, p in zip(reduced, pivots):
        assert (r >> p) & 1 and r & ((1 << p) - 1) == 0
        assert sum((other >> p) & 1 for other in reduced) == 1


@given(st.lists(st.integers(0, (1 << 8) - 1), max_size=10))
def test_independent_rows_keep_order_and_rank(rows):
    kept = independent_rows(rows)
    assert len(kept) == rank(GF2Matrix(tuple(rows), 8))
    it = iter(rows)
    assert all(any(k == r for r in it) for k in kept)  # subsequence


@given(st.lists(st.integers(1, (1 << 8) - 1), min_size=1, max_size=6))
def test_dual_basis_is_exact_orthogonal_complement(rows):
    kept = independent_rows(rows)
    basis = GF2Matrix(tuple(kept), 8)
    dual = dual_basis(basis)
    assert rank(dual) == 8 - len(kept)
    span = set(basis.span().tolist())
    perp = {w for w in range(256) if all((w & b).bit_count() % 2 == 0 for b in span)}
    assert set(dual.span().tolist()) == perp


def test_dual_basis_rejects_dependent_rows():
    with pytest.raises(ValueError):
        dual_basis(GF2Matrix((3, 5, 6), 3))


def test_contains():
    m = GF2Matrix((0b011, 0b110), 3)
    assert m.contains(0b101) and not m.contains(0b001)


def test_from_array_round_trip():
    a = np.array([[1, 0, 1, 1], [0, 1, 1, 0]], dtype=np.uint8)
    assert np.array_equal(GF2Matrix.from_array(a).to_array(), a)
