"""Finite field construction and arithmetic."""

import random

import pytest

from unitals.gf import (
    MAX_FIELD_SIZE,
    field_create,
    field_for_order,
    field_from_json,
    field_to_json,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81]


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    ctx = field_for_order(q)
    elems = ctx.elements()
    assert len(elems) == q
    zero, one = ctx.zero, ctx.one
    for a in elems:
        assert a + zero == a
        assert a * one == a
        assert a * zero == zero
        assert a + (-a) == zero
        if not a.is_zero():
            assert a * a.inverse() == one
    # associativity and distributivity on a seeded random sample
    rng = random.Random(q)
    for _ in range(200):
        a, b, c = (elems[rng.randrange(q)] for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_multiplicative_group_cyclic(q):
    ctx = field_for_order(q)
    g = ctx.multiplicative_generator()
    seen = set()
    x = ctx.one
    for _ in range(q - 1):
        seen.add(x.coeffs)
        x = x * g
    assert x == ctx.one
    assert len(seen) == q - 1


def test_canonical_moduli():
    # lexicographically least monic irreducible, low-degree coefficients first
    assert field_create(2, 2).modulus == (1, 1, 1)
    assert field_create(3, 2).modulus == (1, 0, 1)
    assert field_create(2, 3).modulus == (1, 0, 1, 1)
    assert field_create(5, 1).modulus == (0, 1)


def test_prime_field_matches_int_arithmetic():
    ctx = field_create(7, 1)
    for a in range(7):
        for b in range(7):
            x, y = ctx.from_int(a), ctx.from_int(b)
            assert (x + y).coeffs[0] == (a + b) % 7
            assert (x * y).coeffs[0] == (a * b) % 7


@pytest.mark.parametrize("q", [4, 9, 16, 27])
def test_frobenius_is_field_automorphism(q):
    ctx = field_for_order(q)
    elems = ctx.elements()
    rng = random.Random(q + 1)
    for _ in range(100):
        a = elems[rng.randrange(q)]
        b = elems[rng.randrange(q)]
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    # iterating k times is the identity
    for a in elems:
        assert a.frobenius(ctx.k) == a


def test_frobenius_fixes_prime_subfield():
    ctx = field_create(3, 2)
    for n in range(3):
        a = ctx.from_int(n)
        assert a.frobenius() == a


def test_pow_and_inverse():
    ctx = field_for_order(8)
    for a in ctx.elements():
        if a.is_zero():
            with pytest.raises(ZeroDivisionError):
                a.inverse()
            continue
        assert a ** 7 == ctx.one
        assert a ** -1 == a.inverse()
        assert a ** 0 == ctx.one


def test_enumeration_order_starts_at_zero():
    ctx = field_for_order(9)
    elems = ctx.elements()
    assert elems[0] == ctx.zero
    # high-degree coefficient varies fastest, so 1 = (1, 0) comes at index p
    assert [e.coeffs for e in elems[:4]] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert elems[3] == ctx.one


def test_op_tables_agree_with_elementwise():
    ctx = field_for_order(9)
    add, mul = ctx.op_tables()
    elems = ctx.elements()
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            assert elems[add[i, j]] == a + b
            assert elems[mul[i, j]] == a * b


def test_field_rejects_bad_orders():
    with pytest.raises(ValueError):
        field_for_order(6)
    with pytest.raises(ValueError):
        field_for_order(1)
    with pytest.raises(ValueError):
        field_create(4, 1)
    with pytest.raises(ValueError):
        field_create(2, 33)  # exceeds MAX_FIELD_SIZE
    assert MAX_FIELD_SIZE == 2**32


def test_mixed_field_arithmetic_rejected():
    a = field_for_order(4).one
    b = field_for_order(8).one
    with pytest.raises(ValueError):
        a + b


def test_json_round_trip():
    for q in (5, 9, 64):
        ctx = field_for_order(q)
        doc = field_to_json(ctx)
        again = field_from_json(doc)
        assert again == ctx


def test_json_rejects_noncanonical_modulus():
    doc = field_to_json(field_create(2, 2))
    doc["modulus"] = [1, 0, 1]  # reducible over GF(2): (x+1)^2
    with pytest.raises(ValueError):
        field_from_json(doc)
