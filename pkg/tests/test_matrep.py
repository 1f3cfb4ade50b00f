"""Matrices over finite fields, forms, and projective actions."""

import random

import pytest

from unitals.gf import field_for_order
from unitals.matrep import (
    FormSpec,
    Matrix,
    form_preserves,
    form_value,
    gen_sl2,
    gen_sp4,
    gen_su3,
    hermitian_isotropic_points,
    mat_to_perm,
    matrix_closure,
    matrix_from_json,
    matrix_to_json,
    normalize,
    proj_points,
    projectivize,
    vector_action,
)
from unitals.permgroup import CapExceeded


def _random_matrix(ctx, n, rng):
    elems = ctx.elements()
    return Matrix.from_rows(
        ctx, [[elems[rng.randrange(len(elems))] for _ in range(n)] for _ in range(n)]
    )


def test_matrix_multiplication_associative():
    ctx = field_for_order(4)
    rng = random.Random(7)
    for _ in range(50):
        a = _random_matrix(ctx, 3, rng)
        b = _random_matrix(ctx, 3, rng)
        c = _random_matrix(ctx, 3, rng)
        assert (a * b) * c == a * (b * c)


def test_apply_is_column_vector_action():
    # (M v)_i = sum_j M[i][j] v[j], checked against an explicit case mod 5
    ctx = field_for_order(5)
    m = Matrix.from_rows(
        ctx, [[ctx.from_int(x) for x in row] for row in [[1, 2], [3, 4]]]
    )
    v = (ctx.from_int(1), ctx.from_int(2))
    out = m.apply(v)
    assert [e.coeffs[0] for e in out] == [(1 + 4) % 5, (3 + 8) % 5]


def test_apply_compatible_with_product():
    ctx = field_for_order(9)
    rng = random.Random(11)
    elems = ctx.elements()
    for _ in range(50):
        a = _random_matrix(ctx, 3, rng)
        b = _random_matrix(ctx, 3, rng)
        v = tuple(elems[rng.randrange(9)] for _ in range(3))
        assert (a * b).apply(v) == a.apply(b.apply(v))


def test_det_multiplicative():
    ctx = field_for_order(8)
    rng = random.Random(3)
    for _ in range(50):
        a = _random_matrix(ctx, 3, rng)
        b = _random_matrix(ctx, 3, rng)
        assert (a * b).det() == a.det() * b.det()
    assert Matrix.identity(ctx, 4).det() == ctx.one


def test_proj_points_counts():
    # (q^n - 1)/(q - 1) points, pivot coordinate normalized to one
    for q, n, expect in [(2, 3, 7), (3, 3, 13), (4, 3, 21), (3, 4, 40), (8, 2, 9)]:
        ctx = field_for_order(q)
        pts = proj_points(ctx, n)
        assert len(pts) == expect
        assert len({tuple(p) for p in pts}) == expect
        for p in pts:
            lead = next(i for i, c in enumerate(p) if not c.is_zero())
            assert p[lead] == ctx.one
            assert normalize(p) == tuple(p)


def test_normalize_scales_to_unit_pivot():
    ctx = field_for_order(9)
    elems = ctx.elements()
    rng = random.Random(5)
    for _ in range(100):
        v = tuple(elems[rng.randrange(9)] for _ in range(3))
        if all(c.is_zero() for c in v):
            continue
        w = normalize(v)
        lead = next(i for i, c in enumerate(w) if not c.is_zero())
        assert w[lead] == ctx.one
        # a nonzero scalar multiple normalizes to the same representative
        s = elems[rng.randrange(1, 9)]
        assert normalize(tuple(s * c for c in v)) == w


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_hermitian_isotropic_point_count(q):
    pts = hermitian_isotropic_points(q)
    assert len(pts) == q**3 + 1
    form = FormSpec("hermitian-antidiagonal", 3)
    for p in pts:
        assert form_value(form, p, p).is_zero()


def test_hermitian_form_sesquilinear():
    ctx = field_for_order(9)
    form = FormSpec("hermitian-antidiagonal", 3)
    elems = ctx.elements()
    rng = random.Random(17)
    for _ in range(50):
        x = tuple(elems[rng.randrange(9)] for _ in range(3))
        y = tuple(elems[rng.randrange(9)] for _ in range(3))
        s = elems[rng.randrange(9)]
        lhs = form_value(form, tuple(s * c for c in x), y)
        assert lhs == s * form_value(form, x, y)
        # conjugate symmetry: B(y, x) = B(x, y)^q
        assert form_value(form, y, x) == form_value(form, x, y).frobenius(ctx.k // 2)


def test_hermitian_form_needs_square_order():
    form = FormSpec("hermitian-antidiagonal", 3)
    ctx = field_for_order(8)  # k = 3 odd, no conjugation available
    x = (ctx.one, ctx.zero, ctx.zero)
    with pytest.raises(ValueError):
        form_value(form, x, x)


def test_symplectic_form_alternating():
    ctx = field_for_order(3)
    form = FormSpec("symplectic-standard", 4)
    elems = ctx.elements()
    rng = random.Random(23)
    for _ in range(100):
        x = tuple(elems[rng.randrange(3)] for _ in range(4))
        y = tuple(elems[rng.randrange(3)] for _ in range(4))
        assert form_value(form, x, x).is_zero()
        assert form_value(form, x, y) == -form_value(form, y, x)


def test_formspec_validation():
    with pytest.raises(ValueError):
        FormSpec("symplectic-standard", 3)  # odd dimension
    with pytest.raises(ValueError):
        FormSpec("euclidean", 3)


@pytest.mark.parametrize("q,order", [(2, 6), (3, 24), (4, 60), (5, 120), (8, 504)])
def test_sl2_closure_order(q, order):
    mats = matrix_closure(gen_sl2(q))
    assert len(mats) == order
    ctx = mats[0].ctx
    assert all(m.det() == ctx.one for m in mats)


@pytest.mark.parametrize("q,order", [(2, 216), (3, 6048)])
def test_su3_closure_order(q, order):
    mats = matrix_closure(gen_su3(q))
    assert len(mats) == order
    form = FormSpec("hermitian-antidiagonal", 3)
    for m in mats[:50]:
        assert form_preserves(m, form)


def test_su3_generators_preserve_form():
    form = FormSpec("hermitian-antidiagonal", 3)
    for q in (2, 3, 4):
        for g in gen_su3(q):
            assert form_preserves(g, form)
            assert g.det() == g.ctx.one


def test_sp4_generators_preserve_form():
    form = FormSpec("symplectic-standard", 4)
    for q in (2, 3):
        for g in gen_sp4(q):
            assert form_preserves(g, form)


def test_matrix_closure_is_closed_under_product():
    mats = matrix_closure(gen_sl2(3))
    index = {m.rows: None for m in mats}
    rng = random.Random(29)
    for _ in range(100):
        a = mats[rng.randrange(len(mats))]
        b = mats[rng.randrange(len(mats))]
        assert (a * b).rows in index


def test_matrix_closure_cap():
    with pytest.raises(CapExceeded):
        matrix_closure(gen_sl2(8), cap=100)


def test_mat_to_perm_requires_invariance():
    pts = hermitian_isotropic_points(2)
    # a matrix that moves isotropic points off the set
    elems = field_for_order(4).elements()
    ctx4 = elems[0].ctx
    bad = Matrix.from_rows(
        ctx4,
        [
            [ctx4.one, elems[1], ctx4.zero],
            [ctx4.zero, ctx4.one, ctx4.zero],
            [ctx4.zero, ctx4.zero, ctx4.one],
        ],
    )
    with pytest.raises(ValueError):
        mat_to_perm(bad, pts)


def test_projectivize_psl28_degree_and_order():
    group = projectivize(gen_sl2(8), proj_points(field_for_order(8), 2))
    assert group.degree == 9
    assert group.order() == 504
    assert group.is_transitive()


def test_vector_action_faithful_for_su32():
    group = vector_action(gen_su3(2))
    assert group.degree == 64
    assert group.order() == 216


def test_matrix_json_round_trip():
    rng = random.Random(31)
    ctx = field_for_order(9)
    for _ in range(10):
        m = _random_matrix(ctx, 3, rng)
        assert matrix_from_json(matrix_to_json(m)) == m
