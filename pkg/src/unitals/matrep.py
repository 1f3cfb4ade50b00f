"""Matrix groups over small finite fields and their projective actions.

This module builds explicit generator matrices for the classical groups the
rest of the package consumes (SL(2,q), SU(3,q), Sp(4,q)), evaluates the
sesquilinear or alternating forms they preserve, closes generator sets into
full matrix groups, and converts matrix actions on projective points or on
raw vectors into permutation groups.

Conventions: matrices act on column vectors, so (M v)_i = sum_j M[i][j] v[j],
and composition of actions matches matrix multiplication.  Projective points
are normalized so their first nonzero coordinate is one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx, FieldElem, field_create, field_to_json, field_from_json
from .permgroup import DEFAULT_CAP, CapExceeded, PermGroup

Vector = tuple[FieldElem, ...]


@dataclass(frozen=True)
class Matrix:
    """A square matrix over one field context, rows of FieldElem tuples."""

    ctx: FieldCtx
    n: int
    rows: tuple[tuple[FieldElem, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise ValueError(f"expected {self.n}x{self.n} entries")
        for row in self.rows:
            for e in row:
                if e.ctx != self.ctx:
                    raise ValueError("matrix entry from a different field")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows) -> Matrix:
        tup = tuple(tuple(r) for r in rows)
        return cls(ctx, len(tup), tup)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> Matrix:
        return cls(
            ctx, n,
            tuple(
                tuple(ctx.one if i == j else ctx.zero for j in range(n))
                for i in range(n)
            ),
        )

    def __mul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            raise TypeError("can only multiply Matrix by Matrix")
        if other.ctx != self.ctx or other.n != self.n:
            raise ValueError("matrix shape or field mismatch")
        n = self.n
        rows = tuple(
            tuple(
                _dot(self.rows[i], tuple(other.rows[k][j] for k in range(n)))
                for j in range(n)
            )
            for i in range(n)
        )
        return Matrix(self.ctx, n, rows)

    def apply(self, vec: Vector) -> Vector:
        if len(vec) != self.n:
            raise ValueError("vector length does not match matrix size")
        return tuple(_dot(row, vec) for row in self.rows)

    def det(self) -> FieldElem:
        """Determinant by Gaussian elimination over the field."""
        ctx = self.ctx
        n = self.n
        work = [list(row) for row in self.rows]
        result = ctx.one
        for col in range(n):
            pivot_row = next(
                (r for r in range(col, n) if not work[r][col].is_zero()), None
            )
            if pivot_row is None:
                return ctx.zero
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
                result = -result
            pivot = work[col][col]
            result = result * pivot
            inv = pivot.inverse()
            for r in range(col + 1, n):
                factor = work[r][col] * inv
                if not factor.is_zero():
                    for c in range(col, n):
                        work[r][c] = work[r][c] - factor * work[col][c]
        return result


def _dot(row: tuple[FieldElem, ...], vec: Vector) -> FieldElem:
    acc = row[0] * vec[0]
    for a, b in zip(row[1:], vec[1:]):
        acc = acc + a * b
    return acc


@dataclass(frozen=True)
class FormSpec:
    """A bilinear or sesquilinear form identified by shape.

    kind "hermitian-antidiagonal": on GF(q^2)^n, B(x, y) = sum_i x_i *
    conj(y_{n-1-i}) with conj the q-power Frobenius; the Gram matrix is the
    antidiagonal identity.  kind "symplectic-standard": on GF(q)^n for even
    n, the alternating form pairing coordinates (0,1), (2,3), ... with
    B(x, y) = sum_t (x_{2t} y_{2t+1} - x_{2t+1} y_{2t}).
    """

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("hermitian-antidiagonal", "symplectic-standard"):
            raise ValueError(f"unknown form kind: {self.kind}")
        if self.kind == "symplectic-standard" and self.n % 2:
            raise ValueError("symplectic form needs even dimension")


def form_value(form: FormSpec, x: Vector, y: Vector) -> FieldElem:
    """Evaluate the form on a pair of vectors from the same context."""
    if len(x) != form.n or len(y) != form.n:
        raise ValueError("vector length does not match form dimension")
    ctx = x[0].ctx
    if form.kind == "hermitian-antidiagonal":
        if ctx.k % 2:
            raise ValueError("hermitian form needs a quadratic extension field")
        h = ctx.k // 2
        acc = ctx.zero
        for i in range(form.n):
            acc = acc + x[i] * y[form.n - 1 - i].frobenius(h)
        return acc
    acc = ctx.zero
    for t in range(form.n // 2):
        a, b = 2 * t, 2 * t + 1
        acc = acc + x[a] * y[b] - x[b] * y[a]
    return acc


def form_preserves(m: Matrix, form: FormSpec) -> bool:
    """Whether B(Mx, My) = B(x, y) for all x, y (checked on basis pairs)."""
    if m.n != form.n:
        raise ValueError("matrix size does not match form dimension")
    ctx = m.ctx
    basis = [
        tuple(ctx.one if i == j else ctx.zero for j in range(m.n))
        for i in range(m.n)
    ]
    images = [m.apply(e) for e in basis]
    for i in range(m.n):
        for j in range(m.n):
            if form_value(form, images[i], images[j]) != form_value(form, basis[i], basis[j]):
                return False
    return True


def proj_points(ctx: FieldCtx, n: int) -> list[Vector]:
    """Normalized projective points of PG(n-1, q), in a fixed order.

    Points are grouped by the position of the first nonzero coordinate;
    that coordinate is one and the later coordinates run through the field
    enumeration in lexicographic order.
    """
    points: list[Vector] = []
    for pivot in range(n):
        head = (ctx.zero,) * pivot + (ctx.one,)
        for rest in itertools.product(ctx.elements(), repeat=n - 1 - pivot):
            points.append(head + rest)
    return points


def normalize(vec: Vector) -> Vector:
    """Scale a nonzero vector so its first nonzero coordinate is one."""
    for c in vec:
        if not c.is_zero():
            inv = c.inverse()
            return tuple(inv * x for x in vec)
    raise ValueError("cannot normalize the zero vector")


def hermitian_isotropic_points(q: int) -> list[Vector]:
    """Projective points of PG(2, q^2) with B(x, x) = 0, hermitian B."""
    if q not in (2, 3, 4, 5):
        raise ValueError(f"unsupported field parameter q={q}")
    p, h = _split_prime_power(q)
    ctx = field_create(p, 2 * h)
    form = FormSpec("hermitian-antidiagonal", 3)
    return [pt for pt in proj_points(ctx, 3) if form_value(form, pt, pt).is_zero()]


def _split_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


def gen_sl2(q: int) -> list[Matrix]:
    """Generators of SL(2, q): a transvection, a torus element, a Weyl twist.

    The torus entry is the first multiplicative generator in enumeration
    order, so the output is reproducible.
    """
    p, k = _split_prime_power(q)
    ctx = field_create(p, k)
    one, zero = ctx.one, ctx.zero
    g = ctx.multiplicative_generator()
    return [
        Matrix.from_rows(ctx, [(one, one), (zero, one)]),
        Matrix.from_rows(ctx, [(g, zero), (zero, g.inverse())]),
        Matrix.from_rows(ctx, [(zero, one), (-one, zero)]),
    ]


def gen_su3(q: int) -> list[Matrix]:
    """Generators of SU(3, q) for the antidiagonal hermitian form.

    All unitriangular matrices [[1, a, b], [0, 1, -a^q], [0, 0, 1]] that
    preserve the form (exactly q^3 of them, found by exhaustive search over
    (a, b) pairs), plus the antidiagonal Weyl element diag-flip (1, -1, 1).
    """
    if q not in (2, 3, 4):
        raise ValueError(f"unsupported field parameter q={q}")
    p, h = _split_prime_power(q)
    ctx = field_create(p, 2 * h)
    form = FormSpec("hermitian-antidiagonal", 3)
    one, zero = ctx.one, ctx.zero
    mats = []
    for a in ctx.elements():
        c = -a.frobenius(h)
        for b in ctx.elements():
            cand = Matrix.from_rows(
                ctx, [(one, a, b), (zero, one, c), (zero, zero, one)]
            )
            if form_preserves(cand, form):
                mats.append(cand)
    if len(mats) != q**3:
        raise RuntimeError(f"expected {q**3} unitriangular generators, found {len(mats)}")
    weyl = Matrix.from_rows(
        ctx, [(zero, zero, one), (zero, -one, zero), (one, zero, zero)]
    )
    if not form_preserves(weyl, form):
        raise RuntimeError("Weyl element does not preserve the hermitian form")
    mats.append(weyl)
    return mats


def gen_sp4(q: int) -> list[Matrix]:
    """Generators of Sp(4, q) as symplectic transvections.

    Uses the transvections x -> x + B(x, v) v for v ranging over the four
    standard basis vectors and the all-ones vector, with B the standard
    alternating form.  For q in {2, 3} these five matrices generate the
    full symplectic group.
    """
    if q not in (2, 3):
        raise ValueError(f"unsupported field parameter q={q}")
    ctx = field_create(q, 1)
    form = FormSpec("symplectic-standard", 4)
    basis = [
        tuple(ctx.one if i == j else ctx.zero for j in range(4)) for i in range(4)
    ]
    directions = basis + [(ctx.one, ctx.one, ctx.one, ctx.one)]
    mats = []
    for v in directions:
        cols = []
        for e in basis:
            coeff = form_value(form, e, v)
            cols.append(tuple(e[i] + coeff * v[i] for i in range(4)))
        # cols[j] is the image of basis vector j; transpose into rows
        rows = tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
        t = Matrix(ctx, 4, rows)
        if not form_preserves(t, form):
            raise RuntimeError("transvection does not preserve the alternating form")
        mats.append(t)
    return mats


def matrix_closure(generators: list[Matrix], cap: int = DEFAULT_CAP) -> list[Matrix]:
    """All products of the generators, as a sorted list.

    Breadth-first closure over integer-encoded matrices using the field's
    operation tables, so the whole expansion runs inside numpy.  Raises
    CapExceeded if more than cap distinct matrices appear.  The result is
    sorted by row-major entry index, which fixes the output order.
    """
    if not generators:
        raise ValueError("need at least one generator")
    ctx = generators[0].ctx
    n = generators[0].n
    for g in generators:
        if g.ctx != ctx or g.n != n:
            raise ValueError("generators must share one field and size")
    add, mul = ctx.op_tables()
    elems = ctx.elements()

    def encode(m: Matrix) -> np.ndarray:
        return np.array(
            [[ctx.index_of(e) for e in row] for row in m.rows], dtype=np.int16
        )

    gmats = []
    seen_gen = set()
    for g in generators:
        enc = encode(g)
        key = enc.tobytes()
        if key not in seen_gen:
            seen_gen.add(key)
            gmats.append(enc)

    ident = encode(Matrix.identity(ctx, n))
    seen = {ident.tobytes()}
    collected = [ident]
    frontier = [ident]
    while frontier:
        stack = np.stack(frontier)
        fresh = []
        for g in gmats:
            # product[l, i, j] = sum_k stack[l, i, k] * g[k, j], via tables
            terms = mul[stack[:, :, :, None], g[None, None, :, :]]
            acc = terms[:, :, 0, :]
            for k in range(1, n):
                acc = add[acc, terms[:, :, k, :]]
            for row in acc:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"matrix closure exceeded cap of {cap} elements"
                        )
        collected.extend(fresh)
        frontier = fresh

    flat = np.stack(collected).reshape(len(collected), n * n)
    order = np.lexsort(flat.T[::-1])
    out = []
    for idx in order:
        entries = flat[idx]
        rows = tuple(
            tuple(elems[int(entries[i * n + j])] for j in range(n))
            for i in range(n)
        )
        out.append(Matrix(ctx, n, rows))
    return out


def mat_to_perm(m: Matrix, points: list[Vector]) -> tuple[int, ...]:
    """Permutation induced by m on a list of normalized points.

    Raises ValueError if some image leaves the point list or the action
    fails to be a bijection (for instance when m is singular).
    """
    index = {pt: i for i, pt in enumerate(points)}
    return _mat_perm(m, points, index)


def _mat_perm(
    m: Matrix, points: list[Vector], index: dict[Vector, int]
) -> tuple[int, ...]:
    images = []
    for pt in points:
        img = normalize(m.apply(pt))
        pos = index.get(img)
        if pos is None:
            raise ValueError("matrix does not stabilize the point set")
        images.append(pos)
    perm = tuple(images)
    if len(set(perm)) != len(points):
        raise ValueError("matrix action on the point set is not a bijection")
    return perm


def projectivize(
    generators: list[Matrix], points: list[Vector], cap: int = DEFAULT_CAP
) -> PermGroup:
    """Permutation group induced on the given projective points."""
    if not generators:
        raise ValueError("need at least one generator")
    index = {pt: i for i, pt in enumerate(points)}
    if len(index) != len(points):
        raise ValueError("points must be distinct")
    perms = [_mat_perm(g, points, index) for g in generators]
    return PermGroup(len(points), perms, cap=cap)


def vector_action(generators: list[Matrix], cap: int = DEFAULT_CAP) -> PermGroup:
    """Permutation group of the generators acting on all vectors of ctx^n.

    The linear action on the full vector space is faithful, so this group
    is an isomorphic permutation copy of the matrix group; useful as an
    independent order check against the matrix closure.
    """
    if not generators:
        raise ValueError("need at least one generator")
    ctx = generators[0].ctx
    n = generators[0].n
    vectors = list(itertools.product(ctx.elements(), repeat=n))
    index = {v: i for i, v in enumerate(vectors)}
    perms = []
    for g in generators:
        images = [index[g.apply(v)] for v in vectors]
        perm = tuple(images)
        if len(set(perm)) != len(vectors):
            raise ValueError("matrix is singular: vector action not bijective")
        perms.append(perm)
    return PermGroup(len(vectors), perms, cap=cap)


def matrix_to_json(m: Matrix) -> dict:
    return {
        "field": field_to_json(m.ctx),
        "n": m.n,
        "entries": [[list(e.coeffs) for e in row] for row in m.rows],
    }


def matrix_from_json(doc: dict) -> Matrix:
    try:
        ctx = field_from_json(doc["field"])
        n = int(doc["n"])
        entries = doc["entries"]
        rows = tuple(
            tuple(ctx.elem(tuple(int(c) for c in cell)) for cell in row)
            for row in entries
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix document: {exc}") from exc
    return Matrix(ctx, n, rows)
