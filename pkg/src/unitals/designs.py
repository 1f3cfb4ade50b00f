"""Finite linear spaces and the unitals this package constructs.

A linear space here is an incidence structure on points {0, ..., v-1} in
which every pair of distinct points lies on exactly one line.  The module
checks that axiom with explicit witnesses, extracts the (b, v, k, r)
parameters of uniform spaces, finds the primes dividing both b and v - 1,
and builds two families of unitals together with their automorphism groups:
the hermitian unitals on q^3 + 1 isotropic points, and the 28-point unital
acted on by PSL(2, 8).

Lines produced by the builders are sorted point tuples, listed in
lexicographic order without duplicates.  User-supplied structures are kept
exactly as given and judged by is_linear_space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .gf import field_create
from .matrep import (
    gen_sl2,
    gen_su3,
    hermitian_isotropic_points,
    normalize,
    proj_points,
    projectivize,
)
from .permgroup import (
    DEFAULT_CAP,
    Perm,
    PermGroup,
    compose,
    conjugate,
    fixed_points,
    inverse,
)


@dataclass(frozen=True)
class IncidenceStructure:
    """Points 0..v-1 and a tuple of lines, each a tuple of point indices."""

    v: int
    lines: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.v < 1:
            raise ValueError("need at least one point")


@dataclass(frozen=True)
class LinearSpaceReport:
    """Outcome of the pair-coverage check.

    status is "pass", "fail" (a point pair on zero or several lines), or
    "malformed" (entries that do not even describe an incidence structure:
    out-of-range points, unsorted or repeated entries, lines shorter than
    two points).  For "fail", witness_pair is the lexicographically first
    bad pair and covering_lines lists the indices of all lines through it.
    """

    status: str
    problem: str | None = None
    witness_pair: tuple[int, int] | None = None
    covering_lines: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class SpaceParams:
    """Parameters of a uniform linear space: b lines, v points, k, r."""

    b: int
    v: int
    k: int
    r: int


class NonUniformSpace(ValueError):
    """Raised when a linear space has unequal line sizes or point degrees."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class CnpReport:
    """Outcome of the normalizer fixed-point check for a significant prime.

    holds is true when the normalizer of the chosen Sylow p-subgroup fixes
    at least one point; witness is the smallest such point.
    """

    holds: bool
    p: int
    sylow_order: int
    normalizer_order: int
    witness: int | None

    def __bool__(self) -> bool:
        return self.holds


def is_linear_space(s: IncidenceStructure) -> LinearSpaceReport:
    """Check that every pair of distinct points lies on exactly one line."""
    for idx, line in enumerate(s.lines):
        if len(line) < 2:
            return LinearSpaceReport("malformed", f"line {idx} has fewer than 2 points")
        prev = -1
        for pt in line:
            if not isinstance(pt, int) or not 0 <= pt < s.v:
                return LinearSpaceReport(
                    "malformed", f"line {idx} contains out-of-range point {pt!r}"
                )
            if pt <= prev:
                return LinearSpaceReport(
                    "malformed", f"line {idx} is not strictly ascending"
                )
            prev = pt
    coverage: dict[tuple[int, int], list[int]] = {}
    for idx, line in enumerate(s.lines):
        for pair in itertools.combinations(line, 2):
            coverage.setdefault(pair, []).append(idx)
    for pair in itertools.combinations(range(s.v), 2):
        lines_through = coverage.get(pair, [])
        if len(lines_through) != 1:
            return LinearSpaceReport(
                "fail",
                f"pair {pair} lies on {len(lines_through)} lines",
                witness_pair=pair,
                covering_lines=tuple(lines_through),
            )
    return LinearSpaceReport("pass")


def space_params(s: IncidenceStructure) -> SpaceParams:
    """(b, v, k, r) of a uniform linear space.

    Requires is_linear_space to pass.  Raises NonUniformSpace when two
    lines have different sizes or two points different degrees; the
    offending pair is attached as the witness.  The counting identities
    b*k = v*r and r*(k-1) = v - 1 and the bound b >= v are rechecked and
    cannot fail for a genuine uniform linear space.
    """
    report = is_linear_space(s)
    if not report:
        raise ValueError(f"not a linear space: {report.problem}")
    if not s.lines:
        raise NonUniformSpace("space has no lines", ("no-lines",))
    k = len(s.lines[0])
    for idx, line in enumerate(s.lines):
        if len(line) != k:
            raise NonUniformSpace(
                f"lines 0 and {idx} have sizes {k} and {len(line)}",
                ("line-size", 0, idx),
            )
    degree = [0] * s.v
    for line in s.lines:
        for pt in line:
            degree[pt] += 1
    r = degree[0]
    for pt in range(1, s.v):
        if degree[pt] != r:
            raise NonUniformSpace(
                f"points 0 and {pt} lie on {r} and {degree[pt]} lines",
                ("point-degree", 0, pt),
            )
    b = len(s.lines)
    if b * k != s.v * r or r * (k - 1) != s.v - 1 or b < s.v:
        raise RuntimeError(
            f"parameter identities violated for (b,v,k,r)=({b},{s.v},{k},{r})"
        )
    return SpaceParams(b=b, v=s.v, k=k, r=r)


def significant_primes(s: IncidenceStructure) -> list[int]:
    """Primes dividing both the line count b and v - 1, ascending."""
    params = space_params(s)
    g = gcd(params.b, params.v - 1)
    out = []
    d = 2
    while d * d <= g:
        if g % d == 0:
            out.append(d)
            while g % d == 0:
                g //= d
        d += 1
    if g > 1:
        out.append(g)
    return out


def flags(s: IncidenceStructure) -> list[tuple[int, int]]:
    """All (line index, point) incidences, ordered by line then point."""
    return [(i, pt) for i, line in enumerate(s.lines) for pt in line]


def line_action(s: IncidenceStructure, group: PermGroup) -> PermGroup:
    """The action induced on the line set.

    Raises ValueError when a generator fails to permute the lines, which
    means the group is not an automorphism group of the structure.
    """
    if group.degree != s.v:
        raise ValueError("group degree does not match point count")
    return group.induced_action([tuple(line) for line in s.lines])


def flag_action(s: IncidenceStructure, group: PermGroup) -> PermGroup:
    """The action induced on (line, point) flags."""
    la = line_action(s, group)
    all_flags = flags(s)
    index = {f: i for i, f in enumerate(all_flags)}
    perms = []
    for g, lg in zip(group.generators, la.generators):
        images = [index[(lg[l], g[pt])] for l, pt in all_flags]
        perms.append(tuple(images))
    return PermGroup(len(all_flags), perms, cap=group.cap)


def check_line_transitive(s: IncidenceStructure, group: PermGroup) -> bool:
    return line_action(s, group).is_transitive()


def check_flag_transitive(s: IncidenceStructure, group: PermGroup) -> bool:
    return flag_action(s, group).is_transitive()


def cnp_check(s: IncidenceStructure, group: PermGroup, p: int) -> CnpReport:
    """Does the normalizer of a Sylow p-subgroup fix a point?

    p must be a significant prime of the space and the group must act
    line-transitively on it; both are preconditions and raise ValueError.
    The Sylow subgroup and its normalizer are computed deterministically,
    and the report carries the smallest common fixed point as witness.
    """
    if p not in significant_primes(s):
        raise ValueError(f"{p} is not a significant prime of this space")
    if not check_line_transitive(s, group):
        raise ValueError("group is not line-transitive on this space")
    sylow = group.sylow_subgroup(p)
    normalizer = group.normalizer(sylow)
    common = set(range(group.degree))
    for g in normalizer.generators:
        common &= set(fixed_points(g))
    witness = min(common) if common else None
    return CnpReport(
        holds=witness is not None,
        p=p,
        sylow_order=sylow.order(),
        normalizer_order=normalizer.order(),
        witness=witness,
    )


def _canonical_lines(raw: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(tuple(sorted(line)) for line in raw)))


def build_hermitian_unital(q: int, cap: int = DEFAULT_CAP) -> tuple[IncidenceStructure, PermGroup]:
    """The hermitian unital on the q^3 + 1 isotropic points, with PSU(3, q).

    Lines are the intersections of size at least two between the isotropic
    point set and the lines of the ambient projective plane; the remaining
    plane lines are tangents meeting the unital in a single point.  Point
    indices refer to the isotropic points in their construction order.
    """
    if q not in (2, 3, 4):
        raise ValueError(f"unsupported field parameter q={q}")
    iso = hermitian_isotropic_points(q)
    index = {pt: i for i, pt in enumerate(iso)}
    ctx = iso[0][0].ctx
    raw = []
    for dual in proj_points(ctx, 3):
        hits = []
        for pt in iso:
            acc = ctx.zero
            for a, b in zip(pt, dual):
                acc = acc + a * b
            if acc.is_zero():
                hits.append(index[pt])
        if len(hits) >= 2:
            raw.append(tuple(sorted(hits)))
    structure = IncidenceStructure(len(iso), _canonical_lines(raw))
    group = projectivize(gen_su3(q), iso, cap=cap)
    return structure, group


def build_ree_unital_3(cap: int = DEFAULT_CAP) -> tuple[IncidenceStructure, PermGroup, PermGroup]:
    """The 28-point unital with 63 lines of size 4, plus its groups.

    Constructed from PSL(2, 8) acting on the 28 cosets of the normalizer
    of a Sylow 3-subgroup.  Lines are the fixed-point sets of the 63
    involutions, each of size 4.  Returns (structure, socle, extended)
    where the extended group adjoins the field automorphism of GF(8) and
    has order 1512.

    To make the extension well defined, the construction picks the unique
    Sylow 3-subgroup invariant under the field automorphism; then the
    automorphism permutes the cosets of that subgroup's normalizer.
    """
    ctx = field_create(2, 3)
    points = proj_points(ctx, 2)
    psl = projectivize(gen_sl2(8), points, cap=cap)
    elems = psl.elements()

    # the field automorphism x -> x^2, coordinate-wise, as a point permutation
    pt_index = {pt: i for i, pt in enumerate(points)}
    frob = tuple(
        pt_index[normalize(tuple(c.frobenius(1) for c in pt))] for pt in points
    )

    sylow = psl.sylow_subgroup(3)
    sylow_set = frozenset(sylow.elements())
    conjugates = []
    seen = set()
    for g in elems:
        image = frozenset(conjugate(g, h) for h in sylow_set)
        if image not in seen:
            seen.add(image)
            conjugates.append(image)
    invariant = [
        c for c in conjugates if frozenset(conjugate(frob, h) for h in c) == c
    ]
    if len(invariant) != 1:
        raise RuntimeError(
            f"expected one Sylow 3-subgroup fixed by the field automorphism, "
            f"found {len(invariant)}"
        )
    chosen = PermGroup(psl.degree, sorted(invariant[0]), cap=cap)
    norm = psl.normalizer(chosen)
    norm_elems = norm.elements()

    # left cosets of the normalizer, in first-appearance order over the
    # sorted element list; the identity coset comes first
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in elems:
        if g not in coset_of:
            idx = len(reps)
            reps.append(g)
            for n in norm_elems:
                coset_of[compose(g, n)] = idx
    n_cosets = len(reps)

    socle_gens = []
    for a in psl.generators:
        socle_gens.append(tuple(coset_of[compose(a, rep)] for rep in reps))
    socle = PermGroup(n_cosets, socle_gens, cap=cap)

    frob_inv = inverse(frob)
    sigma = tuple(
        coset_of[compose(frob, compose(rep, frob_inv))] for rep in reps
    )
    extended = PermGroup(n_cosets, socle_gens + [sigma], cap=cap)

    raw = [fixed_points(t) for t in socle.involutions()]
    structure = IncidenceStructure(n_cosets, _canonical_lines(raw))
    return structure, socle, extended


def structure_to_json(s: IncidenceStructure) -> dict:
    return {"v": s.v, "lines": [list(line) for line in s.lines]}


def structure_from_json(doc: dict) -> IncidenceStructure:
    """Parse a structure document; content validity is left to is_linear_space."""
    try:
        v = int(doc["v"])
        lines = tuple(tuple(int(x) for x in line) for line in doc["lines"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed structure document: {exc}") from exc
    return IncidenceStructure(v, lines)
