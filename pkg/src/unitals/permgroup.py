"""Permutation groups on {0, ..., degree-1}.

Permutations are tuples of images: g maps x to g[x], and composition is
function composition, compose(a, b)(x) = a(b(x)).  Groups carry their
generators and compute everything else on demand: full element lists by
breadth-first closure (vectorised with numpy), orders and membership through
a deterministic Schreier-Sims stabilizer chain, Sylow subgroups by the
normalizer-ascent method, and normalizers by direct filtering.

All algorithms are deterministic: iteration follows generator order and
sorted element order, never randomness, so repeated runs produce identical
groups, transversals, and generator lists.
"""

from __future__ import annotations

from collections import deque
from math import gcd

import numpy as np

Perm = tuple[int, ...]

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured element cap."""


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(a: Perm, b: Perm) -> Perm:
    """(a after b): x -> a[b[x]]."""
    if len(a) != len(b):
        raise ValueError("cannot compose permutations of different degrees")
    return tuple(map(a.__getitem__, b))


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, img in enumerate(a):
        out[img] = i
    return tuple(out)


def conjugate(g: Perm, h: Perm) -> Perm:
    """g h g^-1."""
    return compose(g, compose(h, inverse(g)))


def perm_order(g: Perm) -> int:
    """Least common multiple of the cycle lengths."""
    seen = [False] * len(g)
    order = 1
    for start in range(len(g)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = g[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def fixed_points(g: Perm) -> tuple[int, ...]:
    return tuple(i for i, img in enumerate(g) if img == i)


def _validate_perm(g, degree: int) -> Perm:
    perm = tuple(int(x) for x in g)
    if len(perm) != degree:
        raise ValueError(f"permutation has length {len(perm)}, expected {degree}")
    if sorted(perm) != list(range(degree)):
        raise ValueError(f"not a permutation of 0..{degree - 1}: {perm}")
    return perm


def closure_enumerate(
    degree: int, generators: list[Perm], cap: int = DEFAULT_CAP
) -> list[Perm]:
    """All products of the generators, sorted by image sequence.

    Breadth-first expansion over numpy image arrays; raises CapExceeded
    when more than cap distinct elements appear.
    """
    gens = []
    seen_gen = set()
    for g in generators:
        perm = _validate_perm(g, degree)
        if perm not in seen_gen:
            seen_gen.add(perm)
            gens.append(np.array(perm, dtype=np.int32))
    if not gens:
        raise ValueError("need at least one generator")
    ident = np.arange(degree, dtype=np.int32)
    seen = {ident.tobytes()}
    collected = [ident]
    frontier = [ident]
    while frontier:
        stack = np.stack(frontier)
        fresh = []
        for g in gens:
            # rows composed with g on the right: (w . g)(x) = w[g[x]]
            images = stack[:, g]
            for row in images:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeded cap of {cap} elements")
        collected.extend(fresh)
        frontier = fresh
    table = np.stack(collected)
    order = np.lexsort(table.T[::-1])
    return [tuple(row) for row in table[order].tolist()]


class _StabChain:
    """Deterministic Schreier-Sims stabilizer chain.

    Base points may be pinned in advance through base_hint (used to read off
    point stabilizers); further base points are appended as needed.  The
    construction verifies every Schreier generator of every level against
    the chain below it, re-verifying levels whenever their generator sets
    grow, so the final chain is exact and the order is the product of the
    transversal sizes.
    """

    def __init__(self, degree: int, generators: list[Perm], base_hint: tuple[int, ...] = ()):
        self.degree = degree
        self.ident = identity(degree)
        self.base: list[int] = list(base_hint)
        self.transversals: list[dict[int, Perm]] = [{} for _ in self.base]
        self.strong: list[Perm] = []
        pending = [g for g in generators if g != self.ident]
        for g in pending:
            self._add_strong(g)
        if self.base:
            self._rebuild()

    def _add_strong(self, g: Perm) -> None:
        self.strong.append(g)
        if all(g[b] == b for b in self.base):
            moved = next(i for i in range(self.degree) if g[i] != i)
            self.base.append(moved)
            self.transversals.append({})

    def _level_gens(self, i: int) -> list[Perm]:
        prefix = self.base[:i]
        return [g for g in self.strong if all(g[b] == b for b in prefix)]

    def _recompute(self, i: int) -> list[Perm]:
        beta = self.base[i]
        gens = self._level_gens(i)
        trans = {beta: self.ident}
        queue = deque([beta])
        while queue:
            pt = queue.popleft()
            u = trans[pt]
            for s in gens:
                img = s[pt]
                if img not in trans:
                    trans[img] = compose(s, u)
                    queue.append(img)
        self.transversals[i] = trans
        return gens

    def _strip(self, g: Perm, start: int) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            img = g[self.base[i]]
            u = self.transversals[i].get(img)
            if u is None:
                return g, i
            g = compose(inverse(u), g)
        return g, len(self.base)

    def _rebuild(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            gens = self._recompute(i)
            trans = self.transversals[i]
            added_at = None
            for pt in list(trans):
                u = trans[pt]
                for s in gens:
                    rep = trans[s[pt]]
                    schreier = compose(inverse(rep), compose(s, u))
                    if schreier == self.ident:
                        continue
                    residue, level = self._strip(schreier, i + 1)
                    if residue != self.ident:
                        self._add_strong(residue)
                        added_at = level
                        break
                if added_at is not None:
                    break
            if added_at is not None:
                i = added_at
            else:
                i -= 1

    def order(self) -> int:
        n = 1
        for trans in self.transversals:
            n *= len(trans)
        return n

    def contains(self, g: Perm) -> bool:
        residue, _ = self._strip(g, 0)
        return residue == self.ident

    def stabilizer_gens(self, depth: int) -> list[Perm]:
        """Strong generators fixing the first depth base points."""
        return self._level_gens(depth)


class PermGroup:
    """A permutation group given by generators on a fixed domain."""

    def __init__(self, degree: int, generators: list[Perm], cap: int = DEFAULT_CAP):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        if not generators:
            raise ValueError("need at least one generator")
        self.degree = degree
        self.generators = tuple(_validate_perm(g, degree) for g in generators)
        self.cap = cap
        self._elements: tuple[Perm, ...] | None = None
        self._chain: _StabChain | None = None

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    def elements(self) -> tuple[Perm, ...]:
        """Every group element, sorted by image sequence."""
        if self._elements is None:
            self._elements = tuple(
                closure_enumerate(self.degree, list(self.generators), self.cap)
            )
        return self._elements

    def chain(self) -> _StabChain:
        if self._chain is None:
            self._chain = _StabChain(self.degree, list(self.generators))
        return self._chain

    def order(self) -> int:
        """Group order from the stabilizer chain (no full enumeration)."""
        if self._elements is not None:
            return len(self._elements)
        return self.chain().order()

    def contains(self, g) -> bool:
        perm = _validate_perm(g, self.degree)
        return self.chain().contains(perm)

    def is_trivial(self) -> bool:
        ident = identity(self.degree)
        return all(g == ident for g in self.generators)

    def orbit(self, point: int) -> tuple[int, ...]:
        """The orbit of point, ascending."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside domain of degree {self.degree}")
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbit partition of the domain, ordered by smallest member."""
        out = []
        covered = set()
        for pt in range(self.degree):
            if pt not in covered:
                orb = self.orbit(pt)
                covered.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> PermGroup:
        """The subgroup fixing point, from a chain based at that point."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside domain of degree {self.degree}")
        chain = _StabChain(self.degree, list(self.generators), base_hint=(point,))
        gens = chain.stabilizer_gens(1)
        return PermGroup(self.degree, gens or [identity(self.degree)], cap=self.cap)

    def subdegrees(self, point: int) -> tuple[int, ...]:
        """Sorted orbit lengths of the stabilizer of point."""
        stab = self.stabilizer(point)
        return tuple(sorted(len(o) for o in stab.orbits()))

    def involutions(self) -> list[Perm]:
        """All elements of order two, in element order."""
        ident = identity(self.degree)
        return [
            g for g in self.elements() if g != ident and compose(g, g) == ident
        ]

    def sylow_subgroup(self, p: int) -> PermGroup:
        """A Sylow p-subgroup, grown by normalizer ascent.

        Start from the first element (in sorted order) whose order has the
        largest p-power part; while the current p-subgroup is smaller than
        the full p-part of |G|, adjoin the first p-element of its normalizer
        that lies outside it.  Deterministic, so repeated calls return the
        same subgroup.
        """
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"p must be prime, got {p}")
        elems = self.elements()
        target = _p_part(len(elems), p)
        ident = identity(self.degree)
        if target == 1:
            return PermGroup(self.degree, [ident], cap=self.cap)

        seed = None
        best = 1
        for g in elems:
            part = _p_part(perm_order(g), p)
            if part > best:
                best = part
                seed = g
        # project the seed onto its p-power-order component
        o = perm_order(seed)
        seed = _perm_power(seed, o // _p_part(o, p))

        gens = [seed]
        current = set(closure_enumerate(self.degree, gens, self.cap))
        while len(current) < target:
            grown = False
            for g in elems:
                if g in current:
                    continue
                o = perm_order(g)
                if o != _p_part(o, p):
                    continue
                if not all(conjugate(g, h) in current for h in gens):
                    continue
                gens.append(g)
                current = set(closure_enumerate(self.degree, gens, self.cap))
                grown = True
                break
            if not grown:
                raise RuntimeError("Sylow ascent stalled below the full p-part")
        if len(current) != target:
            raise RuntimeError("Sylow ascent overshot the p-part")
        return PermGroup(self.degree, gens, cap=self.cap)

    def normalizer(self, sub: PermGroup) -> PermGroup:
        """The normalizer of sub in this group, by filtering all elements."""
        if sub.degree != self.degree:
            raise ValueError("subgroup acts on a different domain")
        ident = identity(self.degree)
        sub_elems = set(sub.elements())
        sub_gens = [g for g in sub.generators if g != ident]
        if not sub_gens:
            return PermGroup(self.degree, list(self.generators), cap=self.cap)
        members = [
            g
            for g in self.elements()
            if all(conjugate(g, h) in sub_elems for h in sub_gens)
        ]
        gens = _reduce_generators(self.degree, members)
        return PermGroup(self.degree, gens, cap=self.cap)

    def induced_action(self, blocks: list[tuple[int, ...]]) -> PermGroup:
        """The action on a system of disjoint point sets.

        Each generator must permute the given blocks; otherwise ValueError.
        Block images are compared as sorted point tuples.
        """
        canon = [tuple(sorted(b)) for b in blocks]
        index = {b: i for i, b in enumerate(canon)}
        if len(index) != len(canon):
            raise ValueError("blocks must be distinct")
        perms = []
        for g in self.generators:
            images = []
            for b in canon:
                img = tuple(sorted(g[x] for x in b))
                pos = index.get(img)
                if pos is None:
                    raise ValueError("generators do not permute the blocks")
                images.append(pos)
            perms.append(tuple(images))
        return PermGroup(len(canon), perms, cap=self.cap)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def _perm_power(g: Perm, e: int) -> Perm:
    result = identity(len(g))
    base = g
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def _reduce_generators(degree: int, members: list[Perm]) -> list[Perm]:
    """Greedy generating subset of a closed element list, in sorted order."""
    ident = identity(degree)
    gens: list[Perm] = []
    chain = None
    for g in members:
        if g == ident:
            continue
        if chain is None or not chain.contains(g):
            gens.append(g)
            chain = _StabChain(degree, gens)
            if chain.order() == len(members):
                break
    if not gens:
        return [ident]
    if chain is None or chain.order() != len(members):
        raise RuntimeError("generator reduction did not reach the full subgroup")
    return gens


def group_to_json(group: PermGroup) -> dict:
    return {
        "degree": group.degree,
        "generators": [list(g) for g in group.generators],
    }


def group_from_json(doc: dict, cap: int = DEFAULT_CAP) -> PermGroup:
    try:
        degree = int(doc["degree"])
        gens = [tuple(int(x) for x in g) for g in doc["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed group document: {exc}") from exc
    return PermGroup(degree, gens, cap=cap)
