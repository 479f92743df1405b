"""
Description: Permutation group engine for the Segre cubic verifier. Groups are stored as
their full element sets (degree <= 16, order <= 720), which keeps every algorithm
exhaustive and easy to audit: closure, orbits and stabilizers, centralizers and
normalizers, conjugacy classes, the complete subgroup lattice, subconjugacy search,
isomorphism testing by generator-image backtracking, and the outer automorphism of S6.

Conventions:
    Perm images are 1-based: p.images[i - 1] is the image of i.
    Products compose right to left: (p * q)(i) = p(q(i)).
    Conjugation of x by g is g * x * g^-1.
    Actions are left actions: action(g * h, y) == action(g, action(h, y)).
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import lcm
from typing import Callable, Hashable, Iterable, Sequence

from .exceptions import (
    ActionAxiomError,
    ConsistencyError,
    DegreeMismatch,
    GroupOrderError,
    NotASubgroupError,
)

logger = logging.getLogger(__name__)

MAX_DEGREE = 16
MAX_ORDER = 720


# =========================================================================
# PERMUTATIONS
# =========================================================================

class Perm:
    """A bijection of {1..n}, hashed and ordered by its image list."""

    __slots__ = ('images', '_hash')

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f'{images} is not a permutation of 1..{len(images)}')
        if len(images) > MAX_DEGREE:
            raise DegreeMismatch(f'degree {len(images)} exceeds {MAX_DEGREE}')
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Perm:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Perm:
        """Perm.from_cycles(6, (1, 2), (3, 4)) is (1 2)(3 4) on {1..6}."""
        images = list(range(1, degree + 1))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if a in seen or not 1 <= a <= degree:
                    raise ValueError(f'bad cycle {cycle} for degree {degree}')
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Perm) -> Perm:
        if other.degree != self.degree:
            raise DegreeMismatch(f'cannot compose degree {self.degree} with {other.degree}')
        mine = self.images
        return Perm._trusted(tuple(mine[j - 1] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm._trusted(tuple(inv))

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm._trusted(tuple(range(1, self.degree + 1)))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: Perm) -> Perm:
        """g * self * g^-1: the same cycle shape with every label i replaced by g(i)."""
        images = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            images[g.images[i - 1] - 1] = g.images[j - 1]
        return Perm._trusted(tuple(images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, ordered by that point."""
        seen = set()
        result = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start - 1]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt - 1]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    @property
    def cycle_type(self) -> tuple[int, ...]:
        """Partition of the degree by cycle lengths, fixed points included, descending."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    @property
    def order(self) -> int:
        return lcm(*self.cycle_type) if self.degree else 1

    @property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images, start=1) if i == j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return Perm, (self.images,)

    def __repr__(self) -> str:
        return ''.join('(' + ' '.join(map(str, c)) + ')' for c in self.cycles()) or '()'


def cycle_type_label(partition: Sequence[int]) -> str:
    """(2, 2, 1, 1) -> '2^2.1^2'."""
    counts = Counter(partition)
    return '.'.join(
        f'{k}' if counts[k] == 1 else f'{k}^{counts[k]}' for k in sorted(counts, reverse=True)
    )


# =========================================================================
# GROUPS
# =========================================================================

class CayleyTable:
    """Index of a group's elements (lexicographic order) with a full multiplication table."""

    def __init__(self, elements: Sequence[Perm]):
        self.elements = list(elements)
        self.index = {p.images: i for i, p in enumerate(self.elements)}
        index = self.index
        self.mul = []
        for a in self.elements:
            ai = a.images
            self.mul.append([index[tuple(ai[j - 1] for j in b.images)] for b in self.elements])
        self.inv = [index[p.inverse().images] for p in self.elements]
        self.identity = 0

    def __len__(self) -> int:
        return len(self.elements)


class PermGroup:
    """
    A finite permutation group held as generators plus its complete element set.

    Equality is equality of element sets (and degree); generators are bookkeeping.
    """

    def __init__(self, degree: int, generators: Iterable[Perm], elements: Iterable[Perm]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = frozenset(elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(self.sorted_elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __reduce__(self):
        return PermGroup, (self.degree, self.generators, tuple(self.sorted_elements))

    def __repr__(self) -> str:
        gens = ', '.join(map(repr, self.generators)) or '()'
        return f'<PermGroup degree={self.degree} order={self.order} gens=[{gens}]>'

    @cached_property
    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    @cached_property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @cached_property
    def cayley(self) -> CayleyTable:
        if self.order > MAX_ORDER:
            raise GroupOrderError(f'order {self.order} exceeds {MAX_ORDER}')
        return CayleyTable(self.sorted_elements)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.generators for b in self.generators)

    def is_trivial(self) -> bool:
        return self.order == 1

    def point_orbits(self) -> list[frozenset[int]]:
        return orbits(self, lambda g, i: g(i), range(1, self.degree + 1))

    def is_transitive(self) -> bool:
        return len(self.point_orbits()) == 1

    @cached_property
    def element_profile(self) -> Counter:
        """Multiset of (element order, conjugacy class size) pairs: an isomorphism invariant."""
        profile = Counter()
        for cls in conjugacy_classes(self):
            profile[(cls.representative.order, cls.size)] += cls.size
        return profile

    def cycle_type_counts(self) -> Counter:
        return Counter(g.cycle_type for g in self.elements)

    def conjugate_by(self, g: Perm) -> PermGroup:
        return PermGroup(
            self.degree,
            (x.conjugate(g) for x in self.generators),
            (x.conjugate(g) for x in self.elements),
        )


def _closure_set(generators: Sequence[Perm], identity: Perm, limit: int) -> set[Perm]:
    elements = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    fresh.append(y)
        if len(elements) > limit:
            raise GroupOrderError(f'closure exceeds {limit} elements')
        frontier = fresh
    return elements


def closure(generators: Iterable[Perm], degree: int | None = None, limit: int = MAX_ORDER) -> PermGroup:
    """The group generated by `generators` (the trivial group of `degree` when empty)."""
    gens = tuple(generators)
    degrees = {g.degree for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise DegreeMismatch(f'generators of mixed degrees {sorted(degrees)}')
    n = degrees.pop() if degrees else 1
    identity = Perm.identity(n)
    return PermGroup(n, gens, _closure_set(gens, identity, limit))


def generating_set(elements: Iterable[Perm], degree: int, key=None) -> tuple[Perm, ...]:
    """Greedy generating set: scan elements (sorted, or by `key`) and keep those not yet generated."""
    pool = sorted(elements, key=key) if key else sorted(elements)
    identity = Perm.identity(degree)
    gens: list[Perm] = []
    current = {identity}
    for x in pool:
        if x not in current:
            gens.append(x)
            current = _closure_set(gens, identity, MAX_ORDER)
    return tuple(gens)


def group_from_elements(degree: int, elements: Iterable[Perm]) -> PermGroup:
    """Wrap a set already known to be a group, deriving a small generating set."""
    elements = frozenset(elements)
    gens = generating_set(elements, degree)
    if _closure_set(gens, Perm.identity(degree), MAX_ORDER) != elements:
        raise ConsistencyError('element set is not closed under composition')
    return PermGroup(degree, gens, elements)


# ----- model groups --------------------------------------------------------

@lru_cache(maxsize=None)
def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return closure([], degree=1)
    return closure([Perm.from_cycles(n, (1, 2)), Perm.from_cycles(n, tuple(range(1, n + 1)))])


@lru_cache(maxsize=None)
def alternating_group(n: int) -> PermGroup:
    gens = [Perm.from_cycles(n, (i, i + 1, i + 2)) for i in range(1, n - 1)]
    return closure(gens, degree=n)


def symmetric_group_on(points: Sequence[int], degree: int) -> PermGroup:
    """Full symmetric group on `points`, fixing the rest of {1..degree}."""
    points = tuple(points)
    if len(points) < 2:
        return closure([], degree=degree)
    return closure([Perm.from_cycles(degree, points[:2]), Perm.from_cycles(degree, points)], degree=degree)


def alternating_group_on(points: Sequence[int], degree: int) -> PermGroup:
    points = tuple(points)
    gens = [Perm.from_cycles(degree, points[i:i + 3]) for i in range(len(points) - 2)]
    return closure(gens, degree=degree)


def cyclic_group(n: int) -> PermGroup:
    return closure([Perm.from_cycles(n, tuple(range(1, n + 1)))], degree=n)


def dihedral_group(order: int) -> PermGroup:
    """Symmetries of the regular (order/2)-gon; dihedral_group(8) is the square group D8."""
    m = order // 2
    rotation = Perm.from_cycles(m, tuple(range(1, m + 1)))
    reflection = Perm(tuple(((1 - i) % m) + 1 for i in range(1, m + 1)))
    return closure([rotation, reflection])


def _shift(p: Perm, offset: int, degree: int) -> Perm:
    images = list(range(1, degree + 1))
    for i, j in enumerate(p.images, start=1):
        images[offset + i - 1] = offset + j
    return Perm(images)


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    """A x B acting on the disjoint union {1..deg A} + {deg A + 1..deg A + deg B}."""
    n = a.degree + b.degree
    gens = [_shift(g, 0, n) for g in a.generators] + [_shift(g, a.degree, n) for g in b.generators]
    elements = [
        Perm(x.images + tuple(a.degree + j for j in y.images))
        for x, y in product(a.sorted_elements, b.sorted_elements)
    ]
    return PermGroup(n, gens, elements)


# =========================================================================
# ACTIONS, ORBITS, STABILIZERS
# =========================================================================

Action = Callable[[Perm, Hashable], Hashable]


def orbits(group: PermGroup, action: Action, points: Iterable[Hashable]) -> list[frozenset]:
    """Orbit partition of `points`, in order of first appearance."""
    remaining = list(points)
    placed: set = set()
    result = []
    for x in remaining:
        if x in placed:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in group.generators:
                z = action(g, y)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        placed |= orbit
        result.append(frozenset(orbit))
    return result


def orbit_lengths(group: PermGroup, action: Action, points: Iterable[Hashable]) -> list[int]:
    return sorted(len(o) for o in orbits(group, action, points))


def check_action(group: PermGroup, action: Action, points: Iterable[Hashable]) -> None:
    """Action axioms on generators: identity acts trivially and products act compositionally."""
    points = list(points)
    for y in points:
        if action(group.identity, y) != y:
            raise ActionAxiomError(f'identity moves {y!r}')
    for g, h in product(group.generators, repeat=2):
        gh = g * h
        for y in points:
            if action(gh, y) != action(g, action(h, y)):
                raise ActionAxiomError(f'action of {g}*{h} on {y!r} is not compositional')


def orbit_and_stabilizer(group: PermGroup, action: Action, x: Hashable) -> tuple[frozenset, PermGroup]:
    orbit = orbits(group, action, [x])[0]
    check_action(group, action, orbit)
    stab = [g for g in group.sorted_elements if action(g, x) == x]
    if len(orbit) * len(stab) != group.order:
        raise ConsistencyError(
            f'orbit {len(orbit)} x stabilizer {len(stab)} != group order {group.order}'
        )
    return orbit, group_from_elements(group.degree, stab)


def fixed_count(g: Perm, action: Action, points: Iterable[Hashable]) -> int:
    return sum(1 for y in points if action(g, y) == y)


def equivariant_bijection(
    group: PermGroup,
    action_a: Action,
    set_a: Sequence[Hashable],
    action_b: Action,
    set_b: Sequence[Hashable],
) -> dict | None:
    """
    A bijection beta: set_a -> set_b with beta(g.a) = g.beta(a) for all g, or None.

    Orbits of A are matched to orbits of B by backtracking; inside an orbit the map is
    forced once the image of one representative is chosen.
    """
    if len(set_a) != len(set_b):
        return None
    orbits_a = orbits(group, action_a, set_a)
    orbits_b = orbits(group, action_b, set_b)

    def transversal(orbit_rep):
        reach = {orbit_rep: group.identity}
        queue = deque([orbit_rep])
        while queue:
            y = queue.popleft()
            for g in group.generators:
                z = action_a(g, y)
                if z not in reach:
                    reach[z] = g * reach[y]
                    queue.append(z)
        return reach

    def assign(k: int, used: set[int], beta: dict) -> dict | None:
        if k == len(orbits_a):
            return beta
        orbit = orbits_a[k]
        rep = min(orbit, key=repr)
        stab = [g for g in group.sorted_elements if action_a(g, rep) == rep]
        reach = transversal(rep)
        for j, target in enumerate(orbits_b):
            if j in used or len(target) != len(orbit):
                continue
            for b in sorted(target, key=repr):
                if any(action_b(g, b) != b for g in stab):
                    continue
                extension = {a: action_b(word, b) for a, word in reach.items()}
                result = assign(k + 1, used | {j}, {**beta, **extension})
                if result is not None:
                    return result
        return None

    beta = assign(0, set(), {})
    if beta is None:
        return None
    if len(set(beta.values())) != len(set_b):
        raise ConsistencyError('orbit matching produced a non-bijective map')
    for g in group.generators:
        for a in set_a:
            if beta[action_a(g, a)] != action_b(g, beta[a]):
                raise ConsistencyError(f'bijection is not equivariant for {g} at {a!r}')
    return beta


# =========================================================================
# CENTRALIZERS, NORMALIZERS, CONJUGACY
# =========================================================================

def _require_inside(sub: Iterable[Perm], group: PermGroup) -> None:
    for s in sub:
        if s not in group:
            raise NotASubgroupError(f'{s} is not an element of {group!r}')


def centralizer(group: PermGroup, s: PermGroup | Perm) -> PermGroup:
    gens = [s] if isinstance(s, Perm) else list(s.generators)
    _require_inside(gens, group)
    elements = [g for g in group.sorted_elements if all(g * x == x * g for x in gens)]
    return group_from_elements(group.degree, elements)


def normalizer(group: PermGroup, sub: PermGroup) -> PermGroup:
    _require_inside(sub.generators, group)
    elements = [
        g for g in group.sorted_elements if all(x.conjugate(g) in sub for x in sub.generators)
    ]
    return group_from_elements(group.degree, elements)


def is_normal(group: PermGroup, sub: PermGroup) -> bool:
    return all(x.conjugate(g) in sub for g in group.generators for x in sub.generators)


def center(group: PermGroup) -> PermGroup:
    return centralizer(group, group)


def commute_elementwise(a: PermGroup, b: PermGroup) -> bool:
    return all(x * y == y * x for x in a.generators for y in b.generators)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Perm
    elements: frozenset[Perm]

    @property
    def size(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=64)
def conjugacy_classes(group: PermGroup) -> tuple[ConjugacyClass, ...]:
    """Classes in order of their representatives, each the lexicographically least member."""
    placed: set[Perm] = set()
    classes = []
    for x in group.sorted_elements:
        if x in placed:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in group.generators:
                z = y.conjugate(g)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        placed |= orbit
        classes.append(ConjugacyClass(x, frozenset(orbit)))
    return tuple(classes)


def class_of(group: PermGroup, g: Perm) -> ConjugacyClass:
    for cls in conjugacy_classes(group):
        if g in cls.elements:
            return cls
    raise NotASubgroupError(f'{g} is not an element of {group!r}')


def classify_homs_c2(group: PermGroup) -> list[ConjugacyClass]:
    """Conjugacy classes of homomorphisms C2 -> G, i.e. classes of elements with g^2 = 1."""
    return [c for c in conjugacy_classes(group) if (c.representative * c.representative).is_identity()]


def is_subconjugate(a: PermGroup, b: PermGroup, group: PermGroup) -> Perm | None:
    """Some g in `group` with g A g^-1 inside B, or None after an exhaustive search."""
    _require_inside(a.generators, group)
    _require_inside(b.generators, group)
    if b.order % a.order:
        return None
    b_types = b.cycle_type_counts()
    for cycle_type, count in a.cycle_type_counts().items():
        if b_types[cycle_type] < count:
            return None

    # g works iff n*g works for n in N(B), so one candidate per right coset N(B) g suffices
    norm = normalizer(group, b)
    covered: set[Perm] = set()
    for g in group.sorted_elements:
        if g in covered:
            continue
        covered.update(n * g for n in norm.elements)
        if all(x.conjugate(g) in b for x in a.generators):
            return g
    return None


# =========================================================================
# SUBGROUP LATTICE
# =========================================================================

@dataclass(frozen=True)
class SubgroupClass:
    representative: PermGroup
    members: tuple[PermGroup, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return self.representative.order


@dataclass(frozen=True)
class SubgroupLattice:
    group: PermGroup
    classes: tuple[SubgroupClass, ...]
    rounds: int
    joins: int

    @property
    def total(self) -> int:
        return sum(c.size for c in self.classes)

    def all_subgroups(self) -> list[PermGroup]:
        return [m for c in self.classes for m in c.members]


def _join(mul: list[list[int]], base: list[int], seen: bytearray, gens: list[int]) -> tuple[list[int], bytearray]:
    elems = list(base)
    seen = bytearray(seen)
    i = 0
    while i < len(elems):
        row = mul[elems[i]]
        for g in gens:
            y = row[g]
            if not seen[y]:
                seen[y] = 1
                elems.append(y)
        i += 1
    return elems, seen


@lru_cache(maxsize=32)
def subgroup_lattice(group: PermGroup) -> SubgroupLattice:
    """
    Every subgroup of `group`, grouped into conjugacy classes.

    Join saturation: start from the trivial group and the cyclic subgroups, then join each
    class representative H with every cyclic subgroup <c> not inside H, one c per orbit of
    the normalizer of H, until no new conjugacy class appears. Any subgroup K is <M, c> for a
    maximal subgroup M of K, so saturation reaches all of them; subgroups are deduplicated by
    their element set over the Cayley index.
    """
    if group.order > MAX_ORDER:
        raise GroupOrderError(f'order {group.order} exceeds {MAX_ORDER}')
    table = group.cayley
    n = len(table)
    mul, inv = table.mul, table.inv

    # cyclic subgroups, one generator each, and the cyclic subgroup id of every element
    cyclic_of: list[int] = [0] * n
    cyclics: list[tuple[int, list[int]]] = []
    cyclic_keys: dict[bytes, int] = {}
    for x in range(n):
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = mul[y][x]
        marks = bytearray(n)
        for p in powers:
            marks[p] = 1
        key = bytes(marks)
        if key not in cyclic_keys:
            cyclic_keys[key] = len(cyclics)
            cyclics.append((x, powers))
        cyclic_of[x] = cyclic_keys[key]

    known: dict[bytes, int] = {}
    class_members: list[list[tuple[bytes, list[int], list[int]]]] = []
    reps: list[tuple[list[int], bytearray, list[int]]] = []

    def register(elems: list[int], seen: bytearray, gens: list[int]) -> int | None:
        key = bytes(seen)
        if key in known:
            return None
        cid = len(class_members)
        members = []
        for g in range(n):
            mg, ginv = mul[g], inv[g]
            conj_marks = bytearray(n)
            conj_elems = []
            for x in elems:
                y = mul[mg[x]][ginv]
                conj_marks[y] = 1
                conj_elems.append(y)
            conj_key = bytes(conj_marks)
            if conj_key in known:
                continue
            known[conj_key] = cid
            members.append((conj_key, sorted(conj_elems), [mul[mg[x]][ginv] for x in gens]))
        class_members.append(members)
        reps.append((elems, seen, gens))
        return cid

    trivial = bytearray(n)
    trivial[0] = 1
    register([0], trivial, [])
    for x, powers in cyclics:
        marks = bytearray(n)
        for p in powers:
            marks[p] = 1
        register(powers, marks, [x] if x else [])

    joins = 0
    rounds = 0
    frontier = list(range(len(reps)))
    while frontier:
        rounds += 1
        discovered = []
        for cid in frontier:
            elems, seen, gens = reps[cid]
            norm = [
                g for g in range(n)
                if all(seen[mul[mul[g][x]][inv[g]]] for x in gens)
            ]
            tried: set[int] = set()
            for cyc_id, (c, powers) in enumerate(cyclics):
                if cyc_id in tried:
                    continue
                tried.update(cyclic_of[mul[mul[g][c]][inv[g]]] for g in norm)
                if seen[c]:
                    continue
                joins += 1
                j_elems, j_seen = _join(mul, elems, seen, gens + [c])
                new = register(j_elems, j_seen, gens + [c])
                if new is not None:
                    discovered.append(new)
        logger.debug(f'lattice round {rounds}: {len(discovered)} new classes')
        frontier = discovered

    elements = table.elements
    classes = []
    for members in class_members:
        groups = []
        for _, member_elems, member_gens in sorted(members, key=lambda m: m[1]):
            groups.append(PermGroup(
                group.degree,
                (elements[i] for i in member_gens),
                (elements[i] for i in member_elems),
            ))
        classes.append(SubgroupClass(groups[0], tuple(groups)))
    index = table.index
    classes.sort(key=lambda c: (c.order, [index[p.images] for p in c.representative.sorted_elements]))

    lattice = SubgroupLattice(group, tuple(classes), rounds, joins)
    logger.info(
        f'subgroup lattice of order-{group.order} group: {len(classes)} classes, '
        f'{lattice.total} subgroups, {rounds} rounds, {joins} joins'
    )
    return lattice


def all_subgroups(group: PermGroup) -> list[PermGroup]:
    return subgroup_lattice(group).all_subgroups()


def subgroups_up_to_conjugacy(group: PermGroup) -> list[SubgroupClass]:
    return list(subgroup_lattice(group).classes)


def normal_subgroups(group: PermGroup) -> list[PermGroup]:
    return [c.representative for c in subgroup_lattice(group).classes if c.size == 1]


def is_elementary_abelian(group: PermGroup, p: int) -> bool:
    return group.is_abelian() and all((g ** p).is_identity() for g in group.generators)


def semidirect_witness(group: PermGroup, normal_order: int, complement_order: int, p: int = 2):
    """
    (N, K) with N normal, elementary abelian p-group of order `normal_order`, and K a
    complement of order `complement_order` meeting N trivially; None if no such pair exists.
    """
    lattice = subgroup_lattice(group)
    for n_cls in lattice.classes:
        if n_cls.size != 1 or n_cls.order != normal_order:
            continue
        normal = n_cls.representative
        if not is_elementary_abelian(normal, p):
            continue
        for k_cls in lattice.classes:
            if k_cls.order != complement_order:
                continue
            for k in k_cls.members:
                if normal.elements & k.elements == {group.identity}:
                    return normal, k
    return None


def split_extension_witness(
    group: PermGroup, normal_model: PermGroup, complement_model: PermGroup, acts_nontrivially: bool = True
) -> tuple[PermGroup, PermGroup] | None:
    """
    (N, K) with N normal and isomorphic to `normal_model`, K isomorphic to `complement_model`
    and N meeting K trivially. With `acts_nontrivially`, K must not centralize N, which rules
    out the direct product.
    """
    if group.order != normal_model.order * complement_model.order:
        return None
    lattice = subgroup_lattice(group)
    for n_cls in lattice.classes:
        if n_cls.size != 1 or n_cls.order != normal_model.order:
            continue
        normal = n_cls.representative
        if are_isomorphic(normal, normal_model) is None:
            continue
        for k_cls in lattice.classes:
            if k_cls.order != complement_model.order:
                continue
            for k in k_cls.members:
                if normal.elements & k.elements != {group.identity}:
                    continue
                if acts_nontrivially and commute_elementwise(normal, k):
                    continue
                if are_isomorphic(k, complement_model) is not None:
                    return normal, k
    return None


# =========================================================================
# HOMOMORPHISMS AND ISOMORPHISM
# =========================================================================

def _extend_by_generators(
    source: PermGroup, gens: Sequence[Perm], images: Sequence[Perm], target_degree: int | None = None
) -> dict[Perm, Perm] | None:
    """
    Extend gens -> images along the Cayley graph of `source`.

    Returns None on any conflict. If every edge x -> x*g is consistent, the map satisfies
    f(x g) = f(x) f(g) for all x and generators g, which makes it a homomorphism.
    """
    if not images:
        identity = Perm.identity(target_degree or source.degree)
        return {source.identity: identity} if source.order == 1 else None
    target_identity = Perm.identity(images[0].degree)
    mapping = {source.identity: target_identity}
    queue = deque([source.identity])
    while queue:
        x = queue.popleft()
        fx = mapping[x]
        for g, h in zip(gens, images):
            y = x * g
            fy = fx * h
            known = mapping.get(y)
            if known is None:
                mapping[y] = fy
                queue.append(y)
            elif known != fy:
                return None
    if len(mapping) != source.order:
        return None
    return mapping


class GroupHom:
    """
    A homomorphism out of a permutation group, fixed by the images of its generators.

    The full element map is built and checked at construction; `target` is optional and,
    when given, every image must lie in it.
    """

    def __init__(self, source: PermGroup, generator_images: Sequence[Perm], target: PermGroup | None = None):
        self.source = source
        self.generator_images = tuple(generator_images)
        self.target = target
        if len(self.generator_images) != len(source.generators):
            raise ConsistencyError('one image per source generator is required')
        target_degree = target.degree if target is not None else None
        mapping = _extend_by_generators(source, source.generators, self.generator_images, target_degree)
        if mapping is None:
            raise ConsistencyError('generator images do not define a homomorphism')
        if target is not None and any(v not in target for v in mapping.values()):
            raise ConsistencyError('homomorphism leaves its target group')
        self.mapping = mapping

    def __call__(self, g: Perm) -> Perm:
        return self.mapping[g]

    @property
    def target_degree(self) -> int:
        return next(iter(self.mapping.values())).degree

    def image(self) -> PermGroup:
        return PermGroup(self.target_degree, self.generator_images, self.mapping.values())

    def image_of(self, sub: PermGroup) -> PermGroup:
        return PermGroup(
            self.target_degree,
            (self.mapping[g] for g in sub.generators),
            (self.mapping[g] for g in sub.elements),
        )

    def kernel(self) -> PermGroup:
        identity = Perm.identity(self.target_degree)
        return group_from_elements(
            self.source.degree, (g for g, v in self.mapping.items() if v == identity)
        )

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == self.source.order

    def compose(self, inner: GroupHom) -> GroupHom:
        """self after inner."""
        return GroupHom(inner.source, [self(inner(g)) for g in inner.source.generators], self.target)

    def check_pairs(self, pairs: Iterable[tuple[Perm, Perm]]) -> bool:
        return all(self(a * b) == self(a) * self(b) for a, b in pairs)

    def check_all_pairs(self) -> bool:
        elements = self.source.sorted_elements
        return self.check_pairs(product(elements, elements))


def _word_orders(gens: Sequence[Perm]) -> dict[tuple, int]:
    """Orders of short words in pairs of generators, used to prune isomorphism search."""
    out = {}
    for i, j in product(range(len(gens)), repeat=2):
        if i >= j:
            continue
        a, b = gens[i], gens[j]
        out[(i, j, 'ab')] = (a * b).order
        out[(i, j, 'aB')] = (a * b.inverse()).order
        out[(i, j, 'aab')] = (a * a * b).order
        out[(i, j, 'abAB')] = (a * b * a.inverse() * b.inverse()).order
    return out


def are_isomorphic(g_group: PermGroup, h_group: PermGroup) -> GroupHom | None:
    """
    An explicit isomorphism G -> H or None.

    Invariants are compared first (order, abelianness, the (element order, class size)
    profile). Then generator images are searched by backtracking: the first generator only
    needs one candidate per conjugacy class of H (composing with inner automorphisms of H),
    later ones are pruned by orders of short words, and complete assignments are checked
    along the whole Cayley graph.
    """
    if g_group.order != h_group.order:
        return None
    if g_group.order > MAX_ORDER or h_group.order > MAX_ORDER:
        raise GroupOrderError('isomorphism testing is limited to order 720')
    if g_group.is_abelian() != h_group.is_abelian():
        return None
    if g_group.element_profile != h_group.element_profile:
        return None
    if g_group.order == 1:
        return GroupHom(g_group, [h_group.identity for _ in g_group.generators], h_group)

    g_classes = {x: cls for cls in conjugacy_classes(g_group) for x in cls.elements}
    h_classes = conjugacy_classes(h_group)

    def signature(x: Perm, cls: ConjugacyClass) -> tuple[int, int]:
        return x.order, cls.size

    # prefer generators from small classes with large order
    gens = generating_set(
        g_group.elements,
        g_group.degree,
        key=lambda x: (g_classes[x].size, -x.order, x.images),
    )
    words = _word_orders(gens)

    candidates = []
    for k, x in enumerate(gens):
        sig = signature(x, g_classes[x])
        if k == 0:
            pool = [c.representative for c in h_classes if signature(c.representative, c) == sig]
        else:
            pool = sorted(y for c in h_classes if signature(c.representative, c) == sig for y in c.elements)
        candidates.append(pool)

    def consistent(assigned: list[Perm]) -> bool:
        j = len(assigned) - 1
        b = assigned[j]
        for i in range(j):
            a = assigned[i]
            if (a * b).order != words[(i, j, 'ab')]:
                return False
            if (a * b.inverse()).order != words[(i, j, 'aB')]:
                return False
            if (a * a * b).order != words[(i, j, 'aab')]:
                return False
            if (a * b * a.inverse() * b.inverse()).order != words[(i, j, 'abAB')]:
                return False
        return True

    def search(assigned: list[Perm]) -> dict | None:
        if len(assigned) == len(gens):
            mapping = _extend_by_generators(g_group, gens, assigned)
            if mapping is None or len(set(mapping.values())) != g_group.order:
                return None
            return mapping
        for y in candidates[len(assigned)]:
            if y in assigned:
                continue
            trial = assigned + [y]
            if not consistent(trial):
                continue
            found = search(trial)
            if found is not None:
                return found
        return None

    mapping = search([])
    if mapping is None:
        return None
    hom = GroupHom(g_group, [mapping[x] for x in g_group.generators], h_group)
    if g_group.order <= 100 and not hom.check_all_pairs():
        raise ConsistencyError('isomorphism failed the full multiplication check')
    return hom


# =========================================================================
# OUTER AUTOMORPHISM OF S6
# =========================================================================

_PROJECTIVE_LINE = (0, 1, 2, 3, 4, None)


def _pgl2_f5_perm(a: int, b: int, c: int, d: int) -> Perm:
    """x -> (a x + b) / (c x + d) on P^1(F5), labels 0..4 -> 1..5 and infinity -> 6."""

    def label(x):
        return 6 if x is None else x + 1

    def act(x):
        if x is None:
            return None if c % 5 == 0 else (a * pow(c, -1, 5)) % 5
        den = (c * x + d) % 5
        if den == 0:
            return None
        return ((a * x + b) * pow(den, -1, 5)) % 5

    images = [0] * 6
    for x in _PROJECTIVE_LINE:
        images[label(x) - 1] = label(act(x))
    return Perm(images)


@lru_cache(maxsize=None)
def transitive_s5() -> PermGroup:
    """PGL(2, 5) acting on the six points of the projective line over F5: a transitive S5."""
    gens = [
        _pgl2_f5_perm(1, 1, 0, 1),  # x + 1
        _pgl2_f5_perm(2, 0, 0, 1),  # 2x
        _pgl2_f5_perm(0, 4, 1, 0),  # -1/x
    ]
    group = closure(gens)
    if group.order != 120 or not group.is_transitive():
        raise ConsistencyError(f'PGL(2,5) construction gave order {group.order}')
    return group


@lru_cache(maxsize=None)
def outer_automorphism_s6() -> GroupHom:
    """
    The action of S6 on the six left cosets of the transitive S5, as an automorphism of S6.

    Cosets are numbered 1..6 in the order their lexicographically least member appears.
    """
    s6 = symmetric_group(6)
    t = transitive_s5()
    cosets: list[frozenset[Perm]] = []
    coset_of: dict[Perm, int] = {}
    for g in s6.sorted_elements:
        if g in coset_of:
            continue
        coset = frozenset(g * x for x in t.elements)
        for y in coset:
            coset_of[y] = len(cosets)
        cosets.append(coset)
    if len(cosets) != 6:
        raise ConsistencyError(f'{len(cosets)} cosets of the transitive S5')
    reps = [min(c) for c in cosets]

    def coset_action(s: Perm) -> Perm:
        return Perm(coset_of[s * r] + 1 for r in reps)

    phi = GroupHom(s6, [coset_action(g) for g in s6.generators], s6)
    for g in s6.sorted_elements:
        if phi(g) != coset_action(g):
            raise ConsistencyError(f'coset action and generator extension disagree at {g}')
    if not phi.is_injective():
        raise ConsistencyError('coset action of S6 is not faithful')
    return phi


def inner_witness(hom: GroupHom) -> Perm | None:
    """Some c with hom(g) = c g c^-1 for all g, if the automorphism is inner."""
    group = hom.source
    for c in group.sorted_elements:
        if all(hom(g) == g.conjugate(c) for g in group.generators):
            return c
    return None
