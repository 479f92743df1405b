"""
Description: The Segre cubic x1 + ... + x6 = x1^3 + ... + x6^3 = 0 in P^5, built exactly.

Singular points are indexed by triple-splits {abc|def} (the point with +1 on the triple
holding 1 and -1 on the other), planes by perfect matchings {ab|cd|ef} (the plane
x_a + x_b = x_c + x_d = x_e + x_f = 0). Every geometric statement is checked against this
combinatorial dictionary: incidence, the S6 action by coordinate permutations, fixed counts
of group elements, and the automorphism group of the (10_6, 15_4) configuration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .exactmath import (
    LinearSubspace,
    MultiPoly,
    ProjPoint,
    hessian_matrix,
    jacobian_rank,
    nullspace,
    poly_substitute_linear,
    restricted_form_rank,
    verify_identity,
)
from .exceptions import (
    ConsistencyError,
    IncidenceMismatch,
    UnsupportedFormError,
)
from .permgroup import (
    GroupHom,
    Perm,
    PermGroup,
    generating_set,
    symmetric_group,
)

logger = logging.getLogger(__name__)

N_COORDS = 6
COORDS = tuple(range(1, N_COORDS + 1))

Split = tuple[tuple[int, ...], tuple[int, ...]]
Matching = tuple[tuple[int, int], ...]


# =========================================================================
# THE CUBIC
# =========================================================================

@dataclass(frozen=True)
class SegreCubic:
    equations: tuple[MultiPoly, MultiPoly]

    @classmethod
    def standard(cls) -> SegreCubic:
        return cls((MultiPoly.power_sum(1, N_COORDS), MultiPoly.power_sum(3, N_COORDS)))

    @property
    def linear(self) -> MultiPoly:
        return self.equations[0]

    @property
    def cubic(self) -> MultiPoly:
        return self.equations[1]

    def contains(self, pt: ProjPoint) -> bool:
        return all(eq.evaluate(pt.coords) == 0 for eq in self.equations)


def _cubic_or_default(cubic: SegreCubic | None) -> SegreCubic:
    return cubic if cubic is not None else SegreCubic.standard()


# =========================================================================
# COMBINATORIAL MODELS
# =========================================================================

def canonical_split(part: Sequence[int]) -> Split:
    part = set(part)
    rest = set(COORDS) - part
    first, second = (part, rest) if 1 in part else (rest, part)
    return tuple(sorted(first)), tuple(sorted(second))


def canonical_matching(pairs: Sequence[Sequence[int]]) -> Matching:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


@lru_cache(maxsize=None)
def all_splits() -> tuple[Split, ...]:
    return tuple(canonical_split(t) for t in combinations(COORDS, 3) if 1 in t)


@lru_cache(maxsize=None)
def all_matchings() -> tuple[Matching, ...]:
    def matchings(points):
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for k, partner in enumerate(rest):
            remaining = rest[:k] + rest[k + 1:]
            for tail in matchings(remaining):
                yield ((first, partner),) + tail

    return tuple(sorted(canonical_matching(m) for m in matchings(COORDS)))


def split_label(split: Split) -> str:
    return '{' + ''.join(map(str, split[0])) + '|' + ''.join(map(str, split[1])) + '}'


def matching_label(matching: Matching) -> str:
    return '{' + '|'.join(f'{a}{b}' for a, b in matching) + '}'


def parse_split(label: str) -> Split:
    first, _ = label.strip('{}').split('|')
    return canonical_split([int(c) for c in first])


def parse_matching(label: str) -> Matching:
    return canonical_matching([(int(p[0]), int(p[1])) for p in label.strip('{}').split('|')])


def act_on_split(g: Perm, split: Split) -> Split:
    return canonical_split([g(i) for i in split[0]])


def act_on_matching(g: Perm, matching: Matching) -> Matching:
    return canonical_matching([(g(a), g(b)) for a, b in matching])


def matching_crosses_split(matching: Matching, split: Split) -> bool:
    """True when every pair of the matching has one end in each triple of the split."""
    first = set(split[0])
    return all((a in first) != (b in first) for a, b in matching)


# =========================================================================
# GEOMETRIC MODELS
# =========================================================================

def split_point(split: Split) -> ProjPoint:
    first = set(split[0])
    return ProjPoint(1 if i in first else -1 for i in COORDS)


def matching_equations(matching: Matching) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i in pair else 0 for i in COORDS) for pair in matching)


def matching_plane(matching: Matching) -> LinearSubspace:
    return LinearSubspace.from_equations(matching_equations(matching), N_COORDS)


def permute_coordinates(g: Perm, pt: ProjPoint) -> ProjPoint:
    """The coordinate permutation sending x_i to position g(i)."""
    coords = [0] * N_COORDS
    for i, c in enumerate(pt.coords, start=1):
        coords[g(i) - 1] = c
    return ProjPoint(coords)


def permute_subspace(g: Perm, s: LinearSubspace) -> LinearSubspace:
    return LinearSubspace((permute_coordinates(g, p) for p in s.basis), s.n_coords)


@dataclass(frozen=True)
class SingularPoint:
    split: Split
    point: ProjPoint

    @property
    def label(self) -> str:
        return split_label(self.split)


@dataclass(frozen=True)
class PlaneOnCubic:
    matching: Matching
    subspace: LinearSubspace

    @property
    def label(self) -> str:
        return matching_label(self.matching)


# =========================================================================
# SINGULAR LOCUS
# =========================================================================

@dataclass(frozen=True)
class SingularLocusCertificate:
    """Exact evidence that the singular locus is the 10 balanced sign points."""

    minors_verified: int
    sign_patterns: int
    balanced_patterns: int
    points: frozenset[ProjPoint]


def singular_locus_certificate(cubic: SegreCubic | None = None) -> SingularLocusCertificate:
    """
    The 2x2 minors of the Jacobian of (sum x, sum x^3) are 3(x_j^2 - x_i^2), so the rank
    drops exactly where all x_i^2 agree, i.e. x = c * (+-1, ..., +-1). Of the 64 sign
    patterns, sum x = 0 leaves the 20 with three signs of each kind; up to the overall sign
    these are 10 projective points, all on the cubic.
    """
    cubic = _cubic_or_default(cubic)
    grad_linear = [cubic.linear.derivative(i) for i in COORDS]
    grad_cubic = [cubic.cubic.derivative(i) for i in COORDS]
    x = [MultiPoly.variable(i, N_COORDS) for i in COORDS]

    minors = 0
    for i, j in combinations(range(N_COORDS), 2):
        minor = grad_linear[i] * grad_cubic[j] - grad_linear[j] * grad_cubic[i]
        expected = 3 * (x[j] ** 2 - x[i] ** 2)
        if not verify_identity(minor, expected):
            raise ConsistencyError(f'Jacobian minor ({i + 1},{j + 1}) is {minor}')
        minors += 1

    balanced = []
    for signs in product((1, -1), repeat=N_COORDS):
        if cubic.linear.evaluate(signs) != 0:
            continue
        if cubic.cubic.evaluate(signs) != 0:
            raise ConsistencyError(f'balanced sign vector {signs} is off the cubic')
        balanced.append(signs)
    points = frozenset(ProjPoint(s) for s in balanced)
    return SingularLocusCertificate(minors, 2 ** N_COORDS, len(balanced), points)


def enumerate_singular_points(cubic: SegreCubic | None = None) -> list[SingularPoint]:
    cubic = _cubic_or_default(cubic)
    certificate = singular_locus_certificate(cubic)
    result = []
    for split in all_splits():
        pt = split_point(split)
        if jacobian_rank(cubic.equations, pt) != 1:
            raise ConsistencyError(f'{pt} is not singular')
        result.append(SingularPoint(split, pt))
    if {p.point for p in result} != certificate.points:
        raise ConsistencyError('split points and the sign-pattern certificate disagree')
    logger.debug(f'{len(result)} singular points')
    return result


def node_is_ordinary(point: ProjPoint, cubic: SegreCubic | None = None) -> bool:
    """
    The tangent cone at the node is a nondegenerate quadric of the P^4 model.

    The Hessian of the cubic at the node, restricted to the hyperplane sum x = 0, must have
    rank 4 (its radical there is the node direction itself).
    """
    cubic = _cubic_or_default(cubic)
    if jacobian_rank(cubic.equations, point) != 1:
        return False
    hessian = hessian_matrix(cubic.cubic, point)
    hyperplane = nullspace([cubic.linear.linear_coefficients()], N_COORDS)
    return restricted_form_rank(hessian, hyperplane) == N_COORDS - 2


# =========================================================================
# PLANES
# =========================================================================

def restrict_to_subspace(p: MultiPoly, s: LinearSubspace) -> MultiPoly:
    """p pulled back along a parametrization of s by its basis (one variable per basis point)."""
    images = [MultiPoly.linear_form([b.coords[i] for b in s.basis]) for i in range(s.n_coords)]
    return poly_substitute_linear(p, images)


def enumerate_planes(cubic: SegreCubic | None = None) -> list[PlaneOnCubic]:
    cubic = _cubic_or_default(cubic)
    result = []
    for matching in all_matchings():
        subspace = matching_plane(matching)
        if subspace.dim != 2:
            raise ConsistencyError(f'{matching_label(matching)} is not a plane')
        for eq in cubic.equations:
            if not restrict_to_subspace(eq, subspace).is_zero():
                raise ConsistencyError(f'{matching_label(matching)} does not lie on the cubic')
        result.append(PlaneOnCubic(matching, subspace))
    if len({p.subspace for p in result}) != len(result):
        raise ConsistencyError('two matchings give the same plane')
    logger.debug(f'{len(result)} planes')
    return result


# =========================================================================
# INCIDENCE
# =========================================================================

@dataclass(frozen=True)
class IncidenceStructure:
    points: tuple[SingularPoint, ...]
    planes: tuple[PlaneOnCubic, ...]
    matrix: tuple[tuple[bool, ...], ...]
    point_index: dict = field(compare=False, hash=False, repr=False, default_factory=dict)
    plane_index: dict = field(compare=False, hash=False, repr=False, default_factory=dict)

    @property
    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.matrix]

    @property
    def column_sums(self) -> list[int]:
        return [sum(col) for col in zip(*self.matrix)]

    def incident(self, point: int, plane: int) -> bool:
        return self.matrix[point][plane]

    def planes_through(self, point: int) -> list[int]:
        return [j for j, flag in enumerate(self.matrix[point]) if flag]

    def points_on(self, plane: int) -> list[int]:
        return [i for i, row in enumerate(self.matrix) if row[plane]]


def build_incidence(points: Sequence[SingularPoint], planes: Sequence[PlaneOnCubic]) -> IncidenceStructure:
    rows = []
    for pt in points:
        row = []
        for pl in planes:
            combinatorial = matching_crosses_split(pl.matching, pt.split)
            geometric = pl.subspace.contains(pt.point)
            if combinatorial != geometric:
                raise IncidenceMismatch(
                    f'{pt.label} vs {pl.label}: matching says {combinatorial}, geometry says {geometric}'
                )
            row.append(geometric)
        rows.append(tuple(row))
    return IncidenceStructure(
        tuple(points),
        tuple(planes),
        tuple(rows),
        {p.split: i for i, p in enumerate(points)},
        {p.matching: j for j, p in enumerate(planes)},
    )


@lru_cache(maxsize=None)
def standard_configuration() -> IncidenceStructure:
    cubic = SegreCubic.standard()
    return build_incidence(enumerate_singular_points(cubic), enumerate_planes(cubic))


def plane_spanned_by_points(inc: IncidenceStructure, plane: int) -> bool:
    """The nodes on a plane span it."""
    pts = [inc.points[i].point for i in inc.points_on(plane)]
    return LinearSubspace.span(pts) == inc.planes[plane].subspace


# =========================================================================
# THE S6 ACTION
# =========================================================================

def point_permutation(g: Perm, inc: IncidenceStructure | None = None) -> Perm:
    """g acting on the nodes, as a permutation of their 1-based positions in the configuration."""
    inc = inc or standard_configuration()
    return Perm(inc.point_index[act_on_split(g, p.split)] + 1 for p in inc.points)


def plane_permutation(g: Perm, inc: IncidenceStructure | None = None) -> Perm:
    inc = inc or standard_configuration()
    return Perm(inc.plane_index[act_on_matching(g, p.matching)] + 1 for p in inc.planes)


def fixed_counts(g: Perm) -> tuple[int, int]:
    """(fixed singular points, invariant planes) of a coordinate permutation."""
    points = sum(1 for s in all_splits() if act_on_split(g, s) == s)
    planes = sum(1 for m in all_matchings() if act_on_matching(g, m) == m)
    return points, planes


def fixed_counts_of_group(group: PermGroup) -> tuple[int, int]:
    """Nodes and planes fixed by every element of `group`."""
    points = sum(1 for s in all_splits() if all(act_on_split(g, s) == s for g in group.generators))
    planes = sum(
        1 for m in all_matchings() if all(act_on_matching(g, m) == m for g in group.generators)
    )
    return points, planes


@lru_cache(maxsize=None)
def s6_geometric_action() -> tuple[GroupHom, GroupHom]:
    """
    Homomorphisms S6 -> Sym(10 nodes) and S6 -> Sym(15 planes).

    Generators are checked geometrically (permuting coordinates of the node or the plane
    gives the node or plane of the permuted split or matching); the extension to all of S6
    is then checked element by element against the combinatorial action, and incidence is
    checked to be preserved.
    """
    inc = standard_configuration()
    s6 = symmetric_group(N_COORDS)

    for g in s6.generators:
        for pt in inc.points:
            if permute_coordinates(g, pt.point) != split_point(act_on_split(g, pt.split)):
                raise ConsistencyError(f'{g} moves node {pt.label} off its split')
        for pl in inc.planes:
            if permute_subspace(g, pl.subspace) != matching_plane(act_on_matching(g, pl.matching)):
                raise ConsistencyError(f'{g} moves plane {pl.label} off its matching')

    on_points = GroupHom(s6, [point_permutation(g, inc) for g in s6.generators])
    on_planes = GroupHom(s6, [plane_permutation(g, inc) for g in s6.generators])
    for g in s6.sorted_elements:
        if on_points(g) != point_permutation(g, inc) or on_planes(g) != plane_permutation(g, inc):
            raise ConsistencyError(f'generator extension disagrees with the direct action at {g}')

    for g in s6.generators:
        pg, lg = on_points(g), on_planes(g)
        for i, j in product(range(len(inc.points)), range(len(inc.planes))):
            if inc.matrix[i][j] != inc.matrix[pg(i + 1) - 1][lg(j + 1) - 1]:
                raise IncidenceMismatch(f'{g} does not preserve incidence')
    return on_points, on_planes


# =========================================================================
# CONFIGURATION AUTOMORPHISMS
# =========================================================================

@dataclass(frozen=True)
class ConfigurationAutomorphisms:
    group: PermGroup
    plane_actions: dict[Perm, Perm]
    nodes_visited: int


def configuration_automorphisms(inc: IncidenceStructure | None = None) -> ConfigurationAutomorphisms:
    """
    All permutations of the nodes that carry planes to planes, found by backtracking.

    Any two nodes share exactly two planes, so pairs carry no information; the search
    prunes instead on coplanar triples, which a configuration automorphism must preserve
    in both directions. Each leaf is checked to induce a permutation of the 15 planes.
    """
    inc = inc or standard_configuration()
    n_points = len(inc.points)
    blocks = [frozenset(inc.points_on(j)) for j in range(len(inc.planes))]
    block_index = {b: j for j, b in enumerate(blocks)}
    coplanar = {frozenset(t) for b in blocks for t in combinations(sorted(b), 3)}

    found: list[Perm] = []
    plane_actions: dict[Perm, Perm] = {}
    visited = 0
    images: list[int] = []

    def extend():
        nonlocal visited
        visited += 1
        k = len(images)
        if k == n_points:
            plane_images = []
            for b in blocks:
                target = frozenset(images[i] for i in b)
                if target not in block_index:
                    return
                plane_images.append(block_index[target] + 1)
            perm = Perm(i + 1 for i in images)
            found.append(perm)
            plane_actions[perm] = Perm(plane_images)
            return
        used = set(images)
        for candidate in range(n_points):
            if candidate in used:
                continue
            ok = True
            for i, j in combinations(range(k), 2):
                if (frozenset((i, j, k)) in coplanar) != (
                    frozenset((images[i], images[j], candidate)) in coplanar
                ):
                    ok = False
                    break
            if not ok:
                continue
            images.append(candidate)
            extend()
            images.pop()

    extend()
    gens = generating_set(found, n_points)
    group = PermGroup(n_points, gens, found)
    logger.info(f'configuration automorphisms: order {group.order}, {visited} search nodes')
    return ConfigurationAutomorphisms(group, plane_actions, visited)


# =========================================================================
# HYPERPLANE SECTIONS
# =========================================================================

@dataclass(frozen=True)
class HyperplaneSection:
    pair: tuple[int, int]
    planes: tuple[PlaneOnCubic, ...]
    common_point: ProjPoint | None
    factorization_verified: bool


def _pair_of_form(form: MultiPoly) -> tuple[int, int]:
    if form.nvars != N_COORDS or not form.is_linear_form():
        raise UnsupportedFormError(f'{form} is not a linear form in x1..x6')
    coeffs = form.linear_coefficients()
    support = [i + 1 for i, c in enumerate(coeffs) if c != 0]
    if len(support) != 2 or any(coeffs[i - 1] != 1 for i in support):
        raise UnsupportedFormError(f'{form} is not of the shape x_a + x_b')
    return support[0], support[1]


def sum_of_cubes_factorization(c: int, d: int, e: int) -> tuple[MultiPoly, MultiPoly]:
    """Both sides of x_c^3 + x_d^3 + x_e^3 - (x_c + x_d + x_e)^3 = -3(x_c + x_d)(x_c + x_e)(x_d + x_e)."""
    x = {i: MultiPoly.variable(i, N_COORDS) for i in COORDS}
    lhs = x[c] ** 3 + x[d] ** 3 + x[e] ** 3 - (x[c] + x[d] + x[e]) ** 3
    rhs = -3 * (x[c] + x[d]) * (x[c] + x[e]) * (x[d] + x[e])
    return lhs, rhs


def hyperplane_section_planes(form: MultiPoly, cubic: SegreCubic | None = None) -> HyperplaneSection:
    """
    The planes in the section of the cubic by x_a + x_b = 0 and their common point.

    On x_b = -x_a and x_f = -(x_c + x_d + x_e) the cubic restricts to
    -3(x_c + x_d)(x_c + x_e)(x_d + x_e), so the section is exactly the three planes whose
    matching contains {a, b}.
    """
    cubic = _cubic_or_default(cubic)
    a, b = _pair_of_form(form)
    c, d, e, f = [i for i in COORDS if i not in (a, b)]

    x = {i: MultiPoly.variable(i, N_COORDS) for i in COORDS}
    images = [x[i] for i in COORDS]
    images[b - 1] = -x[a]
    images[f - 1] = -(x[c] + x[d] + x[e])
    restricted = poly_substitute_linear(cubic.cubic, images)
    lhs, rhs = sum_of_cubes_factorization(c, d, e)
    verified = verify_identity(lhs, rhs) and verify_identity(restricted, rhs)
    if not verified:
        raise ConsistencyError(f'section by x{a} + x{b} does not factor as expected')

    # on the section, x_c + x_d = 0 forces x_e + x_f = 0, and likewise for the other factors
    from_factors = {
        canonical_matching([(a, b), (c, d), (e, f)]),
        canonical_matching([(a, b), (c, e), (d, f)]),
        canonical_matching([(a, b), (d, e), (c, f)]),
    }
    containing = [m for m in all_matchings() if (a, b) in m]
    if set(containing) != from_factors:
        raise ConsistencyError(f'planes of the section by x{a} + x{b} do not match the factors')

    planes = tuple(PlaneOnCubic(m, matching_plane(m)) for m in containing)
    meet = planes[0].subspace
    for pl in planes[1:]:
        meet = meet.intersection(pl.subspace)
    common = meet.basis[0].normalized() if meet.dim == 0 else None
    return HyperplaneSection((a, b), planes, common, verified)


# =========================================================================
# SERIALIZATION
# =========================================================================

def serialize_configuration(inc: IncidenceStructure | None = None) -> dict:
    """Deterministic layout of nodes, planes, incidence and the S6 generator actions."""
    inc = inc or standard_configuration()
    on_points, on_planes = s6_geometric_action()
    s6 = on_points.source
    return {
        'points': [
            {'label': p.label, 'coords': list(p.point.canonical)} for p in inc.points
        ],
        'planes': [
            {'label': p.label, 'equations': [list(r) for r in matching_equations(p.matching)]}
            for p in inc.planes
        ],
        'incidence': [[int(flag) for flag in row] for row in inc.matrix],
        'actions': {
            repr(g): {
                'points': list(on_points(g).images),
                'planes': list(on_planes(g).images),
            }
            for g in s6.generators
        },
    }
