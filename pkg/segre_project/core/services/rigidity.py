"""
Description: Finite group-theoretic case analysis behind equivariant birational rigidity of
the Segre cubic. A subgroup F of S6 either contains a standard A5 (one fixing a coordinate)
or is conjugate into one of four case subgroups: the non-standard S5, the stabilizer of a
node, the stabilizer of a plane, or S4 x C2 acting on {1,2,3,4} and {5,6}. This module checks
that dichotomy over every conjugacy class of subgroups, lists the overgroups of the standard
A5, the commuting normal factorizations of those overgroups, the plane orbits of both S5
embeddings, the structure of the node and plane stabilizers, and the geometry of the fourth
case.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .exactmath import MultiPoly, ProjPoint
from .exceptions import ConsistencyError, GroupOrderError
from .forms import classify_real_forms, form_automorphism_group, GaloisImage
from .permgroup import (
    GroupHom,
    Perm,
    PermGroup,
    all_subgroups,
    alternating_group_on,
    are_isomorphic,
    closure,
    commute_elementwise,
    direct_product,
    is_subconjugate,
    normal_subgroups,
    orbit_and_stabilizer,
    orbit_lengths,
    orbits,
    outer_automorphism_s6,
    split_extension_witness,
    subgroups_up_to_conjugacy,
    symmetric_group,
    symmetric_group_on,
)
from .segre import (
    N_COORDS,
    HyperplaneSection,
    SegreCubic,
    act_on_matching,
    act_on_split,
    all_matchings,
    all_splits,
    hyperplane_section_planes,
    matching_label,
    parse_matching,
    parse_split,
    permute_coordinates,
)

logger = logging.getLogger(__name__)

CASE_NAMES = ('nonstandard-S5', 'point-stabilizer', 'plane-stabilizer', 'fourth-S4xC2')
CONTAINS_STANDARD_A5 = 'contains-standard-A5'
ESCAPE = 'escape'

CASE_SPLIT = '{123|456}'
CASE_MATCHING = '{12|34|56}'


# =========================================================================
# STANDARD SUBGROUPS
# =========================================================================

@lru_cache(maxsize=None)
def standard_a5() -> PermGroup:
    return alternating_group_on(range(1, 6), N_COORDS)


@lru_cache(maxsize=None)
def standard_s5() -> PermGroup:
    return symmetric_group_on(range(1, 6), N_COORDS)


def is_standard(group: PermGroup) -> bool:
    """A copy of A5 or S5 in S6 is standard when it fixes one of the coordinates."""
    if group.order not in (60, 120):
        raise GroupOrderError(f'order {group.order} is neither 60 nor 120')
    return any(all(g(i) == i for g in group.generators) for i in range(1, group.degree + 1))


@lru_cache(maxsize=None)
def nonstandard_s5() -> PermGroup:
    return outer_automorphism_s6().image_of(standard_s5())


# =========================================================================
# CASE SUBGROUPS
# =========================================================================

@dataclass(frozen=True)
class CaseSubgroup:
    name: str
    group: PermGroup


@lru_cache(maxsize=None)
def case_subgroups() -> tuple[CaseSubgroup, ...]:
    s6 = symmetric_group(N_COORDS)
    _, point_stab = orbit_and_stabilizer(s6, act_on_split, parse_split(CASE_SPLIT))
    _, plane_stab = orbit_and_stabilizer(s6, act_on_matching, parse_matching(CASE_MATCHING))
    fourth = closure(
        list(symmetric_group_on((1, 2, 3, 4), N_COORDS).generators)
        + [Perm.from_cycles(N_COORDS, (5, 6))]
    )
    cases = (
        CaseSubgroup('nonstandard-S5', nonstandard_s5()),
        CaseSubgroup('point-stabilizer', point_stab),
        CaseSubgroup('plane-stabilizer', plane_stab),
        CaseSubgroup('fourth-S4xC2', fourth),
    )
    expected = {'nonstandard-S5': 120, 'point-stabilizer': 72, 'plane-stabilizer': 48, 'fourth-S4xC2': 48}
    for case in cases:
        if case.group.order != expected[case.name]:
            raise ConsistencyError(f'{case.name} has order {case.group.order}')
    if not cases[0].group.is_transitive():
        raise ConsistencyError('the twisted S5 is not transitive')
    return cases


def case_subgroup(name: str) -> PermGroup:
    for case in case_subgroups():
        if case.name == name:
            return case.group
    raise KeyError(name)


@dataclass(frozen=True)
class StabilizerStructure:
    """Node stabilizer S3^2 : C2 (normal S3 x S3 plus a swapping involution), plane stabilizer C2 x S4."""

    node_normal: PermGroup | None
    node_complement: PermGroup | None
    plane_isomorphism: GroupHom | None

    @property
    def verified(self) -> bool:
        return self.node_normal is not None and self.plane_isomorphism is not None


def stabilizer_structures() -> StabilizerStructure:
    s3 = symmetric_group(3)
    c2 = symmetric_group(2)
    found = split_extension_witness(case_subgroup('point-stabilizer'), direct_product(s3, s3), c2)
    normal, complement = found if found is not None else (None, None)
    plane = are_isomorphic(case_subgroup('plane-stabilizer'), direct_product(c2, symmetric_group(4)))
    logger.debug(f'stabilizer structures: node {found is not None}, plane {plane is not None}')
    return StabilizerStructure(normal, complement, plane)


@dataclass(frozen=True)
class CaseInvariants:
    name: str
    order: int
    fixed_nodes: int
    fixed_planes: int
    node_orbits: tuple[int, ...]
    plane_orbits: tuple[int, ...]

    @property
    def signature(self) -> tuple:
        return self.order, self.node_orbits, self.plane_orbits


def case_invariants() -> list[CaseInvariants]:
    """Orbit signatures on nodes and planes; distinct signatures mean distinct conjugacy classes."""
    result = []
    for case in case_subgroups():
        node_orbits = orbits(case.group, act_on_split, all_splits())
        plane_orbits = orbits(case.group, act_on_matching, all_matchings())
        result.append(CaseInvariants(
            name=case.name,
            order=case.group.order,
            fixed_nodes=sum(1 for o in node_orbits if len(o) == 1),
            fixed_planes=sum(1 for o in plane_orbits if len(o) == 1),
            node_orbits=tuple(sorted(len(o) for o in node_orbits)),
            plane_orbits=tuple(sorted(len(o) for o in plane_orbits)),
        ))
    return result


# =========================================================================
# THE DICHOTOMY
# =========================================================================

@dataclass(frozen=True)
class Verdict:
    order: int
    class_size: int
    representative: PermGroup
    verdict: str
    conjugator: Perm | None

    def as_row(self) -> dict:
        return {
            'order': self.order,
            'class_size': self.class_size,
            'generators': [list(g.images) for g in self.representative.generators],
            'verdict': self.verdict,
            'conjugator': list(self.conjugator.images) if self.conjugator is not None else None,
        }


@dataclass(frozen=True)
class TheoremWitness:
    verdicts: tuple[Verdict, ...]

    @property
    def escapes(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.verdict == ESCAPE]

    def count(self, verdict: str) -> int:
        return sum(1 for v in self.verdicts if v.verdict == verdict)


def classify_subgroup(group: PermGroup) -> tuple[str, Perm | None]:
    """
    Contains a conjugate of the standard A5 (conjugator g with g A5 g^-1 inside the group),
    otherwise the first case subgroup it is conjugate into, otherwise an escape.
    """
    s6 = symmetric_group(N_COORDS)
    g = is_subconjugate(standard_a5(), group, s6)
    if g is not None:
        return CONTAINS_STANDARD_A5, g
    for case in case_subgroups():
        g = is_subconjugate(group, case.group, s6)
        if g is not None:
            return case.name, g
    return ESCAPE, None


def verify_a5free_classification(workers: int = 1) -> TheoremWitness:
    classes = subgroups_up_to_conjugacy(symmetric_group(N_COORDS))
    reps = [c.representative for c in classes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(classify_subgroup, reps, chunksize=4))
    else:
        outcomes = [classify_subgroup(r) for r in reps]

    verdicts = tuple(
        Verdict(c.order, c.size, c.representative, verdict, conjugator)
        for c, (verdict, conjugator) in zip(classes, outcomes)
    )
    witness = TheoremWitness(verdicts)
    for v in witness.escapes:
        logger.error(f'subgroup of order {v.order} escapes every case: {v.representative!r}')
    logger.info(
        f'{len(verdicts)} subgroup classes: {witness.count(CONTAINS_STANDARD_A5)} contain a standard A5, '
        f'{len(witness.escapes)} escape'
    )
    return witness


def overgroups_of_standard_a5() -> list[PermGroup]:
    a5 = standard_a5()
    found = [h for h in all_subgroups(symmetric_group(N_COORDS)) if a5.is_subgroup_of(h)]
    return sorted(found, key=lambda h: h.order)


def rigid_subgroup_classes(witness: TheoremWitness | None = None) -> list[Verdict]:
    """Subgroup classes containing a standard A5: the groups acting rigidly on the cubic."""
    witness = witness or verify_a5free_classification()
    return [v for v in witness.verdicts if v.verdict == CONTAINS_STANDARD_A5]


def real_form_rigidity() -> dict[str, bool]:
    """Whether each real form's automorphism group contains a standard A5."""
    s6 = symmetric_group(N_COORDS)
    return {
        t.label: is_subconjugate(standard_a5(), form_automorphism_group(GaloisImage.of_form(t)), s6) is not None
        for t in classify_real_forms()
    }


# =========================================================================
# COMMUTING NORMAL FACTORIZATIONS
# =========================================================================

def commuting_normal_factorization(group: PermGroup) -> list[tuple[PermGroup, PermGroup]]:
    """Ordered pairs (G, H) of normal subgroups with [G, H] = 1 and <G, H> = the group."""
    normals = normal_subgroups(group)
    pairs = []
    for g in normals:
        for h in normals:
            if not commute_elementwise(g, h):
                continue
            if closure(g.generators + h.generators, degree=group.degree) == group:
                pairs.append((g, h))
    return pairs


def factorization_is_trivial(group: PermGroup, pairs: list[tuple[PermGroup, PermGroup]]) -> bool:
    return bool(pairs) and all(
        (g == group and h.is_trivial()) or (h == group and g.is_trivial()) for g, h in pairs
    )


# =========================================================================
# ORBITS AND THE FOURTH CASE
# =========================================================================

def s5_plane_orbits(embedding: str) -> list[int]:
    if embedding == 'standard':
        group = standard_s5()
    elif embedding == 'nonstandard':
        group = nonstandard_s5()
    else:
        raise ValueError(f'unknown embedding {embedding!r}')
    return orbit_lengths(group, act_on_matching, all_matchings())


@dataclass(frozen=True)
class FourthCaseGeometry:
    plane_orbit: tuple[str, ...]
    invariant_point: ProjPoint
    point_stabilizer_order: int
    point_on_planes: bool
    point_on_cubic: bool
    section: HyperplaneSection


def fourth_case_geometry() -> FourthCaseGeometry:
    group = case_subgroup('fourth-S4xC2')
    orbit, _ = orbit_and_stabilizer(group, act_on_matching, parse_matching(CASE_MATCHING))
    section = hyperplane_section_planes(MultiPoly.linear_form([0, 0, 0, 0, 1, 1]))
    if set(orbit) != {p.matching for p in section.planes}:
        raise ConsistencyError('plane orbit of the fourth case is not the section by x5 + x6 = 0')
    p = section.common_point
    if p is None:
        raise ConsistencyError('the three planes have no single common point')
    _, stab = orbit_and_stabilizer(group, permute_coordinates, p)
    return FourthCaseGeometry(
        plane_orbit=tuple(sorted(matching_label(m) for m in orbit)),
        invariant_point=p,
        point_stabilizer_order=stab.order,
        point_on_planes=all(pl.subspace.contains(p) for pl in section.planes),
        point_on_cubic=SegreCubic.standard().contains(p),
        section=section,
    )
