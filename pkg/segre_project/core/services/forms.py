"""
Description: Forms of the Segre cubic. A form is fixed by the image H of the Galois group in
the configuration automorphism group S6; its automorphism group is the centralizer of H, and
a node or plane is defined over the base field exactly when H fixes it. Over the reals H is
generated by one involution (or is trivial), which gives the four real form types I-IV.

The blow-up description of types I, III and IV (five real points of P^3, the ten lines
through pairs of them, the five exceptional divisors and ten planes through triples) is
checked combinatorially through the twisted embedding of S5 into S6.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .exceptions import ConsistencyError, NotASubgroupError
from .permgroup import (
    ConjugacyClass,
    GroupHom,
    Perm,
    PermGroup,
    are_isomorphic,
    centralizer,
    classify_homs_c2,
    closure,
    cyclic_group,
    dihedral_group,
    direct_product,
    equivariant_bijection,
    fixed_count,
    outer_automorphism_s6,
    semidirect_witness,
    symmetric_group,
)
from .segre import (
    N_COORDS,
    act_on_matching,
    act_on_split,
    all_matchings,
    all_splits,
    fixed_counts,
    fixed_counts_of_group,
)

logger = logging.getLogger(__name__)


# =========================================================================
# REAL FORM TYPES
# =========================================================================

FORM_LABELS = ('I', 'II', 'III', 'IV')

FORM_REPRESENTATIVES = {
    'I': (),
    'II': ((1, 2),),
    'III': ((1, 2), (3, 4)),
    'IV': ((1, 2), (3, 4), (5, 6)),
}

FORM_STRUCTURES = {
    'I': 'S6',
    'II': 'C2 x S4',
    'III': 'C2 x D8',
    'IV': 'C2^3 : S3',
}


@dataclass(frozen=True)
class RealFormType:
    label: str
    representative: Perm
    conjugacy_class: ConjugacyClass

    @property
    def moved_points(self) -> int:
        return N_COORDS - len(self.representative.fixed_points())


@lru_cache(maxsize=None)
def classify_real_forms() -> tuple[RealFormType, ...]:
    """Classes of homomorphisms C2 -> S6, labelled I-IV by the number of points moved."""
    s6 = symmetric_group(N_COORDS)
    classes = sorted(
        classify_homs_c2(s6),
        key=lambda c: N_COORDS - len(c.representative.fixed_points()),
    )
    if len(classes) != len(FORM_LABELS):
        raise ConsistencyError(f'{len(classes)} classes of elements of order <= 2 in S6')
    forms = []
    for label, cls in zip(FORM_LABELS, classes):
        rep = Perm.from_cycles(N_COORDS, *FORM_REPRESENTATIVES[label])
        if rep not in cls.elements:
            raise ConsistencyError(f'type {label} representative {rep} is not in class of {cls.representative}')
        forms.append(RealFormType(label, rep, cls))
    return tuple(forms)


def form_type(label: str) -> RealFormType:
    for t in classify_real_forms():
        if t.label == label:
            return t
    raise KeyError(label)


def form_type_of(g: Perm) -> RealFormType:
    """The real form whose complex conjugation acts as the involution (or identity) g."""
    for t in classify_real_forms():
        if g in t.conjugacy_class.elements:
            return t
    raise NotASubgroupError(f'{g} does not have order 1 or 2')


# =========================================================================
# GALOIS IMAGES AND AUTOMORPHISM GROUPS
# =========================================================================

@dataclass(frozen=True)
class GaloisImage:
    subgroup: PermGroup

    @classmethod
    def of(cls, *generators: Perm) -> GaloisImage:
        group = closure(generators, degree=N_COORDS)
        if not group.is_subgroup_of(symmetric_group(N_COORDS)):
            raise NotASubgroupError('Galois image must act on the six coordinates')
        return cls(group)

    @classmethod
    def trivial(cls) -> GaloisImage:
        return cls.of()

    @classmethod
    def of_form(cls, t: RealFormType) -> GaloisImage:
        return cls.of(t.representative)


def form_automorphism_group(h: GaloisImage) -> PermGroup:
    return centralizer(symmetric_group(N_COORDS), h.subgroup)


def rational_counts(t: RealFormType) -> tuple[int, int]:
    """(nodes, planes) defined over the base field: those fixed by complex conjugation."""
    return fixed_counts(t.representative)


def corollary_rational_nodes() -> dict[str, int]:
    """Every real form carries a real node."""
    counts = {t.label: rational_counts(t)[0] for t in classify_real_forms()}
    empty = [label for label, n in counts.items() if n < 1]
    if empty:
        raise ConsistencyError(f'forms without a real node: {empty}')
    return counts


# =========================================================================
# STRUCTURE NAMES
# =========================================================================

@lru_cache(maxsize=None)
def _models() -> tuple[tuple[str, PermGroup], ...]:
    c2 = symmetric_group(2)
    return (
        ('S6', symmetric_group(6)),
        ('C2 x S4', direct_product(c2, symmetric_group(4))),
        ('C2 x D8', direct_product(c2, dihedral_group(8))),
        ('C2^3', direct_product(c2, direct_product(c2, c2))),
        ('C6', cyclic_group(6)),
        ('S3', symmetric_group(3)),
    )


def model_group(name: str) -> PermGroup:
    for model_name, group in _models():
        if model_name == name:
            return group
    raise KeyError(name)


def structure_witness(group: PermGroup, name: str):
    """
    Evidence that `group` has the named structure, or None.

    Product names are witnessed by an explicit isomorphism to a model group; 'C2^3 : S3'
    by a normal elementary abelian subgroup of order 8 with a complement isomorphic to S3.
    """
    if name == 'C2^3 : S3':
        found = semidirect_witness(group, 8, 6, p=2)
        if found is None:
            return None
        normal, complement = found
        if are_isomorphic(complement, model_group('S3')) is None:
            return None
        return found
    return are_isomorphic(group, model_group(name))


def structure_name(group: PermGroup) -> str:
    for name, model in _models():
        if model.order == group.order and are_isomorphic(group, model) is not None:
            return name
    if group.order == 48 and structure_witness(group, 'C2^3 : S3') is not None:
        return 'C2^3 : S3'
    return f'order {group.order}'


# =========================================================================
# FORM REPORTS
# =========================================================================

@dataclass(frozen=True)
class FormReport:
    label: str | None
    automorphism_order: int
    structure: str
    rational_points: int
    rational_planes: int

    def as_row(self) -> dict:
        return {
            'type': self.label,
            'order': self.automorphism_order,
            'structure': self.structure,
            'points': self.rational_points,
            'planes': self.rational_planes,
        }


def twist_report(h: GaloisImage) -> FormReport:
    group = form_automorphism_group(h)
    points, planes = fixed_counts_of_group(h.subgroup)
    label = None
    structure = None
    if h.subgroup.order <= 2:
        generator = max(h.subgroup.elements)
        t = form_type_of(generator)
        label = t.label
        if structure_witness(group, FORM_STRUCTURES[label]) is None:
            raise ConsistencyError(f'type {label} automorphism group is not {FORM_STRUCTURES[label]}')
        structure = FORM_STRUCTURES[label]
    return FormReport(
        label=label,
        automorphism_order=group.order,
        structure=structure or structure_name(group),
        rational_points=points,
        rational_planes=planes,
    )


def form_table() -> list[FormReport]:
    rows = [twist_report(GaloisImage.of_form(t)) for t in classify_real_forms()]
    for row in rows:
        if not 0 <= row.rational_points <= 10 or not 0 <= row.rational_planes <= 15:
            raise ConsistencyError(f'type {row.label} has impossible counts')
    logger.info('form table: ' + ', '.join(
        f'{r.label}=({r.automorphism_order},{r.rational_points},{r.rational_planes})' for r in rows
    ))
    return rows


# =========================================================================
# BLOW-UP MODEL
# =========================================================================

FIVE = tuple(range(1, 6))


def standard_inclusion(g: Perm) -> Perm:
    """S5 on {1..5} into S6, fixing 6."""
    return Perm(g.images + (N_COORDS,))


@lru_cache(maxsize=None)
def twisted_embedding() -> GroupHom:
    """psi: S5 -> S6, the standard inclusion followed by the outer automorphism."""
    s5 = symmetric_group(5)
    phi = outer_automorphism_s6()
    psi = GroupHom(s5, [phi(standard_inclusion(g)) for g in s5.generators], symmetric_group(N_COORDS))
    if not psi.is_injective():
        raise ConsistencyError('twisted embedding of S5 is not injective')
    return psi


def act_on_pair(g: Perm, pair: tuple[int, int]) -> tuple[int, int]:
    return tuple(sorted((g(pair[0]), g(pair[1]))))


def act_on_exceptional_or_triple(g: Perm, obj: tuple) -> tuple:
    """('point', i) is the exceptional divisor over point i, ('triple', t) the plane through t."""
    kind, value = obj
    if kind == 'point':
        return kind, g(value)
    return kind, tuple(sorted(g(i) for i in value))


@dataclass(frozen=True)
class BlowupRow:
    element: Perm
    fixed_pairs: int
    fixed_model_planes: int
    image_cycle_type: tuple[int, ...]
    form_label: str


@dataclass(frozen=True)
class BlowupCrosscheck:
    rows: tuple[BlowupRow, ...]
    node_bijection: dict
    plane_bijection: dict
    image_transitive: bool
    type_ii_obstructed: bool


BLOWUP_SAMPLES = ((), ((4, 5),), ((2, 3), (4, 5)))


def blowup_model_crosscheck() -> BlowupCrosscheck:
    """
    Lines through pairs of the five points become the ten nodes, exceptional divisors and
    planes through triples become the fifteen planes, both equivariantly for psi. A real
    structure permuting the five points by g then yields the form whose conjugation is psi(g).
    """
    s5 = symmetric_group(5)
    psi = twisted_embedding()
    image = psi.image()

    pairs = list(combinations(FIVE, 2))
    node_beta = equivariant_bijection(
        s5, act_on_pair, pairs,
        lambda g, s: act_on_split(psi(g), s), list(all_splits()),
    )
    if node_beta is None:
        raise ConsistencyError('no psi-equivariant bijection between point pairs and nodes')

    model_planes = [('point', i) for i in FIVE] + [('triple', t) for t in combinations(FIVE, 3)]
    plane_beta = equivariant_bijection(
        s5, act_on_exceptional_or_triple, model_planes,
        lambda g, m: act_on_matching(psi(g), m), list(all_matchings()),
    )
    if plane_beta is None:
        raise ConsistencyError('no psi-equivariant bijection between model planes and planes')

    rows = []
    for cycles in BLOWUP_SAMPLES:
        g = Perm.from_cycles(5, *cycles)
        t = form_type_of(psi(g))
        row = BlowupRow(
            element=g,
            fixed_pairs=fixed_count(g, act_on_pair, pairs),
            fixed_model_planes=fixed_count(g, act_on_exceptional_or_triple, model_planes),
            image_cycle_type=psi(g).cycle_type,
            form_label=t.label,
        )
        if (row.fixed_pairs, row.fixed_model_planes) != rational_counts(t):
            raise ConsistencyError(f'blow-up counts for {g} disagree with type {t.label}')
        rows.append(row)

    involutions = [g for g in s5.sorted_elements if g.order == 2]
    type_ii = form_type('II').representative.cycle_type
    obstructed = all(psi(g).cycle_type != type_ii for g in involutions)

    return BlowupCrosscheck(
        rows=tuple(rows),
        node_bijection=node_beta,
        plane_bijection=plane_beta,
        image_transitive=image.is_transitive(),
        type_ii_obstructed=obstructed,
    )
