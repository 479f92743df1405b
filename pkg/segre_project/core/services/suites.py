"""
Description: Verification suites. Each suite is a list of named checks; a check computes an
actual value and compares it with the expected one under canonical serialization. Any
exception raised while computing a check becomes an `error` report, so a suite always runs
to the end and every failure is reported.

Suites: geometry, configuration, lemma-involutions, forms, theorem, subgroups. Seeded
property families (polynomial ring axioms, orbit-stabilizer, class equation, action
equivariance) run inside the suites they belong to.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable

from .exactmath import MultiPoly, ProjPoint, jacobian_rank
from .forms import (
    FORM_STRUCTURES,
    GaloisImage,
    blowup_model_crosscheck,
    classify_real_forms,
    corollary_rational_nodes,
    form_automorphism_group,
    form_table,
    model_group,
    rational_counts,
    structure_witness,
    twist_report,
)
from .permgroup import (
    Perm,
    PermGroup,
    alternating_group,
    are_isomorphic,
    centralizer,
    class_of,
    closure,
    conjugacy_classes,
    cycle_type_label,
    inner_witness,
    is_subconjugate,
    normal_subgroups,
    orbit_and_stabilizer,
    orbits,
    outer_automorphism_s6,
    subgroup_lattice,
    symmetric_group,
)
from .reporting import CheckReport, error_report, make_report
from .rigidity import (
    CASE_NAMES,
    CONTAINS_STANDARD_A5,
    ESCAPE,
    case_invariants,
    case_subgroup,
    classify_subgroup,
    commuting_normal_factorization,
    factorization_is_trivial,
    fourth_case_geometry,
    is_standard,
    nonstandard_s5,
    overgroups_of_standard_a5,
    real_form_rigidity,
    rigid_subgroup_classes,
    s5_plane_orbits,
    stabilizer_structures,
    standard_a5,
    standard_s5,
    verify_a5free_classification,
)
from .segre import (
    N_COORDS,
    SegreCubic,
    act_on_matching,
    act_on_split,
    all_matchings,
    all_splits,
    configuration_automorphisms,
    enumerate_planes,
    enumerate_singular_points,
    fixed_counts,
    hyperplane_section_planes,
    matching_label,
    matching_plane,
    node_is_ordinary,
    parse_matching,
    parse_split,
    permute_coordinates,
    permute_subspace,
    plane_spanned_by_points,
    s6_geometric_action,
    serialize_configuration,
    singular_locus_certificate,
    split_point,
    standard_configuration,
)

logger = logging.getLogger(__name__)

SUITE_ORDER = ('geometry', 'configuration', 'lemma-involutions', 'forms', 'theorem', 'subgroups')

# conjugacy classes of subgroups of S6, pre-registered from an independent enumeration
S6_SUBGROUP_CLASSES = 56
S6_SUBGROUP_TOTAL = 1455


@dataclass(frozen=True)
class Outcome:
    """An actual value together with the evidence behind it."""

    actual: Any
    witness: Any = None


def _p(degree: int, *cycles) -> Perm:
    return Perm.from_cycles(degree, *cycles)


# =========================================================================
# RANDOM INPUTS FOR PROPERTY FAMILIES
# =========================================================================

def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 5))


def random_poly(rng: random.Random, nvars: int = N_COORDS, max_degree: int = 2, n_terms: int = 3) -> MultiPoly:
    terms = {}
    for _ in range(n_terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = random_rational(rng)
    return MultiPoly(nvars, terms)


def random_homogeneous(rng: random.Random, degree: int, nvars: int = N_COORDS, n_terms: int = 3) -> MultiPoly:
    terms = {}
    for _ in range(n_terms):
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = random_rational(rng)
    return MultiPoly(nvars, terms)


def random_perm(rng: random.Random, degree: int = N_COORDS) -> Perm:
    return Perm(rng.sample(range(1, degree + 1), degree))


def random_subgroup(rng: random.Random) -> PermGroup:
    return closure([random_perm(rng) for _ in range(rng.randint(1, 2))], degree=N_COORDS)


def _polynomial_sample(rng: random.Random):
    p, q, r = (random_poly(rng) for _ in range(3))
    if (p + q) * r != p * r + q * r:
        return {'p': repr(p), 'q': repr(q), 'r': repr(r), 'law': 'distributivity'}
    degree = rng.randint(1, 3)
    h = random_homogeneous(rng, degree)
    v = [rng.randint(-4, 4) for _ in range(N_COORDS)]
    lam = random_rational(rng) or Fraction(1)
    if h.evaluate([lam * x for x in v]) != lam ** degree * h.evaluate(v):
        return {'p': repr(h), 'point': v, 'scale': str(lam), 'law': 'homogeneity'}
    return None


def _orbit_stabilizer_sample(rng: random.Random):
    group = random_subgroup(rng)
    if rng.random() < 0.5:
        x, action = rng.choice(all_splits()), act_on_split
    else:
        x, action = rng.choice(all_matchings()), act_on_matching
    orbit, stab = orbit_and_stabilizer(group, action, x)
    if len(orbit) * stab.order != group.order:
        return {'group': [list(g.images) for g in group.generators], 'point': repr(x)}
    return None


def _class_equation_sample(rng: random.Random):
    group = random_subgroup(rng)
    sizes = [c.size for c in conjugacy_classes(group)]
    if sum(sizes) != group.order or any(group.order % s for s in sizes):
        return {'group': [list(g.images) for g in group.generators], 'sizes': sizes}
    g = rng.choice(group.sorted_elements)
    if centralizer(group, g).order * class_of(group, g).size != group.order:
        return {'group': [list(x.images) for x in group.generators], 'element': list(g.images)}
    return None


def _equivariance_sample(rng: random.Random):
    g = random_perm(rng)
    split = rng.choice(all_splits())
    if permute_coordinates(g, split_point(split)) != split_point(act_on_split(g, split)):
        return {'element': list(g.images), 'node': repr(split)}
    matching = rng.choice(all_matchings())
    if permute_subspace(g, matching_plane(matching)) != matching_plane(act_on_matching(g, matching)):
        return {'element': list(g.images), 'plane': matching_label(matching)}
    return None


PROPERTY_FAMILIES: dict[str, Callable[[random.Random], Any]] = {
    'polynomial-ring': _polynomial_sample,
    'orbit-stabilizer': _orbit_stabilizer_sample,
    'class-equation': _class_equation_sample,
    'action-equivariance': _equivariance_sample,
}


def run_property_family(name: str, seed: int, samples: int) -> Outcome:
    rng = random.Random(f'{seed}:{name}')
    sample = PROPERTY_FAMILIES[name]
    failures = 0
    first = None
    for _ in range(samples):
        witness = sample(rng)
        if witness is not None:
            failures += 1
            first = first or witness
    return Outcome({'samples': samples, 'failures': failures}, first)


# =========================================================================
# THE SERVICE
# =========================================================================

class VerificationService:
    """
    Runs verification suites and collects CheckReports.

    Heavy shared results (the subgroup lattice, the classification verdicts) are computed
    once per service and reused by every check that needs them.
    """

    def __init__(self, workers: int = 1, seed: int = 0, samples: int = 250):
        self.workers = workers
        self.seed = seed
        self.samples = samples
        self.suites: dict[str, Callable[[], None]] = {
            'geometry': self._geometry,
            'configuration': self._configuration,
            'lemma-involutions': self._lemma_involutions,
            'forms': self._forms,
            'theorem': self._theorem,
            'subgroups': self._subgroups,
        }
        self._reports: list[CheckReport] = []

    def run(self, suite: str) -> list[CheckReport]:
        if suite not in self.suites:
            raise ValueError(f'unknown suite {suite!r}')
        logger.info(f'suite {suite}: start')
        self._reports = []
        self.suites[suite]()
        reports = sorted(self._reports, key=lambda r: r.check_id)
        failed = [r.check_id for r in reports if not r.passed]
        logger.info(f'suite {suite}: {len(reports)} checks, {len(failed)} not passing')
        return reports

    def run_many(self, suites) -> list[CheckReport]:
        reports = []
        for suite in SUITE_ORDER:
            if suite in suites:
                reports.extend(self.run(suite))
        return reports

    def check(self, check_id: str, expected: Any, compute: Callable[[], Any]) -> CheckReport:
        try:
            result = compute()
        except Exception as exc:
            logger.exception(f'check {check_id} raised')
            report = error_report(check_id, expected, exc)
        else:
            if isinstance(result, Outcome):
                report = make_report(check_id, expected, result.actual, result.witness)
            else:
                report = make_report(check_id, expected, result)
        self._reports.append(report)
        return report

    def property_check(self, check_id: str, family: str) -> CheckReport:
        return self.check(
            check_id,
            {'samples': self.samples, 'failures': 0},
            lambda: run_property_family(family, self.seed, self.samples),
        )

    # ----- shared heavy results ---------------------------------------------

    @cached_property
    def s6(self) -> PermGroup:
        return symmetric_group(N_COORDS)

    @cached_property
    def theorem_witness(self):
        return verify_a5free_classification(workers=self.workers)

    # ----- geometry ------------------------------------------------------

    def _geometry(self) -> None:
        cubic = SegreCubic.standard()
        node = ProjPoint.of(1, 1, 1, -1, -1, -1)

        def symmetric_equations():
            x = [MultiPoly.variable(i, N_COORDS) for i in range(1, N_COORDS + 1)]
            ok = True
            for g in self.s6.generators:
                images = [x[g(i) - 1] for i in range(1, N_COORDS + 1)]
                ok = ok and all(eq.substitute_linear(images) == eq for eq in cubic.equations)
            return ok and all(eq.is_homogeneous() for eq in cubic.equations)

        self.check('geometry.equations_homogeneous_symmetric', True, symmetric_equations)
        self.check('geometry.singular_point_count', 10, lambda: len(enumerate_singular_points(cubic)))
        self.check(
            'geometry.contains_node_111',
            True,
            lambda: node in {p.point for p in enumerate_singular_points(cubic)},
        )
        self.check(
            'geometry.node_jacobian_ranks',
            [1] * 10,
            lambda: [jacobian_rank(cubic.equations, p.point) for p in enumerate_singular_points(cubic)],
        )
        self.check(
            'geometry.smooth_point_rank',
            2,
            lambda: jacobian_rank(cubic.equations, ProjPoint.of(1, -1, 2, -2, 3, -3)),
        )

        def certificate():
            cert = singular_locus_certificate(cubic)
            return Outcome(
                {
                    'minors': cert.minors_verified,
                    'sign_patterns': cert.sign_patterns,
                    'balanced': cert.balanced_patterns,
                    'points': len(cert.points),
                },
                sorted(list(p.canonical) for p in cert.points),
            )

        self.check(
            'geometry.singular_locus_certificate',
            {'minors': 15, 'sign_patterns': 64, 'balanced': 20, 'points': 10},
            certificate,
        )
        self.check(
            'geometry.nodes_ordinary',
            [True] * 10,
            lambda: [node_is_ordinary(p.point, cubic) for p in enumerate_singular_points(cubic)],
        )
        self.check('geometry.plane_count', 15, lambda: len(enumerate_planes(cubic)))
        self.check(
            'geometry.planes_distinct',
            15,
            lambda: len({p.subspace for p in enumerate_planes(cubic)}),
        )
        self.check(
            'geometry.contains_plane_12_34_56',
            True,
            lambda: parse_matching('{12|34|56}') in {p.matching for p in enumerate_planes(cubic)},
        )

        inc = standard_configuration()
        self.check('geometry.incidence_row_sums', [6] * 10, lambda: inc.row_sums)
        self.check('geometry.incidence_column_sums', [4] * 15, lambda: inc.column_sums)

        def incident(split, matching):
            return inc.incident(inc.point_index[parse_split(split)], inc.plane_index[parse_matching(matching)])

        self.check('geometry.incidence_123_on_14_25_36', True, lambda: incident('{123|456}', '{14|25|36}'))
        self.check('geometry.incidence_123_on_12_34_56', False, lambda: incident('{123|456}', '{12|34|56}'))
        self.check(
            'geometry.planes_spanned_by_nodes',
            [True] * 15,
            lambda: [plane_spanned_by_points(inc, j) for j in range(len(inc.planes))],
        )

        def section(coeffs):
            result = hyperplane_section_planes(MultiPoly.linear_form(coeffs), cubic)
            return Outcome(
                {
                    'planes': sorted(p.label for p in result.planes),
                    'common_point': result.common_point,
                    'factorization': result.factorization_verified,
                },
            )

        self.check(
            'geometry.section_x5_plus_x6',
            {
                'planes': ['{12|34|56}', '{13|24|56}', '{14|23|56}'],
                'common_point': ProjPoint.of(0, 0, 0, 0, 1, -1),
                'factorization': True,
            },
            lambda: section([0, 0, 0, 0, 1, 1]),
        )
        self.check(
            'geometry.section_x1_plus_x2',
            {
                'planes': ['{12|34|56}', '{12|35|46}', '{12|36|45}'],
                'common_point': ProjPoint.of(1, -1, 0, 0, 0, 0),
                'factorization': True,
            },
            lambda: section([1, 1, 0, 0, 0, 0]),
        )
        self.property_check('geometry.property.polynomial_ring', 'polynomial-ring')

    # ----- configuration -------------------------------------------------

    def _configuration(self) -> None:
        def actions():
            return s6_geometric_action()

        self.check(
            'configuration.actions_injective',
            [True, True],
            lambda: [h.is_injective() for h in actions()],
        )
        self.check(
            'configuration.actions_transitive',
            [True, True],
            lambda: [h.image().is_transitive() for h in actions()],
        )
        self.check('configuration.kernels_trivial', [1, 1], lambda: [h.kernel().order for h in actions()])

        def class_function():
            table = {}
            for cls in conjugacy_classes(self.s6):
                values = {fixed_counts(g) for g in cls.elements}
                if len(values) != 1:
                    return Outcome(False, {'class': cls.representative})
                table[cycle_type_label(cls.representative.cycle_type)] = values.pop()
            return Outcome(True, table)

        self.check('configuration.fixed_counts_class_function', True, class_function)

        def automorphisms():
            return configuration_automorphisms(standard_configuration())

        self.check('configuration.automorphism_order', 720, lambda: automorphisms().group.order)
        self.check(
            'configuration.automorphisms_are_induced',
            True,
            lambda: automorphisms().group == actions()[0].image(),
        )

        def plane_actions_agree():
            on_points, on_planes = actions()
            found = automorphisms().plane_actions
            bad = [g for g in self.s6.sorted_elements if found.get(on_points(g)) != on_planes(g)]
            return Outcome(len(bad), bad[:1])

        self.check('configuration.plane_actions_match_s6_action', 0, plane_actions_agree)
        self.check(
            'configuration.six_cycle_found',
            True,
            lambda: actions()[0](_p(6, (1, 2, 3, 4, 5, 6))) in automorphisms().group,
        )
        self.check(
            'configuration.automorphisms_isomorphic_to_s6',
            True,
            lambda: are_isomorphic(automorphisms().group, self.s6) is not None,
        )

        def layout():
            data = serialize_configuration()
            return Outcome({'points': len(data['points']), 'planes': len(data['planes'])}, data)

        self.check('configuration.serialized_layout', {'points': 10, 'planes': 15}, layout)
        self.property_check('configuration.property.action_equivariance', 'action-equivariance')

    # ----- lemma on involutions -----------------------------------------

    def _lemma_involutions(self) -> None:
        involutions = {
            'transposition': _p(6, (1, 2)),
            'double_transposition': _p(6, (1, 2), (3, 4)),
            'triple_transposition': _p(6, (1, 2), (3, 4), (5, 6)),
        }
        self.check(
            'lemma-involutions.fixed_counts',
            {'transposition': [4, 3], 'double_transposition': [2, 3], 'triple_transposition': [4, 7]},
            lambda: {k: fixed_counts(g) for k, g in involutions.items()},
        )
        self.check(
            'lemma-involutions.centralizer_orders',
            {'transposition': 48, 'double_transposition': 16, 'triple_transposition': 48},
            lambda: {k: centralizer(self.s6, g).order for k, g in involutions.items()},
        )
        self.check(
            'lemma-involutions.class_sizes',
            {'transposition': 15, 'double_transposition': 45, 'triple_transposition': 15},
            lambda: {k: class_of(self.s6, g).size for k, g in involutions.items()},
        )
        self.check('lemma-involutions.s6_class_count', 11, lambda: len(conjugacy_classes(self.s6)))

        def iso(key, model):
            def compute():
                hom = are_isomorphic(centralizer(self.s6, involutions[key]), model_group(model))
                return Outcome(hom is not None, hom)
            return compute

        self.check('lemma-involutions.centralizer_transposition_c2xs4', True, iso('transposition', 'C2 x S4'))
        self.check('lemma-involutions.centralizer_double_c2xd8', True, iso('double_transposition', 'C2 x D8'))

        def semidirect():
            found = structure_witness(centralizer(self.s6, involutions['triple_transposition']), 'C2^3 : S3')
            if found is None:
                return Outcome(None)
            normal, complement = found
            return Outcome({'normal': normal.order, 'complement': complement.order}, found)

        self.check('lemma-involutions.centralizer_triple_c2cubed_s3', {'normal': 8, 'complement': 6}, semidirect)

        def stabilizer(action, x):
            orbit, stab = orbit_and_stabilizer(self.s6, action, x)
            return {'orbit': len(orbit), 'stabilizer': stab.order}

        self.check(
            'lemma-involutions.node_stabilizer',
            {'orbit': 10, 'stabilizer': 72},
            lambda: stabilizer(act_on_split, parse_split('{123|456}')),
        )
        self.check(
            'lemma-involutions.plane_stabilizer',
            {'orbit': 15, 'stabilizer': 48},
            lambda: stabilizer(act_on_matching, parse_matching('{12|34|56}')),
        )

        def structures():
            found = stabilizer_structures()
            actual = {
                'node_normal': found.node_normal.order if found.node_normal else None,
                'node_complement': found.node_complement.order if found.node_complement else None,
                'plane_c2xs4': found.plane_isomorphism is not None,
            }
            return Outcome(actual, {'node_complement': found.node_complement, 'plane': found.plane_isomorphism})

        self.check(
            'lemma-involutions.stabilizer_structures',
            {'node_normal': 36, 'node_complement': 2, 'plane_c2xs4': True},
            structures,
        )
        self.check('lemma-involutions.nonstandard_s5_plane_orbits', [5, 10], lambda: s5_plane_orbits('nonstandard'))
        self.check('lemma-involutions.standard_s5_plane_orbits', [15], lambda: s5_plane_orbits('standard'))

        phi = outer_automorphism_s6
        self.check(
            'lemma-involutions.outer_transposition_type',
            [2, 2, 2],
            lambda: phi()(involutions['transposition']).cycle_type,
        )
        self.check(
            'lemma-involutions.outer_double_transposition_type',
            [2, 2, 1, 1],
            lambda: phi()(involutions['double_transposition']).cycle_type,
        )
        self.check('lemma-involutions.outer_not_inner', None, lambda: inner_witness(phi()))

        def square_inner():
            c = inner_witness(phi().compose(phi()))
            return Outcome(c is not None, c)

        self.check('lemma-involutions.outer_squared_inner', True, square_inner)

    # ----- forms ---------------------------------------------------------

    def _forms(self) -> None:
        self.check('forms.real_form_count', 4, lambda: len(classify_real_forms()))
        self.check(
            'forms.representatives',
            {'I': [], 'II': [[1, 2]], 'III': [[1, 2], [3, 4]], 'IV': [[1, 2], [3, 4], [5, 6]]},
            lambda: {t.label: t.representative.cycles() for t in classify_real_forms()},
        )
        self.check(
            'forms.representatives_square_to_identity',
            [True] * 4,
            lambda: [(t.representative * t.representative).is_identity() for t in classify_real_forms()],
        )
        self.check(
            'forms.table',
            [
                {'type': 'I', 'order': 720, 'structure': FORM_STRUCTURES['I'], 'points': 10, 'planes': 15},
                {'type': 'II', 'order': 48, 'structure': FORM_STRUCTURES['II'], 'points': 4, 'planes': 3},
                {'type': 'III', 'order': 16, 'structure': FORM_STRUCTURES['III'], 'points': 2, 'planes': 3},
                {'type': 'IV', 'order': 48, 'structure': FORM_STRUCTURES['IV'], 'points': 4, 'planes': 7},
            ],
            lambda: [row.as_row() for row in form_table()],
        )
        self.check(
            'forms.rational_counts_match_fixed_counts',
            True,
            lambda: all(rational_counts(t) == fixed_counts(t.representative) for t in classify_real_forms()),
        )
        self.check(
            'forms.corollary_rational_node',
            {'I': 10, 'II': 4, 'III': 2, 'IV': 4},
            corollary_rational_nodes,
        )
        self.check(
            'forms.six_cycle_centralizer_order',
            6,
            lambda: form_automorphism_group(GaloisImage.of(_p(6, (1, 2, 3, 4, 5, 6)))).order,
        )

        def klein_twist():
            report = twist_report(GaloisImage.of(_p(6, (1, 2)), _p(6, (3, 4))))
            return {'order': report.automorphism_order, 'points': report.rational_points, 'planes': report.rational_planes}

        self.check('forms.twist_klein_12_34', {'order': 8, 'points': 2, 'planes': 1}, klein_twist)

        def monotone():
            small = GaloisImage.of(_p(6, (1, 2)))
            large = GaloisImage.of(_p(6, (1, 2)), _p(6, (3, 4)))
            c_small, c_large = form_automorphism_group(small), form_automorphism_group(large)
            r_small, r_large = twist_report(small), twist_report(large)
            return (
                c_large.is_subgroup_of(c_small)
                and r_large.rational_points <= r_small.rational_points
                and r_large.rational_planes <= r_small.rational_planes
            )

        self.check('forms.centralizer_monotonicity', True, monotone)

        def blowup():
            result = blowup_model_crosscheck()
            rows = [
                {
                    'element': r.element.cycles(),
                    'fixed_pairs': r.fixed_pairs,
                    'fixed_planes': r.fixed_model_planes,
                    'image_cycle_type': r.image_cycle_type,
                    'type': r.form_label,
                }
                for r in result.rows
            ]
            return Outcome(
                {
                    'rows': rows,
                    'image_transitive': result.image_transitive,
                    'type_ii_obstructed': result.type_ii_obstructed,
                },
                {
                    'nodes': {repr(k): repr(v) for k, v in result.node_bijection.items()},
                },
            )

        self.check(
            'forms.blowup_crosscheck',
            {
                'rows': [
                    {'element': [], 'fixed_pairs': 10, 'fixed_planes': 15,
                     'image_cycle_type': [1, 1, 1, 1, 1, 1], 'type': 'I'},
                    {'element': [[4, 5]], 'fixed_pairs': 4, 'fixed_planes': 7,
                     'image_cycle_type': [2, 2, 2], 'type': 'IV'},
                    {'element': [[2, 3], [4, 5]], 'fixed_pairs': 2, 'fixed_planes': 3,
                     'image_cycle_type': [2, 2, 1, 1], 'type': 'III'},
                ],
                'image_transitive': True,
                'type_ii_obstructed': True,
            },
            blowup,
        )
        self.check(
            'forms.real_form_rigidity',
            {'I': True, 'II': False, 'III': False, 'IV': False},
            real_form_rigidity,
        )

    # ----- theorem -------------------------------------------------------

    def _theorem(self) -> None:
        def classification():
            witness = self.theorem_witness
            return Outcome(
                {'classes': len(witness.verdicts), 'escapes': len(witness.escapes)},
                {'counts': verdict_counts(witness), 'verdicts': [v.as_row() for v in witness.verdicts]},
            )

        self.check(
            'theorem.a5free_classification',
            {'classes': S6_SUBGROUP_CLASSES, 'escapes': 0},
            classification,
        )
        self.check(
            'theorem.verdict_three_cycle',
            'point-stabilizer',
            lambda: classify_subgroup(closure([_p(6, (1, 2, 3))]))[0],
        )
        self.check(
            'theorem.verdict_a6',
            CONTAINS_STANDARD_A5,
            lambda: classify_subgroup(alternating_group(6))[0],
        )
        self.check(
            'theorem.verdict_fourth_case',
            ['fourth-S4xC2', list(range(1, 7))],
            lambda: list(classify_subgroup(case_subgroup('fourth-S4xC2'))),
        )
        self.check(
            'theorem.rigid_classes',
            [60, 120, 360, 720],
            lambda: [v.order for v in rigid_subgroup_classes(self.theorem_witness)],
        )

        def overgroups():
            found = overgroups_of_standard_a5()
            return Outcome([h.order for h in found], found)

        self.check('theorem.overgroups_of_standard_a5', [60, 120, 360, 720], overgroups)
        self.check(
            'theorem.commuting_factorizations_trivial',
            [True] * 4,
            lambda: [
                factorization_is_trivial(h, commuting_normal_factorization(h))
                for h in overgroups_of_standard_a5()
            ],
        )
        self.check(
            'theorem.standard_subgroups',
            {'standard_a5': True, 'standard_s5': True, 'nonstandard_s5': False},
            lambda: {
                'standard_a5': is_standard(standard_a5()),
                'standard_s5': is_standard(standard_s5()),
                'nonstandard_s5': is_standard(nonstandard_s5()),
            },
        )
        self.check(
            'theorem.standard_a5_not_in_nonstandard_s5',
            None,
            lambda: is_subconjugate(standard_a5(), nonstandard_s5(), self.s6),
        )

        def distinct_cases():
            invariants = case_invariants()
            signatures = {inv.signature for inv in invariants}
            return Outcome(len(signatures), {inv.name: inv for inv in invariants})

        self.check('theorem.case_subgroups_pairwise_distinct', 4, distinct_cases)
        self.check(
            'theorem.fixed_planes_order_48_cases',
            {'plane-stabilizer': 1, 'fourth-S4xC2': 0},
            lambda: {
                inv.name: inv.fixed_planes
                for inv in case_invariants()
                if inv.name in ('plane-stabilizer', 'fourth-S4xC2')
            },
        )

        def fourth():
            geo = fourth_case_geometry()
            return {
                'plane_orbit': list(geo.plane_orbit),
                'point': geo.invariant_point,
                'point_stabilizer': geo.point_stabilizer_order,
                'point_on_planes': geo.point_on_planes,
                'point_on_cubic': geo.point_on_cubic,
                'factorization': geo.section.factorization_verified,
            }

        self.check(
            'theorem.fourth_case_geometry',
            {
                'plane_orbit': ['{12|34|56}', '{13|24|56}', '{14|23|56}'],
                'point': ProjPoint.of(0, 0, 0, 0, 1, -1),
                'point_stabilizer': 48,
                'point_on_planes': True,
                'point_on_cubic': True,
                'factorization': True,
            },
            fourth,
        )
        self.check(
            'theorem.overgroup_plane_orbits',
            [1, 1, 1, 1],
            lambda: [len(orbits(h, act_on_matching, all_matchings())) for h in overgroups_of_standard_a5()],
        )

    # ----- subgroups -----------------------------------------------------

    def _subgroups(self) -> None:
        def lattice_counts(group):
            lattice = subgroup_lattice(group)
            return Outcome(
                {'classes': len(lattice.classes), 'total': lattice.total},
                {'rounds': lattice.rounds, 'joins': lattice.joins},
            )

        self.check(
            'subgroups.s6_lattice',
            {'classes': S6_SUBGROUP_CLASSES, 'total': S6_SUBGROUP_TOTAL},
            lambda: lattice_counts(self.s6),
        )
        self.check('subgroups.s5_lattice', {'classes': 19, 'total': 156}, lambda: lattice_counts(symmetric_group(5)))
        self.check('subgroups.s4_lattice', {'classes': 11, 'total': 30}, lambda: lattice_counts(symmetric_group(4)))
        self.check('subgroups.s3_lattice', {'classes': 4, 'total': 6}, lambda: lattice_counts(symmetric_group(3)))

        def self_generated():
            bad = [
                c.representative for c in subgroup_lattice(self.s6).classes
                if closure(c.representative.generators, degree=N_COORDS) != c.representative
            ]
            return Outcome(len(bad), bad[:1])

        self.check('subgroups.representatives_self_generated', 0, self_generated)
        self.check(
            'subgroups.s6_normal_orders',
            [1, 360, 720],
            lambda: [n.order for n in normal_subgroups(self.s6)],
        )
        self.check(
            'subgroups.s5_normal_orders',
            [1, 60, 120],
            lambda: [n.order for n in normal_subgroups(symmetric_group(5))],
        )

        def conjugation_closed():
            rng = random.Random(f'{self.seed}:conjugation-closed')
            lattice = subgroup_lattice(self.s6)
            everything = set(lattice.all_subgroups())
            failures = 0
            for _ in range(50):
                h = rng.choice(rng.choice(lattice.classes).members)
                g = rng.choice(self.s6.sorted_elements)
                if h.conjugate_by(g) not in everything:
                    failures += 1
            return failures

        self.check('subgroups.closed_under_conjugation', 0, conjugation_closed)
        self.property_check('subgroups.property.orbit_stabilizer', 'orbit-stabilizer')
        self.property_check('subgroups.property.class_equation', 'class-equation')


def verdict_counts(witness) -> dict[str, int]:
    return {name: witness.count(name) for name in (CONTAINS_STANDARD_A5, *CASE_NAMES, ESCAPE)}
