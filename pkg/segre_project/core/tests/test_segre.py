from django.test import SimpleTestCase

from core.services.exactmath import MultiPoly, ProjPoint
from core.services.exceptions import IncidenceMismatch, NotOnVarietyError, UnsupportedFormError
from core.services.permgroup import Perm, closure, symmetric_group
from core.services.segre import (
    PlaneOnCubic,
    SegreCubic,
    act_on_matching,
    all_matchings,
    all_splits,
    build_incidence,
    configuration_automorphisms,
    enumerate_planes,
    enumerate_singular_points,
    fixed_counts,
    fixed_counts_of_group,
    hyperplane_section_planes,
    matching_label,
    matching_plane,
    node_is_ordinary,
    parse_matching,
    parse_split,
    plane_spanned_by_points,
    s6_geometric_action,
    serialize_configuration,
    singular_locus_certificate,
    split_label,
    standard_configuration,
)

X = [MultiPoly.variable(i, 6) for i in range(1, 7)]


def p(*cycles):
    return Perm.from_cycles(6, *cycles)


class CombinatoricsTests(SimpleTestCase):
    def test_counts(self):
        self.assertEqual(len(all_splits()), 10)
        self.assertEqual(len(all_matchings()), 15)

    def test_labels(self):
        self.assertEqual(split_label(all_splits()[0]), '{123|456}')
        self.assertEqual(matching_label(all_matchings()[0]), '{12|34|56}')
        self.assertEqual(parse_split('{456|123}'), ((1, 2, 3), (4, 5, 6)))
        self.assertEqual(parse_matching('{56|21|43}'), ((1, 2), (3, 4), (5, 6)))

    def test_action_on_matchings(self):
        m = parse_matching('{12|34|56}')
        self.assertEqual(act_on_matching(p((2, 3)), m), parse_matching('{13|24|56}'))


class SingularLocusTests(SimpleTestCase):
    def test_certificate(self):
        cert = singular_locus_certificate()
        self.assertEqual(cert.minors_verified, 15)
        self.assertEqual(cert.sign_patterns, 64)
        self.assertEqual(cert.balanced_patterns, 20)
        self.assertEqual(len(cert.points), 10)

    def test_ten_nodes(self):
        nodes = enumerate_singular_points()
        self.assertEqual(len(nodes), 10)
        self.assertEqual(nodes[0].point, ProjPoint.of(1, 1, 1, -1, -1, -1))
        self.assertTrue(all(SegreCubic.standard().contains(n.point) for n in nodes))

    def test_nodes_are_ordinary(self):
        for node in enumerate_singular_points():
            self.assertTrue(node_is_ordinary(node.point), node.label)

    def test_smooth_point_is_not_a_node(self):
        self.assertFalse(node_is_ordinary(ProjPoint.of(1, -1, 2, -2, 3, -3)))

    def test_point_off_cubic(self):
        with self.assertRaises(NotOnVarietyError):
            node_is_ordinary(ProjPoint.of(1, 0, 0, 0, 0, 0))


class PlaneTests(SimpleTestCase):
    def test_fifteen_distinct_planes(self):
        planes = enumerate_planes()
        self.assertEqual(len(planes), 15)
        self.assertEqual(len({pl.subspace for pl in planes}), 15)
        self.assertTrue(all(pl.subspace.dim == 2 for pl in planes))

    def test_planes_spanned_by_their_nodes(self):
        inc = standard_configuration()
        for j in range(15):
            self.assertTrue(plane_spanned_by_points(inc, j))


class IncidenceTests(SimpleTestCase):
    def test_configuration_is_10_6_15_4(self):
        inc = standard_configuration()
        self.assertEqual(inc.row_sums, [6] * 10)
        self.assertEqual(inc.column_sums, [4] * 15)

    def test_examples(self):
        inc = standard_configuration()
        node = inc.point_index[parse_split('{123|456}')]
        self.assertTrue(inc.incident(node, inc.plane_index[parse_matching('{14|25|36}')]))
        self.assertFalse(inc.incident(node, inc.plane_index[parse_matching('{12|34|56}')]))

    def test_two_nodes_share_two_planes(self):
        inc = standard_configuration()
        shared = set(inc.planes_through(0)) & set(inc.planes_through(1))
        self.assertEqual(len(shared), 2)

    def test_mislabelled_plane_detected(self):
        m = parse_matching('{12|34|56}')
        wrong = PlaneOnCubic(m, matching_plane(parse_matching('{13|24|56}')))
        with self.assertRaises(IncidenceMismatch):
            build_incidence(enumerate_singular_points(), [wrong])


class SymmetryTests(SimpleTestCase):
    def test_fixed_counts(self):
        self.assertEqual(fixed_counts(Perm.identity(6)), (10, 15))
        self.assertEqual(fixed_counts(p((1, 2))), (4, 3))
        self.assertEqual(fixed_counts(p((1, 2), (3, 4))), (2, 3))
        self.assertEqual(fixed_counts(p((1, 2), (3, 4), (5, 6))), (4, 7))

    def test_fixed_counts_of_group(self):
        klein = closure([p((1, 2)), p((3, 4))])
        self.assertEqual(fixed_counts_of_group(klein), (2, 1))

    def test_s6_acts_faithfully(self):
        on_points, on_planes = s6_geometric_action()
        self.assertTrue(on_points.is_injective())
        self.assertTrue(on_planes.is_injective())
        self.assertEqual(on_points.source, symmetric_group(6))

    def test_configuration_automorphisms_are_s6(self):
        result = configuration_automorphisms()
        self.assertEqual(result.group.order, 720)
        on_points, _ = s6_geometric_action()
        self.assertEqual(result.group, on_points.image())


class HyperplaneSectionTests(SimpleTestCase):
    def test_section_by_x1_plus_x2(self):
        section = hyperplane_section_planes(X[0] + X[1])
        self.assertTrue(section.factorization_verified)
        self.assertEqual(
            sorted(matching_label(pl.matching) for pl in section.planes),
            ['{12|34|56}', '{12|35|46}', '{12|36|45}'],
        )
        self.assertEqual(section.common_point, ProjPoint.of(1, -1, 0, 0, 0, 0))

    def test_other_pair(self):
        section = hyperplane_section_planes(X[2] + X[5])
        self.assertEqual(section.pair, (3, 6))
        self.assertEqual(len(section.planes), 3)

    def test_unsupported_forms(self):
        for form in (2 * X[0] + X[1], X[0] + X[1] + X[2], X[0] * X[1]):
            with self.assertRaises(UnsupportedFormError):
                hyperplane_section_planes(form)


class SerializationTests(SimpleTestCase):
    def test_deterministic(self):
        self.assertEqual(serialize_configuration(), serialize_configuration())

    def test_layout(self):
        data = serialize_configuration()
        self.assertEqual(len(data['points']), 10)
        self.assertEqual(len(data['planes']), 15)
        self.assertEqual(data['points'][0], {'label': '{123|456}', 'coords': [1, 1, 1, -1, -1, -1]})
        self.assertEqual(set(data['actions']), {'(1 2)', '(1 2 3 4 5 6)'})
        self.assertEqual(sum(map(sum, data['incidence'])), 60)
