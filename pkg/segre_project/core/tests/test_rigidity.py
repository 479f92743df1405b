from django.test import SimpleTestCase

from core.services.exactmath import ProjPoint
from core.services.exceptions import GroupOrderError
from core.services.permgroup import (
    closure,
    commute_elementwise,
    cyclic_group,
    is_normal,
    outer_automorphism_s6,
    symmetric_group,
)
from core.services.rigidity import (
    CASE_NAMES,
    CONTAINS_STANDARD_A5,
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


class StandardSubgroupTests(SimpleTestCase):
    def test_standard_and_twisted_copies(self):
        self.assertTrue(is_standard(standard_a5()))
        self.assertTrue(is_standard(standard_s5()))
        self.assertFalse(is_standard(nonstandard_s5()))
        self.assertFalse(is_standard(outer_automorphism_s6().image_of(standard_a5())))

    def test_wrong_order(self):
        with self.assertRaises(GroupOrderError):
            is_standard(cyclic_group(6))

    def test_plane_orbits_of_both_embeddings(self):
        self.assertEqual(s5_plane_orbits('standard'), [15])
        self.assertEqual(s5_plane_orbits('nonstandard'), [5, 10])
        with self.assertRaises(ValueError):
            s5_plane_orbits('diagonal')


class CaseSubgroupTests(SimpleTestCase):
    def test_orders(self):
        self.assertEqual([case_subgroup(n).order for n in CASE_NAMES], [120, 72, 48, 48])

    def test_cases_are_pairwise_non_conjugate(self):
        invariants = case_invariants()
        self.assertEqual(len({i.signature for i in invariants}), 4)
        by_name = {i.name: i for i in invariants}
        self.assertEqual(by_name['point-stabilizer'].fixed_nodes, 1)
        self.assertEqual(by_name['plane-stabilizer'].fixed_planes, 1)

    def test_stabilizer_structures(self):
        found = stabilizer_structures()
        self.assertTrue(found.verified)
        node_stab = case_subgroup('point-stabilizer')
        self.assertEqual((found.node_normal.order, found.node_complement.order), (36, 2))
        self.assertTrue(is_normal(node_stab, found.node_normal))
        self.assertFalse(commute_elementwise(found.node_normal, found.node_complement))
        self.assertTrue(found.plane_isomorphism.is_injective())
        self.assertEqual(found.plane_isomorphism.source, case_subgroup('plane-stabilizer'))

    def test_unknown_case(self):
        with self.assertRaises(KeyError):
            case_subgroup('fifth')


class ClassificationTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.witness = verify_a5free_classification()

    def test_every_class_is_covered(self):
        self.assertEqual(len(self.witness.verdicts), 56)
        self.assertEqual(self.witness.escapes, [])
        self.assertEqual(sum(v.class_size for v in self.witness.verdicts), 1455)

    def test_rigid_classes(self):
        rigid = rigid_subgroup_classes(self.witness)
        self.assertEqual(self.witness.count(CONTAINS_STANDARD_A5), 4)
        self.assertEqual(sorted(v.order for v in rigid), [60, 120, 360, 720])

    def test_conjugators_are_witnesses(self):
        for v in self.witness.verdicts:
            if v.verdict == CONTAINS_STANDARD_A5:
                self.assertTrue(standard_a5().conjugate_by(v.conjugator).is_subgroup_of(v.representative))
            else:
                target = case_subgroup(v.verdict)
                self.assertTrue(v.representative.conjugate_by(v.conjugator).is_subgroup_of(target))

    def test_single_subgroups(self):
        self.assertEqual(classify_subgroup(standard_s5())[0], CONTAINS_STANDARD_A5)
        self.assertEqual(classify_subgroup(closure([], degree=6))[0], 'nonstandard-S5')
        self.assertEqual(classify_subgroup(nonstandard_s5())[0], 'nonstandard-S5')

    def test_row_shape(self):
        row = self.witness.verdicts[0].as_row()
        self.assertEqual(set(row), {'order', 'class_size', 'generators', 'verdict', 'conjugator'})
        self.assertEqual(row['order'], 1)


class OvergroupTests(SimpleTestCase):
    def test_overgroups(self):
        self.assertEqual([h.order for h in overgroups_of_standard_a5()], [60, 120, 360, 720])

    def test_factorizations_are_trivial(self):
        for group in overgroups_of_standard_a5():
            pairs = commuting_normal_factorization(group)
            self.assertTrue(factorization_is_trivial(group, pairs), group.order)
            self.assertEqual(len(pairs), 2)

    def test_real_forms(self):
        self.assertEqual(real_form_rigidity(), {'I': True, 'II': False, 'III': False, 'IV': False})


class FourthCaseTests(SimpleTestCase):
    def test_geometry(self):
        geometry = fourth_case_geometry()
        self.assertEqual(geometry.plane_orbit, ('{12|34|56}', '{13|24|56}', '{14|23|56}'))
        self.assertEqual(geometry.invariant_point, ProjPoint.of(0, 0, 0, 0, 1, -1))
        self.assertEqual(geometry.point_stabilizer_order, 48)
        self.assertTrue(geometry.point_on_planes)
        self.assertTrue(geometry.point_on_cubic)
        self.assertTrue(geometry.section.factorization_verified)

    def test_fourth_case_is_full_s4_times_c2(self):
        self.assertEqual(case_subgroup('fourth-S4xC2').order, symmetric_group(4).order * 2)
