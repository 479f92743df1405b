import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from core.serializers import SUITES, SuiteConfigSerializer
from core.services.exceptions import ConsistencyError
from core.services.permgroup import Perm
from core.services.reporting import (
    ERROR,
    FAIL,
    PASS,
    CheckReport,
    build_document,
    canonicalize,
    emit_report,
    make_report,
    render_document,
)
from core.services.suites import VerificationService, run_property_family

SMALL_RUN = {'DEFAULT_WORKERS': 1, 'DEFAULT_SEED': 7, 'PROPERTY_SAMPLES': 5}
RUN_MANY = 'core.management.commands.verify.VerificationService.run_many'


def run_verify(*args):
    out = StringIO()
    call_command('verify', *args, stdout=out, stderr=StringIO())
    return out.getvalue()


class SuiteConfigSerializerTests(SimpleTestCase):
    def test_all_expands_in_fixed_order(self):
        serializer = SuiteConfigSerializer(data={'suites': ['theorem', 'all']})
        self.assertTrue(serializer.is_valid())
        self.assertEqual(serializer.save().suites, SUITES)

    def test_duplicates_dropped(self):
        serializer = SuiteConfigSerializer(data={'suites': ['forms', 'geometry', 'forms']})
        self.assertTrue(serializer.is_valid())
        config = serializer.save()
        self.assertEqual(config.suites, ('geometry', 'forms'))
        self.assertEqual(config.label, 'geometry+forms')

    @override_settings(SEGRE_VERIFIER=SMALL_RUN)
    def test_defaults_from_settings(self):
        serializer = SuiteConfigSerializer(data={'suites': ['all']})
        self.assertTrue(serializer.is_valid())
        config = serializer.save()
        self.assertEqual((config.workers, config.seed, config.out), (1, 7, None))
        self.assertEqual(config.label, 'all')

    def test_invalid_values(self):
        self.assertFalse(SuiteConfigSerializer(data={'suites': ['bogus']}).is_valid())
        self.assertFalse(SuiteConfigSerializer(data={'suites': ['forms'], 'workers': 0}).is_valid())
        self.assertFalse(SuiteConfigSerializer(data={'suites': ['forms'], 'seed': -1}).is_valid())
        self.assertFalse(SuiteConfigSerializer(data={'suites': []}).is_valid())


class ReportTests(SimpleTestCase):
    def test_canonical_values(self):
        self.assertEqual(canonicalize(Fraction(-3, 6)), '-1/2')
        self.assertEqual(canonicalize(Perm.from_cycles(3, (1, 2))), [2, 1, 3])
        self.assertEqual(canonicalize({2: frozenset({3, 1})}), {'2': [1, 3]})

    def test_make_report_compares_canonical_forms(self):
        self.assertEqual(make_report('x', [1, 2], (1, 2)).status, PASS)
        self.assertEqual(make_report('x', 1, 2).status, FAIL)

    def test_empty_document(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = emit_report([], Path(tmp) / 'report.json', suite='forms')
            data = json.loads(path.read_text())
        self.assertEqual(data, {'suite': 'forms', 'checks': [], 'summary': {'pass': 0, 'fail': 0, 'error': 0}})

    def test_document_shape(self):
        reports = [make_report('b.check', 1, 1), CheckReport('a.check', ERROR, 3, None, {'error': 'X'})]
        text = render_document(build_document('all', reports))
        self.assertTrue(text.endswith('\n'))
        data = json.loads(text)
        self.assertEqual(data['summary'], {'pass': 1, 'fail': 0, 'error': 1})
        self.assertEqual(data['checks'][1]['status'], ERROR)


class VerificationServiceTests(SimpleTestCase):
    def test_exceptions_become_error_reports(self):
        service = VerificationService(samples=1)

        def explode():
            raise ConsistencyError('broken')

        report = service.check('x.broken', 1, explode)
        self.assertEqual(report.status, ERROR)
        self.assertEqual(report.witness, {'error': 'ConsistencyError', 'message': 'broken'})

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            VerificationService().run('nope')

    def test_property_families_are_seeded(self):
        first = run_property_family('class-equation', 3, 10)
        second = run_property_family('class-equation', 3, 10)
        self.assertEqual(first, second)
        self.assertEqual(first.actual, {'samples': 10, 'failures': 0})

    def test_all_property_families_hold(self):
        for family in ('polynomial-ring', 'orbit-stabilizer', 'action-equivariance'):
            self.assertEqual(run_property_family(family, 11, 10).actual['failures'], 0, family)


class SuiteTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.service = VerificationService(workers=1, seed=7, samples=5)

    def run_suite(self, suite):
        reports = self.service.run(suite)
        document = build_document(suite, reports)
        self.assertEqual(document['summary'], {'pass': len(reports), 'fail': 0, 'error': 0}, suite)
        return {r.check_id: r for r in reports}

    def test_configuration(self):
        reports = self.run_suite('configuration')
        self.assertIn('configuration.fixed_counts_class_function', reports)
        self.assertIn('configuration.plane_actions_match_s6_action', reports)
        by_class = reports['configuration.fixed_counts_class_function'].witness
        self.assertEqual(len(by_class), 11)
        self.assertEqual(by_class['1^6'], [10, 15])
        self.assertEqual(by_class['2.1^4'], [4, 3])

    def test_lemma_involutions(self):
        reports = self.run_suite('lemma-involutions')
        self.assertEqual(
            reports['lemma-involutions.stabilizer_structures'].actual,
            {'node_normal': 36, 'node_complement': 2, 'plane_c2xs4': True},
        )

    def test_theorem(self):
        reports = self.run_suite('theorem')
        self.assertEqual(reports['theorem.rigid_classes'].actual, [60, 120, 360, 720])
        self.assertEqual(
            reports['theorem.fixed_planes_order_48_cases'].actual,
            {'plane-stabilizer': 1, 'fourth-S4xC2': 0},
        )

    def test_subgroups(self):
        reports = self.run_suite('subgroups')
        self.assertEqual(reports['subgroups.closed_under_conjugation'].actual, 0)
        self.assertEqual(reports['subgroups.s6_lattice'].actual, {'classes': 56, 'total': 1455})

    def test_forms(self):
        reports = self.run_suite('forms')
        self.assertTrue(reports['forms.centralizer_monotonicity'].passed)

    def test_geometry(self):
        self.run_suite('geometry')


@override_settings(SEGRE_VERIFIER=SMALL_RUN)
class VerifyCommandTests(SimpleTestCase):
    def test_unknown_suite_is_usage_error(self):
        with self.assertRaises(CommandError) as cm:
            run_verify('--suite', 'bogus')
        self.assertEqual(cm.exception.returncode, 2)

    def test_zero_workers_is_usage_error(self):
        with self.assertRaises(CommandError) as cm:
            run_verify('--suite', 'forms', '--workers', '0')
        self.assertEqual(cm.exception.returncode, 2)

    def test_failing_check_exits_with_one(self):
        with mock.patch(RUN_MANY, return_value=[CheckReport('x.fail', FAIL, 1, 2)]):
            with self.assertRaises(CommandError) as cm:
                run_verify('--suite', 'forms')
        self.assertEqual(cm.exception.returncode, 1)

    def test_failing_report_is_still_written(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'report.json'
            with mock.patch(RUN_MANY, return_value=[CheckReport('x.fail', FAIL, 1, 2)]):
                with self.assertRaises(CommandError):
                    run_verify('--suite', 'forms', '--out', str(path))
            data = json.loads(path.read_text())
        self.assertEqual(data['summary'], {'pass': 0, 'fail': 1, 'error': 0})

    def test_unwritable_output_is_io_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'missing' / 'report.json'
            with mock.patch(RUN_MANY, return_value=[make_report('x.ok', 1, 1)]):
                with self.assertRaises(CommandError) as cm:
                    run_verify('--suite', 'forms', '--out', str(path))
        self.assertEqual(cm.exception.returncode, 2)

    def test_forms_suite_passes_and_writes_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'forms.json'
            output = run_verify('--suite', 'forms', '--out', str(path))
            data = json.loads(path.read_text())
        self.assertIn('Report written to', output)
        self.assertEqual(data['suite'], 'forms')
        self.assertEqual(data['summary']['fail'] + data['summary']['error'], 0)
        table = next(c for c in data['checks'] if c['check_id'] == 'forms.table')
        self.assertEqual([row['order'] for row in table['actual']], [720, 48, 16, 48])

    def test_reruns_are_byte_identical(self):
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp) / 'a.json', Path(tmp) / 'b.json'
            run_verify('--suite', 'geometry', '--seed', '3', '--out', str(first))
            run_verify('--suite', 'geometry', '--seed', '3', '--out', str(second))
            self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_worker_count_does_not_change_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            single, pooled = Path(tmp) / 'one.json', Path(tmp) / 'two.json'
            run_verify('--suite', 'theorem', '--workers', '1', '--out', str(single))
            run_verify('--suite', 'theorem', '--workers', '2', '--out', str(pooled))
            self.assertEqual(single.read_bytes(), pooled.read_bytes())
