"""
Description: Django management command that runs the Segre cubic verification suites,
prints a per-check summary and optionally writes the JSON report.

Run with: python manage.py verify --suite all
Optional: python manage.py verify --suite geometry --suite forms --workers 8 --out report.json --seed 7

Exit status: 0 when every check passes, 1 when any check fails or errors, 2 for usage,
configuration or I/O errors.
"""

import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.serializers import SUITE_CHOICES, SuiteConfigSerializer
from core.services.reporting import PASS, emit_report, summarize
from core.services.suites import VerificationService

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG, 3: logging.DEBUG}


class Command(BaseCommand):
    """
    Run verification suites.

    Every check runs even when earlier ones fail; the exit status is decided only after the
    whole report has been assembled.
    """

    help = 'Verify the computational claims about the Segre cubic and its forms'

    def add_arguments(self, parser):
        """Add command-line arguments"""
        parser.add_argument(
            '--suite',
            action='append',
            dest='suites',
            help=f'Suite to run, repeatable ({", ".join(SUITE_CHOICES)}). Default: all',
        )
        parser.add_argument(
            '--workers',
            type=int,
            help='Worker processes for the heavy suites (default: SEGRE_VERIFIER DEFAULT_WORKERS)',
        )
        parser.add_argument(
            '--out',
            type=str,
            help='Write the JSON report to this path',
        )
        parser.add_argument(
            '--seed',
            type=int,
            help='Seed for the randomized property checks (default: SEGRE_VERIFIER DEFAULT_SEED)',
        )

    def handle(self, *args, **options):
        """Main execution method"""
        logging.getLogger('core').setLevel(VERBOSITY_LEVELS.get(options['verbosity'], logging.INFO))

        data = {'suites': options['suites'] or ['all']}
        for key in ('workers', 'seed', 'out'):
            if options.get(key) is not None:
                data[key] = options[key]
        serializer = SuiteConfigSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError(f'Invalid configuration: {dict(serializer.errors)}', returncode=2)
        config = serializer.save()

        self.stdout.write(
            f'Running {config.label} (workers={config.workers}, seed={config.seed})'
        )
        service = VerificationService(
            workers=config.workers,
            seed=config.seed,
            samples=settings.SEGRE_VERIFIER['PROPERTY_SAMPLES'],
        )
        reports = service.run_many(config.suites)

        for report in reports:
            if report.status == PASS:
                self.stdout.write(self.style.SUCCESS(f'  PASS  {report.check_id}'))
            else:
                self.stdout.write(self.style.ERROR(f'  {report.status.upper():5} {report.check_id}'))
                self.stdout.write(f'        expected: {report.expected}')
                self.stdout.write(f'        actual:   {report.actual}')

        summary = summarize(reports)
        self.stdout.write(
            f"\n{summary['pass']} passed, {summary['fail']} failed, {summary['error']} errors"
        )

        if config.out:
            try:
                path = emit_report(reports, config.out, suite=config.label)
            except OSError as exc:
                raise CommandError(f'Could not write report to {config.out}: {exc}', returncode=2)
            self.stdout.write(self.style.SUCCESS(f'Report written to {path}'))

        if summary['fail'] or summary['error']:
            raise CommandError(
                f"{summary['fail'] + summary['error']} checks did not pass", returncode=1
            )
