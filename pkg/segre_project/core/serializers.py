"""
Description: DRF serializers for the verifier: validation of the suite configuration given on
the command line, and the JSON shape of a CheckReport in the report document.
"""

from dataclasses import dataclass

from django.conf import settings
from rest_framework import serializers

from core.services.reporting import STATUSES

SUITES = ('geometry', 'configuration', 'lemma-involutions', 'forms', 'theorem', 'subgroups')
ALL = 'all'
SUITE_CHOICES = SUITES + (ALL,)

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...]
    workers: int
    seed: int
    out: str | None = None

    @property
    def label(self) -> str:
        return ALL if self.suites == SUITES else '+'.join(self.suites)


class SuiteConfigSerializer(serializers.Serializer):
    suites = serializers.ListField(
        child=serializers.ChoiceField(choices=SUITE_CHOICES),
        allow_empty=False,
    )
    workers = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, required=False)
    out = serializers.CharField(required=False, allow_null=True, allow_blank=False)

    def validate_suites(self, value):
        if ALL in value:
            return list(SUITES)
        # fixed run order, duplicates dropped
        return [s for s in SUITES if s in value]

    def create(self, validated_data):
        defaults = settings.SEGRE_VERIFIER
        workers = validated_data.get('workers')
        seed = validated_data.get('seed')
        return SuiteConfig(
            suites=tuple(validated_data['suites']),
            workers=workers if workers is not None else defaults['DEFAULT_WORKERS'],
            seed=seed if seed is not None else defaults['DEFAULT_SEED'],
            out=validated_data.get('out'),
        )


class CheckReportSerializer(serializers.Serializer):
    check_id = serializers.CharField()
    status = serializers.ChoiceField(choices=STATUSES)
    expected = serializers.JSONField(allow_null=True)
    actual = serializers.JSONField(allow_null=True)
    witness = serializers.JSONField(allow_null=True, required=False)
