"""
Description: CheckReport records and the JSON report document.

Values are canonicalized before comparison and output: rationals become "num/den" strings,
permutations their image lists, groups their order and generator images, projective points
their primitive integer coordinates. The document is dumped with sorted keys so reruns with
the same configuration are byte-identical.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .exactmath import LinearSubspace, ProjPoint, format_rational
from .permgroup import ConjugacyClass, GroupHom, Perm, PermGroup

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
ERROR = 'error'
STATUSES = (PASS, FAIL, ERROR)


def canonicalize(value: Any) -> Any:
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Perm):
        return list(value.images)
    if isinstance(value, PermGroup):
        return {
            'order': value.order,
            'generators': [list(g.images) for g in value.generators],
        }
    if isinstance(value, ConjugacyClass):
        return {'representative': list(value.representative.images), 'size': value.size}
    if isinstance(value, GroupHom):
        return {
            'generators': [list(g.images) for g in value.source.generators],
            'images': [list(g.images) for g in value.generator_images],
        }
    if isinstance(value, ProjPoint):
        return list(value.canonical)
    if isinstance(value, LinearSubspace):
        return [[format_rational(x) for x in row] for row in value.canonical]
    if isinstance(value, dict):
        return {str(canonicalize_key(k)): canonicalize(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        items = [canonicalize(v) for v in value]
        return sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [canonicalize(v) for v in value]
    if is_dataclass(value):
        return {f.name: canonicalize(getattr(value, f.name)) for f in fields(value)}
    raise TypeError(f'cannot canonicalize {type(value).__name__}')


def canonicalize_key(key: Any) -> Any:
    if isinstance(key, (str, int)):
        return key
    if isinstance(key, Perm):
        return repr(key)
    return json.dumps(canonicalize(key), sort_keys=True)


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    status: str
    expected: Any
    actual: Any
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


def make_report(check_id: str, expected: Any, actual: Any, witness: Any = None) -> CheckReport:
    expected, actual = canonicalize(expected), canonicalize(actual)
    same = json.dumps(expected, sort_keys=True) == json.dumps(actual, sort_keys=True)
    return CheckReport(check_id, PASS if same else FAIL, expected, actual, canonicalize(witness))


def error_report(check_id: str, expected: Any, exc: BaseException) -> CheckReport:
    return CheckReport(
        check_id,
        ERROR,
        canonicalize(expected),
        None,
        {'error': type(exc).__name__, 'message': str(exc)},
    )


def summarize(reports: Iterable[CheckReport]) -> dict[str, int]:
    summary = {status: 0 for status in STATUSES}
    for r in reports:
        summary[r.status] += 1
    return summary


def build_document(suite: str, reports: list[CheckReport]) -> dict:
    from core.serializers import CheckReportSerializer

    return {
        'suite': suite,
        'checks': [dict(row) for row in CheckReportSerializer(reports, many=True).data],
        'summary': summarize(reports),
    }


def render_document(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=True) + '\n'


def emit_report(reports: list[CheckReport], path: str | Path, suite: str = 'all') -> Path:
    """Write the report document; I/O failures propagate as OSError."""
    path = Path(path)
    path.write_text(render_document(build_document(suite, reports)), encoding='utf-8')
    logger.info(f'wrote {len(reports)} checks to {path}')
    return path
