"""Configure Django before pytest collects the SimpleTestCase suites."""
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / 'segre_project'))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'segre_project.settings')

import django  # noqa: E402

django.setup()
