"""Allow running pytest from a fresh checkout without installing.

When the package is installed (pip install -e .) this does nothing; the
fallback puts src/ on sys.path so the pure-Python backend still works.
"""

import os
import sys

try:
    import fatpoints  # noqa: F401
except ImportError:
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))
