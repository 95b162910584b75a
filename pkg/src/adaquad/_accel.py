"""Backend switch for the compiled kernels.

Set ``ADAQUAD_DISABLE_NUMBA=1`` before import to force the pure-numpy path.
"""

import os

_FLAG = "ADAQUAD_DISABLE_NUMBA"

try:
    import numba  # noqa: F401
    numba_installed = True
except ImportError:
    numba_installed = False


def _env_disabled():
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = numba_installed and not _env_disabled()

