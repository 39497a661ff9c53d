"""Hot-kernel dispatch: the compiled extension when built, numpy otherwise.

Set ``WEAKREL_PURE_PYTHON=1`` to force the fallback.  ``load_backend`` gives
direct access to either implementation (used by tests and the benchmark).
"""
import importlib
import os

MAX_CARRIER = 8  # n*n bits must fit a uint64

_NAMES = {"cython": "weakrel._ckernels", "python": "weakrel._pykernels"}


def load_backend(name):
    return importlib.import_module(_NAMES[name])


def available_backends():
    found = []
    for name in _NAMES:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


def _select():
    if os.environ.get("WEAKREL_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _impl = _select()

compose = _impl.compose
compose_table = _impl.compose_table
enumerate_upsets = _impl.enumerate_upsets
assoc_failures = _impl.assoc_failures
distrib_failures = _impl.distrib_failures
residuation_failures = _impl.residuation_failures
