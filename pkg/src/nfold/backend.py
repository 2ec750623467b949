"""Kernel backend selection.

The two hot loops (greedy schedule fill, layer relaxation sweep) ship in two
interchangeable implementations: numba-compiled kernels and a vectorized
pure-numpy fallback.  Selection order:

1. an explicit select() call (used by tests and the benchmark),
2. the NFOLD_BACKEND environment variable ("numba" or "numpy"),
3. numba when importable, numpy otherwise.

Both backends produce bit-identical tables and counters; only speed differs.
"""

from __future__ import annotations

import importlib
import importlib.util
import os

from .errors import InstanceError

_ENV = "NFOLD_BACKEND"
_VALID = ("numba", "numpy")
_forced: str | None = None


def _numba_usable() -> bool:
    return importlib.util.find_spec("numba") is not None


def available_backends() -> tuple[str, ...]:
    return _VALID if _numba_usable() else ("numpy",)


def select(name: str | None) -> None:
    """Force a backend for the rest of the process; None restores env/default."""
    global _forced
    if name is not None and name not in _VALID:
        raise InstanceError(f"unknown backend {name!r}, expected one of {_VALID}")
    _forced = name


def backend_name() -> str:
    if _forced is not None:
        return _forced
    raw = os.environ.get(_ENV, "").strip().lower()
    if raw:
        if raw not in _VALID:
            raise InstanceError(f"{_ENV} must be one of {_VALID}, got {raw!r}")
        return raw
    return "numba" if _numba_usable() else "numpy"


def kernels():
    """Import and return the active kernel module."""
    name = backend_name()
    if name == "numba" and not _numba_usable():
        raise InstanceError("numba backend requested but numba is not importable")
    return importlib.import_module(f".{'_kernels_' + name}", package=__package__)
