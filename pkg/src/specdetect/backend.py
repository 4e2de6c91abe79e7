"""Compute-backend selection.

Two interchangeable kernel lanes exist: a numba-compiled one
(``_kernels_numba``) and a pure-numpy fallback (``_kernels_numpy``).  The
env var ``SPECDETECT_BACKEND`` picks the lane:

    auto   use numba when importable, else numpy (default)
    numba  require numba; raise BackendUnavailable if it cannot load
    numpy  force the fallback lane

numba is imported lazily, only when a kernel lane is first needed, so CLI
startup stays cheap for subcommands that never touch a transform.
"""

from __future__ import annotations

import os
from types import ModuleType
from typing import Optional

from .errors import BackendUnavailable, InvalidConfig

ENV_VAR = "SPECDETECT_BACKEND"
_CHOICES = ("auto", "numba", "numpy")

_active: Optional[ModuleType] = None


def _load(name: str) -> ModuleType:
    if name == "numba":
        try:
            from . import _kernels_numba
        except ImportError as exc:
            raise BackendUnavailable(
                f"numba backend requested but not importable: {exc}") from exc
        return _kernels_numba
    from . import _kernels_numpy
    return _kernels_numpy


def resolve_backend(choice: Optional[str] = None) -> ModuleType:
    """Kernel module for an explicit choice, or for the env var when None."""
    if choice is None:
        choice = os.environ.get(ENV_VAR, "auto")
    choice = choice.strip().lower()
    if choice not in _CHOICES:
        raise InvalidConfig(
            f"{ENV_VAR} must be one of {', '.join(_CHOICES)}; got {choice!r}")
    if choice in ("numba", "numpy"):
        return _load(choice)
    try:
        return _load("numba")
    except BackendUnavailable:
        return _load("numpy")


def kernels() -> ModuleType:
    """The active kernel module, resolved once from the environment."""
    global _active
    if _active is None:
        _active = resolve_backend()
    return _active


def set_backend(choice: Optional[str]) -> None:
    """Force the active lane; None re-resolves from the environment.

    Meant for tests and benchmarks; library code never calls it.
    """
    global _active
    _active = None if choice is None else resolve_backend(choice)


def active_name() -> str:
    """Name of the active lane: 'numba' or 'numpy'."""
    return kernels().NAME


def available_backends() -> tuple[str, ...]:
    """Lanes loadable in this environment, preferred first."""
    names = []
    try:
        _load("numba")
        names.append("numba")
    except BackendUnavailable:
        pass
    names.append("numpy")
    return tuple(names)
