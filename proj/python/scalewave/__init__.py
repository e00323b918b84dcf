"""Radial wave kernels, weighted decay estimates and Picard iteration."""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
except ImportError:  # pragma: no cover - source-tree layout for ctest
    from _core import *  # noqa: F401,F403
