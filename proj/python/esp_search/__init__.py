"""Expanding search solvers: graph and plane search with latency objectives."""

try:
    from ._esp import *  # noqa: F401,F403  (installed wheel layout)
    from ._esp import __doc__ as _doc
except ImportError:  # pragma: no cover - in-tree test layout
    from _esp import *  # noqa: F401,F403
    from _esp import __doc__ as _doc

__doc__ = _doc
