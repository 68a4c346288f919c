"""Exact computations with shuffle algebras, their Koszul duals, and the
operads of the underlying combinatorial category."""

try:
    from ._permutadkit import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:  # in-tree build: the extension sits on PYTHONPATH
    from _permutadkit import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
