"""Orbit classification and raster topology for entire maps such as alpha*erf(z)+beta."""

from ._core import *  # noqa: F401,F403
from ._core import EdError, run_cli


def edyn(*args):
    """Run the command line with the given arguments; returns (exit_code, stdout, stderr)."""
    return run_cli([str(a) for a in args])


__all__ = [name for name in dir() if not name.startswith("_")]
