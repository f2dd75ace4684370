"""Funnel arc deletion: recognition, kernelization and exact solving.

Instances travel as text in the same format the command line tool uses;
see the package README for the format. Vertex ids inside returned
structures are 0-based.
"""

from funnelkern._core import (
    ParseError,
    gen_forbidden,
    gen_planted,
    gen_random,
    is_funnel,
    kernelize,
    recognize,
    solve,
    verify,
)

__all__ = [
    "ParseError",
    "gen_forbidden",
    "gen_planted",
    "gen_random",
    "is_funnel",
    "kernelize",
    "recognize",
    "solve",
    "verify",
]
