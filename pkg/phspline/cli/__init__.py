"""
Subcommands of the phspline CLI.
"""

from .arclength import arclength
from .construct import construct
from .hermite import hermite
from .offset import offset
from .selftest import selftest

__all__ = ["construct", "offset", "arclength", "hermite", "selftest"]
