"""Loewner-order verification of Bessel-type inequalities on matrix Hilbert modules."""

from hmod._core import *  # noqa: F401,F403
from hmod._core import __version__  # noqa: F401
