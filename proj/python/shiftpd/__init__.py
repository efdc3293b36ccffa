"""Python bindings for the shiftpd library.

Measures and verification reports come back as dicts with the same keys the
command-line tool prints as JSON.
"""

from ._shiftpd import *  # noqa: F401,F403
from ._shiftpd import __doc__  # noqa: F401
