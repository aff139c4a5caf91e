"""GNSS interference monitoring toolkit (C/N0 over received power)."""

from rfimon._core import *  # noqa: F401,F403
from rfimon._core import __doc__ as _core_doc

__doc__ = _core_doc
