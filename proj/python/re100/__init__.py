"""Generation/storage sizing and cost analysis for fully renewable power systems.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._re100 import *  # noqa: F401,F403
from ._re100 import __version__  # noqa: F401
