from ._dnamem import *  # noqa: F401,F403
from ._dnamem import __version__  # noqa: F401
