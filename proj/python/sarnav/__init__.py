"""SAR back-projection navigation-error sensitivity toolkit."""

from _sarnav import *  # noqa: F401,F403
from _sarnav import __doc__  # noqa: F401
