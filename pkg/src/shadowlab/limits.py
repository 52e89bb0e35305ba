"""Enumeration guards.

``SHADOWLAB_MAX_ENUM`` replaces every default limit with a single count.
Raising it is at your own risk: the brute-force paths are exponential.
"""

import os

from .errors import InstanceTooLargeError

ENV_VAR = "SHADOWLAB_MAX_ENUM"

MAX_BASIS_SUBSETS = 10**7
MAX_KM_CODES = 2**24
MAX_BOX_CORNERS = 2**20


def check(count: int, default: int, what: str) -> None:
    override = os.environ.get(ENV_VAR)
    limit = int(override) if override else default
    if count > limit:
        raise InstanceTooLargeError(
            f"{what}: {count} candidates exceeds limit {limit} (set {ENV_VAR} to override)"
        )
