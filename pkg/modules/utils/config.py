"""
Oracle limits
Enumeration caps for the exact oracles, overridable from the environment
"""

import os
from dataclasses import dataclass, fields

from modules.errors import BadParams

ENV_PREFIX = 'TAPCERT_'


@dataclass(frozen=True)
class OracleLimits:
    max_blocks: int = 9          # blocks per base partition (Bell(9) = 21147 coarsenings)
    max_cut_nodes: int = 18      # exhaustive cut enumeration: 2^(n-1) - 1 cuts
    max_ip_vars: int = 26        # optional binary variables in the integer search
    max_lp_rounds: int = 5000    # lazy constraint generation rounds
    random_attempts: int = 200   # resampling attempts for random instances

    @classmethod
    def from_env(cls, environ=None):
        """
        Read overrides such as TAPCERT_MAX_BLOCKS=8 from the environment
        """
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            try:
                value = int(raw)
            except ValueError:
                raise BadParams(f"{ENV_PREFIX}{f.name.upper()} must be an integer, got '{raw}'")
            if value < 1:
                raise BadParams(f"{ENV_PREFIX}{f.name.upper()} must be positive")
            values[f.name] = value
        return cls(**values)


DEFAULT_LIMITS = OracleLimits()


def resolve_limits(limits=None):
    return DEFAULT_LIMITS if limits is None else limits
