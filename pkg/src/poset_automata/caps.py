"""Resource caps for the potentially exponential operations.

Every cap can be overridden through the environment variable
POSET_AUTOMATA_CAPS, a comma-separated list of key=value pairs, e.g.

    POSET_AUTOMATA_CAPS="antichain_nodes=200000,det_states=65536"

Library functions take an optional ``caps`` argument; ``None`` means the
process-wide defaults (environment included).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import InputError

ENV_VAR = "POSET_AUTOMATA_CAPS"


@dataclass(frozen=True)
class Caps:
    det_states: int = 2**20      # subset states materialized by determinize()
    antichain_nodes: int = 10**6  # explored nodes in the antichain/subset deciders
    enum_len: int = 64           # maximum word length for bounded enumeration
    enum_nodes: int = 10**6      # prefix-tree nodes visited by bounded enumeration
    word_len: int = 10**7        # maximum |W_{k,n}| the word generator will build
    reduce_n: int = 16           # maximum n chosen by the TM reduction

    def with_overrides(self, spec: str) -> "Caps":
        """Apply a ``key=value,key=value`` override string."""
        if not spec.strip():
            return self
        known = {f.name for f in fields(self)}
        updates: dict[str, int] = {}
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise InputError(f"unknown resource cap {key!r} in {ENV_VAR}")
            try:
                updates[key] = int(value.strip())
            except ValueError:
                raise InputError(f"cap {key} needs an integer value, got {value!r}") from None
        return replace(self, **updates)


def default_caps(environ: dict[str, str] | None = None) -> Caps:
    env = os.environ if environ is None else environ
    return Caps().with_overrides(env.get(ENV_VAR, ""))
