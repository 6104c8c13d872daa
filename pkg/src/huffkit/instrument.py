"""Operation counters for complexity conformance checks.

The counters are exact integers incremented by the library's hot operations
when a collector is passed in; the default (``None``) costs nothing.  The
bench and verify commands assert bounds on these counts instead of on wall
time, which is machine-dependent.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class OpCounters:
    tree_merges: int = 0
    tree_walk_steps: int = 0
    bits_emitted: int = 0
    state_ones_written: int = 0
    coord_lookups: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
