"""Instrumentation counters for mining runs."""

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Dict, Iterator


@dataclass
class MiningStats:
    """Counters collected during one mining run.

    Counters only grow within a run. A record must not be shared between
    concurrently running miners.
    """

    conditional_trees_built: int = 0
    nodes_allocated: int = 0
    header_probes: int = 0
    leaf_cutoffs: int = 0
    nontarget_skips: int = 0
    wall_time: float = 0.0  # seconds

    @contextmanager
    def timer(self) -> Iterator["MiningStats"]:
        """Add the elapsed wall-clock time of the block to wall_time."""
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.wall_time += time.perf_counter() - start

    @property
    def wall_ms(self) -> float:
        return self.wall_time * 1000.0

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    def counters(self) -> Dict[str, int]:
        """The structural counters, without wall time."""
        values = self.to_dict()
        del values["wall_time"]
        return values
