from __future__ import annotations

import threading
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SolverConfig:
    # periodic exact relabelling from the sink; the initial one always runs
    global_relabel: bool = True
    # relabel operations between two global relabels, as a multiple of |U|
    global_relabel_freq: float = 1.0
    # raise on an invalid warm-start preflow instead of starting from zero
    strict_warm_start: bool = False
    # re-check preflow invariants after every discharge (slow, for tests)
    check_invariants: bool = False
    # >1 solves independent slices of the parametric cut concurrently
    workers: int = 1


@dataclass
class SolverStats:
    maxflow_calls: int = 0
    pushes: int = 0
    relabels: int = 0
    global_relabels: int = 0
    warm_start_fallbacks: int = 0
    breakpoints: int = 0
    wall_time: float = 0.0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add(self, **counts):
        with self._lock:
            for name, value in counts.items():
                setattr(self, name, getattr(self, name) + value)

    def as_dict(self) -> dict:
        return {
            "maxflow_calls": self.maxflow_calls,
            "pushes": self.pushes,
            "relabels": self.relabels,
            "global_relabels": self.global_relabels,
            "warm_start_fallbacks": self.warm_start_fallbacks,
            "breakpoints": self.breakpoints,
            "wall_time": round(self.wall_time, 6),
        }


DEFAULT_CONFIG = SolverConfig()
