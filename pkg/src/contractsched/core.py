"""Domain types for contract-algorithm schedules on identical processors.

A schedule interleaves executions of contract algorithms (fixed-duration runs,
each serving one problem) on ``m`` identical processors.  Every processor runs
its contracts back-to-back starting at time 0, with no idle time.  The state
relevant to an interruption at time ``t`` is the snapshot: for each problem,
the length of the longest contract completed by ``t``.

Interruptions "right before" a contract finishes are represented exactly, by
taking the snapshot at the finish time with every contract finishing at that
time excluded, rather than through floating-point epsilon arithmetic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

# Library-wide comparison tolerances for time/length values.
REL_TOL = 1e-9
ABS_TOL = 1e-12


def times_close(a: float, b: float) -> bool:
    """True if two time values are equal under the library tolerance."""
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


@dataclass(frozen=True)
class Contract:
    """One execution unit: a run of a given length for one problem on one processor."""

    problem: int
    processor: int
    length: float


@dataclass(frozen=True)
class Schedule:
    """A finite prefix of a (possibly infinite) schedule of contracts.

    Contracts are stored in global execution order.  ``generator`` optionally
    records the rule that produced the prefix (e.g. an exponential family),
    which lets evaluators report analytic limits next to empirical suprema.
    """

    n_problems: int
    m_processors: int
    contracts: tuple[Contract, ...]
    generator: dict | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "contracts", tuple(self.contracts))
        if self.n_problems < 1:
            raise ValueError(f"n_problems must be >= 1, got {self.n_problems}")
        if self.m_processors < 1:
            raise ValueError(f"m_processors must be >= 1, got {self.m_processors}")
        for idx, c in enumerate(self.contracts):
            if not (0 <= c.problem < self.n_problems):
                raise ValueError(f"contract {idx}: problem {c.problem} out of range [0, {self.n_problems})")
            if not (0 <= c.processor < self.m_processors):
                raise ValueError(f"contract {idx}: processor {c.processor} out of range [0, {self.m_processors})")
            if not (c.length > 0.0 and math.isfinite(c.length)):
                raise ValueError(f"contract {idx}: length must be positive and finite, got {c.length}")

    def __len__(self) -> int:
        return len(self.contracts)

    def processor_queues(self) -> list[list[int]]:
        """Contract indices per processor, in execution order."""
        queues: list[list[int]] = [[] for _ in range(self.m_processors)]
        for idx, c in enumerate(self.contracts):
            queues[c.processor].append(idx)
        return queues


@dataclass(frozen=True)
class Snapshot:
    """Per-problem longest completed contract lengths at an interruption time.

    ``longest[p]`` is 0.0 when problem ``p`` has no completed contract, in
    which case the snapshot is incomplete and ratio measures evaluate to
    +infinity at this time.
    """

    t: float
    longest: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "longest", tuple(self.longest))

    @property
    def sorted(self) -> tuple[float, ...]:
        return tuple(sorted(self.longest))

    def value(self, i: int) -> float:
        """The i-th smallest element, 1-indexed."""
        if not (1 <= i <= len(self.longest)):
            raise IndexError(f"rank {i} out of range [1, {len(self.longest)}]")
        return self.sorted[i - 1]

    @property
    def complete(self) -> bool:
        """True if every problem has at least one completed contract."""
        return all(v > 0.0 for v in self.longest)


def simulate(schedule: Schedule) -> list[tuple[int, float]]:
    """Finish time of every contract, as (contract index, finish time) pairs.

    Each processor executes its queue back-to-back from time 0, so a
    contract's finish time is the running load of its processor.
    """
    loads = [0.0] * schedule.m_processors
    out: list[tuple[int, float]] = []
    for idx, c in enumerate(schedule.contracts):
        loads[c.processor] += c.length
        out.append((idx, loads[c.processor]))
    return out


def critical_times(schedule: Schedule) -> list[float]:
    """Sorted distinct contract finish times.

    These are the only interruption times that matter for suprema of the
    ratio measures: between two consecutive finish times the snapshot is
    constant while the numerator grows.
    """
    fins = sorted(f for _, f in simulate(schedule))
    out: list[float] = []
    for f in fins:
        if not out or not times_close(out[-1], f):
            out.append(f)
    return out


def _snapshot(schedule: Schedule, t: float, include_boundary: bool) -> Snapshot:
    if not t > 0.0:
        raise ValueError(f"interruption time must be positive, got {t}")
    longest = [0.0] * schedule.n_problems
    for (idx, fin) in simulate(schedule):
        c = schedule.contracts[idx]
        boundary = times_close(fin, t)
        done = (fin <= t or boundary) if include_boundary else (fin < t and not boundary)
        if done and c.length > longest[c.problem]:
            longest[c.problem] = c.length
    return Snapshot(t=t, longest=tuple(longest))


def snapshot(schedule: Schedule, t: float) -> Snapshot:
    """Snapshot at time t; contracts finishing exactly at t count as completed."""
    return _snapshot(schedule, t, include_boundary=True)


def snapshot_before(schedule: Schedule, t: float) -> Snapshot:
    """Snapshot right before t: contracts finishing at t (within tolerance) are excluded.

    This realizes interruption "right before" a finish time exactly; all
    contracts tied at t are excluded together.
    """
    return _snapshot(schedule, t, include_boundary=False)


# ---------------------------------------------------------------------------
# JSON schedule format
#
# {"n": int, "m": int, "contracts": [{"problem": int, "processor": int,
#  "length": float}, ...]} in global execution order, plus an optional
# "generator" object.  Round-trips are value-exact (Python's json module
# serializes floats via repr, which is lossless for binary64).
# ---------------------------------------------------------------------------


def schedule_to_dict(schedule: Schedule) -> dict:
    doc: dict = {
        "n": schedule.n_problems,
        "m": schedule.m_processors,
        "contracts": [
            {"problem": c.problem, "processor": c.processor, "length": c.length}
            for c in schedule.contracts
        ],
    }
    if schedule.generator is not None:
        doc["generator"] = schedule.generator
    return doc


def schedule_from_dict(doc: dict) -> Schedule:
    try:
        contracts = tuple(
            Contract(problem=int(c["problem"]), processor=int(c["processor"]), length=float(c["length"]))
            for c in doc["contracts"]
        )
        return Schedule(
            n_problems=int(doc["n"]),
            m_processors=int(doc["m"]),
            contracts=contracts,
            generator=doc.get("generator"),
        )
    except KeyError as exc:
        raise ValueError(f"schedule document missing key: {exc}") from exc


def save_schedule(schedule: Schedule, path: str | Path) -> None:
    Path(path).write_text(json.dumps(schedule_to_dict(schedule), indent=2) + "\n", encoding="utf-8")


def load_schedule(path: str | Path) -> Schedule:
    return schedule_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
