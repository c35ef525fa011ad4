"""Makespan solvers on identical processors.

The makespan of an assignment is the maximum processor load.  Three solvers
are provided: list-greedy in a caller-supplied order (each job goes to a
least-loaded processor, ties to the lowest index), LPT (greedy on jobs in
decreasing size), and an exact branch-and-bound used as the OPT oracle in
the deficiency measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

EXACT_MAX_JOBS = 24


class InstanceTooLargeError(ValueError):
    """Raised when an instance exceeds the exact solver's job-count guard."""


@dataclass(frozen=True)
class MakespanInstance:
    """A set of job sizes to be scheduled on m identical processors."""

    sizes: tuple[float, ...]
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(float(s) for s in self.sizes))
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not self.sizes:
            raise ValueError("instance needs at least one job")
        for s in self.sizes:
            if not (s > 0.0 and math.isfinite(s)):
                raise ValueError(f"job sizes must be positive and finite, got {s}")


@dataclass(frozen=True)
class Assignment:
    """A job-to-processor map with its loads and makespan."""

    processor_of: tuple[int, ...]
    loads: tuple[float, ...]
    makespan: float
    optimal: bool


def _assignment_from_map(processor_of: Sequence[int], sizes: Sequence[float], m: int, optimal: bool) -> Assignment:
    loads = [0.0] * m
    for job, proc in enumerate(processor_of):
        loads[proc] += sizes[job]
    return Assignment(
        processor_of=tuple(processor_of),
        loads=tuple(loads),
        makespan=max(loads),
        optimal=optimal,
    )


def greedy_in_order(instance: MakespanInstance, order: Sequence[int] | None = None) -> Assignment:
    """Graham's list scheduling: jobs in `order`, each to a least-loaded processor.

    Ties are broken by the lowest processor index, which makes the placement
    deterministic (on geometrically increasing sizes, the i-th job of the
    order lands on processor i mod m).
    """
    n = len(instance.sizes)
    if order is None:
        order = range(n)
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the job indices")
    loads = [0.0] * instance.m
    processor_of = [0] * n
    for job in order:
        proc = min(range(instance.m), key=lambda p: loads[p])
        processor_of[job] = proc
        loads[proc] += instance.sizes[job]
    return _assignment_from_map(processor_of, instance.sizes, instance.m, optimal=False)


def lpt_makespan(instance: MakespanInstance) -> Assignment:
    """Greedy on jobs in decreasing size order (the LPT heuristic)."""
    order = sorted(range(len(instance.sizes)), key=lambda j: (-instance.sizes[j], j))
    return greedy_in_order(instance, order)


def greedy_geometric_makespan(b: float, n: int, m: int, k: int = 0) -> float:
    """Closed form of the greedy makespan on jobs b**k, ..., b**(n+k-1).

    Greedy in increasing order places the i-th job on processor i mod m, so
    the busiest processor carries the geometric subseries ending at the last
    job:  b**k * (b**(n+m-1) - b**((n-1) mod m)) / (b**m - 1).
    """
    if not b > 1.0:
        raise ValueError(f"geometric ratio must be > 1, got {b}")
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return b**k * (b ** (n + m - 1) - b ** ((n - 1) % m)) / (b**m - 1)


def exact_makespan(instance: MakespanInstance, max_jobs: int = EXACT_MAX_JOBS) -> Assignment:
    """Provably optimal makespan by branch and bound.

    Jobs are assigned in decreasing size order; identical current loads are
    only branched once (processor symmetry), and branches are cut against the
    incumbent with the lower bound max(current makespan, remaining work / m).
    The LPT assignment seeds the incumbent.  Guarded at `max_jobs` jobs;
    callers needing larger instances can opt into the flagged LPT heuristic.
    """
    sizes = instance.sizes
    m = instance.m
    n = len(sizes)
    if n > max_jobs:
        raise InstanceTooLargeError(f"{n} jobs exceeds the exact-solver guard of {max_jobs}")

    if m == 1:
        return _assignment_from_map([0] * n, sizes, 1, optimal=True)

    lower = max(max(sizes), sum(sizes) / m)
    seed = lpt_makespan(instance)
    if seed.makespan <= lower * (1.0 + 1e-12):
        return Assignment(seed.processor_of, seed.loads, seed.makespan, optimal=True)

    order = sorted(range(n), key=lambda j: (-sizes[j], j))
    best_span = seed.makespan
    best_assign = list(seed.processor_of)
    loads = [0.0] * m
    assign = [0] * n
    done = False

    def descend(pos: int, cur_max: float) -> None:
        nonlocal best_span, best_assign, done
        if done:
            return
        if pos == n:
            # strictly better than the incumbent by construction
            best_span = cur_max
            best_assign = assign.copy()
            if best_span <= lower * (1.0 + 1e-12):
                done = True
            return
        if cur_max >= best_span:  # incumbent improved below this branch
            return
        job = order[pos]
        size = sizes[job]
        tried: set[float] = set()
        for proc in range(m):
            load = loads[proc]
            if load in tried:
                continue
            tried.add(load)
            new_load = load + size
            if new_load >= best_span:
                continue
            loads[proc] = new_load
            assign[job] = proc
            descend(pos + 1, max(cur_max, new_load))
            loads[proc] = load
            if done:
                return

    descend(0, 0.0)
    return _assignment_from_map(best_assign, sizes, m, optimal=True)
