"""Constructors for the standard schedule families.

Exponential round-robin schedules assign contract i to problem i mod n and
processor i mod m with length b**i.  The two closed-form base choices are the
deficiency-minimizing base and the acceleration-ratio-minimizing base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Contract, Schedule


@dataclass(frozen=True)
class ExponentialSpec:
    """Parameters of an exponential round-robin schedule prefix.

    ``k_max`` is the number of contracts to materialize; it defaults to
    8*(n+m), by which point the empirical supremum over critical times has
    stabilized for any base > 1.
    """

    n: int
    m: int
    base: float
    k_max: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be >= 1")
        if not self.base > 1.0:
            raise ValueError(f"base must be > 1 (the schedule degenerates otherwise), got {self.base}")
        if self.k_max is not None and self.k_max < self.n + self.m:
            raise ValueError(f"k_max must be >= n + m = {self.n + self.m} for a full evaluation window")

    @property
    def contracts_to_build(self) -> int:
        return self.k_max if self.k_max is not None else 8 * (self.n + self.m)


def exponential_schedule(spec: ExponentialSpec) -> Schedule:
    """Materialize the prefix of an exponential round-robin schedule."""
    b = spec.base
    contracts = tuple(
        Contract(problem=i % spec.n, processor=i % spec.m, length=b**i)
        for i in range(spec.contracts_to_build)
    )
    return Schedule(
        n_problems=spec.n,
        m_processors=spec.m,
        contracts=contracts,
        generator={"family": "exponential", "base": b},
    )


def _root(value: float, degree: float) -> float:
    # exp(log(.)/.) avoids overflow of integer powers for large n + m
    return math.exp(math.log(value) / degree)


def deficiency_optimal_base(n: int, m: int) -> float:
    """Base minimizing the deficiency bound of the exponential schedule.

    With gamma = (n-1) mod m the minimizer of b**(n+m)/(b**(n+m-1) - b**gamma)
    is (n+m-gamma)**(1/(n+m-gamma-1)); writing n-1 = rho*m + gamma this equals
    (m*(rho+1)+1)**(1/(m*(rho+1))).  For m=1 it reduces to (n+1)**(1/n).
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    gamma = (n - 1) % m
    return _root(n + m - gamma, n + m - gamma - 1)


def acceleration_optimal_base(n: int, m: int) -> float:
    """Base minimizing the acceleration ratio: ((m+n)/n)**(1/m)."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return _root((m + n) / n, m)
