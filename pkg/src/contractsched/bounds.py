"""Closed-form bound calculators for the three measures.

Every bound is reported with the parameters it was evaluated at:

* gamma = (n-1) mod m and rho with n-1 = rho*m + gamma split the problem
  count against the processor count;
* kappa = max{1/(2-1/m), (b^m-1)/b^m} is the greedy-to-OPT makespan factor
  on geometric instances, and lambda = 1/kappa its reciprocal;
* beta is the deficiency-minimizing exponential base, a the minimizer of a
  geometric functional.

The module also carries the ternary-search optimizer for the geometric
functionals that appear in the lower-bound arguments, plus the data sets
behind the three standard figures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .generators import acceleration_optimal_base, deficiency_optimal_base


@dataclass(frozen=True)
class BoundReport:
    """A named closed-form bound value with the parameters that produced it."""

    name: str
    measure: str  # "acceleration" | "performance" | "deficiency"
    kind: str  # "upper" | "lower"
    value: float
    params: dict = field(default_factory=dict)


def _lambda_factor(m: int, b: float) -> float:
    """min{2 - 1/m, b^m/(b^m - 1)}: how far greedy can sit above OPT, inverted."""
    return min(2.0 - 1.0 / m, b**m / (b**m - 1.0))


def deficiency_upper_bound(n: int, m: int, b: float) -> BoundReport:
    """Deficiency bound of the base-b exponential schedule: lambda * b^(n+m) / (b^(n+m-1) - b^gamma)."""
    if not b > 1.0:
        raise ValueError(f"base must be > 1, got {b}")
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    gamma = (n - 1) % m
    lam = _lambda_factor(m, b)
    value = lam * b ** (n + m) / (b ** (n + m - 1) - b**gamma)
    return BoundReport(
        name="exponential-deficiency-upper",
        measure="deficiency",
        kind="upper",
        value=value,
        params={"n": n, "m": m, "b": b, "gamma": gamma, "lam": lam, "kappa": 1.0 / lam},
    )


def deficiency_bound_at_beta_mrho(m: int, rho: int) -> float:
    """The optimized deficiency bound as a function of (m, rho) only.

    With y = m*(rho+1) and beta = (y+1)^(1/y) the bound is
    min{2-1/m, beta^m/(beta^m-1)} / (beta^-1 - beta^-(y+1)); gamma cancels,
    so the whole surface is parameterized by m and rho.
    """
    if m < 1 or rho < 0:
        raise ValueError("m must be >= 1 and rho >= 0")
    y = m * (rho + 1)
    beta = math.exp(math.log(y + 1) / y)
    return _lambda_factor(m, beta) / (beta**-1 - beta ** (-(y + 1)))


def deficiency_upper_bound_at_beta(n: int, m: int) -> BoundReport:
    """The exponential deficiency bound evaluated at its optimal base beta."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    gamma = (n - 1) % m
    rho = (n - 1 - gamma) // m
    beta = deficiency_optimal_base(n, m)
    value = deficiency_bound_at_beta_mrho(m, rho)
    return BoundReport(
        name="exponential-deficiency-upper-at-beta",
        measure="deficiency",
        kind="upper",
        value=value,
        params={"n": n, "m": m, "gamma": gamma, "rho": rho, "beta": beta, "lam": _lambda_factor(m, beta)},
    )


def best_exponential_deficiency_single_processor(n: int) -> BoundReport:
    """Deficiency of the best exponential schedule on one processor: (n+1)^((n+1)/n) / n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = math.exp(math.log(n + 1) * (n + 1) / n) / n
    return BoundReport(
        name="best-exponential-deficiency-m1",
        measure="deficiency",
        kind="upper",
        value=value,
        params={"n": n, "m": 1, "beta": deficiency_optimal_base(n, 1)},
    )


def deficiency_lower_bound_general(n: int) -> BoundReport:
    """Every single-processor schedule for n problems has deficiency >= (n+1)/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return BoundReport(
        name="deficiency-lower-general",
        measure="deficiency",
        kind="lower",
        value=(n + 1) / n,
        params={"n": n, "m": 1},
    )


def roundrobin_lower_bound(n: int) -> BoundReport:
    """Round-robin schedules on one processor cannot beat the best exponential one."""
    best = best_exponential_deficiency_single_processor(n)
    return BoundReport(
        name="deficiency-lower-roundrobin",
        measure="deficiency",
        kind="lower",
        value=best.value,
        params={"n": n, "m": 1, "a": deficiency_optimal_base(n, 1)},
    )


def two_problem_lower_bound() -> BoundReport:
    """Any schedule for two problems on one processor has deficiency >= 2^(8/3)/3 (~2.1165).

    The bound is min over a > 1 of a^4/(a^3 - 1), attained at a = 2^(2/3).
    """
    a = 2.0 ** (2.0 / 3.0)
    return BoundReport(
        name="two-problem-lb",
        measure="deficiency",
        kind="lower",
        value=2.0 ** (8.0 / 3.0) / 3.0,
        params={"n": 2, "m": 1, "a": a},
    )


def cyclic_acceleration_lower_bound(n: int, m: int) -> BoundReport:
    """Cyclic schedules have acceleration ratio >= (n/m) * ((n+m)/n)^((n+m)/m).

    Attained by the exponential schedule with base a = ((m+n)/n)^(1/m); it is
    the minimum over a > 1 of a^(n+m)/(a^m - 1).
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    a = acceleration_optimal_base(n, m)
    value = (n / m) * ((n + m) / n) ** ((n + m) / m)
    return BoundReport(
        name="cyclic-acceleration-lb",
        measure="acceleration",
        kind="lower",
        value=value,
        params={"n": n, "m": m, "a": a},
    )


def performance_ratio_closed_form(n: int, m: int) -> BoundReport:
    """Performance ratio of the acceleration-optimal schedule (it is optimal for this measure).

    (n/m)((m+n)/n)^((m+n)/m) for m >= n, divided by ceil(n/m) for m < n.
    The report carries the two rewritten forms (1+n/m)(1+m/n)^(n/m) and
    (1+m/n)(1+m/n)^(n/m) that show the <= 4 and <= 2e ceilings.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    raw = (n / m) * ((m + n) / n) ** ((m + n) / m)
    stack = math.ceil(n / m)
    value = raw / stack
    return BoundReport(
        name="performance-ratio-closed-form",
        measure="performance",
        kind="upper",
        value=value,
        params={
            "n": n,
            "m": m,
            "a": acceleration_optimal_base(n, m),
            "acceleration_value": raw,
            "rewritten_m_ge_n": (1 + n / m) * (1 + m / n) ** (n / m),
            "rewritten_m_lt_n": (1 + m / n) * (1 + m / n) ** (n / m),
        },
    )


# ---------------------------------------------------------------------------
# Geometric functionals and their minimization
# ---------------------------------------------------------------------------

FUNCTIONALS = ("round-robin", "cyclic-acceleration", "two-problem")


def geometric_functional(name: str, n: int | None = None, m: int | None = None):
    """The limit value, as a function of the base a > 1, of the named functional family.

    round-robin:          a^(n+1) / (a^n - 1)
    cyclic-acceleration:  a^(n+m) / (a^m - 1)
    two-problem:          a^4 / (a^3 - 1)
    """
    if name == "round-robin":
        if n is None:
            raise ValueError("round-robin functional needs n")
        return lambda a: a ** (n + 1) / (a**n - 1)
    if name == "cyclic-acceleration":
        if n is None or m is None:
            raise ValueError("cyclic-acceleration functional needs n and m")
        return lambda a: a ** (n + m) / (a**m - 1)
    if name == "two-problem":
        return lambda a: a**4 / (a**3 - 1)
    raise ValueError(f"unknown functional {name!r}; expected one of {FUNCTIONALS}")


def _assert_unimodal(f, lo: float, hi: float, samples: int = 256) -> None:
    # sampled finite-difference signs must go down then up, never down again
    xs = [lo * (hi / lo) ** (i / (samples - 1)) for i in range(samples)]
    ys = [f(x) for x in xs]
    seen_increase = False
    for y0, y1 in zip(ys, ys[1:]):
        if y1 > y0:
            seen_increase = True
        elif y1 < y0 and seen_increase:
            raise ValueError("sampled functional is not unimodal on the bracket")


def optimize_geometric_functional(
    name: str,
    n: int | None = None,
    m: int | None = None,
    lo: float = 1.0 + 1e-9,
    hi: float = 64.0,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> tuple[float, float]:
    """Ternary-search minimizer (a*, F(a*)) of a geometric functional over (1, 64].

    The functional is checked for unimodality on the bracket by sampled
    monotonicity of the difference signs before searching.  Raises if the
    bracket has not shrunk below `tol` within `max_iter` iterations.
    """
    f = geometric_functional(name, n=n, m=m)
    _assert_unimodal(f, lo, hi)
    for _ in range(max_iter):
        if hi - lo <= tol:
            a = 0.5 * (lo + hi)
            return a, f(a)
        third = (hi - lo) / 3.0
        m1, m2 = lo + third, hi - third
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
    raise RuntimeError(f"ternary search did not converge to {tol} within {max_iter} iterations")


def truncated_functional_sup(name: str, a: float, k_max: int = 200, n: int | None = None, m: int | None = None) -> float:
    """sup over k <= k_max of the named functional evaluated on the geometric sequence a^j.

    Computed by direct accumulation of the truncated sums, confirming that
    eliminating the supremum over k yields the closed forms of
    ``geometric_functional`` in the k -> infinity limit (for a > 1).
    """
    if not a > 1.0:
        raise ValueError("direct sup evaluation needs a > 1")
    powers = [a**j for j in range(k_max + (n or 0) + 2 * (m or 0) + 3)]
    prefix = [0.0]
    for p in powers:
        prefix.append(prefix[-1] + p)  # prefix[i] = sum of a^0 .. a^(i-1)

    def window(lo_idx: int, hi_idx: int) -> float:
        return prefix[hi_idx + 1] - prefix[lo_idx]

    best = -math.inf
    if name == "round-robin":
        if n is None:
            raise ValueError("round-robin functional needs n")
        for k in range(k_max + 1):
            best = max(best, window(0, k + n) / window(k, k + n - 1))
    elif name == "cyclic-acceleration":
        if n is None or m is None:
            raise ValueError("cyclic-acceleration functional needs n and m")
        for k in range(k_max + 1):
            best = max(best, window(0, k + n + 2 * m - 1) / window(k + m, k + 2 * m - 1))
    elif name == "two-problem":
        for k in range(2, k_max + 1):
            best = max(best, window(0, k + 1) / (powers[k] + powers[k - 1] + powers[k - 2]))
    else:
        raise ValueError(f"unknown functional {name!r}; expected one of {FUNCTIONALS}")
    return best


# ---------------------------------------------------------------------------
# Figure data sets
# ---------------------------------------------------------------------------


def figure1_performance_curve(r_max: int = 64) -> list[tuple[float, float]]:
    """Performance ratio against the problem/processor ratio r = n/m (m dividing n).

    (1 + 1/r)(1 + 1/r)^r: equals 4 at r = 1 and decreases toward e.
    """
    return [(float(r), (1 + 1 / r) * (1 + 1 / r) ** r) for r in range(1, r_max + 1)]


def figure2_deficiency_surface(m_max: int = 64, rho_max: int = 64) -> list[tuple[int, int, float]]:
    """The optimized deficiency bound over the (m, rho) grid (the n > m regime).

    Vectorized rendering of the same expression as
    ``deficiency_bound_at_beta_mrho``; the two routes are cross-checked in
    the test suite.
    """
    m = np.arange(1, m_max + 1, dtype=float)[:, None]
    rho = np.arange(1, rho_max + 1, dtype=float)[None, :]
    y = m * (rho + 1.0)
    beta = np.exp(np.log(y + 1.0) / y)
    lam = np.minimum(2.0 - 1.0 / m, beta**m / (beta**m - 1.0))
    values = lam / (beta**-1.0 - beta ** (-(y + 1.0)))
    return [
        (mi, ri, float(values[mi - 1, ri - 1]))
        for mi in range(1, m_max + 1)
        for ri in range(1, rho_max + 1)
    ]


def figure3_single_processor_curves(n_max: int = 20) -> list[tuple[int, float, float]]:
    """General lower bound (n+1)/n vs best exponential value (n+1)^((n+1)/n)/n."""
    return [
        (n, deficiency_lower_bound_general(n).value, best_exponential_deficiency_single_processor(n).value)
        for n in range(1, n_max + 1)
    ]
