#!/usr/bin/env python3
"""Walk through the three measures on the classic doubling schedule.

One problem, one processor, contract lengths 1, 2, 4, 8, ...: interrupting
right before a contract finishes is the worst case, and the ratio between
the interruption time and the best completed contract climbs toward 4.
With a single problem the acceleration ratio, the performance ratio, and
the deficiency are the same number.
"""

from contractsched import (
    ExponentialSpec,
    acceleration_ratio,
    deficiency,
    exponential_schedule,
    performance_ratio,
)


def main() -> None:
    sched = exponential_schedule(ExponentialSpec(n=1, m=1, base=2.0, k_max=16))
    print(f"doubling schedule, first {len(sched.contracts)} contracts")
    print(f"lengths: {[c.length for c in sched.contracts[:8]]} ...")
    print()

    report = deficiency(sched)
    print("interruption right before t | best completed | ratio")
    for sample in report.samples[:10]:
        print(f"{sample.time:>27.1f} | {sample.denominator:>14.1f} | {sample.ratio:.6f}")
    print("...")
    print(f"supremum over the prefix: {report.value:.9f}")
    print(f"analytic limit:           {report.analytic['value']:.9f}")
    print()

    acc = acceleration_ratio(sched).value
    perf = performance_ratio(sched).value
    print(f"acceleration ratio {acc:.6f} == performance ratio {perf:.6f} == deficiency {report.value:.6f}")
    print("(single problem, single processor: the three measures coincide)")


if __name__ == "__main__":
    main()
