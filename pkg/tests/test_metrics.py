import math
import random

import pytest

from contractsched import (
    Contract,
    ExponentialSpec,
    InstanceTooLargeError,
    Schedule,
    acceleration_ratio,
    critical_times,
    deficiency,
    deficiency_bruteforce_oracle,
    deficiency_upper_bound,
    exponential_schedule,
    performance_ratio,
    scaling_oracle,
)
from contractsched.transforms import deficiency_value_m1


def sched(n, m, rows):
    return Schedule(n, m, tuple(Contract(p, q, length) for p, q, length in rows))


def random_sched(rng, n, m, k, serve_all_first=True):
    problems = list(range(n)) if serve_all_first else []
    rng.shuffle(problems)
    while len(problems) < k:
        problems.append(rng.randrange(n))
    return Schedule(
        n, m, tuple(Contract(p, rng.randrange(m), rng.uniform(0.1, 10.0)) for p in problems[:k])
    )


# --- hand-checked fixed cases --------------------------------------------------

HAND = [(0, 0, 1.0), (1, 0, 2.0), (0, 0, 4.0), (1, 0, 8.0)]


def test_hand_schedule_measures():
    s = sched(2, 1, HAND)
    assert acceleration_ratio(s).value == 7.5  # at 15^-: 15 / 2
    assert performance_ratio(s).value == 3.75  # acceleration / ceil(2/1)
    assert deficiency(s).value == 2.5  # at 15^-: 15 / (4 + 2)


def test_two_processor_series():
    # exponential b=2, n=3, m=2 prefix of 8; series hand-verified via
    # per-processor prefix sums and enumeration of OPT
    s = sched(3, 2, [(i % 3, i % 2, 2.0**i) for i in range(8)])
    report = deficiency(s)
    assert [round(x.time, 9) for x in report.samples] == [10.0, 21.0, 42.0, 85.0, 170.0]
    assert [x.ratio for x in report.samples] == [2.5, 2.625, 2.625, 2.65625, 2.65625]
    assert report.value == 2.65625
    assert report.argmax_time == 85.0
    assert report.unserved_times == (1.0, 2.0, 5.0)
    assert report.incomplete
    assert acceleration_ratio(s).value == 10.625
    assert performance_ratio(s).value == 5.3125


def test_first_window_starts_when_all_served():
    s = sched(3, 2, [(i % 3, i % 2, 2.0**i) for i in range(8)])
    report = deficiency(s)
    assert min(x.time for x in report.samples) == 10.0
    assert max(report.unserved_times) < 10.0


# --- doubling schedule ----------------------------------------------------------


def test_doubling_schedule_reaches_four():
    s = exponential_schedule(ExponentialSpec(n=1, m=1, base=2.0, k_max=40))
    assert acceleration_ratio(s).value == pytest.approx(4.0, abs=1e-3)
    assert deficiency(s).value == pytest.approx(4.0, abs=1e-3)


def test_single_problem_measures_coincide():
    rng = random.Random(5)
    for _ in range(20):
        s = random_sched(rng, 1, 1, rng.randint(2, 8))
        a = acceleration_ratio(s).value
        assert performance_ratio(s).value == a
        assert deficiency(s).value == pytest.approx(a, rel=1e-12)


# --- acceleration ----------------------------------------------------------------


def test_single_contract_window():
    s = sched(1, 1, [(0, 0, 5.0)])
    report = acceleration_ratio(s, window=[5.5])
    assert report.value == pytest.approx(5.5 / 5.0, rel=1e-12)


def test_acceleration_optimal_base_sup():
    s = exponential_schedule(ExponentialSpec(n=2, m=1, base=1.5, k_max=40))
    assert abs(acceleration_ratio(s).value - 6.75) <= 1e-6
    assert acceleration_ratio(s).analytic == {"kind": "limit", "value": pytest.approx(6.75, rel=1e-12)}


def test_performance_is_acceleration_over_stack():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        s = random_sched(rng, n, m, rng.randint(n + 1, 10))
        acc = acceleration_ratio(s).value
        perf = performance_ratio(s).value
        if math.isinf(acc):
            assert math.isinf(perf)
        else:
            assert perf == pytest.approx(acc / math.ceil(n / m), rel=1e-12)


def test_performance_equals_acceleration_when_m_ge_n():
    rng = random.Random(8)
    for _ in range(10):
        n = rng.randint(1, 3)
        m = rng.randint(n, 4)
        s = random_sched(rng, n, m, rng.randint(n + 1, 9))
        assert performance_ratio(s).value == acceleration_ratio(s).value


def test_performance_halved_for_two_problems():
    s = exponential_schedule(ExponentialSpec(n=2, m=1, base=1.5, k_max=40))
    assert abs(performance_ratio(s).value - 3.375) <= 1e-6


# --- deficiency -------------------------------------------------------------------


def test_best_exponential_two_problems():
    s = exponential_schedule(ExponentialSpec(n=2, m=1, base=math.sqrt(3.0), k_max=40))
    target = 3.0**1.5 / 2.0  # 2.598076...
    assert abs(deficiency(s).value - target) <= 1e-6
    assert deficiency(s).analytic == {"kind": "limit", "value": pytest.approx(target, rel=1e-12)}


def test_deficiency_m1_equals_sum_formula():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 4)
        s = random_sched(rng, n, 1, rng.randint(n + 1, 10))
        assert deficiency(s).value == pytest.approx(deficiency_value_m1(s), rel=1e-12)


def test_deficiency_analytic_upper_bound_for_multiprocessor():
    s = exponential_schedule(ExponentialSpec(n=3, m=2, base=1.4))
    report = deficiency(s)
    assert report.analytic["kind"] == "upper_bound"
    assert report.analytic["value"] == pytest.approx(deficiency_upper_bound(3, 2, 1.4).value, rel=1e-12)
    assert report.value <= report.analytic["value"] + 1e-6


def test_truncation_note_for_generated_schedules():
    s = exponential_schedule(ExponentialSpec(n=2, m=1, base=1.5, k_max=10))
    assert "prefix" in deficiency(s).truncation_note
    assert deficiency(sched(1, 1, [(0, 0, 1.0)])).truncation_note is None


def test_lpt_solver_flagged_and_conservative():
    rng = random.Random(10)
    for _ in range(15):
        n = rng.randint(2, 5)
        m = rng.randint(2, 3)
        s = random_sched(rng, n, m, rng.randint(n + 1, 12))
        exact_report = deficiency(s, solver="exact")
        lpt_report = deficiency(s, solver="lpt")
        assert not lpt_report.exact and lpt_report.solver == "lpt"
        assert exact_report.exact and exact_report.solver == "exact"
        if not math.isinf(exact_report.value):
            assert lpt_report.value <= exact_report.value + 1e-12


def test_deficiency_solver_validated():
    with pytest.raises(ValueError):
        deficiency(sched(1, 1, [(0, 0, 1.0)]), solver="magic")


def test_instance_too_large_propagates():
    rows = [(p, p % 2, float(p + 1)) for p in range(25)] + [(0, 0, 26.0)]
    s = sched(25, 2, rows)
    with pytest.raises(InstanceTooLargeError):
        deficiency(s)


def test_explicit_unserved_window_is_infinite():
    s = sched(2, 1, HAND)
    report = deficiency(s, window=[1.5])  # problem 1 unserved at 1.5
    assert math.isinf(report.value)
    assert not report.samples[0].served


def test_empty_prefix_value_is_infinite():
    s = sched(2, 1, [(0, 0, 1.0)])  # problem 1 never served
    assert math.isinf(deficiency(s).value)
    assert deficiency(s).argmax_time is None


def test_deficiency_at_least_one_on_served_windows():
    # the schedule itself packs its completed contracts by time t, so the
    # offline optimum can always scale them up by at least 1
    rng = random.Random(16)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = rng.randint(1, 3)
        s = random_sched(rng, n, m, rng.randint(n + 1, 12))
        for sample in deficiency(s).samples:
            assert sample.ratio >= 1.0 - 1e-12


def test_interior_windows_never_beat_next_critical():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(1, 3)
        s = random_sched(rng, n, rng.randint(1, 2), rng.randint(n + 1, 9))
        times = critical_times(s)
        for t0, t1 in zip(times, times[1:]):
            mid = rng.uniform(t0 + (t1 - t0) * 0.01, t1 - (t1 - t0) * 0.01)
            left = deficiency(s, window=[mid]).value
            right = deficiency(s, window=[t1]).value
            if not math.isinf(right):
                assert left <= right + 1e-9


# --- scaling oracle ----------------------------------------------------------------


def test_scaling_oracle_simple_values():
    assert scaling_oracle((1.0, 2.0), 1, 6.0) == pytest.approx(2.0, rel=1e-9)
    assert scaling_oracle((1.0, 2.0, 4.0), 2, 8.0) == pytest.approx(2.0, rel=1e-9)


def test_scaling_oracle_fixed_point():
    from contractsched import MakespanInstance, exact_makespan

    rng = random.Random(14)
    for _ in range(10):
        values = tuple(rng.uniform(0.5, 5.0) for _ in range(rng.randint(1, 5)))
        m = rng.randint(1, 3)
        t = rng.uniform(5.0, 20.0)
        d = scaling_oracle(values, m, t)
        scaled = exact_makespan(MakespanInstance(tuple(d * v for v in values), m)).makespan
        assert scaled == pytest.approx(t, rel=1e-9)


def test_oracle_against_schedule():
    s = sched(2, 1, [(0, 0, 1.0), (1, 0, 2.0)])
    assert deficiency_bruteforce_oracle(s, 6.0) == pytest.approx(2.0, rel=1e-9)
    s2 = sched(3, 2, [(0, 0, 1.0), (1, 0, 2.0), (2, 1, 4.0)])
    assert deficiency_bruteforce_oracle(s2, 8.0) == pytest.approx(2.0, rel=1e-9)


def test_oracle_unserved_is_infinite():
    s = sched(2, 1, [(0, 0, 1.0), (1, 0, 2.0)])
    assert math.isinf(deficiency_bruteforce_oracle(s, 0.5))


def test_oracle_guard():
    s = sched(11, 1, [(p, 0, float(p + 1)) for p in range(11)])
    with pytest.raises(ValueError):
        deficiency_bruteforce_oracle(s, 100.0)


def test_oracle_matches_deficiency_randomized():
    rng = random.Random(15)
    for _ in range(50):
        n = rng.randint(1, 6)
        m = rng.randint(1, 3)
        s = random_sched(rng, n, m, rng.randint(max(3, n), 12), serve_all_first=False)
        for sample in deficiency(s).samples:
            oracle = deficiency_bruteforce_oracle(s, sample.time)
            assert sample.ratio == pytest.approx(oracle, rel=1e-9)
