"""Acceptance criteria 1-11, each at its stated scale and time limit.

Criteria 1-10 run the corresponding verification suite at level "full";
criterion 11 re-runs experiments and compares the record streams byte for
byte.  One PASS/FAIL line per criterion is printed in the terminal summary.
"""
import time

import pytest

from syndgap import harness
from syndgap.suites import SUITES

RESULTS = {}

CRITERIA = [
    (1, "line ball-count bound, exhaustive q in {2,3}, n <= 5", "line-ball-bound", 120),
    (2, "degenerate syndrome lines, 100 random codes", "degenerate-lines", 120),
    (3, "distance oracle equals syndrome-ball membership, 1000 cases", "oracle-equivalence", 120),
    (4, "no-slack weight profiles and certified violations", "no-slack", 300),
    (5, "rank reduction on 200+ synthetic witnesses", "rank-reduction", 300),
    (6, "space and curve ball-count bounds, exhaustive plus 1000 random", "space-curve-bounds", 300),
    (7, "correlated-agreement decision equals codeword brute force", "ca-reformulation", 300),
    (8, "uniform image of random parity checks, 5 sigma", "uniform-image", 60),
    (9, "planner entropy, audits, worked plan, precision", "planner", 60),
    (10, "line-to-space lifting on 20 codes", "lifting", 600),
]


def record(number, title, ok, seconds, detail):
    RESULTS[number] = (title, ok, seconds, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({seconds:.1f}s) {detail}")


@pytest.mark.parametrize("number,title,suite,limit", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, suite, limit):
    t0 = time.perf_counter()
    res = SUITES[suite](level="full")
    seconds = time.perf_counter() - t0
    ok = res.passed and seconds < limit
    detail = f"[{res.checks} checks, {res.failed} failed, limit {limit}s]"
    if res.info:
        detail += f" {res.info}"
    record(number, title, ok, seconds, detail)
    assert res.passed, res.failures
    assert seconds < limit


DETERMINISM_RUNS = [
    dict(mode="line-gap", q=8, n=8, r=4, E=1, Eplus=2, trials=5, seed=2024),
    dict(mode="line-gap", q=5, n=10, r=5, E=1, Eplus=2, trials=4, seed=11, enumeration="sampled", samples=200,
         attach_no_slack=True),
    dict(mode="space-ca", q=4, n=8, r=4, E=1, Eplus=1, degree=2, trials=4, seed=5, samples=150),
    dict(mode="curve-ca", q=5, n=8, r=4, E=1, Eplus=2, degree=2, trials=4, seed=6, samples=150),
    dict(mode="space-gap", q=3, n=8, r=4, E=1, Eplus=2, degree=2, trials=4, seed=7, samples=150, format="json"),
]


def _stream(cfg):
    records, _ = harness.run_experiment(harness.ExperimentConfig(**cfg))
    text = harness.records_to_csv(records) if cfg.get("format", "csv") == "csv" else harness.records_to_json(records)
    return harness.strip_timestamp(text), len(records)


def test_criterion_11_determinism():
    t0 = time.perf_counter()
    problems = []
    total = 0
    for cfg in DETERMINISM_RUNS:
        first, n = _stream(cfg)
        again, _ = _stream(cfg)
        parallel, _ = _stream(dict(cfg, jobs=2))
        total += n
        if first != again:
            problems.append(f"{cfg['mode']}: rerun differs")
        if first != parallel:
            problems.append(f"{cfg['mode']}: serial and parallel differ")
        if n == 0:
            problems.append(f"{cfg['mode']}: no records to compare")
    seconds = time.perf_counter() - t0
    ok = not problems and seconds < 120
    record(11, "harness determinism, reruns and serial vs parallel", ok, seconds,
           f"[{len(DETERMINISM_RUNS)} configs, {total} records, limit 120s] {problems or ''}")
    assert not problems
    assert seconds < 120
