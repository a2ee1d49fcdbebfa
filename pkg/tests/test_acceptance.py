"""Acceptance suite: one test per criterion, each printing its pass/fail line.

The same criteria back the CLI `verify` subcommand; every check is exact.
Stated runtime caps (generous): 1: 30s, 2: 10min, 3: 5min, 4: 1min,
5: 2min, 6: 2min, 7: 1min, 8: 1s.
"""

from breuilext import verify

CAPS = {1: 30, 2: 600, 3: 300, 4: 60, 5: 120, 6: 120, 7: 60, 8: 1}


def _run(cid, **kw):
    result = verify.ALL_CRITERIA[cid](**kw)
    print()
    print(f"{result.line()}  [{result.elapsed:.1f}s / cap {CAPS[cid]}s]")
    for line in result.details:
        print(f"    {line}")
    assert result.passed, result.details
    assert result.elapsed < CAPS[cid], f"criterion {cid} exceeded its runtime cap"


def test_criterion_1_counterexample_exact():
    _run(1)


def test_criterion_2_ext_oracle_equivalence():
    _run(2)


def test_criterion_3_partition_exhaustive():
    _run(3)


def test_criterion_4_lattice_law():
    _run(4)


def test_criterion_5_jh_vs_brauer():
    _run(5)


def test_criterion_6_model_structure():
    _run(6, seed=0)


def test_criterion_7_count_consistency():
    _run(7)


def test_criterion_8_shape_monotonicity():
    _run(8)
