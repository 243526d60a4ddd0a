import pytest

from ssekit.errors import DomainError
from ssekit.lemmas import (
    CHECK_NAMES,
    LemmaSuiteConfig,
    draw_factor_pair,
    run_lemma_suite,
)
from ssekit.rng import SplitMix64

# --- the pinned generator ---
# Frozen output words: any change to these breaks replayability of every
# seeded run recorded anywhere, so they are asserted verbatim.

SEED0_STREAM = (
    0x433FE7ECA6F45B12,
    0x49A1E0D3573730D4,
    0xEDA8B662A2BC403D,
    0xD7DA27F5E4B0FBED,
)


def test_stream_frozen_seed0():
    rng = SplitMix64(0)
    assert tuple(rng.next_u64() for _ in range(4)) == SEED0_STREAM


def test_stream_frozen_large_seed():
    rng = SplitMix64(1234567)
    assert tuple(rng.next_u64() for _ in range(3)) == (
        0xA60DA26B7746B25A,
        0x926D5FB32F061DFE,
        0xDA56002B87E71A90,
    )


def test_stream_wraps_seed_to_64_bits():
    assert SplitMix64(2**64).next_u64() == SEED0_STREAM[0]


def test_below_and_randint_ranges():
    rng = SplitMix64(42)
    vals = [rng.randint(1, 6) for _ in range(200)]
    assert set(vals) <= set(range(1, 7))
    assert vals[:8] == [2, 3, 3, 2, 1, 2, 2, 3]
    rng2 = SplitMix64(9)
    assert all(0 <= rng2.below(10) < 10 for _ in range(200))
    with pytest.raises(ValueError):
        rng2.below(0)
    with pytest.raises(ValueError):
        rng2.randint(3, 2)


# --- draw helpers ---


def test_draw_factor_pair_shapes_and_support():
    rng = SplitMix64(1)
    for _ in range(50):
        c, d = draw_factor_pair(rng, 4, 3)
        assert 1 <= c.rows <= 4 and 1 <= c.cols <= 4
        assert (d.rows, d.cols) == (c.cols, c.rows)
        for m in (c, d):
            assert m.is_nonnegative() and m.max_abs() <= 3
            assert all(any(m.row(i)) for i in range(m.rows))
            assert all(any(m.col(j)) for j in range(m.cols))


# --- the suite ---


def test_config_validation():
    with pytest.raises(DomainError):
        LemmaSuiteConfig(trials=0)
    with pytest.raises(DomainError):
        LemmaSuiteConfig(dim_max=0)
    with pytest.raises(DomainError):
        LemmaSuiteConfig(entry_max=0)


def test_clean_run_passes_every_family():
    config = LemmaSuiteConfig(trials=25, dim_max=3, entry_max=2, seed=7)
    report = run_lemma_suite(config)
    assert report.ok
    assert report.failure is None
    assert report.trials_run == 25
    assert report.passes == tuple((name, 25) for name in CHECK_NAMES)


def test_reports_are_deterministic():
    config = LemmaSuiteConfig(trials=10, dim_max=3, entry_max=2, seed=7)
    assert run_lemma_suite(config) == run_lemma_suite(config)


def test_corrupt_dhat_is_caught_immediately():
    config = LemmaSuiteConfig(trials=5, dim_max=3, entry_max=2, seed=42)
    report = run_lemma_suite(config, corrupt_dhat=True)
    assert not report.ok
    assert report.trials_run == 1
    f = report.failure
    assert f.check == "edge_transition_intertwines"
    assert f.trial == 0
    assert f.c.to_rows() == [[2, 1, 0], [1, 1, 2]]
    assert f.d.to_rows() == [[2, 1], [1, 0], [2, 2]]
    # the run stopped before any family finished this trial
    assert report.passes == tuple((name, 0) for name in CHECK_NAMES)


def test_corrupt_run_counts_reflect_completed_work():
    config = LemmaSuiteConfig(trials=3, dim_max=2, entry_max=2, seed=0)
    report = run_lemma_suite(config, corrupt_dhat=True)
    assert not report.ok
    assert report.trials_run == report.failure.trial + 1
