"""Backend agreement: the compiled kernels and the pure fallbacks must be
interchangeable on every input the compiled path accepts, and the dispatcher
must route overflow-prone inputs to the pure path."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_factor_pairs
from ssekit import _kernels
from ssekit._kernels import pure
from ssekit.intmat import IntMatrix

compiled = pytest.mark.skipif(
    not _kernels.HAVE_COMPILED, reason="compiled extension not built"
)


def test_backend_name():
    assert _kernels.backend_name() in ("compiled", "pure")


@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_matmul_pure_vs_dispatch(n, k, m, data):
    a = data.draw(st.lists(st.integers(-50, 50), min_size=n * k, max_size=n * k))
    b = data.draw(st.lists(st.integers(-50, 50), min_size=k * m, max_size=k * m))
    assert list(_kernels.matmul(a, n, k, b, m)) == list(pure.matmul(a, n, k, b, m))


@compiled
def test_matmul_compiled_direct():
    from ssekit._kernels import _core

    a = [1, 2, 3, 4]
    b = [0, 1, 1, 1]
    assert list(_core.matmul_i64(a, 2, 2, b, 2)) == [2, 3, 4, 7]


def test_matmul_overflow_routes_to_pure():
    # k * amax * bmax exceeds int64: dispatcher must stay exact
    big = 2**40
    got = _kernels.matmul([big, big], 1, 2, [big, big], 1)
    assert list(got) == [2 * big * big]
    assert 2 * big * big > 2**63 - 1


def test_matmul_int64_boundary():
    # exactly at the bound: 1 * amax * bmax == 2**63 - 1 stays eligible
    amax = 2**63 - 1
    got = _kernels.matmul([amax], 1, 1, [1], 1)
    assert list(got) == [amax]
    got = _kernels.matmul([amax], 1, 1, [2], 1)
    assert list(got) == [2 * amax]


def test_fits_search_bounds():
    assert _kernels._fits_search([1], 2, 3, None)
    assert not _kernels._fits_search([1], 61, 1, None)
    assert not _kernels._fits_search([1], 2, 2**20 + 1, None)
    assert not _kernels._fits_search([1], 1, 1, 2**62 + 1)


FACTOR_CASES = [
    ([2], 1, 1, 2),
    ([2], 1, 2, 2),
    ([3], 1, 2, 3),
    ([1, 1, 1, 1], 2, 1, 1),
    ([1, 1, 1, 1], 2, 2, 1),
    ([2, 1, 1, 1], 2, 2, 2),
    ([0, 1, 1, 1], 2, 2, 1),
    ([1, 1, 1, 1, 0, 1, 0, 1, 1], 3, 2, 1),
]


@pytest.mark.parametrize("flat,n,m,e", FACTOR_CASES)
def test_factor_search_matches_naive(flat, n, m, e):
    a = IntMatrix(n, n, tuple(flat))
    want = naive_factor_pairs(a, m, e)
    got = [(tuple(c), tuple(d)) for c, d in _kernels.factor_search(flat, n, m, e)]
    assert got == want
    pure_got = [(tuple(c), tuple(d)) for c, d in pure.factor_search(flat, n, m, e)]
    assert pure_got == want


@pytest.mark.parametrize("flat,n,m,e", FACTOR_CASES)
def test_factor_search_limit_is_prefix(flat, n, m, e):
    full = pure.factor_search(flat, n, m, e)
    for limit in (0, 1, 2, len(full), len(full) + 5):
        got = _kernels.factor_search(flat, n, m, e, limit)
        assert [(tuple(c), tuple(d)) for c, d in got] == [
            (tuple(c), tuple(d)) for c, d in full[:limit]
        ]


def test_factor_search_empty_outcomes():
    # a zero matrix admits no factorization into zero-free factors
    assert _kernels.factor_search([0], 1, 1, 3) == []
    # entry 3 cannot be reached with m=1, e=1
    assert _kernels.factor_search([3], 1, 1, 1) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.data())
def test_factor_search_random_agreement(n, m, data):
    flat = tuple(
        data.draw(st.integers(0, 3), label=f"a[{i}]") for i in range(n * n)
    )
    e = data.draw(st.integers(1, 2), label="e")
    a = IntMatrix(n, n, flat)
    want = naive_factor_pairs(a, m, e)
    got = [(tuple(c), tuple(d)) for c, d in _kernels.factor_search(flat, n, m, e)]
    assert got == want


def test_pure_env_forces_fallback():
    code = (
        "import ssekit._kernels as k; "
        "print(k.backend_name(), k.HAVE_COMPILED)"
    )
    env = dict(os.environ, SSEKIT_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "pure False"
