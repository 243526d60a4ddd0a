import json

import pytest

from oracles import naive_factor_pairs
from ssekit.errors import DomainError, MatrixFormatError, VerificationError
from ssekit.factor import (
    SearchBudget,
    SseChain,
    canonical_permutation_form,
    chain_from_json_obj,
    chain_to_json_obj,
    enumerate_factorizations,
    identity_chain,
    verify_chain,
    verify_elementary,
)
from ssekit.intmat import IntMatrix
from ssekit.rng import SplitMix64


def M(rows):
    return IntMatrix.from_rows(rows)


# --- certificates ---


def test_verify_elementary_computes_products():
    cert = verify_elementary(M([[1], [1]]), M([[1, 1]]))
    assert cert.a == M([[1, 1], [1, 1]])
    assert cert.b == M([[2]])


def test_verify_elementary_rejects_wrong_claim():
    with pytest.raises(VerificationError) as exc:
        verify_elementary(M([[1], [1]]), M([[1, 1]]), a=M([[1, 2], [1, 1]]))
    assert "A(1,2) is 2 but the factors give 1" in str(exc.value)
    with pytest.raises(VerificationError) as exc:
        verify_elementary(M([[1], [1]]), M([[1, 1]]), b=M([[3]]))
    assert "B(1,1) is 3 but the factors give 2" in str(exc.value)


def test_verify_elementary_shape_and_sign_checks():
    with pytest.raises(DomainError):
        verify_elementary(M([[1, 1]]), M([[1, 1]]))
    with pytest.raises(DomainError):
        verify_elementary(M([[-1], [1]]), M([[1, 1]]))


# --- chains ---


def test_identity_chain():
    a = M([[2]])
    chain = identity_chain(a)
    assert chain.lag == 0
    report = verify_chain(chain)
    assert report.transfer == IntMatrix.identity(1)
    assert report.unit_image == (1,)


def test_chain_transfer_accumulates():
    a = M([[2]])
    s1 = verify_elementary(M([[2]]), M([[1]]))
    s2 = verify_elementary(M([[1]]), M([[2]]))
    chain = SseChain((a, a, a), (s1, s2))
    assert chain.lag == 2
    report = verify_chain(chain)
    assert report.transfer == M([[2]])
    assert report.unit_image == (2,)


def test_chain_linkage_enforced():
    s1 = verify_elementary(M([[2]]), M([[1]]))
    with pytest.raises(VerificationError):
        SseChain((M([[2]]), M([[3]])), (s1,))
    with pytest.raises(DomainError):
        SseChain((M([[2]]), M([[2]])), ())
    with pytest.raises(DomainError):
        SseChain((), ())


def test_chain_json_round_trip():
    s1 = verify_elementary(M([[1], [1]]), M([[1, 1]]))
    chain = SseChain((s1.a, s1.b), (s1,))
    obj = chain_to_json_obj(chain)
    back = chain_from_json_obj(json.loads(json.dumps(obj)))
    assert back == chain


def test_chain_json_structural_errors():
    good = chain_to_json_obj(identity_chain(M([[2]])))
    for breakage in (
        lambda o: o.pop("steps"),
        lambda o: o.update(steps={}),
        lambda o: o.update(matrices=[]),
        lambda o: o["matrices"].append(o["matrices"][0]),
    ):
        obj = json.loads(json.dumps(good))
        breakage(obj)
        with pytest.raises(MatrixFormatError):
            chain_from_json_obj(obj)
    with pytest.raises(MatrixFormatError):
        chain_from_json_obj([1, 2])


def test_chain_json_step_shape_is_format_error():
    s1 = verify_elementary(M([[1], [1]]), M([[1, 1]]))
    obj = chain_to_json_obj(SseChain((s1.a, s1.b), (s1,)))
    obj["steps"][0]["C"] = {"rows": 1, "cols": 1, "data": [[1]]}
    with pytest.raises(MatrixFormatError):
        chain_from_json_obj(obj)


def test_chain_json_corruption_is_verification_error():
    s1 = verify_elementary(M([[1], [1]]), M([[1, 1]]))
    obj = chain_to_json_obj(SseChain((s1.a, s1.b), (s1,)))
    obj["steps"][0]["D"] = {"rows": 1, "cols": 2, "data": [[1, 2]]}
    with pytest.raises(VerificationError):
        chain_from_json_obj(obj)


# --- search ---


def test_budget_validation():
    with pytest.raises(DomainError):
        SearchBudget(0, 1)
    with pytest.raises(DomainError):
        SearchBudget(1, 0)
    with pytest.raises(DomainError):
        SearchBudget(1, 1, 0)
    assert SearchBudget(1, 1, None).max_results is None


def test_enumerate_preconditions():
    budget = SearchBudget(2, 2)
    with pytest.raises(DomainError):
        enumerate_factorizations(M([[1, 0]]), 1, budget)
    with pytest.raises(DomainError):
        enumerate_factorizations(M([[-1]]), 1, budget)
    with pytest.raises(DomainError):
        enumerate_factorizations(M([[1]]), 3, budget)


def test_enumerate_frozen_unique():
    certs = enumerate_factorizations(M([[1, 1], [1, 1]]), 1, SearchBudget(1, 1))
    assert len(certs) == 1
    assert certs[0].c == M([[1], [1]])
    assert certs[0].d == M([[1, 1]])
    assert certs[0].b == M([[2]])


def test_enumerate_frozen_order():
    certs = enumerate_factorizations(M([[3]]), 2, SearchBudget(2, 3))
    got = [(c.c.entries, c.d.entries) for c in certs]
    assert got == [
        ((1, 1), (1, 2)),
        ((1, 1), (2, 1)),
        ((1, 2), (1, 1)),
        ((2, 1), (1, 1)),
    ]
    for cert in certs:
        assert cert.b == cert.d @ cert.c


def test_enumerate_truncation_is_prefix():
    full = enumerate_factorizations(M([[3]]), 2, SearchBudget(2, 3))
    for k in (1, 2, 3):
        part = enumerate_factorizations(M([[3]]), 2, SearchBudget(2, 3, k))
        assert part == full[:k]


def test_enumerate_empty_is_valid():
    assert enumerate_factorizations(M([[3]]), 1, SearchBudget(1, 1)) == []


def test_enumerate_matches_naive_on_random_matrices():
    rng = SplitMix64(3)
    for _ in range(25):
        n = rng.randint(1, 2)
        m = rng.randint(1, 2)
        e = rng.randint(1, 2)
        a = IntMatrix(n, n, tuple(rng.randint(0, 3) for _ in range(n * n)))
        want = naive_factor_pairs(a, m, e)
        got = [
            (c.c.entries, c.d.entries)
            for c in enumerate_factorizations(a, m, SearchBudget(m, e))
        ]
        assert got == want


# --- canonical form ---


def test_canonical_frozen():
    form = canonical_permutation_form(M([[3, 0], [0, 1]]))
    assert form.exact
    assert form.matrix == M([[1, 0], [0, 3]])
    form = canonical_permutation_form(M([[0, 1], [2, 0]]))
    assert form.matrix == M([[0, 1], [2, 0]])


def test_canonical_invariant_under_relabeling():
    rng = SplitMix64(5)
    for _ in range(20):
        n = rng.randint(1, 4)
        a = IntMatrix(n, n, tuple(rng.randint(0, 2) for _ in range(n * n)))
        perm = list(range(n))
        # Fisher-Yates with the pinned stream
        for i in range(n - 1, 0, -1):
            j = rng.randint(0, i)
            perm[i], perm[j] = perm[j], perm[i]
        assert (
            canonical_permutation_form(a.permuted(perm)).matrix
            == canonical_permutation_form(a).matrix
        )


def test_canonical_large_is_inexact():
    a = IntMatrix.identity(9)
    form = canonical_permutation_form(a)
    assert not form.exact
    assert form.matrix == a
    with pytest.raises(DomainError):
        canonical_permutation_form(M([[1, 0]]))
