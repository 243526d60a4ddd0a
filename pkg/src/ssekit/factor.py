"""Elementary equivalences between nonnegative integer matrices.

An elementary equivalence from A to B is a pair of nonnegative integer
factors with A = C @ D and B = D @ C.  Chains of such steps compose into the
strong form of the relation; the transpose of each D accumulates into a
transfer matrix that acts on cokernel classes.  This module holds the
certificate types (verified exactly on construction), the bounded search for
all factorizations of a matrix, chain verification, the JSON form of chains,
and a canonical representative under simultaneous row/column permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple

from ssekit import _kernels
from ssekit.errors import DomainError, MatrixFormatError, VerificationError
from ssekit.intmat import IntMatrix, matrix_from_json_obj, matrix_to_json_obj


def _check_product(name: str, claimed: IntMatrix, left: IntMatrix, right: IntMatrix):
    prod = left @ right
    if prod != claimed:
        for i in range(claimed.rows):
            for j in range(claimed.cols):
                if prod.entry(i, j) != claimed.entry(i, j):
                    raise VerificationError(
                        f"{name}({i + 1},{j + 1}) is {claimed.entry(i, j)} "
                        f"but the factors give {prod.entry(i, j)}"
                    )


@dataclass(frozen=True)
class ElementaryEquiv:
    """Certificate that A = C @ D and B = D @ C, re-verified on construction."""

    a: IntMatrix
    b: IntMatrix
    c: IntMatrix
    d: IntMatrix

    def __post_init__(self) -> None:
        if not self.a.is_square or not self.b.is_square:
            raise DomainError("A and B must be square")
        for name, mat in (("A", self.a), ("B", self.b), ("C", self.c), ("D", self.d)):
            if not mat.is_nonnegative():
                raise DomainError(f"{name} must be nonnegative")
        if (
            self.c.rows != self.a.rows
            or self.c.cols != self.b.rows
            or self.d.rows != self.b.rows
            or self.d.cols != self.a.rows
        ):
            raise DomainError("factor shapes do not compose with A and B")
        _check_product("A", self.a, self.c, self.d)
        _check_product("B", self.b, self.d, self.c)


def verify_elementary(
    c: IntMatrix, d: IntMatrix, a: IntMatrix | None = None, b: IntMatrix | None = None
) -> ElementaryEquiv:
    """Certificate for the factor pair (C, D).

    Claimed products A and B are checked exactly; a mismatch raises
    :class:`VerificationError` naming the first differing entry.  Omitted
    products are computed.
    """
    if c.cols != d.rows or d.cols != c.rows:
        raise DomainError(
            f"factor shapes do not compose: {c.rows}x{c.cols} and {d.rows}x{d.cols}"
        )
    return ElementaryEquiv(
        a if a is not None else c @ d,
        b if b is not None else d @ c,
        c,
        d,
    )


@dataclass(frozen=True)
class SseChain:
    """A lag-n equivalence: matrices A_0 .. A_n where step k is an
    elementary equivalence from A_{k-1} to A_k.  A single matrix with no
    steps is the identity chain."""

    matrices: tuple[IntMatrix, ...]
    steps: tuple[ElementaryEquiv, ...]

    def __post_init__(self) -> None:
        if not self.matrices:
            raise DomainError("a chain needs at least one matrix")
        if len(self.matrices) != len(self.steps) + 1:
            raise DomainError(
                f"{len(self.matrices)} matrices need {len(self.matrices) - 1} "
                f"steps, got {len(self.steps)}"
            )
        for k, step in enumerate(self.steps):
            if step.a != self.matrices[k] or step.b != self.matrices[k + 1]:
                raise VerificationError(
                    f"step {k + 1} does not link matrix {k} to matrix {k + 1}"
                )

    @property
    def lag(self) -> int:
        return len(self.steps)


def identity_chain(a: IntMatrix) -> SseChain:
    return SseChain((a,), ())


@dataclass(frozen=True)
class ChainReport:
    """Outcome of replaying a chain: the accumulated transfer matrix
    (product of the transposed D factors, left to right) and the image of
    the all-ones vector of the final matrix under it."""

    chain: SseChain
    transfer: IntMatrix
    unit_image: tuple[int, ...]


def verify_chain(chain: SseChain) -> ChainReport:
    """Replay a chain, accumulating its transfer matrix.

    Every step certificate was already product-checked on construction, so
    this only composes: transfer = D_1^t @ ... @ D_n^t, the identity for the
    identity chain.
    """
    transfer = IntMatrix.identity(chain.matrices[0].rows)
    for step in chain.steps:
        transfer = transfer @ step.d.transpose()
    ones = (1,) * chain.matrices[-1].rows
    return ChainReport(chain=chain, transfer=transfer, unit_image=transfer.mul_vector(ones))


def chain_to_json_obj(chain: SseChain) -> dict:
    return {
        "matrices": [matrix_to_json_obj(m) for m in chain.matrices],
        "steps": [
            {"C": matrix_to_json_obj(s.c), "D": matrix_to_json_obj(s.d)}
            for s in chain.steps
        ],
    }


def chain_from_json_obj(obj) -> SseChain:
    """Parse and fully verify a chain document.

    Structural problems raise :class:`MatrixFormatError`; a chain whose
    factors do not reproduce its matrices raises :class:`VerificationError`.
    """
    if not isinstance(obj, dict):
        raise MatrixFormatError("chain JSON must be an object")
    for key in ("matrices", "steps"):
        if key not in obj or not isinstance(obj[key], list):
            raise MatrixFormatError(f"chain JSON needs a {key!r} list")
    mats = [matrix_from_json_obj(mo) for mo in obj["matrices"]]
    raw_steps = obj["steps"]
    if not mats:
        raise MatrixFormatError("chain JSON needs at least one matrix")
    if len(mats) != len(raw_steps) + 1:
        raise MatrixFormatError(
            f"{len(mats)} matrices need {len(mats) - 1} steps, got {len(raw_steps)}"
        )
    steps = []
    for k, so in enumerate(raw_steps):
        if not isinstance(so, dict) or "C" not in so or "D" not in so:
            raise MatrixFormatError(f"step {k + 1} must be an object with C and D")
        c = matrix_from_json_obj(so["C"])
        d = matrix_from_json_obj(so["D"])
        try:
            steps.append(verify_elementary(c, d, a=mats[k], b=mats[k + 1]))
        except DomainError as exc:
            raise MatrixFormatError(f"step {k + 1}: {exc}") from exc
    return SseChain(tuple(mats), tuple(steps))


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for factorization searches: inner dimensions up to
    max_inner_dim, factor entries in [0, max_entry], at most max_results
    certificates per search (None = unbounded)."""

    max_inner_dim: int
    max_entry: int
    max_results: int | None = None

    def __post_init__(self) -> None:
        if self.max_inner_dim < 1:
            raise DomainError("max_inner_dim must be at least 1")
        if self.max_entry < 1:
            raise DomainError("max_entry must be at least 1")
        if self.max_results is not None and self.max_results < 1:
            raise DomainError("max_results must be at least 1 or None")


def enumerate_factorizations(
    a: IntMatrix, inner_dim: int, budget: SearchBudget
) -> list[ElementaryEquiv]:
    """Every factorization A = C @ D with C of shape (N, inner_dim) and D of
    shape (inner_dim, N), entries in [0, budget.max_entry], and no zero row
    or column in either factor.

    Results are verified certificates carrying B = D @ C, in deterministic
    order: ascending by C (row-major), then by D (row-major), truncated at
    budget.max_results.  An empty list is a valid outcome.
    """
    if not a.is_square:
        raise DomainError(f"need a square matrix, got {a.rows}x{a.cols}")
    if not a.is_nonnegative():
        raise DomainError("need a nonnegative matrix")
    if inner_dim < 1 or inner_dim > budget.max_inner_dim:
        raise DomainError(
            f"inner dimension {inner_dim} outside budget (max {budget.max_inner_dim})"
        )
    pairs = _kernels.factor_search(
        a.entries, a.rows, inner_dim, budget.max_entry, budget.max_results
    )
    out = []
    for c_flat, d_flat in pairs:
        c = IntMatrix(a.rows, inner_dim, tuple(c_flat))
        d = IntMatrix(inner_dim, a.rows, tuple(d_flat))
        out.append(verify_elementary(c, d, a=a))
    return out


class CanonicalForm(NamedTuple):
    matrix: IntMatrix
    exact: bool


_EXACT_CANONICAL_LIMIT = 8


def _canonical_with_perms(
    a: IntMatrix,
) -> tuple[IntMatrix, list[tuple[int, ...]], bool]:
    # canonical representative plus every permutation achieving it
    n = a.rows
    if n > _EXACT_CANONICAL_LIMIT:
        return a, [tuple(range(n))], False
    best = None
    best_perms: list[tuple[int, ...]] = []
    for perm in permutations(range(n)):
        cand = tuple(a.entry(perm[i], perm[j]) for i in range(n) for j in range(n))
        if best is None or cand < best:
            best = cand
            best_perms = [perm]
        elif cand == best:
            best_perms.append(perm)
    return IntMatrix(n, n, best), best_perms, True


def canonical_permutation_form(a: IntMatrix) -> CanonicalForm:
    """Least matrix among simultaneous row/column relabelings of a square
    matrix, compared by row-major entries.

    Exhaustive up to 8 vertices (exact=True).  Larger matrices return the
    input labeling unchanged with exact=False, which callers must treat as a
    safe but non-canonical answer.
    """
    if not a.is_square:
        raise DomainError(f"need a square matrix, got {a.rows}x{a.cols}")
    matrix, _, exact = _canonical_with_perms(a)
    return CanonicalForm(matrix, exact)
