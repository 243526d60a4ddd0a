"""The reachable-unit-class invariant.

Walking a chain of elementary equivalences A = A_0 -> A_1 -> ... -> A_n and
pulling the all-ones vector of A_n back through the transposed D factors
lands in Z^N; its class in coker(I - A^t) depends only on the chain.  The
set of classes reachable within a depth and entry budget is enumerated here
by breadth-first search, with one witness chain per class.

When the reachable set covers the whole (finite) group, every unit class is
realized and the search reports saturation; that certificate is one-sided,
as is the comparison of two matrices: only a difference in the groups
themselves or in det(I - A) certifies the matrices as non-equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass

from ssekit.errors import DomainError
from ssekit.factor import (
    ElementaryEquiv,
    SearchBudget,
    SseChain,
    _canonical_with_perms,
    enumerate_factorizations,
    identity_chain,
)
from ssekit.intmat import IntMatrix, is_irreducible, is_permutation_matrix
from ssekit.ktheory import (
    CokerClass,
    CokerPresentation,
    class_of,
    det_i_minus,
    groups_isomorphic,
    k0_group,
)


@dataclass(frozen=True)
class BfsNode:
    """A search state: the matrix at the end of a chain, the accumulated
    transfer (product of transposed D factors), and parent links for
    witness reconstruction."""

    matrix: IntMatrix
    transfer: IntMatrix
    depth: int
    parent: "BfsNode | None"
    step: ElementaryEquiv | None

    def chain(self) -> SseChain:
        mats = [self.matrix]
        steps: list[ElementaryEquiv] = []
        node = self
        while node.parent is not None:
            steps.append(node.step)  # type: ignore[arg-type]
            node = node.parent
            mats.append(node.matrix)
        mats.reverse()
        steps.reverse()
        return SseChain(tuple(mats), tuple(steps))


@dataclass
class KsseResult:
    """Everything one budgeted enumeration learned."""

    presentation: CokerPresentation
    depth: int
    budget: SearchBudget
    classes: tuple[CokerClass, ...]
    witnesses: dict[tuple[int, ...], SseChain]
    saturated: bool
    exhausted: bool
    states_visited: int

    def coords(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.coords for c in self.classes)


def _require_base(a: IntMatrix) -> None:
    if not a.is_square:
        raise DomainError(f"need a square matrix, got {a.rows}x{a.cols}")
    if not a.is_nonnegative():
        raise DomainError("need a nonnegative matrix")
    if not is_irreducible(a):
        raise DomainError("need an irreducible matrix")
    if is_permutation_matrix(a):
        raise DomainError("permutation matrices are excluded")


def _state_key(node: BfsNode, pres: CokerPresentation):
    # Quotient the search: two nodes with the same matrix up to simultaneous
    # permutation, whose transfer columns carry the same classes under that
    # permutation, generate identical futures.  A child reached through D
    # adds column classes sum_j D(k, j) * gamma(j), a function of the
    # parent's column classes alone, so pruning on this key loses nothing.
    canon, perms, _ = _canonical_with_perms(node.matrix)
    k = node.matrix.rows
    col_classes = [class_of(node.transfer.col(j), pres).coords for j in range(k)]
    best = min(tuple(col_classes[p[j]] for j in range(k)) for p in perms)
    return (canon.rows, canon.entries, best)


def ksse_enumerate(a: IntMatrix, depth: int, budget: SearchBudget) -> KsseResult:
    """Breadth-first enumeration of reachable unit classes.

    The root contributes the class of the all-ones vector through the
    identity chain.  Each layer factors every frontier matrix at every inner
    dimension up to budget.max_inner_dim with entries up to
    budget.max_entry, extends transfers by the transposed D, and dedups
    states; the first chain reaching a class is recorded as its witness, so
    witnesses have minimal depth.  budget.max_results is ignored here: the
    dedup argument needs each state's full child set.

    Stops early once every group element is reached (saturated) or no
    unvisited state remains within the budget (exhausted).
    """
    _require_base(a)
    if depth < 0:
        raise DomainError("depth must be at least 0")
    pres = k0_group(a)
    group_order = pres.order()

    classes: dict[tuple[int, ...], CokerClass] = {}
    witnesses: dict[tuple[int, ...], SseChain] = {}

    def record(node: BfsNode) -> None:
        ones = (1,) * node.matrix.rows
        cls = class_of(node.transfer.mul_vector(ones), pres)
        if cls.coords not in witnesses:
            classes[cls.coords] = cls
            witnesses[cls.coords] = node.chain()

    step_budget = SearchBudget(budget.max_inner_dim, budget.max_entry, None)
    root = BfsNode(a, IntMatrix.identity(a.rows), 0, None, None)
    visited = {_state_key(root, pres)}
    record(root)
    frontier = [root]

    def saturated() -> bool:
        return group_order is not None and len(classes) == group_order

    level = 0
    while level < depth and not saturated() and frontier:
        nxt: list[BfsNode] = []
        for node in frontier:
            for inner in range(1, budget.max_inner_dim + 1):
                for cert in enumerate_factorizations(node.matrix, inner, step_budget):
                    child = BfsNode(
                        cert.b,
                        node.transfer @ cert.d.transpose(),
                        node.depth + 1,
                        node,
                        cert,
                    )
                    key = _state_key(child, pres)
                    if key in visited:
                        continue
                    visited.add(key)
                    record(child)
                    nxt.append(child)
        frontier = nxt
        level += 1

    ordered = tuple(classes[c] for c in sorted(classes))
    return KsseResult(
        presentation=pres,
        depth=depth,
        budget=budget,
        classes=ordered,
        witnesses=witnesses,
        saturated=saturated(),
        exhausted=not frontier,
        states_visited=len(visited),
    )


@dataclass
class FullUnitsReport:
    """One-sided certificate: certified_full means the enumeration reached
    every element of a finite group, so every unit class is realized within
    the budget.  Anything else is inconclusive, never a refutation."""

    result: KsseResult
    certified_full: bool
    verdict: str

    @property
    def group_order(self) -> int | None:
        return self.result.presentation.order()


def full_units_check(a: IntMatrix, depth: int, budget: SearchBudget) -> FullUnitsReport:
    result = ksse_enumerate(a, depth, budget)
    full = result.saturated
    return FullUnitsReport(
        result=result,
        certified_full=full,
        verdict="certified_full" if full else "not_yet_full_within_budget",
    )


def _order_multiset(result: KsseResult) -> tuple[int, ...]:
    # additive orders of the reached classes, 0 standing for infinite
    orders = []
    for cls in result.classes:
        o = cls.order()
        orders.append(0 if o is None else o)
    return tuple(sorted(orders))


@dataclass
class CompareReport:
    """Comparison of two matrices by certified invariants.

    verdict 'distinguished' is sound: it is issued only when the cokernel
    groups differ or det(I - A) differs, both exact equivalence invariants.
    The reachable-class order multisets are reported for inspection but
    never drive the verdict; budgeted enumerations are lower bounds, so
    their disagreement proves nothing.
    """

    a_result: KsseResult
    b_result: KsseResult
    groups_isomorphic: bool
    det_a: int
    det_b: int
    order_multiset_a: tuple[int, ...]
    order_multiset_b: tuple[int, ...]
    verdict: str
    reasons: tuple[str, ...]


def compare_invariant_pairs(
    a: IntMatrix, b: IntMatrix, depth: int, budget: SearchBudget
) -> CompareReport:
    ra = ksse_enumerate(a, depth, budget)
    rb = ksse_enumerate(b, depth, budget)
    iso = groups_isomorphic(ra.presentation, rb.presentation)
    da = det_i_minus(a)
    db = det_i_minus(b)
    reasons = []
    if not iso:
        reasons.append(
            "cokernel groups differ: "
            f"{ra.presentation.summands()} vs {rb.presentation.summands()}"
        )
    if da != db:
        reasons.append(f"det(I - A) differs: {da} vs {db}")
    return CompareReport(
        a_result=ra,
        b_result=rb,
        groups_isomorphic=iso,
        det_a=da,
        det_b=db,
        order_multiset_a=_order_multiset(ra),
        order_multiset_b=_order_multiset(rb),
        verdict="distinguished" if reasons else "compatible_within_budget",
        reasons=tuple(reasons),
    )
