"""Edge-level constructions for nonnegative integer matrices.

A square nonnegative matrix A presents a directed multigraph with A(i, j)
parallel edges from vertex i to vertex j.  Edge enumeration is canonical
throughout: edges are sorted by (source, target) with parallel copies
consecutive, so every matrix built here is a deterministic function of its
inputs.  Constructions self-check the identities they exist to satisfy and
raise :class:`InvariantViolationError` if one fails; reaching that is a bug,
not a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from ssekit.errors import DomainError, InvariantViolationError
from ssekit.intmat import IntMatrix


@dataclass(frozen=True)
class DirectedMultigraph:
    """Vertices 0..vertex_count-1 with edges in canonical order."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def source(self, k: int) -> int:
        return self.edges[k][0]

    def target(self, k: int) -> int:
        return self.edges[k][1]


def _edge_list(a: IntMatrix) -> tuple[tuple[int, int], ...]:
    # (i, j) repeated a(i, j) times, row-major: the canonical edge order
    out: list[tuple[int, int]] = []
    for i in range(a.rows):
        for j in range(a.cols):
            out.extend(((i, j),) * a.entry(i, j))
    return tuple(out)


def _require_presentation(a: IntMatrix) -> None:
    if not a.is_square:
        raise DomainError(f"need a square matrix, got {a.rows}x{a.cols}")
    if not a.is_nonnegative():
        raise DomainError("need a nonnegative matrix")
    if a.is_zero():
        raise DomainError("the zero matrix presents no edges")


def graph_from_matrix(a: IntMatrix) -> DirectedMultigraph:
    """The directed multigraph presented by a square nonnegative matrix."""
    _require_presentation(a)
    return DirectedMultigraph(a.rows, _edge_list(a))


def edge_transition_matrix(a: IntMatrix) -> IntMatrix:
    """The 0/1 matrix over edge pairs: entry (i, j) is 1 exactly when edge i
    ends where edge j starts."""
    _require_presentation(a)
    edges = _edge_list(a)
    count = len(edges)
    starts_at = {}
    for v in range(a.rows):
        starts_at[v] = tuple(1 if e[0] == v else 0 for e in edges)
    entries: list[int] = []
    for i in range(count):
        entries.extend(starts_at[edges[i][1]])
    return IntMatrix(count, count, tuple(entries))


def splitting_matrices(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """The pair (S, R) linking a matrix to its edge transition matrix.

    S has a row per edge and a column per vertex, with S(i, v) = 1 exactly
    when edge i ends at v.  R has a row per vertex and a column per edge,
    with R(v, i) = 1 exactly when edge i starts at v.  Then R @ S == A and
    S @ R == edge_transition_matrix(A); both products are checked entrywise
    before returning.
    """
    _require_presentation(a)
    edges = _edge_list(a)
    count = len(edges)
    n = a.rows
    s = IntMatrix(
        count, n, tuple(1 if e[1] == v else 0 for e in edges for v in range(n))
    )
    r = IntMatrix(
        n, count, tuple(1 if e[0] == v else 0 for v in range(n) for e in edges)
    )
    if r @ s != a:
        raise InvariantViolationError("splitting product R @ S differs from A")
    if s @ r != edge_transition_matrix(a):
        raise InvariantViolationError(
            "splitting product S @ R differs from the edge transition matrix"
        )
    return s, r


def bipartite_z(c: IntMatrix, d: IntMatrix) -> IntMatrix:
    """The block matrix [[0, C], [D, 0]]; its square is block-diagonal with
    blocks C @ D and D @ C, which is checked before returning."""
    _require_factor_shapes(c, d)
    n, m = c.rows, c.cols
    size = n + m
    entries: list[int] = []
    for i in range(n):
        entries.extend([0] * n)
        entries.extend(c.row(i))
    for k in range(m):
        entries.extend(d.row(k))
        entries.extend([0] * m)
    z = IntMatrix(size, size, tuple(entries))
    z2 = z @ z
    cd = c @ d
    dc = d @ c
    for i in range(size):
        for j in range(size):
            expected = 0
            if i < n and j < n:
                expected = cd.entry(i, j)
            elif i >= n and j >= n:
                expected = dc.entry(i - n, j - n)
            if z2.entry(i, j) != expected:
                raise InvariantViolationError(
                    "square of the bipartite block matrix is not diag(CD, DC)"
                )
    return z


def _require_factor_shapes(c: IntMatrix, d: IntMatrix) -> None:
    if c.cols != d.rows or d.cols != c.rows:
        raise DomainError(
            f"factor shapes do not compose: {c.rows}x{c.cols} and {d.rows}x{d.cols}"
        )
    if not c.is_nonnegative() or not d.is_nonnegative():
        raise DomainError("factors must be nonnegative")


@dataclass(frozen=True)
class EdgeFactorization:
    """Edge pairings realizing A = C @ D and B = D @ C.

    ``a_edges[i] = (c, d)`` says the i-th canonical A-edge is the composite
    of c-edge c followed by d-edge d; ``b_edges[l] = (d, c)`` likewise for
    the l-th B-edge.  The coupling is canonical: within each block of
    parallel A-edges, the composable (c, d) pairs are assigned in ascending
    lexicographic order, and symmetrically for B.
    """

    a_edges: tuple[tuple[int, int], ...]
    b_edges: tuple[tuple[int, int], ...]


def edge_factorization(c: IntMatrix, d: IntMatrix) -> EdgeFactorization:
    """Pair every A-edge with its (c-edge, d-edge) decomposition, and every
    B-edge with its (d-edge, c-edge) decomposition, canonically."""
    _require_factor_shapes(c, d)
    a = c @ d
    b = d @ c
    c_edges = _edge_list(c)
    d_edges = _edge_list(d)
    a_edges = _compose_pairs(a, c_edges, d_edges)
    b_edges = _compose_pairs(b, d_edges, c_edges)
    return EdgeFactorization(a_edges, b_edges)


def _compose_pairs(
    prod: IntMatrix,
    first: tuple[tuple[int, int], ...],
    second: tuple[tuple[int, int], ...],
) -> tuple[tuple[int, int], ...]:
    # Bucket composable (first, second) index pairs by their endpoints; the
    # fill order (outer index ascending, inner ascending) is lexicographic
    # within each bucket, and bucket sizes match the product entries because
    # prod(u, v) counts exactly those pairs.
    by_source: dict[int, list[int]] = {}
    for idx, (src, _) in enumerate(second):
        by_source.setdefault(src, []).append(idx)
    buckets: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for ci, (u, x) in enumerate(first):
        for di in by_source.get(x, ()):
            buckets.setdefault((u, second[di][1]), []).append((ci, di))
    out: list[tuple[int, int]] = []
    for u in range(prod.rows):
        for v in range(prod.cols):
            got = buckets.get((u, v), ())
            if len(got) != prod.entry(u, v):
                raise InvariantViolationError(
                    "composable pair count disagrees with the product entry"
                )
            out.extend(got)
    return tuple(out)


def dhat(c: IntMatrix, d: IntMatrix) -> IntMatrix:
    """The 0/1 edge-pairing matrix carrying A-edges to B-edges.

    Entry (i, l) is 1 exactly when the i-th A-edge and the l-th B-edge share
    the same d-edge component under the canonical edge factorization.  Two
    identities are checked entrywise before returning, with S and R the
    splitting matrices of A = C @ D and B = D @ C:

    - ``dhat @ S_B == S_A @ C``
    - ``edge_transition_matrix(A) @ dhat == dhat @ edge_transition_matrix(B)``
      (evaluated through the splitting factorizations, which the
      splitting_matrices self-check has already tied to the edge
      transition matrices entrywise)
    """
    a = c @ d
    b = d @ c
    if a.is_zero() or b.is_zero():
        raise DomainError("both products must present at least one edge")
    ef = edge_factorization(c, d)
    b_with_d = {}
    for l, (dl, _) in enumerate(ef.b_edges):
        b_with_d.setdefault(dl, []).append(l)
    n_a = len(ef.a_edges)
    n_b = len(ef.b_edges)
    entries = [0] * (n_a * n_b)
    for i, (_, di) in enumerate(ef.a_edges):
        for l in b_with_d.get(di, ()):
            entries[i * n_b + l] = 1
    out = IntMatrix(n_a, n_b, tuple(entries))

    s_a, r_a = splitting_matrices(a)
    s_b, r_b = splitting_matrices(b)
    mid = out @ s_b
    if mid != s_a @ c:
        raise InvariantViolationError("dhat @ S_B differs from S_A @ C")
    if s_a @ (r_a @ out) != mid @ r_b:
        raise InvariantViolationError(
            "dhat does not intertwine the edge transition matrices"
        )
    return out
