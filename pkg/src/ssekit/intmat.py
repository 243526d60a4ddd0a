"""Exact dense integer matrices and their structural profile.

All arithmetic is over arbitrary-precision Python ints: results are exact at
any magnitude, and nothing here ever touches floating point.  Matrices are
immutable, stored row-major, and always have at least one row and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from ssekit import _kernels
from ssekit.errors import DomainError, MatrixFormatError

_JSON_INT_MAX = 2**53 - 1
_INT_RE = re.compile(r"-?[0-9]+\Z")


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; ``entries`` is the row-major flattening."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise DomainError(
                f"matrix shape must be positive, got {self.rows}x{self.cols}"
            )
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(
                f"expected {self.rows * self.cols} entries for a "
                f"{self.rows}x{self.cols} matrix, got {len(self.entries)}"
            )
        for v in self.entries:
            if type(v) is not int:
                raise DomainError(f"matrix entries must be plain ints, got {v!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        if not rows or not rows[0]:
            raise DomainError("matrix needs at least one row and one column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise DomainError("ragged rows")
        return cls(len(rows), width, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_nonnegative(self) -> bool:
        return min(self.entries) >= 0

    def is_zero(self) -> bool:
        return not any(self.entries)

    def max_abs(self) -> int:
        return max(abs(v) for v in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(
                self.entries[i * self.cols + j]
                for j in range(self.cols)
                for i in range(self.rows)
            ),
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other, "add")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(x + y for x, y in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other, "subtract")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(x - y for x, y in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        out = _kernels.matmul(
            self.entries, self.rows, self.cols, other.entries, other.cols
        )
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mul_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise DomainError(
                f"vector of length {len(v)} against a {self.rows}x{self.cols} matrix"
            )
        out = _kernels.matmul(self.entries, self.rows, self.cols, tuple(v), 1)
        return tuple(out)

    def permuted(self, perm: Sequence[int]) -> "IntMatrix":
        """Conjugate a square matrix by a vertex relabeling.

        Entry (i, j) of the result is entry (perm[i], perm[j]) of self.
        """
        if not self.is_square:
            raise DomainError("permuted requires a square matrix")
        n = self.rows
        if sorted(perm) != list(range(n)):
            raise DomainError("not a permutation of 0..n-1")
        return IntMatrix(
            n, n, tuple(self.entry(perm[i], perm[j]) for i in range(n) for j in range(n))
        )

    def _require_same_shape(self, other: "IntMatrix", what: str) -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DomainError(
                f"cannot {what} {self.rows}x{self.cols} and "
                f"{other.rows}x{other.cols}"
            )


def matrix_to_text(a: IntMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    for i in range(a.rows):
        lines.append(" ".join(str(v) for v in a.row(i)))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> IntMatrix:
    """Parse the plain text format: a `ROWS COLS` header line, then one
    whitespace-separated line per row.  Strict: exact token counts, nothing
    but whitespace after the last row."""
    lines = text.splitlines()
    k = 0
    while k < len(lines) and not lines[k].strip():
        k += 1
    if k == len(lines):
        raise MatrixFormatError("empty input")
    header = lines[k].split()
    if len(header) != 2:
        raise MatrixFormatError(f"header must be 'ROWS COLS', got {lines[k]!r}")
    rows, cols = (_parse_int(tok, k + 1) for tok in header)
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"matrix shape must be positive, got {rows}x{cols}")
    entries: list[int] = []
    k += 1
    for r in range(rows):
        while k < len(lines) and not lines[k].strip():
            k += 1
        if k == len(lines):
            raise MatrixFormatError(f"expected {rows} rows, found {r}")
        toks = lines[k].split()
        if len(toks) != cols:
            raise MatrixFormatError(
                f"line {k + 1}: expected {cols} entries, got {len(toks)}"
            )
        entries.extend(_parse_int(t, k + 1) for t in toks)
        k += 1
    for rest in lines[k:]:
        if rest.strip():
            raise MatrixFormatError(f"unexpected trailing content: {rest.strip()!r}")
    return IntMatrix(rows, cols, tuple(entries))


def _parse_int(token: str, lineno: int) -> int:
    if not _INT_RE.match(token):
        raise MatrixFormatError(f"line {lineno}: not an integer: {token!r}")
    return int(token)


def matrix_to_json_obj(a: IntMatrix) -> dict:
    """JSON form; entries above 2**53 - 1 in magnitude become decimal strings
    so consumers that parse numbers as doubles cannot silently lose digits."""

    def enc(v: int):
        return v if -_JSON_INT_MAX <= v <= _JSON_INT_MAX else str(v)

    return {
        "rows": a.rows,
        "cols": a.cols,
        "data": [[enc(v) for v in a.row(i)] for i in range(a.rows)],
    }


def matrix_from_json_obj(obj) -> IntMatrix:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix JSON must be an object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise MatrixFormatError(f"matrix JSON missing {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if type(rows) is not int or type(cols) is not int:
        raise MatrixFormatError("rows and cols must be integers")
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"matrix shape must be positive, got {rows}x{cols}")
    if not isinstance(data, list) or len(data) != rows:
        raise MatrixFormatError(f"data must be a list of {rows} rows")
    entries: list[int] = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFormatError(f"data row {r + 1} must be a list of {cols} entries")
        for v in row:
            entries.append(_decode_json_entry(v, r))
    return IntMatrix(rows, cols, tuple(entries))


def _decode_json_entry(v, r: int) -> int:
    if type(v) is int:
        return v
    if isinstance(v, str):
        if not _INT_RE.match(v.strip()) or v != v.strip():
            raise MatrixFormatError(f"data row {r + 1}: not a decimal integer: {v!r}")
        return int(v)
    raise MatrixFormatError(
        f"data row {r + 1}: entries must be ints or decimal strings, got {v!r}"
    )


@dataclass(frozen=True)
class MatrixProfile:
    """Structural facts about a matrix, as reported by ``analyze``.

    ``period`` is the gcd of all cycle lengths through any vertex of the
    support graph (None when the matrix is not square, not nonnegative, or
    has no cycles); it is diagnostic only.
    """

    rows: int
    cols: int
    is_square: bool
    is_nonnegative: bool
    is_zero: bool
    is_irreducible: bool
    is_permutation: bool
    period: int | None
    total_entry_sum: int | None


def is_permutation_matrix(a: IntMatrix) -> bool:
    """True when the matrix is square 0/1 with exactly one 1 per row and column."""
    if not a.is_square:
        raise DomainError("permutation test requires a square matrix")
    if any(v not in (0, 1) for v in a.entries):
        return False
    n = a.rows
    return all(sum(a.row(i)) == 1 for i in range(n)) and all(
        sum(a.col(j)) == 1 for j in range(n)
    )


def _support_adjacency(a: IntMatrix) -> list[list[int]]:
    n = a.rows
    return [[j for j in range(n) if a.entry(i, j) > 0] for i in range(n)]


def _reaches_all(adj: list[list[int]], start: int) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def is_irreducible(a: IntMatrix) -> bool:
    """True when every vertex reaches every vertex through the support graph.

    Paths must have length at least one, so the 1x1 zero matrix is reducible
    while any 1x1 positive matrix is irreducible.
    """
    if not a.is_square:
        raise DomainError("irreducibility requires a square matrix")
    if not a.is_nonnegative():
        raise DomainError("irreducibility requires a nonnegative matrix")
    n = a.rows
    if n == 1:
        return a.entry(0, 0) > 0
    adj = _support_adjacency(a)
    radj: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v in adj[u]:
            radj[v].append(u)
    return _reaches_all(adj, 0) and _reaches_all(radj, 0)


def _sccs(adj: list[list[int]]) -> tuple[list[int], int]:
    # Kosaraju: component index per vertex, number of components.
    n = len(adj)
    order: list[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [(s, 0)]
        while stack:
            u, idx = stack[-1]
            if idx < len(adj[u]):
                stack[-1] = (u, idx + 1)
                v = adj[u][idx]
                if not seen[v]:
                    seen[v] = True
                    stack.append((v, 0))
            else:
                order.append(u)
                stack.pop()
    radj: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v in adj[u]:
            radj[v].append(u)
    comp = [-1] * n
    count = 0
    for s in reversed(order):
        if comp[s] != -1:
            continue
        comp[s] = count
        stack2 = [s]
        while stack2:
            u = stack2.pop()
            for v in radj[u]:
                if comp[v] == -1:
                    comp[v] = count
                    stack2.append(v)
        count += 1
    return comp, count


def _period(a: IntMatrix) -> int | None:
    # gcd of all closed-walk lengths.  Every cycle stays inside one strongly
    # connected component, where the BFS-level argument applies: the gcd of
    # level[u] + 1 - level[v] over internal edges equals the component period.
    n = a.rows
    adj = _support_adjacency(a)
    comp, count = _sccs(adj)
    members: list[list[int]] = [[] for _ in range(count)]
    for u in range(n):
        members[comp[u]].append(u)
    g = 0
    for c in range(count):
        verts = members[c]
        internal = {u: [v for v in adj[u] if comp[v] == c] for u in verts}
        if not any(internal.values()):
            continue
        root = verts[0]
        level = {root: 0}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in internal[u]:
                    if v not in level:
                        level[v] = level[u] + 1
                        nxt.append(v)
            frontier = nxt
        for u in verts:
            for v in internal[u]:
                g = gcd(g, level[u] + 1 - level[v])
    return g or None


def profile(a: IntMatrix) -> MatrixProfile:
    """Compute the full structural profile.  Total: never raises on any
    matrix; fields that need squareness or nonnegativity degrade to False
    or None instead."""
    square = a.is_square
    nonneg = a.is_nonnegative()
    irreducible = bool(square and nonneg and is_irreducible(a))
    permutation = bool(square and is_permutation_matrix(a))
    period = _period(a) if square and nonneg else None
    return MatrixProfile(
        rows=a.rows,
        cols=a.cols,
        is_square=square,
        is_nonnegative=nonneg,
        is_zero=a.is_zero(),
        is_irreducible=irreducible,
        is_permutation=permutation,
        period=period,
        total_entry_sum=sum(a.entries) if nonneg else None,
    )
