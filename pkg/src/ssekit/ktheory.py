"""Cokernel invariants of integer matrices via Smith normal form.

For a square nonnegative matrix A, the group Z^N / (I - A^t) Z^N is an exact
conjugacy-flavored invariant of the presented dynamics.  This module builds
such presentations for arbitrary relation matrices, assigns every group
element canonical coordinates, decides when an integer matrix induces a map
between two cokernels, and compares the groups themselves.  All arithmetic
is exact; decompositions are verified entrywise on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from ssekit.errors import DomainError, InvariantViolationError, VerificationError
from ssekit.intmat import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ matrix @ V == smith with unimodular U, V.

    The smith factor is diagonal with nonnegative entries, each dividing the
    next.  Construction checks the product identity and the diagonal shape
    entrywise; unimodularity holds because both transforms are products of
    row and column swaps, sign flips, and integer shears.
    """

    matrix: IntMatrix
    u: IntMatrix
    smith: IntMatrix
    v: IntMatrix

    def __post_init__(self) -> None:
        if (self.u @ self.matrix) @ self.v != self.smith:
            raise InvariantViolationError("U @ M @ V differs from the smith factor")
        s = self.smith
        diag = self.diagonal
        for i in range(s.rows):
            for j in range(s.cols):
                if i != j and s.entry(i, j) != 0:
                    raise InvariantViolationError("smith factor is not diagonal")
        for d in diag:
            if d < 0:
                raise InvariantViolationError("smith diagonal has a negative entry")
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                raise InvariantViolationError("zero precedes a nonzero smith entry")
            if a != 0 and b % a != 0:
                raise InvariantViolationError("smith diagonal violates divisibility")

    @property
    def diagonal(self) -> tuple[int, ...]:
        s = self.smith
        return tuple(s.entry(i, i) for i in range(min(s.rows, s.cols)))


def smith_normal_form(matrix: IntMatrix) -> SmithDecomposition:
    """Diagonalize over the integers.

    Pivoting is pinned for determinism: at each corner, pick the nonzero
    entry of the trailing block with the smallest absolute value, breaking
    ties by row-major position; clear its row and column by Euclidean steps,
    re-pivoting whenever a remainder survives; then, if the pivot fails to
    divide some trailing entry, fold that row in and repeat.  Both inner
    loops strictly shrink the pivot, so the whole process terminates.
    """
    m, n = matrix.rows, matrix.cols
    s = matrix.to_rows()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i1: int, i2: int) -> None:
        if i1 != i2:
            s[i1], s[i2] = s[i2], s[i1]
            u[i1], u[i2] = u[i2], u[i1]

    def col_swap(j1: int, j2: int) -> None:
        if j1 != j2:
            for row in s:
                row[j1], row[j2] = row[j2], row[j1]
            for row in v:
                row[j1], row[j2] = row[j2], row[j1]

    def row_shear(dst: int, src: int, q: int) -> None:
        # row[dst] += q * row[src]
        if q:
            srow, drow = s[src], s[dst]
            for j in range(n):
                drow[j] += q * srow[j]
            urow, udrow = u[src], u[dst]
            for j in range(m):
                udrow[j] += q * urow[j]

    def col_shear(dst: int, src: int, q: int) -> None:
        if q:
            for row in s:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    def row_negate(i: int) -> None:
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best = 0
        at = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                x = row[j]
                if x and (at is None or -best < x < best):
                    best = abs(x)
                    at = (i, j)
        return at

    for t in range(min(m, n)):
        piv = find_pivot(t)
        if piv is None:
            break
        while True:
            row_swap(t, piv[0])
            col_swap(t, piv[1])
            if s[t][t] < 0:
                row_negate(t)
            while True:
                p = s[t][t]
                for i in range(t + 1, m):
                    row_shear(i, t, -(s[i][t] // p))
                for j in range(t + 1, n):
                    col_shear(j, t, -(s[t][j] // p))
                if all(s[i][t] == 0 for i in range(t + 1, m)) and all(
                    s[t][j] == 0 for j in range(t + 1, n)
                ):
                    break
                # a remainder below the pivot magnitude survived; re-pivot
                piv2 = find_pivot(t)
                assert piv2 is not None
                row_swap(t, piv2[0])
                col_swap(t, piv2[1])
                if s[t][t] < 0:
                    row_negate(t)
            p = s[t][t]
            offender = None
            for i in range(t + 1, m):
                if any(s[i][j] % p for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            # fold the offending row in; the next clearing pass must shrink
            # the pivot because some entry is not a multiple of it
            row_shear(t, offender, 1)
            piv = (t, t)

    return SmithDecomposition(
        matrix=matrix,
        u=IntMatrix(m, m, tuple(x for row in u for x in row)),
        smith=IntMatrix(m, n, tuple(x for row in s for x in row)),
        v=IntMatrix(n, n, tuple(x for row in v for x in row)),
    )


@dataclass(frozen=True)
class CokerPresentation:
    """The abelian group Z^rank / (column span of relation).

    ``mods`` holds one modulus per canonical coordinate: the i-th smith
    diagonal entry, or 0 where the coordinate is free.  Coordinates with
    modulus 1 are identically zero and carry no information, but keeping
    them aligns coordinates with the ambient rank.
    """

    relation: IntMatrix
    decomposition: SmithDecomposition
    mods: tuple[int, ...]
    torsion: tuple[int, ...]
    free_rank: int

    @property
    def rank(self) -> int:
        return self.relation.rows

    def order(self) -> int | None:
        """Number of elements, or None when the group is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.mods:
            out *= d
        return out

    def summands(self) -> str:
        """Human-readable decomposition, e.g. 'Z/2 + Z/6 + Z'."""
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def coker_presentation(relation: IntMatrix) -> CokerPresentation:
    """Present Z^rows(relation) modulo the column span of ``relation``."""
    dec = smith_normal_form(relation)
    diag = dec.diagonal
    mods = tuple(diag) + (0,) * (relation.rows - len(diag))
    return CokerPresentation(
        relation=relation,
        decomposition=dec,
        mods=mods,
        torsion=tuple(d for d in diag if d > 1),
        free_rank=sum(1 for d in mods if d == 0),
    )


def k0_group(a: IntMatrix) -> CokerPresentation:
    """The cokernel of I - A^t acting on Z^N."""
    if not a.is_square:
        raise DomainError(f"need a square matrix, got {a.rows}x{a.cols}")
    return coker_presentation(IntMatrix.identity(a.rows) - a.transpose())


@dataclass(frozen=True, eq=False)
class CokerClass:
    """A group element in canonical coordinates.

    Coordinate i of ``coords`` is the i-th entry of U @ v reduced modulo
    ``mods[i]`` when that modulus is positive, and taken as-is on free
    coordinates.  Distinct elements get distinct coordinate tuples, so
    equality of classes is equality of (relation, coords).
    """

    presentation: CokerPresentation
    coords: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CokerClass):
            return NotImplemented
        return (
            self.presentation.relation == other.presentation.relation
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        r = self.presentation.relation
        return hash((r.rows, r.cols, r.entries, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int | None:
        """Additive order of the element, or None when infinite."""
        out = 1
        for c, d in zip(self.coords, self.presentation.mods):
            if d == 0:
                if c != 0:
                    return None
            elif c:
                out = lcm(out, d // gcd(c, d))
        return out


def class_of(v, presentation: CokerPresentation) -> CokerClass:
    """Canonical coordinates of the vector's class in the cokernel."""
    v = tuple(v)
    if len(v) != presentation.rank:
        raise DomainError(
            f"vector of length {len(v)} in a rank-{presentation.rank} presentation"
        )
    image = presentation.decomposition.u.mul_vector(v)
    coords = tuple(
        x % d if d else x for x, d in zip(image, presentation.mods)
    )
    return CokerClass(presentation, coords)


def _membership(dec: SmithDecomposition, v: tuple[int, ...]):
    # Solve matrix @ w == v through the decomposition: in smith coordinates
    # the system is diagonal, so solvability is a divisibility check.
    rows, cols = dec.matrix.rows, dec.matrix.cols
    image = dec.u.mul_vector(v)
    diag = dec.diagonal
    y = [0] * cols
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d:
            if image[i] % d:
                return False, None
            y[i] = image[i] // d
        elif image[i]:
            return False, None
    w = dec.v.mul_vector(y)
    if dec.matrix.mul_vector(w) != v:
        raise InvariantViolationError("membership witness failed the recheck")
    return True, w


def lattice_membership(v, matrix: IntMatrix):
    """Decide whether v lies in the column span of ``matrix`` over Z.

    Returns (True, w) with an exact witness matrix @ w == v, or (False, None).
    """
    v = tuple(v)
    if len(v) != matrix.rows:
        raise DomainError(
            f"vector of length {len(v)} against a {matrix.rows}x{matrix.cols} matrix"
        )
    return _membership(smith_normal_form(matrix), v)


@dataclass(frozen=True)
class CokerMap:
    """A homomorphism between cokernels induced by an integer matrix.

    ``well_defined`` certifies that the matrix carries every relation of the
    source into the relation lattice of the target; when it is False,
    ``failing_column`` names the first source relation (0-based column)
    whose image escapes the target lattice, and applying the map raises.
    """

    source: CokerPresentation
    target: CokerPresentation
    matrix: IntMatrix
    well_defined: bool
    failing_column: int | None

    def apply_vector(self, v) -> CokerClass:
        if not self.well_defined:
            raise VerificationError(
                "map is not well defined: source relation column "
                f"{self.failing_column} maps outside the target lattice"
            )
        return class_of(self.matrix.mul_vector(tuple(v)), self.target)

    def apply_basis(self, i: int) -> CokerClass:
        e = [0] * self.source.rank
        e[i] = 1
        return self.apply_vector(e)


def induced_map(
    matrix: IntMatrix, source: CokerPresentation, target: CokerPresentation
) -> CokerMap:
    """The map on cokernels given by v + im(source) -> matrix @ v + im(target),
    with well-definedness decided exactly column by column."""
    if matrix.cols != source.rank or matrix.rows != target.rank:
        raise DomainError(
            f"a {matrix.rows}x{matrix.cols} matrix cannot map a rank-"
            f"{source.rank} presentation into a rank-{target.rank} one"
        )
    well_defined = True
    failing: int | None = None
    target_dec = target.decomposition
    for j in range(source.relation.cols):
        image = matrix.mul_vector(source.relation.col(j))
        ok, _ = _membership(target_dec, image)
        if not ok:
            well_defined = False
            failing = j
            break
    return CokerMap(source, target, matrix, well_defined, failing)


def groups_isomorphic(a: CokerPresentation, b: CokerPresentation) -> bool:
    """Isomorphism of the underlying groups: equal invariant factors and
    equal free rank."""
    return a.torsion == b.torsion and a.free_rank == b.free_rank


def _bareiss_det(rows: list[list[int]]) -> int:
    # fraction-free Gaussian elimination; all divisions are exact
    n = len(rows)
    mat = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for i in range(k + 1, n):
                if mat[i][k]:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def det_i_minus(a: IntMatrix) -> int:
    """det(I - A), exact."""
    if not a.is_square:
        raise DomainError(f"need a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    return _bareiss_det(
        [[(1 if i == j else 0) - a.entry(i, j) for j in range(n)] for i in range(n)]
    )
