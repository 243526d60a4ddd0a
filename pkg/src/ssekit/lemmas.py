"""Randomized exact checks of the identities the toolkit is built on.

Each trial draws a factor pair (C, D) with bounded shapes and entries and no
zero row or column in either factor, forms A = C @ D and B = D @ C, and
checks six identity families in exact integer arithmetic.  None of these
identities has exceptions, so a single failing instance is a bug; the report
carries the first failure verbatim.

The checks are computed directly (explicit products and class reductions),
not through the self-checking constructors' internal shortcuts, so they
remain meaningful as an independent cross-examination of the library.
"""

from __future__ import annotations

from dataclasses import dataclass

from ssekit.errors import DomainError
from ssekit.graphs import dhat, edge_transition_matrix, splitting_matrices
from ssekit.intmat import IntMatrix
from ssekit.ktheory import class_of, k0_group
from ssekit.ktheory import det_i_minus
from ssekit.rng import SplitMix64

CHECK_NAMES = (
    "edge_transition_intertwines",
    "dhat_links_splittings",
    "splitting_products",
    "unit_class_descends",
    "cokernel_square_commutes",
    "determinant_agrees",
)


@dataclass(frozen=True)
class LemmaSuiteConfig:
    trials: int = 200
    dim_max: int = 4
    entry_max: int = 3
    seed: int = 42

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if self.dim_max < 1:
            raise DomainError("dim_max must be at least 1")
        if self.entry_max < 1:
            raise DomainError("entry_max must be at least 1")


@dataclass(frozen=True)
class LemmaFailure:
    check: str
    trial: int
    c: IntMatrix
    d: IntMatrix
    detail: str


@dataclass(frozen=True)
class LemmaSuiteReport:
    """Pass counts per identity family, plus the first failure if any.

    Identical configs give identical reports: the draw stream is a pinned
    deterministic generator, and every check is exact.  On failure the run
    stops at the failing trial, so pass counts then reflect completed work.
    """

    config: LemmaSuiteConfig
    passes: tuple[tuple[str, int], ...]
    failure: LemmaFailure | None
    trials_run: int

    @property
    def ok(self) -> bool:
        return self.failure is None


def _draw_matrix(rng: SplitMix64, rows: int, cols: int, entry_max: int) -> IntMatrix:
    # rejection-sample until no zero row or column
    while True:
        mat = IntMatrix(
            rows, cols, tuple(rng.randint(0, entry_max) for _ in range(rows * cols))
        )
        if all(any(mat.row(i)) for i in range(rows)) and all(
            any(mat.col(j)) for j in range(cols)
        ):
            return mat


def draw_factor_pair(
    rng: SplitMix64, dim_max: int, entry_max: int
) -> tuple[IntMatrix, IntMatrix]:
    n = rng.randint(1, dim_max)
    m = rng.randint(1, dim_max)
    c = _draw_matrix(rng, n, m, entry_max)
    d = _draw_matrix(rng, m, n, entry_max)
    return c, d


def _check_trial(
    c: IntMatrix, d: IntMatrix, corrupt_dhat: bool
) -> tuple[str, str] | None:
    # returns (check name, detail) for the first failing family, else None
    a = c @ d
    b = d @ c
    dh = dhat(c, d)
    if corrupt_dhat:
        entries = list(dh.entries)
        entries[0] ^= 1
        dh = IntMatrix(dh.rows, dh.cols, tuple(entries))
    ag = edge_transition_matrix(a)
    bg = edge_transition_matrix(b)
    s_a, r_a = splitting_matrices(a)
    s_b, r_b = splitting_matrices(b)

    if ag @ dh != dh @ bg:
        return (
            "edge_transition_intertwines",
            "A^G @ Dhat differs from Dhat @ B^G",
        )
    if dh @ s_b != s_a @ c:
        return ("dhat_links_splittings", "Dhat @ S_B differs from S_A @ C")
    if r_a @ s_a != a or r_b @ s_b != b:
        return ("splitting_products", "R @ S does not rebuild the matrix")
    if s_a @ r_a != ag or s_b @ r_b != bg:
        return ("splitting_products", "S @ R differs from the edge transition matrix")

    pres_a = k0_group(a)
    pres_b = k0_group(b)
    ones_a = class_of((1,) * a.rows, pres_a)
    edge_ones_a = class_of(s_a.transpose().mul_vector((1,) * s_a.rows), pres_a)
    if edge_ones_a != ones_a:
        return (
            "unit_class_descends",
            "S_A^t applied to the all-ones edge vector leaves the unit class",
        )
    ones_b = class_of((1,) * b.rows, pres_b)
    edge_ones_b = class_of(s_b.transpose().mul_vector((1,) * s_b.rows), pres_b)
    if edge_ones_b != ones_b:
        return (
            "unit_class_descends",
            "S_B^t applied to the all-ones edge vector leaves the unit class",
        )

    # the square on every edge-space generator: down the Dhat-then-S_B route
    # versus the S_A-then-C route, compared as classes mod (I - B^t)
    route_one = (dh @ s_b).transpose()
    route_two = (s_a @ c).transpose()
    for i in range(dh.rows):
        if class_of(route_one.col(i), pres_b) != class_of(route_two.col(i), pres_b):
            return (
                "cokernel_square_commutes",
                f"routes disagree on edge generator {i}",
            )

    if det_i_minus(a) != det_i_minus(b):
        return ("determinant_agrees", "det(I - CD) differs from det(I - DC)")
    return None


def run_lemma_suite(
    config: LemmaSuiteConfig, corrupt_dhat: bool = False
) -> LemmaSuiteReport:
    """Run the six families over freshly drawn instances.

    ``corrupt_dhat`` is a test hook: it flips one entry of every trial's
    edge-pairing matrix after construction, which the suite's own checks
    must catch.
    """
    rng = SplitMix64(config.seed)
    counts = {name: 0 for name in CHECK_NAMES}
    failure = None
    trials_run = 0
    for trial in range(config.trials):
        c, d = draw_factor_pair(rng, config.dim_max, config.entry_max)
        trials_run = trial + 1
        failed = _check_trial(c, d, corrupt_dhat)
        if failed is not None:
            name, detail = failed
            for passed_name in CHECK_NAMES:
                if passed_name == name:
                    break
                counts[passed_name] += 1
            failure = LemmaFailure(check=name, trial=trial, c=c, d=d, detail=detail)
            break
        for name in CHECK_NAMES:
            counts[name] += 1
    return LemmaSuiteReport(
        config=config,
        passes=tuple((name, counts[name]) for name in CHECK_NAMES),
        failure=failure,
        trials_run=trials_run,
    )
