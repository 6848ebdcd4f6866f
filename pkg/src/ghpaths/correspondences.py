"""Relations, correspondences, distortion and exact GH distance.

A correspondence between spaces of sizes ``m`` and ``n`` is stored as a set
of index pairs. Its row-major bit encoding (bit ``i * n + j`` set iff
``(i, j)`` is related) fixes the enumeration order and the tie-break among
optimal correspondences: the least encoding wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, NamedTuple, Optional

from . import kernels
from .errors import (BudgetExceeded, EmptyRelation, LowDistortionViolated,
                     NotACorrespondence, NotBlockStructured, NotUnique,
                     PreconditionError, PreconditionFailed)
from .metric import (FiniteMetricSpace, characteristics, common_denominator,
                     diameter, integer_table, min_positive_distance)

EXHAUSTIVE_BUDGET = 30
BNB_BUDGET = 8


@dataclass(frozen=True)
class Relation:
    m: int
    n: int
    pairs: frozenset

    def __post_init__(self):
        if not self.pairs:
            raise EmptyRelation("a relation must contain at least one pair")
        for i, j in self.pairs:
            if not (0 <= i < self.m and 0 <= j < self.n):
                raise PreconditionError(f"pair {(i, j)} outside {self.m}x{self.n}")

    @classmethod
    def of(cls, m: int, n: int, pairs):
        return cls(m, n, frozenset((int(i), int(j)) for i, j in pairs))

    @property
    def rows(self) -> tuple:
        rows = [0] * self.m
        for i, j in self.pairs:
            rows[i] |= 1 << j
        return tuple(rows)

    @property
    def code(self) -> int:
        return sum(1 << (i * self.n + j) for i, j in self.pairs)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def image(self, i: int) -> tuple:
        return tuple(sorted(j for a, j in self.pairs if a == i))

    def preimage(self, j: int) -> tuple:
        return tuple(sorted(i for i, b in self.pairs if b == j))

    def inverse(self):
        return type(self).of(self.n, self.m, [(j, i) for i, j in self.pairs])

    def __len__(self) -> int:
        return len(self.pairs)


class Correspondence(Relation):
    """A relation whose two projections are both surjective."""

    def __post_init__(self):
        super().__post_init__()
        left = {i for i, _ in self.pairs}
        right = {j for _, j in self.pairs}
        if len(left) != self.m or len(right) != self.n:
            raise NotACorrespondence(
                f"uncovered points: left {sorted(set(range(self.m)) - left)}, "
                f"right {sorted(set(range(self.n)) - right)}")

    @classmethod
    def from_rows(cls, rows, n: int):
        return cls(len(rows), n, frozenset(
            (i, j) for i, row in enumerate(rows) for j in range(n) if row >> j & 1))

    @classmethod
    def from_code(cls, code: int, m: int, n: int):
        return cls(m, n, frozenset(
            (i, j) for i in range(m) for j in range(n) if code >> (i * n + j) & 1))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, frozenset((i, i) for i in range(n)))


def _check_sizes(sigma: Relation, X: FiniteMetricSpace, Y: FiniteMetricSpace):
    if sigma.m != len(X) or sigma.n != len(Y):
        raise PreconditionError(
            f"relation is {sigma.m}x{sigma.n} but spaces have sizes {len(X)}, {len(Y)}")


def distortion(sigma: Relation, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Fraction:
    """Largest ``||xx'| - |yy'||`` over pairs of related pairs."""
    _check_sizes(sigma, X, Y)
    pairs = sigma.sorted_pairs()
    best = Fraction(0)
    for a, (x, y) in enumerate(pairs):
        dx, dy = X.d[x], Y.d[y]
        for x2, y2 in pairs[a + 1:]:
            v = abs(dx[x2] - dy[y2])
            if v > best:
                best = v
    return best


def is_correspondence(sigma: Relation, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> bool:
    _check_sizes(sigma, X, Y)
    return ({i for i, _ in sigma.pairs} == set(range(len(X)))
            and {j for _, j in sigma.pairs} == set(range(len(Y))))


def count_correspondences(m: int, n: int) -> int:
    """Number of correspondences between sets of sizes m and n (inclusion-exclusion)."""
    return sum((-1) ** (i + j) * comb(m, i) * comb(n, j) * 2 ** ((m - i) * (n - j))
               for i in range(m + 1) for j in range(n + 1))


def enumerate_correspondences(m: int, n: int,
                              budget: int = EXHAUSTIVE_BUDGET) -> Iterator[Correspondence]:
    """Yield every correspondence exactly once, in increasing bit encoding."""
    if m < 1 or n < 1:
        raise PreconditionError("sizes must be positive")
    if m * n > budget:
        raise BudgetExceeded(f"{m}x{n} grid exceeds the {budget}-bit budget")
    full = (1 << n) - 1
    rows = [0] * m

    def walk(k, covered):
        if k == 0:
            need, free = full & ~covered, covered
            sub = 0
            while True:
                if need | sub:
                    rows[0] = need | sub
                    yield Correspondence.from_rows(rows, n)
                sub = ((sub | ~free) + 1) & free
                if sub == 0:
                    return
        for s in range(1, full + 1):
            rows[k] = s
            yield from walk(k - 1, covered | s)

    yield from walk(m - 1, 0)


@dataclass(frozen=True)
class GHResult:
    value: Fraction
    witness: Correspondence
    method: str
    all_optimal: Optional[tuple] = None


def _scaled(X, Y):
    den = common_denominator(X.d, Y.d)
    return integer_table(X.d, den), integer_table(Y.d, den), den


def _full_product_distortion(dx, dy) -> int:
    xs = {v for row in dx for v in row}
    ys = {v for row in dy for v in row}
    return max(abs(a - b) for a in xs for b in ys)


def gh_exact(X: FiniteMetricSpace, Y: FiniteMetricSpace, mode: str = "exhaustive",
             want_all: bool = False, budget: Optional[int] = None,
             backend=None) -> GHResult:
    """Exact GH distance: half the least distortion over all correspondences.

    ``mode="exhaustive"`` visits every correspondence (``m * n <= budget``,
    default 30 bits). ``mode="bnb"`` prunes with the incumbent and stops at
    the lower bound ``|diam X - diam Y|`` (``max(m, n) <= budget``, default 8).
    Both return the same value and the same least-encoding witness.
    """
    m, n = len(X), len(Y)
    dx, dy, den = _scaled(X, Y)
    if mode == "exhaustive":
        limit = EXHAUSTIVE_BUDGET if budget is None else budget
        if m * n > limit:
            raise BudgetExceeded(f"{m}x{n} grid exceeds the exhaustive budget of {limit} bits")
        best, found = kernels.correspondence_search(
            dx, dy, kernels.EXHAUSTIVE, want_all, backend=backend)
    elif mode == "bnb":
        limit = BNB_BUDGET if budget is None else budget
        if max(m, n) > limit:
            raise BudgetExceeded(f"sizes {m}, {n} exceed the branch-and-bound budget {limit}")
        lower = abs(max(map(max, dx)) - max(map(max, dy)))
        best, found = kernels.correspondence_search(
            dx, dy, kernels.BNB, want_all, lower_bound=lower,
            seed=_full_product_distortion(dx, dy), backend=backend)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    witnesses = [Correspondence.from_rows(rows, n) for rows in found]
    return GHResult(value=Fraction(best, 2 * den), witness=witnesses[0], method=mode,
                    all_optimal=tuple(witnesses) if want_all else None)


def auto_mode(m: int, n: int) -> str:
    """Exhaustive search for small grids, branch-and-bound beyond that."""
    if m * n <= 20 or (max(m, n) > BNB_BUDGET and m * n <= EXHAUSTIVE_BUDGET):
        return "exhaustive"
    return "bnb"


def within_budget(m: int, n: int) -> bool:
    """Whether some solver can handle an ``m x n`` instance."""
    return m * n <= EXHAUSTIVE_BUDGET or max(m, n) <= BNB_BUDGET


def gh_value(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Fraction:
    """Exact GH distance, choosing the solver by instance size."""
    return gh_exact(X, Y, mode=auto_mode(len(X), len(Y))).value


def correspondences_below(X: FiniteMetricSpace, Y: FiniteMetricSpace, bound) -> list:
    """All correspondences of distortion strictly below ``bound``, by encoding."""
    m, n = len(X), len(Y)
    if not within_budget(m, n):
        raise BudgetExceeded(f"sizes {m}, {n} exceed the enumeration budget")
    bound = Fraction(bound)
    den = common_denominator(X.d, Y.d, [[bound]])
    dx, dy = integer_table(X.d, den), integer_table(Y.d, den)
    _, found = kernels.correspondence_search(
        dx, dy, kernels.BELOW, bound=integer_table([[bound]], den)[0][0])
    return [Correspondence.from_rows(rows, n) for _, rows in found]


class DistortionTerms(NamedTuple):
    diam: Fraction
    excess: Optional[Fraction]
    deficit: Optional[Fraction]


def _blocks(R: Relation, M: FiniteMetricSpace, X: FiniteMetricSpace) -> tuple:
    _check_sizes(R, M, X)
    owners = [R.preimage(x) for x in range(len(X))]
    for x, own in enumerate(owners):
        if len(own) != 1:
            raise NotBlockStructured(
                f"point {X.labels[x]!r} is related to {len(own)} center points")
    return tuple(R.image(i) for i in range(len(M)))


def distortion_decomposed(R: Relation, M: FiniteMetricSpace,
                          X: FiniteMetricSpace) -> DistortionTerms:
    """Split the distortion of a block correspondence into its three sources.

    ``diam`` is the largest block diameter, ``excess`` the largest
    ``max cross distance - |ij|`` and ``deficit`` the largest
    ``|ij| - min cross distance`` over distinct center points. The cross
    terms are ``None`` for a one-point center.
    """
    blocks = _blocks(R, M, X)
    d = X.d
    diam = max((d[a][b] for block in blocks for a in block for b in block),
               default=Fraction(0))
    excess = deficit = None
    for i in range(len(M)):
        for j in range(len(M)):
            if i == j:
                continue
            cross = [d[a][b] for a in blocks[i] for b in blocks[j]]
            ex, de = max(cross) - M.d[i][j], M.d[i][j] - min(cross)
            excess = ex if excess is None else max(excess, ex)
            deficit = de if deficit is None else max(deficit, de)
    return DistortionTerms(diam, excess, deficit)


@dataclass(frozen=True)
class BlockPartition:
    """Blocks ``X_i = R(i)`` of a space X, indexed by the points of a center M."""

    center: FiniteMetricSpace
    space: FiniteMetricSpace
    blocks: tuple
    correspondence: Correspondence

    def block_of(self) -> list:
        owner = [0] * len(self.space)
        for i, block in enumerate(self.blocks):
            for x in block:
                owner[x] = i
        return owner

    def as_sets(self) -> frozenset:
        return frozenset(frozenset(b) for b in self.blocks)

    def with_space(self, space: FiniteMetricSpace) -> "BlockPartition":
        return BlockPartition(self.center, space, self.blocks, self.correspondence)


def partition_from(R: Correspondence, M: FiniteMetricSpace,
                   X: FiniteMetricSpace) -> BlockPartition:
    s = min_positive_distance(M)
    dis = distortion(R, M, X)
    if not dis < s:
        raise LowDistortionViolated(f"dis R = {dis} is not below s(M) = {s}")
    return BlockPartition(M, X, _blocks(R, M, X), R)


@dataclass
class SeparationReport:
    gh: Fraction
    d: Fraction
    correspondence: Correspondence
    partition: BlockPartition
    distortion: Fraction
    items: dict = field(default_factory=dict)
    low_distortion_count: Optional[int] = None

    @property
    def ok(self) -> bool:
        return all(v for v in self.items.values() if v is not None)


def check_separation(M: FiniteMetricSpace, X: FiniteMetricSpace, d) -> SeparationReport:
    """Verify the block-separation properties of a space close to M.

    Items 1-4 are checked on an optimal correspondence; items 5 and 6
    (unique partition, unique correspondence) by enumerating every
    correspondence of distortion below ``2d``. Items whose hypotheses do not
    hold are reported as ``None``.
    """
    d = Fraction(d)
    if len(M) < 3:
        raise PreconditionFailed("size(M) >= 3")
    s = min_positive_distance(M)
    res = gh_exact(M, X, mode=auto_mode(len(M), len(X)))
    if not res.value < d:
        raise PreconditionFailed(f"d_GH(M,X) < d fails: {res.value} >= {d}")
    if not d <= s / 2:
        raise PreconditionFailed(f"d <= s(M)/2 fails: {d} > {s / 2}")
    R = res.witness
    dis = distortion(R, M, X)
    report = SeparationReport(gh=res.value, d=d, correspondence=R,
                              partition=None, distortion=dis)
    items = report.items
    items[1] = dis < 2 * d
    P = partition_from(R, M, X)
    report.partition = P
    items[2] = (sorted(x for b in P.blocks for x in b) == list(range(len(X)))
                and all(P.blocks))
    owner = P.block_of()
    n = len(X)
    items[3] = all(abs(X.d[a][b] - M.d[owner[a]][owner[b]]) < 2 * d
                   for a in range(n) for b in range(n))
    items[4] = all(X.d[a][b] < 2 * d for blk in P.blocks for a in blk for b in blk)
    items[5] = items[6] = None
    if d <= s / 4:
        low = correspondences_below(M, X, 2 * d)
        report.low_distortion_count = len(low)
        items[5] = all(partition_from(Rp, M, X).as_sets() == P.as_sets() for Rp in low)
        e = characteristics(M).e
        if d <= min(s / 4, e / 4):
            items[6] = (len(low) == 1 and low[0] == R and dis == 2 * res.value
                        and all(X.d[a][b] <= dis for blk in P.blocks
                                for a in blk for b in blk)
                        and all(abs(X.d[a][b] - M.d[owner[a]][owner[b]]) <= dis
                                for a in range(n) for b in range(n)
                                if owner[a] != owner[b]))
    return report


def unique_optimal(M: FiniteMetricSpace, X: FiniteMetricSpace) -> Correspondence:
    """The only correspondence of distortion ``2 d_GH(M, X)`` near a generic center."""
    ch = characteristics(M)
    if not ch.generic:
        raise PreconditionFailed("M is not generic")
    limit = min(ch.s / 4, ch.e / 4)
    value = gh_exact(M, X, mode=auto_mode(len(M), len(X))).value
    if not value < limit:
        raise PreconditionFailed(
            f"d_GH(M,X) < min(s/4, e/4) fails: {value} >= {limit}")
    low = correspondences_below(M, X, 2 * limit)
    if len(low) != 1:
        raise NotUnique(f"{len(low)} correspondences have distortion below {2 * limit}")
    if distortion(low[0], M, X) != 2 * value:
        raise NotUnique("the low-distortion correspondence is not optimal")
    return low[0]
