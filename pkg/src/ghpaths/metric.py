"""Finite metric spaces with exact rational distances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from . import kernels
from .errors import (AsymmetricTable, BothZero, BudgetExceeded, EmptySpace,
                     EmptySubset, NegativeDistance, NonZeroDiagonal, PreconditionError,
                     ShapeMismatch, TooSmall, TriangleViolation,
                     ZeroOffDiagonal)

Scalar = Fraction

PERMUTATION_BUDGET = 8


def to_scalar(value) -> Fraction:
    """Convert an int, Fraction, Decimal or string ("3", "1.25", "17/5") exactly."""
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            return Fraction(text)
        return Fraction(Decimal(text))
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a string or Fraction")
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labeled points with an exact distance table.

    Instances are normally obtained from :func:`validate_metric`; the
    constructor itself trusts its input. Equality is label-sensitive.
    """

    labels: tuple
    d: tuple

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    def dist(self, i: int, j: int) -> Fraction:
        return self.d[i][j]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def pairs(self):
        """Unordered index pairs ``i < j``."""
        n = len(self.labels)
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.d)
        return f"FiniteMetricSpace({list(self.labels)}, [{rows}])"


def _space(labels, table) -> FiniteMetricSpace:
    return FiniteMetricSpace(tuple(labels), tuple(tuple(row) for row in table))


def validate_metric(labels: Sequence[str], d) -> FiniteMetricSpace:
    """Check the metric axioms and return the space.

    Each rejection raises an error naming the offending indices.
    """
    labels = tuple(str(lab) for lab in labels)
    n = len(labels)
    if n == 0:
        raise EmptySpace("a metric space needs at least one point")
    if len(set(labels)) != n:
        raise ShapeMismatch("labels must be distinct")
    if len(d) != n or any(len(row) != n for row in d):
        raise ShapeMismatch(f"distance table must be {n}x{n}")
    table = [[to_scalar(v) for v in row] for row in d]
    for i in range(n):
        if table[i][i] != 0:
            raise NonZeroDiagonal(i)
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise AsymmetricTable(i, j)
            if table[i][j] < 0:
                raise NegativeDistance(i, j)
            if table[i][j] == 0:
                raise ZeroOffDiagonal(i, j)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[i][k] > table[i][j] + table[j][k]:
                    raise TriangleViolation(i, j, k)
    return _space(labels, table)


def delta1(label: str = "*") -> FiniteMetricSpace:
    """The single-point space."""
    return _space((label,), ((Fraction(0),),))


def two_point(distance, labels=("a", "b")) -> FiniteMetricSpace:
    dist = to_scalar(distance)
    return validate_metric(labels, [[0, dist], [dist, 0]])


def simplex(n: int, distance, prefix: str = "y") -> FiniteMetricSpace:
    """Equilateral space: ``n`` points, all pairwise distances equal."""
    dist = to_scalar(distance)
    labels = [f"{prefix}{i + 1}" for i in range(n)]
    return validate_metric(labels, [[0 if i == j else dist for j in range(n)]
                                    for i in range(n)])


def diameter(X: FiniteMetricSpace) -> Fraction:
    return max((v for row in X.d for v in row), default=Fraction(0))


def scale(X: FiniteMetricSpace, factor) -> FiniteMetricSpace:
    """Multiply every distance by ``factor``; zero collapses to the point."""
    lam = to_scalar(factor)
    if lam < 0:
        raise PreconditionError(f"scale factor must be non-negative, got {lam}")
    if lam == 0:
        return delta1()
    if lam == 1:
        return X
    return _space(X.labels, [[lam * v for v in row] for row in X.d])


def combine_metrics(labels, d1, d2, alpha, beta) -> FiniteMetricSpace:
    """The metric ``alpha*d1 + beta*d2`` on a common point set.

    Both tables are assumed to be metrics already; a non-trivial
    non-negative combination of metrics is a metric, so it is not re-checked.
    """
    alpha, beta = to_scalar(alpha), to_scalar(beta)
    if alpha < 0 or beta < 0:
        raise PreconditionError("coefficients must be non-negative")
    if alpha == 0 and beta == 0:
        raise BothZero("alpha and beta are both zero")
    n = len(labels)
    return _space(labels, [[alpha * to_scalar(d1[i][j]) + beta * to_scalar(d2[i][j])
                            for j in range(n)] for i in range(n)])


def collapse_zero_distances(labels, table) -> FiniteMetricSpace:
    """Quotient a pseudo-metric table by its zero-distance classes.

    Each class keeps the label and position of its first member.
    """
    n = len(labels)
    rep = list(range(n))
    for i in range(n):
        if rep[i] != i:
            continue
        for j in range(i + 1, n):
            if rep[j] == j and table[i][j] == 0:
                rep[j] = i
    keep = [i for i in range(n) if rep[i] == i]
    return _space([labels[i] for i in keep],
                  [[table[i][j] for j in keep] for i in keep])


def common_denominator(*tables) -> int:
    den = 1
    for table in tables:
        for row in table:
            for v in row:
                den = math.lcm(den, v.denominator)
    return den


def integer_table(table, den: int):
    return [[v.numerator * (den // v.denominator) for v in row] for row in table]


@dataclass(frozen=True)
class SpaceCharacteristics:
    s: Fraction
    t: Fraction
    e: Fraction
    generic: bool


def min_positive_distance(X: FiniteMetricSpace) -> Fraction:
    if len(X) < 2:
        raise TooSmall("s needs at least two points")
    return min(X.d[i][j] for i, j in X.pairs())


def triangle_slack(X: FiniteMetricSpace) -> Fraction:
    """Least value of |xx'| + |x'x''| - |xx''| over distinct triples."""
    n = len(X)
    if n < 3:
        raise TooSmall("t needs at least three points")
    d = X.d
    return min(d[i][j] + d[j][k] - d[i][k]
               for i in range(n) for j in range(n) for k in range(n)
               if i != j and j != k and i != k)


def min_self_distortion(X: FiniteMetricSpace, budget: int = PERMUTATION_BUDGET,
                        backend=None) -> Fraction:
    """Least distortion of a non-identity bijection of X onto itself."""
    n = len(X)
    if n < 2:
        raise TooSmall("e needs at least two points")
    if n > budget:
        raise BudgetExceeded(f"{n} points exceeds permutation budget {budget}")
    den = common_denominator(X.d)
    table = integer_table(X.d, den)
    best = kernels.bijection_search(table, table, exclude_identity=True,
                                    backend=backend)
    return Fraction(best, den)


@lru_cache(maxsize=256)
def _characteristics(X: FiniteMetricSpace, budget: int) -> SpaceCharacteristics:
    if len(X) < 3:
        raise TooSmall(f"characteristics need at least three points, got {len(X)}")
    s = min_positive_distance(X)
    t = triangle_slack(X)
    e = min_self_distortion(X, budget)
    return SpaceCharacteristics(s, t, e, s > 0 and t > 0 and e > 0)


def characteristics(X: FiniteMetricSpace,
                    budget: int = PERMUTATION_BUDGET) -> SpaceCharacteristics:
    """Exact s, t, e and the genericity flag.

    ``e`` is found by a pruned walk over all permutations, so spaces larger
    than ``budget`` points are refused.
    """
    return _characteristics(X, budget)


def brute_force_self_distortion(X: FiniteMetricSpace) -> Fraction:
    """Independent check of ``e``: every permutation, no pruning."""
    n = len(X)
    ident = tuple(range(n))
    best = None
    for p in permutations(range(n)):
        if p == ident:
            continue
        dis = max((abs(X.d[i][j] - X.d[p[i]][p[j]])
                   for i in range(n) for j in range(n)), default=Fraction(0))
        if best is None or dis < best:
            best = dis
    return best


def is_isometric(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> bool:
    """True iff some bijection X -> Y has distortion zero."""
    if len(X) != len(Y):
        return False
    den = common_denominator(X.d, Y.d)
    best = kernels.bijection_search(integer_table(X.d, den), integer_table(Y.d, den))
    return best == 0


def _subset(X: FiniteMetricSpace, points: Iterable[int]) -> list:
    pts = sorted(set(points))
    if not pts:
        raise EmptySubset("subsets must be non-empty")
    for p in pts:
        if not 0 <= p < len(X):
            raise PreconditionError(f"point index {p} out of range")
    return pts


def hausdorff_distance(X: FiniteMetricSpace, A: Iterable[int],
                       B: Iterable[int]) -> Fraction:
    """Hausdorff distance between two point-index subsets of X."""
    A, B = _subset(X, A), _subset(X, B)
    forward = max(min(X.d[a][b] for b in B) for a in A)
    backward = max(min(X.d[a][b] for a in A) for b in B)
    return max(forward, backward)


def gh_to_point(X: FiniteMetricSpace) -> Fraction:
    """GH distance from X to the single-point space: half the diameter."""
    return diameter(X) / 2
