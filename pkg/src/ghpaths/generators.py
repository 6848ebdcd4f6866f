"""Generators for generic spaces and for points on small spheres."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import witness_certificate
from .correspondences import Correspondence, gh_value
from .curves import sign_space, _check_small_radius
from .errors import FTooSmall, PreconditionError, QTooSmall, VerificationError
from .metric import FiniteMetricSpace, _space, diameter, to_scalar, validate_metric

RANDOM_DENOMINATOR = 1000
RECHECK_SIZE = 5


def gen_distinct_random(n: int, seed: int, eps) -> FiniteMetricSpace:
    """Random space with pairwise distinct distances, all shifted by ``eps``.

    Distances are distinct rationals ``k/D`` in ``[1, 2)`` plus ``eps``. Any
    two of them sum to at least ``2 + 2 eps``, more than any third, so the
    triangle inequality holds with slack above ``eps`` and no repair is needed.
    """
    eps = to_scalar(eps)
    if n < 3:
        raise PreconditionError("n must be at least 3")
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    den = max(RANDOM_DENOMINATOR, len(pairs))
    numerators = random.Random(seed).sample(range(den, 2 * den), len(pairs))
    table = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), k in zip(pairs, numerators):
        table[i][j] = table[j][i] = Fraction(k, den) + eps
    return validate_metric([f"x{i}" for i in range(n)], table)


def gen_wellorder_graph(n: int, eps) -> FiniteMetricSpace:
    """Graph metric (1 on edges, ``1 + eps`` otherwise) of the subdivided
    transitive tournament on ``x0 < x1 < ...``.

    Each edge ``(xi, xj)`` with ``i < j`` becomes ``xi - u - v - xj`` plus a
    pendant ``v - w``.
    """
    eps = to_scalar(eps)
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if not 0 < eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    labels = [f"x{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            u, v, w = (f"{c}{i}_{j}" for c in "uvw")
            labels += [u, v, w]
            edges += [(f"x{i}", u), (u, v), (v, f"x{j}"), (v, w)]
    index = {lab: k for k, lab in enumerate(labels)}
    adjacent = {frozenset((index[a], index[b])) for a, b in edges}
    size = len(labels)
    table = [[Fraction(0) if a == b else
              Fraction(1) if frozenset((a, b)) in adjacent else 1 + eps
              for b in range(size)] for a in range(size)]
    return validate_metric(labels, table)


def gen_geometric_progression(n: int, q) -> FiniteMetricSpace:
    """Points ``x0 .. x(n-1)`` with ``|xi xj| = |q^i - q^j| + 1``."""
    q = to_scalar(q)
    if n < 3:
        raise PreconditionError("n must be at least 3")
    if not q > 4:
        raise QTooSmall(f"q must exceed 4, got {q}")
    powers = [q ** i for i in range(n)]
    table = [[Fraction(0) if i == j else abs(powers[i] - powers[j]) + 1
              for j in range(n)] for i in range(n)]
    return validate_metric([f"x{i}" for i in range(n)], table)


def _fresh_label(labels, base: str = "y") -> str:
    if base not in labels:
        return base
    k = 1
    while f"{base}{k}" in labels:
        k += 1
    return f"{base}{k}"


def extend_one_point(X: FiniteMetricSpace, f) -> FiniteMetricSpace:
    """Add a point at distance ``f > diam X`` from every point of X."""
    f = to_scalar(f)
    if not f > diameter(X):
        raise FTooSmall(f"f = {f} must exceed diam X = {diameter(X)}")
    n = len(X)
    labels = list(X.labels) + [_fresh_label(X.labels)]
    table = [list(row) + [f] for row in X.d] + [[f] * n + [Fraction(0)]]
    return _space(labels, table)


SPHERE_POINT_MODES = ("split", "excess", "deficit")


def sphere_point_correspondence(M: FiniteMetricSpace, mode: str, seed: int = 0):
    """The block correspondence behind :func:`gen_sphere_point`."""
    n = len(M)
    if mode != "split":
        return Correspondence.identity(n)
    k = seed % n
    pairs = [(i, i if i <= k else i + 1) for i in range(n)] + [(k, k + 1)]
    return Correspondence.of(n, n + 1, pairs)


def gen_sphere_point(M: FiniteMetricSpace, r, mode: str, seed: int = 0) -> FiniteMetricSpace:
    """A space at GH distance exactly ``r`` from a generic M.

    ``excess`` and ``deficit`` shift every distance by ``+2r`` / ``-2r``;
    ``split`` replaces point ``seed mod |M|`` by two points at distance ``2r``.
    """
    r = to_scalar(r)
    _check_small_radius(M, r)
    n = len(M)
    if mode == "excess":
        X = sign_space(M, [1] * len(M.pairs()), r)
    elif mode == "deficit":
        X = sign_space(M, [-1] * len(M.pairs()), r)
    elif mode == "split":
        k = seed % n
        src = list(range(k + 1)) + list(range(k, n))
        labels = [*M.labels[:k], f"{M.labels[k]}a", f"{M.labels[k]}b", *M.labels[k + 1:]]
        table = [[Fraction(0) if a == b else 2 * r if src[a] == src[b] else M.d[src[a]][src[b]]
                  for b in range(n + 1)] for a in range(n + 1)]
        X = validate_metric(labels, table)
    else:
        raise PreconditionError(f"mode must be one of {SPHERE_POINT_MODES}, got {mode!r}")
    witness_certificate(M, X, r, sphere_point_correspondence(M, mode, seed))
    if len(X) <= RECHECK_SIZE and gh_value(M, X) != r:
        raise VerificationError(f"generated point is not at distance {r}")
    return X


@dataclass(frozen=True)
class GeneratorRecipe:
    """Serializable description of a generator call."""

    kind: str
    params: dict = field(default_factory=dict)

    KINDS = ("distinct-random", "wellorder-graph", "geometric-progression",
             "one-point-extension", "sphere-point")

    def build(self, base: FiniteMetricSpace = None) -> FiniteMetricSpace:
        p = self.params
        if self.kind == "distinct-random":
            return gen_distinct_random(int(p["n"]), int(p.get("seed", 0)), p["eps"])
        if self.kind == "wellorder-graph":
            return gen_wellorder_graph(int(p["n"]), p["eps"])
        if self.kind == "geometric-progression":
            return gen_geometric_progression(int(p["n"]), p["q"])
        if base is None:
            raise PreconditionError(f"recipe {self.kind!r} needs a base space")
        if self.kind == "one-point-extension":
            return extend_one_point(base, p["f"])
        if self.kind == "sphere-point":
            return gen_sphere_point(base, p["r"], p["mode"], int(p.get("seed", 0)))
        raise PreconditionError(f"unknown recipe kind {self.kind!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "params": {k: str(v) if isinstance(v, Fraction) else v
                           for k, v in sorted(self.params.items())}}
