"""Sampled curves in GH space: geodesics and metric deformations.

Every curve is a finite list of samples on a parameter grid in [0, 1]
together with a Lipschitz constant ``L`` (and an additive ``slack`` for
constructions that solve for their samples numerically), such that
``d_GH(sample_i, sample_i+1) <= L * (t_i+1 - t_i) + slack``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .certificates import (MembershipCertificate, SphereSpec, WITNESS,
                           check_certificate)
from .correspondences import (BlockPartition, Correspondence, auto_mode,
                              distortion, gh_exact, gh_value, within_budget)
from .errors import (MagnitudeMismatch, MagnitudeTooLarge, MetricCheckFailed,
                     MetricError, NotOptimal, NotRhoEndpoint, PreconditionError,
                     PreconditionFailed, RadiusOutOfRange, TooSmall)
from .metric import (FiniteMetricSpace, _space, characteristics, combine_metrics,
                     min_positive_distance, to_scalar, triangle_slack,
                     validate_metric)

DEFAULT_SAMPLES = 33


@dataclass(frozen=True)
class CurveSample:
    t: Fraction
    space: FiniteMetricSpace
    certificate: Optional[MembershipCertificate] = None
    flags: tuple = ()


@dataclass(frozen=True)
class SampledCurve:
    construction: str
    samples: tuple
    lipschitz: Fraction
    slack: Fraction = Fraction(0)
    sphere: Optional[SphereSpec] = None
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def spaces(self) -> list:
        return [s.space for s in self.samples]

    @property
    def params(self) -> list:
        return [s.t for s in self.samples]

    @property
    def start(self) -> FiniteMetricSpace:
        return self.samples[0].space

    @property
    def end(self) -> FiniteMetricSpace:
        return self.samples[-1].space

    def __len__(self) -> int:
        return len(self.samples)


def grid(samples: int) -> list:
    if samples < 2:
        raise PreconditionError("a curve needs at least two samples")
    return [Fraction(k, samples - 1) for k in range(samples)]


def reverse(curve: SampledCurve) -> SampledCurve:
    samples = tuple(replace(s, t=1 - s.t) for s in reversed(curve.samples))
    return replace(curve, samples=samples, construction=curve.construction + ":reversed")


def concatenate(curves, construction: str, sphere=None, notes=None) -> SampledCurve:
    """Join curves end to start, giving each an equal share of [0, 1].

    Consecutive curves must meet in exactly the same space.
    """
    curves = list(curves)
    k = len(curves)
    samples = []
    for idx, c in enumerate(curves):
        for pos, s in enumerate(c.samples):
            if idx > 0 and pos == 0:
                if s.space != samples[-1].space:
                    raise PreconditionError(f"segments {idx - 1} and {idx} do not meet")
                continue
            samples.append(replace(s, t=(idx + s.t) / k))
    return SampledCurve(
        construction=construction, samples=tuple(samples),
        lipschitz=k * max(c.lipschitz for c in curves),
        slack=max(c.slack for c in curves), sphere=sphere,
        notes=dict(notes or {}))


def geodesic_point(X: FiniteMetricSpace, Y: FiniteMetricSpace, R: Correspondence,
                   t, check_optimal: bool = True) -> FiniteMetricSpace:
    """The space on the pairs of ``R`` with metric ``(1-t)|xx'| + t|yy'|``.

    At the ends the pair space degenerates to a pseudo-metric whose quotient
    is X (``t = 0``) or Y (``t = 1``); those spaces are returned directly.
    """
    t = to_scalar(t)
    if not 0 <= t <= 1:
        raise PreconditionError(f"t must lie in [0, 1], got {t}")
    if check_optimal:
        value = gh_value(X, Y)
        if distortion(R, X, Y) != 2 * value:
            raise NotOptimal(f"correspondence has distortion {distortion(R, X, Y)}, "
                             f"optimum is {2 * value}")
    if t == 0:
        return X
    if t == 1:
        return Y
    pairs = R.sorted_pairs()
    labels = [f"{X.labels[x]}|{Y.labels[y]}" for x, y in pairs]
    table = [[(1 - t) * X.d[x][x2] + t * Y.d[y][y2] for x2, y2 in pairs]
             for x, y in pairs]
    return _space(labels, table)


def geodesic_witness(X: FiniteMetricSpace, Y: FiniteMetricSpace):
    """``(d_GH, R)`` with R an optimal correspondence of fewest pairs.

    Removing pairs never increases distortion, so such an R has at most
    ``|X| + |Y| - 1`` pairs, which keeps the geodesic spaces small. Ties go
    to the least encoding.
    """
    res = gh_exact(X, Y, mode=auto_mode(len(X), len(Y)), want_all=True)
    return res.value, min(res.all_optimal, key=lambda R: (len(R), R.code))


def geodesic_curve(X, Y, samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    value, R = geodesic_witness(X, Y)
    pts = [CurveSample(t, geodesic_point(X, Y, R, t, check_optimal=False))
           for t in grid(samples)]
    return SampledCurve("geodesic", tuple(pts), lipschitz=value,
                        notes={"gh": value, "correspondence": R})


def curve_length_estimate(curve: SampledCurve, stride: int = 1) -> Fraction:
    """Inscribed polygon length through every ``stride``-th sample (and the last).

    A lower bound for the length of the curve; it can only grow as the
    stride shrinks.
    """
    idx = list(range(0, len(curve.samples), stride))
    if idx[-1] != len(curve.samples) - 1:
        idx.append(len(curve.samples) - 1)
    sp = curve.spaces
    return sum((gh_value(sp[a], sp[b]) for a, b in zip(idx, idx[1:])), Fraction(0))


@dataclass
class CurveReport:
    ok: bool
    failures: list
    lipschitz_checked: int = 0
    lipschitz_skipped: int = 0
    gaps: list = field(default_factory=list)


def verify_curve(curve: SampledCurve, recheck_gh: bool = False,
                 check_lipschitz: bool = True) -> CurveReport:
    """Re-validate every sample, certificate and Lipschitz gap."""
    failures = []
    params = curve.params
    if params[0] != 0 or params[-1] != 1 or any(a >= b for a, b in zip(params, params[1:])):
        failures.append((None, "parameter grid is not increasing from 0 to 1"))
    for i, s in enumerate(curve.samples):
        try:
            validate_metric(s.space.labels, s.space.d)
        except MetricError as exc:
            failures.append((i, f"invalid metric: {exc}"))
            continue
        if s.certificate is not None:
            if curve.sphere is None:
                failures.append((i, "certificate without a sphere"))
                continue
            ok, reason = check_certificate(curve.sphere, s.space, s.certificate, recheck_gh)
            if not ok:
                failures.append((i, reason))
    report = CurveReport(ok=False, failures=failures)
    if check_lipschitz and not failures:
        sp = curve.spaces
        for i in range(len(sp) - 1):
            a, b = sp[i], sp[i + 1]
            if not within_budget(len(a), len(b)):
                report.lipschitz_skipped += 1
                continue
            gap = gh_value(a, b)
            bound = curve.lipschitz * (params[i + 1] - params[i]) + curve.slack
            report.gaps.append((i, gap, bound))
            report.lipschitz_checked += 1
            if gap > bound:
                failures.append((i, f"Lipschitz gap {gap} exceeds {bound}"))
    report.ok = not failures
    return report


@dataclass(frozen=True)
class PerturbationTable:
    """Symmetric additive perturbation ``a_ij`` with zero diagonal."""

    a: tuple

    def __post_init__(self):
        n = len(self.a)
        table = tuple(tuple(to_scalar(v) for v in row) for row in self.a)
        if any(len(row) != n for row in table):
            raise PreconditionError("perturbation table must be square")
        for i in range(n):
            if table[i][i] != 0:
                raise PreconditionError(f"a[{i}][{i}] must be 0")
            for j in range(n):
                if table[i][j] != table[j][i]:
                    raise PreconditionError(f"perturbation is not symmetric at ({i},{j})")
        object.__setattr__(self, "a", table)

    @classmethod
    def from_signs(cls, n: int, signs, magnitude) -> "PerturbationTable":
        """Entries ``sign * magnitude``; ``signs`` lists +1/-1 per pair ``i < j``
        in lexicographic order, or maps ``(i, j)`` to a sign."""
        magnitude = to_scalar(magnitude)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if isinstance(signs, dict):
            lookup = {tuple(sorted(k)): v for k, v in signs.items()}
            seq = [lookup[p] for p in pairs]
        else:
            seq = list(signs)
        if len(seq) != len(pairs):
            raise PreconditionError(f"expected {len(pairs)} signs, got {len(seq)}")
        table = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), sg in zip(pairs, seq):
            sg = {"+": 1, "-": -1}.get(sg, sg)
            if sg not in (1, -1):
                raise PreconditionError(f"sign must be +1 or -1, got {sg!r}")
            table[i][j] = table[j][i] = sg * magnitude
        return cls(tuple(map(tuple, table)))

    @property
    def magnitude(self) -> Fraction:
        return max((abs(v) for row in self.a for v in row), default=Fraction(0))

    def signs(self) -> list:
        n = len(self.a)
        return [(1 if self.a[i][j] > 0 else -1 if self.a[i][j] < 0 else 0)
                for i in range(n) for j in range(i + 1, n)]


def _check_perturbation(M: FiniteMetricSpace, a: PerturbationTable):
    if len(a.a) != len(M):
        raise PreconditionError("perturbation size does not match the space")
    s = min_positive_distance(M)
    mag = a.magnitude
    for i, j in M.pairs():
        if not abs(a.a[i][j]) < s:
            raise MagnitudeTooLarge(f"|a[{i}][{j}]| = {abs(a.a[i][j])} is not below s(M) = {s}")
    if len(M) >= 3:
        t = triangle_slack(M)
        if not mag <= t / 3:
            raise MagnitudeTooLarge(f"magnitude {mag} exceeds t(M)/3 = {t / 3}")


def perturb_space(M: FiniteMetricSpace, a: PerturbationTable) -> FiniteMetricSpace:
    """Add ``a_ij`` to every distance ``|ij|``; the result keeps M's labels."""
    _check_perturbation(M, a)
    return _space(M.labels, [[M.d[i][j] + a.a[i][j] for j in range(len(M))]
                             for i in range(len(M))])


def perturbation_certificate(M: FiniteMetricSpace, a: PerturbationTable):
    """Witness certificate for ``d_GH(M, M_rho) = a/2`` when ``a/2 < min(s/4, e/4)``.

    Returns ``None`` when the hypothesis fails.
    """
    space = perturb_space(M, a)
    ch = characteristics(M)
    half = a.magnitude / 2
    if not (ch.generic and 0 < half < min(ch.s / 4, ch.e / 4)):
        return None
    R = Correspondence.identity(len(M))
    if distortion(R, M, space) != a.magnitude:
        raise MetricCheckFailed("identity distortion differs from the perturbation magnitude")
    return MembershipCertificate(WITNESS, half, witness=R)


def sign_space(M: FiniteMetricSpace, signs, r) -> FiniteMetricSpace:
    """M with every distance moved by ``+2r`` or ``-2r`` according to ``signs``."""
    r = to_scalar(r)
    return perturb_space(M, PerturbationTable.from_signs(len(M), signs, 2 * r))


def _segment_preconditions(M, a, a2):
    if a.magnitude != a2.magnitude:
        raise MagnitudeMismatch(f"magnitudes differ: {a.magnitude} vs {a2.magnitude}")
    _check_perturbation(M, a)
    _check_perturbation(M, a2)
    ch = characteristics(M)
    if not (ch.generic and a.magnitude / 2 < min(ch.s / 4, ch.e / 4)):
        raise PreconditionFailed("a/2 < min(s(M)/4, e(M)/4) fails")


def shares_entry(a: PerturbationTable, a2: PerturbationTable) -> bool:
    mag = a.magnitude
    n = len(a.a)
    return any(a.a[i][j] == a2.a[i][j] and abs(a.a[i][j]) == mag
               for i in range(n) for j in range(i + 1, n))


def perturbation_segment(M: FiniteMetricSpace, a: PerturbationTable,
                         a2: PerturbationTable, t) -> FiniteMetricSpace:
    """``(1-t) rho + t rho'`` between two perturbations of equal magnitude."""
    t = to_scalar(t)
    _segment_preconditions(M, a, a2)
    n = len(M)
    rho = [[M.d[i][j] + a.a[i][j] for j in range(n)] for i in range(n)]
    rho2 = [[M.d[i][j] + a2.a[i][j] for j in range(n)] for i in range(n)]
    return combine_metrics(M.labels, rho, rho2, 1 - t, t) if 0 < t < 1 else \
        _space(M.labels, rho if t == 0 else rho2)


def perturbation_segment_curve(M, a, a2, samples: int = DEFAULT_SAMPLES) -> SampledCurve:
    _segment_preconditions(M, a, a2)
    shared = shares_entry(a, a2)
    sphere = SphereSpec(M, a.magnitude / 2)
    R = Correspondence.identity(len(M))
    pts = []
    for t in grid(samples):
        space = perturbation_segment(M, a, a2, t)
        cert = None
        if shared:
            cert = MembershipCertificate(WITNESS, a.magnitude / 2, witness=R)
        pts.append(CurveSample(t, space, cert, () if shared else ("no-shared-entry",)))
    return SampledCurve("perturbation-segment", tuple(pts), lipschitz=a.magnitude,
                        sphere=sphere)


def small_radius_limit(M: FiniteMetricSpace) -> Fraction:
    """``min(s/4, e/4, t/6)`` for a generic M."""
    ch = characteristics(M)
    return min(ch.s / 4, ch.e / 4, ch.t / 6)


def _check_small_radius(M, r):
    try:
        ch = characteristics(M)
    except TooSmall as exc:
        raise RadiusOutOfRange(f"center too small: {exc}") from exc
    if not ch.generic:
        raise RadiusOutOfRange("center is not generic")
    limit = min(ch.s / 4, ch.e / 4, ch.t / 6)
    if not 0 < r < limit:
        raise RadiusOutOfRange(f"r = {r} is outside (0, {limit})")


def rho_deformation(X: FiniteMetricSpace, P: BlockPartition, r, direction: str,
                    t) -> FiniteMetricSpace:
    """Move cross-block distances linearly toward ``|ij| + 2r`` (plus) or
    ``|ij| - 2r`` (minus); distances inside blocks stay fixed."""
    r, t = to_scalar(r), to_scalar(t)
    M = P.center
    _check_small_radius(M, r)
    if direction not in ("plus", "minus"):
        raise PreconditionError(f"direction must be 'plus' or 'minus', got {direction!r}")
    if P.space.d != X.d:
        raise PreconditionError("partition does not belong to this space")
    if distortion(P.correspondence, M, X) != 2 * r:
        raise PreconditionFailed("block correspondence distortion differs from 2r")
    shift = 2 * r if direction == "plus" else -2 * r
    owner = P.block_of()
    n = len(X)
    table = [[X.d[a][b] if owner[a] == owner[b]
              else (1 - t) * X.d[a][b] + t * (M.d[owner[a]][owner[b]] + shift)
              for b in range(n)] for a in range(n)]
    try:
        return validate_metric(X.labels, table)
    except MetricError as exc:
        raise MetricCheckFailed(f"deformed table is not a metric at t={t}: {exc}") from exc


def _cross_shift(X1: FiniteMetricSpace, P: BlockPartition) -> Fraction:
    M = P.center
    owner = P.block_of()
    n = len(X1)
    shifts = {X1.d[a][b] - M.d[owner[a]][owner[b]]
              for a in range(n) for b in range(n) if owner[a] != owner[b]}
    if len(shifts) != 1 or 0 in shifts:
        raise NotRhoEndpoint("cross-block distances are not |ij| shifted by one constant")
    return shifts.pop()


def nu_deformation(X1: FiniteMetricSpace, P: BlockPartition, t) -> FiniteMetricSpace:
    """Shrink every block by ``(1 - t)``; at ``t = 1`` each block becomes the
    point of M it corresponds to."""
    t = to_scalar(t)
    M = P.center
    shift = _cross_shift(X1, P)
    if t == 1:
        m = len(M)
        return _space(M.labels, [[0 if i == j else M.d[i][j] + shift for j in range(m)]
                                 for i in range(m)])
    owner = P.block_of()
    n = len(X1)
    table = [[(1 - t) * X1.d[a][b] if owner[a] == owner[b] else X1.d[a][b]
              for b in range(n)] for a in range(n)]
    return _space(X1.labels, table)
