"""Certified curves on GH spheres.

Three regimes are covered:

* spheres around the one-point space (normalized geodesics),
* spheres of large radius around an arbitrary center (rescaled normalized
  geodesics, with the scale found by bracketed root finding),
* spheres of small radius around a generic center (block deformations
  toward the anchors ``M+`` / ``M-`` and perturbation segments between them).
"""

from __future__ import annotations

import warnings
from dataclasses import replace
from fractions import Fraction

from .certificates import (BRACKET, EXACT, MembershipCertificate,
                           NotMember, SphereSpec, witness_certificate,
                           witness_radius_limit)
from .correspondences import (Correspondence, auto_mode, distortion_decomposed, gh_exact,
                              gh_value, partition_from, unique_optimal)
from .curves import (CurveSample, PerturbationTable, SampledCurve, concatenate,
                     geodesic_point, geodesic_witness, grid, nu_deformation,
                     perturbation_segment_curve, reverse, rho_deformation)
from .errors import (BracketFailed, MonotonicityWarning, NotGeneric, NotOnSphere,
                     PreconditionError, RadiusOutOfRange, RadiusTooSmall,
                     TooSmall, VerificationError)
from .metric import (FiniteMetricSpace, characteristics, delta1, diameter, scale,
                     to_scalar)

DEFAULT_TOL = Fraction(1, 10**9)
LAMBDA_GRID = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3))
_SECANT_DENOMINATOR_LIMIT = 10**12


def on_sphere(spec: SphereSpec, X: FiniteMetricSpace):
    """Certificate that ``X`` lies on the sphere, or :class:`NotMember`."""
    res = gh_exact(spec.center, X, mode=auto_mode(len(spec.center), len(X)))
    if res.value != spec.radius:
        return NotMember(res.value)
    limit = witness_radius_limit(spec.center)
    if limit is not None and spec.radius < limit:
        return witness_certificate(spec.center, X, spec.radius, res.witness)
    return MembershipCertificate(EXACT, res.value, witness=res.witness)


# --- spheres around the one-point space ------------------------------------

def path_delta1(A: FiniteMetricSpace, B: FiniteMetricSpace, r,
                samples: int = 33) -> SampledCurve:
    """Curve from A to B inside the sphere of radius ``r`` around a point.

    Each sample is a geodesic point rescaled back to diameter ``2r``.
    """
    r = to_scalar(r)
    sphere = SphereSpec(delta1(), r)
    for name, X in (("A", A), ("B", B)):
        if diameter(X) != 2 * r:
            raise NotOnSphere(f"{name} has diameter {diameter(X)}, expected {2 * r}")
    value, R = geodesic_witness(A, B)
    pts = []
    for t in grid(samples):
        g = geodesic_point(A, B, R, t, check_optimal=False)
        dg = diameter(g)
        if not dg >= r:
            raise VerificationError(f"geodesic diameter {dg} dropped below r at t={t}")
        space = scale(g, 2 * r / dg)
        pts.append(CurveSample(t, space, MembershipCertificate(EXACT, r)))
    # Scale factors stay in [2/3, 2] and diameters move at rate <= 2 gh(A, B),
    # which together give the factor 4.
    return SampledCurve("delta1-sphere", tuple(pts), lipschitz=4 * value,
                        sphere=sphere, notes={"gh": value})


# --- spheres of large radius ------------------------------------------------

class _Evaluator:
    """Memoized ``F(t) = d_GH(G, t C)``."""

    def __init__(self, G, C):
        self.G, self.C = G, C
        self.cache = {}

    def __call__(self, t: Fraction) -> Fraction:
        if t not in self.cache:
            self.cache[t] = gh_value(self.G, scale(self.C, t))
        return self.cache[t]


def _solve(F, r, tol, lo=Fraction(1), hi=Fraction(3)):
    """Root of ``F(t) = r`` in a bracket with ``F(lo) <= r <= F(hi)``.

    Bisection with an exact secant probe at each step: F is piecewise linear
    in t, so the probe lands on the root once the bracket sits in one piece.
    The bracket invariant only relies on continuity, not monotonicity.
    Returns ``(t, F(t), (lo, hi))`` with ``|F(t) - r| <= tol``.
    """
    f_lo, f_hi = F(lo), F(hi)
    while True:
        for t, f in ((lo, f_lo), (hi, f_hi)):
            if abs(f - r) <= tol:
                return t, f, (lo, hi)
        probes = []
        sec = lo + (r - f_lo) * (hi - lo) / (f_hi - f_lo)
        if lo < sec < hi and sec.denominator <= _SECANT_DENOMINATOR_LIMIT:
            probes.append(sec)
        probes.append(None)
        for t in probes:
            if t is None:
                t = (lo + hi) / 2
            f = F(t)
            if f == r:
                return t, f, (lo, hi)
            if f < r:
                lo, f_lo = t, f
            else:
                hi, f_hi = t, f


def _smallest_root(F, r, tol, steps: int = 64):
    """Grid scan of [1, 3] for the first sign change, then bisection."""
    prev_t, prev_f = Fraction(1), F(Fraction(1))
    if prev_f == r:
        return prev_t, prev_f, (prev_t, prev_t)
    for k in range(1, steps + 1):
        t = 1 + Fraction(2 * k, steps)
        f = F(t)
        if (prev_f - r) * (f - r) <= 0:
            return _solve(F, r, tol, prev_t, t)
        prev_t, prev_f = t, f
    raise VerificationError("no root found by grid scan")


def path_large_sphere(G: FiniteMetricSpace, A: FiniteMetricSpace, B: FiniteMetricSpace,
                      r, samples: int = 33, tol=DEFAULT_TOL) -> SampledCurve:
    """Curve from A to B on the sphere of radius ``r > diam G`` around G.

    A and B are normalized to diameter ``r``, joined on the sphere of radius
    ``r/2`` around a point, and every intermediate sample ``C`` is rescaled by
    the root ``t`` of ``d_GH(G, tC) = r`` in ``[1, 3]``.
    """
    r, tol = to_scalar(r), to_scalar(tol)
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    dG = diameter(G)
    if not r > dG:
        raise RadiusTooSmall(f"r = {r} must exceed diam G = {dG}")
    for name, X in (("A", A), ("B", B)):
        value = gh_value(G, X)
        if value != r:
            raise NotOnSphere(f"{name} is at distance {value} from G, not {r}")
    A1, B1 = scale(A, r / diameter(A)), scale(B, r / diameter(B))
    gamma = path_delta1(A1, B1, r / 2, samples)
    ends = {0: diameter(A) / r, len(gamma) - 1: diameter(B) / r}

    pts, brackets, hypothesis, bound_ok = [], [], [], []
    for idx, s in enumerate(gamma.samples):
        C = s.space
        F = _Evaluator(G, C)
        f1, f3 = F(Fraction(1)), F(Fraction(3))
        brackets.append((f1, f3))
        if not f1 <= r <= f3:
            raise BracketFailed(idx, f1, f3, r)
        hyp = 2 * f1 > dG
        hypothesis.append(hyp)
        if hyp:
            bound_ok.append(all(F(lam) >= f1 + (lam - 1) / 4 * dG for lam in LAMBDA_GRID))
        else:
            bound_ok.append(None)
        flags = () if hyp else ("non-monotone",)
        if idx in ends:
            t_star = ends[idx]
            f_star, bracket = F(t_star), (t_star, t_star)
            if f_star != r:
                raise VerificationError(f"endpoint {idx} is not on the sphere")
        elif hyp:
            t_star, f_star, bracket = _solve(F, r, tol)
        else:
            warnings.warn(f"sample {idx}: monotonicity hypothesis fails, "
                          "taking the smallest root", MonotonicityWarning, stacklevel=2)
            t_star, f_star, bracket = _smallest_root(F, r, tol)
        space = scale(C, t_star)
        cert = MembershipCertificate(BRACKET, f_star, tolerance=tol, scale=t_star,
                                     bracket=bracket, flags=flags)
        pts.append(CurveSample(s.t, space, cert, flags))

    pts[0] = replace(pts[0], space=A)
    pts[-1] = replace(pts[-1], space=B)
    # F grows at rate >= rate_t per unit of scale and moves by <= 3 L_gamma per
    # unit of s, which bounds how fast the chosen scale can drift.
    rate_t = dG / 12 if dG > 0 else r / 2
    lip = 3 * gamma.lipschitz + 3 * gamma.lipschitz * r / (2 * rate_t)
    slack = r * tol / rate_t
    return SampledCurve("large-sphere", tuple(pts), lipschitz=lip, slack=slack,
                        sphere=SphereSpec(G, r),
                        notes={"brackets": brackets, "hypothesis": hypothesis,
                               "scale_bound": bound_ok, "tolerance": tol})


# --- spheres of small radius ------------------------------------------------

def _small_sphere_setup(M, r):
    try:
        ch = characteristics(M)
    except TooSmall as exc:
        raise NotGeneric(str(exc)) from exc
    if not ch.generic:
        raise NotGeneric(f"center is not generic (s={ch.s}, t={ch.t}, e={ch.e})")
    limit = min(ch.s / 4, ch.e / 4, ch.t / 6)
    if not 0 < r < limit:
        raise RadiusOutOfRange(f"r = {r} is outside (0, {limit})")


def _witness(M, space, r, R):
    try:
        return witness_certificate(M, space, r, R)
    except PreconditionError as exc:
        raise VerificationError(f"sample lost its certificate: {exc}") from exc


def anchor(M: FiniteMetricSpace, r, direction: str) -> FiniteMetricSpace:
    from .curves import sign_space
    sign = 1 if direction == "plus" else -1
    return sign_space(M, [sign] * len(M.pairs()), r)


def path_small_sphere(M: FiniteMetricSpace, X: FiniteMetricSpace, r,
                      samples: int = 33) -> SampledCurve:
    """Curve from X to ``M+`` or ``M-`` on the sphere of radius ``r`` around M."""
    r = to_scalar(r)
    _small_sphere_setup(M, r)
    value = gh_value(M, X)
    if value != r:
        raise NotOnSphere(f"X is at distance {value} from M, not {r}")
    R = unique_optimal(M, X)
    P = partition_from(R, M, X)
    terms = distortion_decomposed(R, M, X)
    direction = "minus" if terms.deficit == 2 * r else "plus"
    sphere = SphereSpec(M, r)

    rho_pts = []
    for t in grid(samples):
        space = rho_deformation(X, P, r, direction, t)
        rho_pts.append(CurveSample(t, space, _witness(M, space, r, R)))
    rho = SampledCurve(f"rho-{direction}", tuple(rho_pts), lipschitz=2 * r, sphere=sphere)

    X1 = rho.end
    P1 = P.with_space(X1)
    block_diam = terms.diam
    nu_pts = []
    ident = Correspondence.identity(len(M))
    for t in grid(samples):
        space = nu_deformation(X1, P1, t)
        witness = ident if t == 1 else R
        nu_pts.append(CurveSample(t, space, _witness(M, space, r, witness)))
    nu = SampledCurve("nu", tuple(nu_pts), lipschitz=block_diam / 2, sphere=sphere)
    return concatenate([rho, nu], f"small-sphere-{direction}", sphere=sphere,
                       notes={"direction": direction, "terms": tuple(terms)})


def mixed_signs(n: int) -> list:
    """Plus on the first pair, minus elsewhere."""
    count = n * (n - 1) // 2
    return [1] + [-1] * (count - 1)


def anchor_bridge(M: FiniteMetricSpace, r, start: str, end: str,
                  samples: int = 33) -> list:
    """Perturbation segments from anchor ``start`` to anchor ``end`` via ``M+-``."""
    if start == end:
        return []
    n = len(M)
    mag = 2 * r
    plus = PerturbationTable.from_signs(n, [1] * len(M.pairs()), mag)
    minus = PerturbationTable.from_signs(n, [-1] * len(M.pairs()), mag)
    mixed = PerturbationTable.from_signs(n, mixed_signs(n), mag)
    chain = [plus, mixed, minus] if start == "plus" else [minus, mixed, plus]
    return [perturbation_segment_curve(M, a, b, samples) for a, b in zip(chain, chain[1:])]


def connect_on_small_sphere(M: FiniteMetricSpace, X: FiniteMetricSpace,
                            Y: FiniteMetricSpace, r, samples: int = 33) -> SampledCurve:
    """Curve from X to Y on the small sphere, routed through the anchors."""
    r = to_scalar(r)
    cx = path_small_sphere(M, X, r, samples)
    cy = path_small_sphere(M, Y, r, samples)
    dx, dy = cx.notes["direction"], cy.notes["direction"]
    parts = [cx, *anchor_bridge(M, r, dx, dy, samples), reverse(cy)]
    sphere = SphereSpec(M, r)
    return concatenate(parts, "small-sphere-connect", sphere=sphere,
                       notes={"anchors": (dx, dy), "segments": len(parts)})
