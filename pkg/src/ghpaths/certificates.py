"""Sphere membership certificates and their independent re-checking."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .correspondences import (Correspondence, distortion, gh_value,
                              is_correspondence, within_budget)
from .errors import BudgetExceeded, PreconditionError, TooSmall
from .metric import FiniteMetricSpace, characteristics, to_scalar

EXACT = "exact-exhaustive"
WITNESS = "unique-witness"
BRACKET = "bisection-bracket"
KINDS = (EXACT, WITNESS, BRACKET)


@dataclass(frozen=True)
class SphereSpec:
    center: FiniteMetricSpace
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", to_scalar(self.radius))
        if self.radius <= 0:
            raise PreconditionError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class MembershipCertificate:
    """Evidence that a space lies on a sphere.

    ``value`` is the exact GH distance established by the certificate. For
    the bracket kind it is the exact distance at the emitted scale factor
    ``scale``, within ``tolerance`` of the radius.
    """

    kind: str
    value: Fraction
    witness: Optional[Correspondence] = None
    tolerance: Optional[Fraction] = None
    scale: Optional[Fraction] = None
    bracket: Optional[tuple] = None
    flags: tuple = ()


@dataclass(frozen=True)
class NotMember:
    value: Fraction

    def __bool__(self) -> bool:
        return False


def witness_radius_limit(center: FiniteMetricSpace) -> Optional[Fraction]:
    """``min(s/4, e/4)`` for a generic center, else ``None``."""
    try:
        ch = characteristics(center)
    except (TooSmall, BudgetExceeded):
        return None
    if not ch.generic:
        return None
    return min(ch.s / 4, ch.e / 4)


def witness_certificate(center, space, radius, R: Correspondence) -> MembershipCertificate:
    """Certificate from a low-distortion correspondence around a generic center.

    A correspondence of distortion ``2r`` with ``r < min(s/4, e/4)`` is the
    unique one below that threshold, hence optimal, hence ``d_GH = r``.
    """
    radius = to_scalar(radius)
    ok, reason = _check_witness(center, space, radius, R)
    if not ok:
        raise PreconditionError(reason)
    return MembershipCertificate(WITNESS, radius, witness=R)


def _check_witness(center, space, radius, R):
    if R is None:
        return False, "missing witness"
    limit = witness_radius_limit(center)
    if limit is None:
        return False, "center is not generic"
    if not radius < limit:
        return False, f"radius {radius} is not below min(s/4, e/4) = {limit}"
    if R.m != len(center) or R.n != len(space) or not is_correspondence(R, center, space):
        return False, "witness is not a correspondence between center and sample"
    dis = distortion(R, center, space)
    if dis != 2 * radius:
        return False, f"witness distortion {dis} != 2r = {2 * radius}"
    return True, ""


def check_certificate(spec: SphereSpec, space: FiniteMetricSpace,
                      cert: MembershipCertificate, recheck_gh: bool = False):
    """Return ``(ok, reason)``.

    Exact and bracket certificates are always re-derived from a fresh GH
    computation; witness certificates are checked from the witness alone,
    plus a GH recomputation when ``recheck_gh`` is set.
    """
    r = spec.radius
    if cert.kind not in KINDS:
        return False, f"unknown certificate kind {cert.kind!r}"
    if cert.kind == WITNESS:
        ok, reason = _check_witness(spec.center, space, r, cert.witness)
        if not ok:
            return ok, reason
        if cert.value != r:
            return False, f"certificate value {cert.value} != radius {r}"
        if not recheck_gh:
            return True, ""
    if not within_budget(len(spec.center), len(space)):
        return False, "sample too large to recompute the GH distance"
    value = gh_value(spec.center, space)
    if cert.kind == BRACKET:
        tol = cert.tolerance
        if tol is None or tol <= 0:
            return False, "bracket certificate without a positive tolerance"
        if value != cert.value:
            return False, f"recomputed distance {value} != recorded {cert.value}"
        if abs(value - r) > tol:
            return False, f"|d_GH - r| = {abs(value - r)} exceeds tolerance {tol}"
        return True, ""
    if value != r:
        return False, f"recomputed distance {value} != radius {r}"
    if cert.value != r:
        return False, f"certificate value {cert.value} != radius {r}"
    return True, ""
