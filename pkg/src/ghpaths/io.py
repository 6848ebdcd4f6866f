"""JSON file formats for spaces and curves.

Scalars are written as canonical fraction strings (``"17/5"``, ``"3"``);
integers, decimal strings and decimal literals are accepted on input and
converted exactly.
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction

from . import __version__
from .certificates import MembershipCertificate, SphereSpec
from .correspondences import Correspondence
from .curves import CurveSample, SampledCurve
from .errors import PreconditionError
from .metric import FiniteMetricSpace, to_scalar, validate_metric


def scalar_out(v: Fraction) -> str:
    return str(Fraction(v))


def _scalar_in(v):
    if isinstance(v, float):
        raise PreconditionError(f"inexact float {v!r} in input")
    return to_scalar(v)


def loads(text: str):
    return json.loads(text, parse_float=Decimal)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def space_to_json(X: FiniteMetricSpace, name: str = "", recipe: dict = None) -> dict:
    out = {"name": name, "labels": list(X.labels),
           "distances": [[scalar_out(v) for v in row] for row in X.d]}
    if recipe is not None:
        out["recipe"] = recipe
    return out


def space_from_json(obj: dict) -> FiniteMetricSpace:
    try:
        labels, table = obj["labels"], obj["distances"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"space needs 'labels' and 'distances': {exc}") from exc
    return validate_metric(labels, [[_scalar_in(v) for v in row] for row in table])


def read_space(path: str) -> FiniteMetricSpace:
    with open(path, encoding="utf-8") as fh:
        return space_from_json(loads(fh.read()))


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _opt(v):
    return None if v is None else scalar_out(v)


def certificate_to_json(cert: MembershipCertificate, center, space) -> dict:
    out = {"kind": cert.kind, "value": scalar_out(cert.value),
           "tolerance": _opt(cert.tolerance), "scale": _opt(cert.scale),
           "bracket": None if cert.bracket is None else [scalar_out(b) for b in cert.bracket],
           "flags": list(cert.flags), "witness": None}
    if cert.witness is not None:
        out["witness"] = [[center.labels[i], space.labels[j]]
                          for i, j in cert.witness.sorted_pairs()]
    return out


def certificate_from_json(obj: dict, center, space) -> MembershipCertificate:
    witness = None
    if obj.get("witness") is not None:
        try:
            pairs = [(center.index(a), space.index(b)) for a, b in obj["witness"]]
            witness = Correspondence.of(len(center), len(space), pairs)
        except (ValueError, PreconditionError):
            witness = None

    def opt(key):
        return None if obj.get(key) is None else _scalar_in(obj[key])

    bracket = obj.get("bracket")
    return MembershipCertificate(
        kind=obj["kind"], value=_scalar_in(obj["value"]), witness=witness,
        tolerance=opt("tolerance"), scale=opt("scale"),
        bracket=None if bracket is None else tuple(_scalar_in(b) for b in bracket),
        flags=tuple(obj.get("flags", ())))


def curve_to_json(curve: SampledCurve) -> dict:
    center = curve.sphere.center if curve.sphere else None
    samples = []
    for s in curve.samples:
        entry = {"t": scalar_out(s.t), "space": space_to_json(s.space),
                 "flags": list(s.flags), "certificate": None}
        if s.certificate is not None:
            entry["certificate"] = certificate_to_json(s.certificate, center, s.space)
        samples.append(entry)
    sphere = None
    if curve.sphere is not None:
        sphere = {"center": space_to_json(curve.sphere.center),
                  "radius": scalar_out(curve.sphere.radius)}
    return {"construction": curve.construction, "sphere": sphere,
            "lipschitz": scalar_out(curve.lipschitz), "slack": scalar_out(curve.slack),
            "samples": samples, "tool_version": __version__}


def curve_from_json(obj: dict) -> SampledCurve:
    """Rebuild a curve; sample spaces are taken as written, so that a
    tampered table surfaces as a verification failure rather than a load error."""
    sphere = None
    if obj.get("sphere") is not None:
        sphere = SphereSpec(space_from_json(obj["sphere"]["center"]),
                            _scalar_in(obj["sphere"]["radius"]))
    samples = []
    for entry in obj["samples"]:
        sp = entry["space"]
        space = FiniteMetricSpace(tuple(str(lab) for lab in sp["labels"]),
                                  tuple(tuple(_scalar_in(v) for v in row)
                                        for row in sp["distances"]))
        cert = None
        if entry.get("certificate") is not None:
            cert = certificate_from_json(entry["certificate"],
                                         sphere.center if sphere else None, space)
        samples.append(CurveSample(_scalar_in(entry["t"]), space, cert,
                                   tuple(entry.get("flags", ()))))
    return SampledCurve(obj["construction"], tuple(samples),
                        lipschitz=_scalar_in(obj["lipschitz"]),
                        slack=_scalar_in(obj.get("slack", "0")), sphere=sphere)
