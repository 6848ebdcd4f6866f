"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 failed precondition,
4 failed verification, 5 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__, io
from .errors import (BudgetExceeded, MetricError, MonotonicityWarning,
                     PreconditionError, VerificationError)
from .correspondences import gh_exact
from .curves import DEFAULT_SAMPLES, verify_curve
from .generators import GeneratorRecipe
from .metric import (PERMUTATION_BUDGET, characteristics, diameter, to_scalar)
from .sphere_paths import (DEFAULT_TOL, connect_on_small_sphere, path_delta1,
                           path_large_sphere, path_small_sphere)

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4, 5


def _emit(text: str, out: str = None) -> None:
    if out:
        io.write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    X = io.read_space(args.path)
    print(f"ok: metric axioms hold on {len(X)} point(s)")
    if len(X) == 1:
        print("single-point space (Δ₁)")
    print(f"diam {diameter(X)}")
    if 3 <= len(X) <= PERMUTATION_BUDGET:
        ch = characteristics(X)
        print(f"s {ch.s}\nt {ch.t}\ne {ch.e}\ngeneric {str(ch.generic).lower()}")
    return EXIT_OK


def cmd_gh(args) -> int:
    X, Y = io.read_space(args.a), io.read_space(args.b)
    res = gh_exact(X, Y, mode=args.mode, want_all=args.all_optimal)

    def pairs(R):
        return " ".join(f"({X.labels[i]},{Y.labels[j]})" for i, j in R.sorted_pairs())

    print(res.value)
    print(f"witness {pairs(res.witness)}")
    if args.all_optimal:
        print(f"optimal {len(res.all_optimal)}")
        for R in res.all_optimal:
            print(f"  {pairs(R)}")
    return EXIT_OK


def cmd_sphere_path(args) -> int:
    r = to_scalar(args.radius)
    if args.kind == "delta1":
        curve = path_delta1(io.read_space(args.spaces[0]), io.read_space(args.spaces[1]),
                            r, args.samples)
    elif args.kind == "large":
        G, A, B = (io.read_space(p) for p in args.spaces)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MonotonicityWarning)
            curve = path_large_sphere(G, A, B, r, args.samples, to_scalar(args.tol))
    else:
        M = io.read_space(args.spaces[0])
        X = io.read_space(args.spaces[1])
        if len(args.spaces) == 3:
            curve = connect_on_small_sphere(M, X, io.read_space(args.spaces[2]), r,
                                            args.samples)
        else:
            curve = path_small_sphere(M, X, r, args.samples)
    report = verify_curve(curve, check_lipschitz=False)
    if not report.ok:
        for idx, reason in report.failures:
            print(f"sample {idx}: {reason}", file=sys.stderr)
        return EXIT_VERIFY
    _emit(io.dumps(io.curve_to_json(curve)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.path, encoding="utf-8") as fh:
        curve = io.curve_from_json(io.loads(fh.read()))
    report = verify_curve(curve, recheck_gh=args.recheck_gh)
    for idx, reason in report.failures:
        where = "curve" if idx is None else f"sample {idx}"
        print(f"FAIL {where}: {reason}")
    print(f"{'ok' if report.ok else 'failed'}: {len(curve)} samples, "
          f"{report.lipschitz_checked} Lipschitz gaps checked, "
          f"{report.lipschitz_skipped} skipped")
    return EXIT_OK if report.ok else EXIT_VERIFY


_GEN_KINDS = {"random": "distinct-random", "wellorder": "wellorder-graph",
              "geomprog": "geometric-progression", "extend": "one-point-extension",
              "sphere-point": "sphere-point"}


def cmd_gen(args) -> int:
    base = None
    if args.kind == "recipe":
        with open(args.recipe, encoding="utf-8") as fh:
            obj = io.loads(fh.read())
        recipe = GeneratorRecipe(obj["kind"], dict(obj.get("params", {})))
    else:
        keys = {"random": ("n", "seed", "eps"), "wellorder": ("n", "eps"),
                "geomprog": ("n", "q"), "extend": ("f",),
                "sphere-point": ("r", "mode", "seed")}[args.kind]
        params = {k: getattr(args, k) for k in keys}
        recipe = GeneratorRecipe(_GEN_KINDS[args.kind], params)
    if getattr(args, "base", None):
        base = io.read_space(args.base)
    X = recipe.build(base)
    _emit(io.dumps(io.space_to_json(X, name=args.name or recipe.kind,
                                    recipe=recipe.to_json())), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghpaths", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a space file and print its invariants")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("gh", help="exact GH distance between two space files")
    g.add_argument("a")
    g.add_argument("b")
    g.add_argument("--mode", choices=("exhaustive", "bnb"), default="exhaustive")
    g.add_argument("--all-optimal", action="store_true")
    g.set_defaults(func=cmd_gh)

    s = sub.add_parser("sphere-path", help="build a certified curve on a GH sphere")
    s.add_argument("kind", choices=("delta1", "large", "small"))
    s.add_argument("spaces", nargs="+",
                   help="delta1: A B; large: CENTER A B; small: CENTER X [Y]")
    s.add_argument("--radius", "-r", required=True)
    s.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    s.add_argument("--tol", default=str(DEFAULT_TOL))
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sphere_path)

    c = sub.add_parser("verify", help="re-check every sample of a curve file")
    c.add_argument("path")
    c.add_argument("--recheck-gh", action="store_true")
    c.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="generate a space file")
    gen.add_argument("kind", choices=(*_GEN_KINDS, "recipe"))
    gen.add_argument("base", nargs="?", help="base space (extend, sphere-point)")
    gen.add_argument("--n", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--eps")
    gen.add_argument("--q")
    gen.add_argument("--f")
    gen.add_argument("--r", "--radius", dest="r")
    gen.add_argument("--mode", choices=("split", "excess", "deficit"))
    gen.add_argument("--recipe", help="recipe JSON file (kind 'recipe')")
    gen.add_argument("--name")
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)
    return p


def _validate_sphere_args(args, parser):
    expected = {"delta1": (2,), "large": (3,), "small": (2, 3)}[args.kind]
    if len(args.spaces) not in expected:
        parser.error(f"sphere-path {args.kind} takes {' or '.join(map(str, expected))} spaces")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sphere-path":
        _validate_sphere_args(args, parser)
    try:
        return args.func(args)
    except MetricError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: unreadable input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
