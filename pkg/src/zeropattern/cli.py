"""Command-line front end.

Standard output carries only JSON or CSV; diagnostics go to standard error.
Exit status: 0 success / bound holds, 1 bound violated, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import extremal, motzkin, pattern, verify
from .core import ComplexMatrix
from .numradius import numerical_radius

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _pairs(v) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=np.complex128)]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _load(path: str) -> ComplexMatrix:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return ComplexMatrix.from_json(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from exc


def cmd_radius(args) -> int:
    res = numerical_radius(_load(args.matrix))
    _emit({
        "value": res.value,
        "theta_star": res.theta_star,
        "witness": _pairs(res.witness),
        "iterations": res.iterations,
    })
    return EXIT_OK


def cmd_omega(args) -> int:
    if args.tol < 0:
        raise UsageError("--tol must be nonnegative")
    G = pattern.extract_pattern(_load(args.matrix), args.tol)
    clique = pattern.max_clique(G)
    _emit({"omega": len(clique), "clique": clique})
    return EXIT_OK


def cmd_check(args) -> int:
    A = _load(args.matrix)
    try:
        rep = verify.check(args.bound, A, args.restarts, args.seed)
    except (verify.HypothesisError, motzkin.PatternMatrixError) as exc:
        raise UsageError(f"hypothesis not met for {args.bound}: {exc}") from exc
    _emit(rep.to_dict())
    return EXIT_OK if rep.holds else EXIT_VIOLATED


def _parse_complex_list(text: str) -> np.ndarray:
    try:
        return np.array([complex(tok.strip()) for tok in text.split(",")], dtype=np.complex128)
    except ValueError as exc:
        raise UsageError(f"bad complex list {text!r}") from exc


def cmd_extremal(args) -> int:
    try:
        if args.kind == "partite":
            A = extremal.turan_partite_filled(args.n, args.r)
        elif args.kind == "clique":
            A = extremal.clique_plus_isolated(args.n, args.r)
        else:
            if args.labels is None or args.x is None:
                raise UsageError("proposition needs --labels and --x")
            try:
                labels = [int(t) for t in args.labels.split(",")]
            except ValueError as exc:
                raise UsageError(f"bad --labels {args.labels!r}") from exc
            x = _parse_complex_list(args.x)
            norm = np.linalg.norm(x)
            if norm == 0:
                raise UsageError("--x must be nonzero")
            try:
                c = complex(args.c)
            except ValueError as exc:
                raise UsageError(f"bad --c {args.c!r}") from exc
            A = extremal.proposition_matrix(labels, x / norm, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = A.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ms(args) -> int:
    A = _load(args.matrix)
    try:
        res = motzkin.general_simplex_max(A, args.restarts, args.seed)
    except motzkin.PatternMatrixError as exc:
        raise UsageError(str(exc)) from exc
    _emit({
        "value": res.value,
        "argmax": [float(v) for v in res.argmax],
        "restarts_used": res.restarts_used,
        "converged": res.converged,
    })
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        spec = verify.EnsembleSpec(
            kind=args.ensemble,
            n=args.n,
            density=args.density,
            forced_omega=args.forced_omega,
            trials=args.trials,
            seed=args.seed,
        )
        result = verify.sweep(spec, args.bound, args.restarts, abort_on_violation=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    csv_text = verify.reports_to_csv(result.reports)
    if args.out:
        Path(args.out).write_text(csv_text)
        _emit(result.summary)
    else:
        sys.stdout.write(csv_text)
        print(json.dumps(result.summary), file=sys.stderr)
    bad = [r for r in result.reports if not r.holds]
    for rep in bad:
        A = verify.generate_matrix(spec, rep.trial)
        print(f"counterexample trial {rep.trial}: {A.to_json()}", file=sys.stderr)
    return EXIT_VIOLATED if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zeropattern", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("radius", help="numerical radius with a maximising unit vector")
    s.add_argument("matrix", help="matrix JSON file ('-' for stdin)")
    s.set_defaults(func=cmd_radius)

    s = sub.add_parser("omega", help="largest principal submatrix without off-diagonal zeros")
    s.add_argument("matrix")
    s.add_argument("--tol", type=float, default=0.0, help="entries with modulus <= tol count as zero")
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("check", help="evaluate one bound on a matrix")
    s.add_argument("matrix")
    s.add_argument("--bound", required=True, choices=verify.BOUND_IDS)
    s.add_argument("--restarts", type=int, default=motzkin.DEFAULT_RESTARTS)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("extremal", help="write an extremal matrix as JSON")
    s.add_argument("--kind", required=True, choices=("partite", "clique", "proposition"))
    s.add_argument("-n", type=int)
    s.add_argument("-r", type=int)
    s.add_argument("--labels", help="proposition: comma-separated class labels, 0 = null block")
    s.add_argument("--x", help="proposition: comma-separated complex coordinates (normalised)")
    s.add_argument("--c", default="1", help="proposition: nonzero complex scale, e.g. 2 or 1+1j")
    s.add_argument("--out", help="output file (default stdout)")
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("ms", help="maximise <Ax,x> over the simplex for a 0/1 matrix")
    s.add_argument("matrix")
    s.add_argument("--restarts", type=int, default=motzkin.DEFAULT_RESTARTS)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_ms)

    s = sub.add_parser("sweep", help="check a bound across a seeded random ensemble")
    s.add_argument("--ensemble", required=True, choices=verify.ENSEMBLE_KINDS)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--density", type=float, default=1.0)
    s.add_argument("--forced-omega", type=int)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--bound", required=True, choices=verify.BOUND_IDS)
    s.add_argument("--restarts", type=int, default=motzkin.DEFAULT_RESTARTS)
    s.add_argument("--out", help="CSV output file (default stdout)")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "extremal" and args.kind in ("partite", "clique") and (args.n is None or args.r is None):
        parser.error("partite and clique need -n and -r")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
