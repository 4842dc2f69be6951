"""Command-line driver.

    thomasdec decompose FILE [--format json|text|dot] [-o OUT]
    thomasdec lagrange FILE [--constraints] [--naive] [--format json|text|dot] [-o OUT]
    thomasdec check FILE ARTIFACT

Exit codes: 0 success, 1 parse error, 2 contract error (including a failed
``check``), 3 termination cap reached.
"""

import argparse
import sys

from ..algthomas import DEFAULT_CAP, alg_decompose, check_simple
from ..diffthomas import check_diff_simple, diff_decompose
from ..errors import ContractError, ThomasError
from ..lagrange import (determinant, euler_lagrange, extract_constraints, hessian,
                        naive_constraints)
from . import artifact, syntax
from .build import build


def _parser():
    ap = argparse.ArgumentParser(prog="thomasdec", description="Thomas decomposition of "
                                 "polynomial differential systems and Lagrangian constraint analysis.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help=".tdp source file")
        p.add_argument("--format", choices=("json", "text", "dot"), default="text")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="abort after this many engine steps (default %(default)s)")
        p.add_argument("--strict-params", action="store_true",
                       help="treat parameters as ordinary variables and split on them")
        p.add_argument("--no-factor", action="store_true",
                       help="do not split on factors of equations")

    d = sub.add_parser("decompose", help="Thomas decomposition of a system (or of a model's EL equations)")
    common(d)
    d.add_argument("--algebraic", action="store_true",
                   help="treat derivative symbols as independent algebraic variables")

    lg = sub.add_parser("lagrange", help="Euler-Lagrange equations, Hessian and constraints of a model")
    common(lg)
    lg.add_argument("--constraints", action="store_true",
                    help="decompose the EL equations and report constraints per system")
    lg.add_argument("--naive", action="store_true",
                    help="also run the rank/nullspace procedure on the Hessian")

    ck = sub.add_parser("check", help="re-verify the simple-system conditions of a stored artifact")
    ck.add_argument("file", help=".tdp source file the artifact was computed from")
    ck.add_argument("artifact", help="JSON artifact")
    return ap


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ContractError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flags(args):
    return {"generic": not args.strict_params, "factor": not args.no_factor, "cap": args.cap}


def _render(a, fmt):
    if fmt == "json":
        return artifact.dumps(a)
    if fmt == "dot":
        return artifact.render_dot(a)
    return artifact.render_text(a)


def cmd_decompose(args):
    prob = build(syntax.parse(_read(args.file)))
    system = prob.system if prob.system is not None else euler_lagrange(prob.model)
    f = _flags(args)
    run = alg_decompose if args.algebraic else diff_decompose
    D = run(system, generic=f["generic"], cap=f["cap"], factor=f["factor"])
    f["algebraic"] = args.algebraic
    a = artifact.Artifact.from_decomposition(D, source=args.file, flags=f)
    _emit(_render(a, args.format), args.output)
    return 0


def cmd_lagrange(args):
    prob = build(syntax.parse(_read(args.file)))
    if prob.model is None:
        raise ContractError("the file does not declare a lagrangian")
    M, r = prob.model, prob.ranking
    header = []
    if args.format == "text":
        header.append("Euler-Lagrange equations:")
        header += [f"  {r.format(e)} = 0" for e in euler_lagrange(M).equations]
        H = hessian(M)
        header.append("Hessian:")
        header += ["  [" + ", ".join(r.format(h) for h in row) + "]" for row in H]
        header.append(f"det H = {r.format(determinant(H))}")
    if args.naive and args.format == "text":
        N = naive_constraints(M)
        header.append("rank/nullspace procedure:")
        header += [f"  {r.format(c)} = 0" for c in N.constraints] or ["  no constraints"]
        for dv in N.divisors:
            header.append(f"  warning: divided by {r.format(dv)}, assumed nonzero")
    if not args.constraints:
        _emit("\n".join(header) + "\n" if header else "", args.output)
        return 0
    f = _flags(args)
    D = diff_decompose(euler_lagrange(M), generic=f["generic"], cap=f["cap"], factor=f["factor"])
    rep = extract_constraints(D, M)
    a = artifact.Artifact.from_decomposition(D, rep, source=args.file, flags=f)
    body = _render(a, args.format)
    if header:
        body = "\n".join(header) + "\n\n" + body
    _emit(body, args.output)
    return 0


def cmd_check(args):
    prob = build(syntax.parse(_read(args.file)))
    a = artifact.loads(_read(args.artifact))
    problems = []
    if a.ranking != prob.ranking:
        problems.append("artifact ranking differs from the source file's ranking")
    for k, S in enumerate(a.systems):
        found = check_diff_simple(S) if a.differential else check_simple(S)
        problems += [f"T{k + 1}: {msg}" for msg in found]
    for p in problems:
        print(p)
    if problems:
        print(f"check failed: {len(problems)} violation(s)", file=sys.stderr)
        return ContractError.exit_code
    print(f"ok: {len(a.systems)} simple system(s) verified")
    return 0


COMMANDS = {"decompose": cmd_decompose, "lagrange": cmd_lagrange, "check": cmd_check}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ThomasError as exc:
        print(f"{args.file}: error: {exc}", file=sys.stderr)
        return exc.exit_code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
