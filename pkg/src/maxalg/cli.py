"""``maxalg`` command-line interface.

Exit codes: 0 success, 1 verification failed, 2 bad input or usage,
3 reducible matrix, 4 circuit cap exceeded, 5 internal inconsistency.
"""

import argparse
import sys

from . import __version__
from .config import DEFAULT_CIRCUIT_CAP, get_eps
from .errors import (
    CircuitCapError,
    InconsistencyError,
    MatrixFileError,
    MaxAlgError,
    ReducibleMatrixError,
)
from .graphkit import critical_structure, max_cycle_geometric_mean, require_irreducible
from .matrixfile import fmt, format_dense, read_matrix
from .maxcore import MaxVector, kleene_star
from .oracle import verify_pipeline
from .randgen import random_matrix
from .result import (
    ResultDocument,
    basis_entries,
    critical_fields,
    rnd,
    sunflower_entry,
    verification_entry,
)
from .sunflower import EigenBasis, all_sunflowers, deterministic_sunflowers, normalize, principal_basis

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_REDUCIBLE = 3
EXIT_CAP = 4
EXIT_INCONSISTENT = 5


def _circuit_text(c):
    return " ".join(str(v) for v in c.one_based())


def _vector_text(v):
    return " ".join(fmt(x) for x in v.values())


def _corrupt(basis):
    # test hook: perturb the first basis vector so it is no longer an eigenvector
    v = basis.vectors[0].log.copy()
    v[-1] -= 0.5
    vectors = (MaxVector(v),) + basis.vectors[1:]
    return EigenBasis(basis.mu, vectors, basis.provenance, basis.rejected)


def cmd_mu(args, a, out):
    require_irreducible(a)
    mu = max_cycle_geometric_mean(a)
    if args.json:
        out.write(ResultDocument(mu=rnd(mu)).to_json())
    else:
        out.write(fmt(mu) + "\n")
    return EXIT_OK


def cmd_basis(args, a, out):
    basis = principal_basis(a, args.eps, args.cap, all_variants=args.all_sunflowers)
    crit = critical_structure(a, args.eps)
    if args.json:
        doc = critical_fields(ResultDocument(), crit)
        doc.basis = basis_entries(basis)
        out.write(doc.to_json())
        return EXIT_OK
    out.write(f"mu = {fmt(basis.mu)}\n")
    out.write(f"r = {len(basis)}\n")
    for k, (v, s) in enumerate(zip(basis.vectors, basis.provenance), start=1):
        out.write(f"x{k} [circuit {_circuit_text(s.source_circuit)}]: {_vector_text(v)}\n")
    return EXIT_OK


def cmd_sunflowers(args, a, out):
    if args.all_sunflowers:
        crit, families = all_sunflowers(a, args.eps, args.cap)
    else:
        crit, single = deterministic_sunflowers(a, args.eps, args.cap)
        families = [[s] for s in single]
    if args.json:
        doc = critical_fields(ResultDocument(), crit)
        doc.sunflowers = [sunflower_entry(s) for fam in families for s in fam]
        out.write(doc.to_json())
        return EXIT_OK
    out.write(f"mu = {fmt(crit.mu)}\n")
    for fam in families:
        for k, s in enumerate(fam, start=1):
            out.write(f"sunflower [circuit {_circuit_text(s.source_circuit)}] variant {k}\n")
            for i, j, v in s.triplets():
                out.write(f"  {i} {j} {fmt(v)}\n")
            for step in s.fill_trace:
                tag = " (fallback)" if step.fallback else ""
                rows = " ".join(str(v + 1) for v in step.rows) or "-"
                out.write(f"  rows {rows} <- circuit {_circuit_text(step.circuit)}{tag}\n")
    return EXIT_OK


def cmd_kleene(args, a, out):
    require_irreducible(a)
    mu = max_cycle_geometric_mean(a)
    star = kleene_star(normalize(a, mu), mu=1.0, eps=args.eps)
    if args.json:
        doc = ResultDocument(mu=rnd(mu), kleene_star=[[rnd(x) for x in row] for row in star.values()])
        out.write(doc.to_json())
        return EXIT_OK
    for row in star.values():
        out.write(" ".join(fmt(x) for x in row) + "\n")
    return EXIT_OK


def cmd_verify(args, a, out):
    hook = _corrupt if args.corrupt_eigenvector else None
    report = verify_pipeline(a, args.eps, args.cap, basis_hook=hook)
    if args.json:
        out.write(ResultDocument(verification=verification_entry(report)).to_json())
    else:
        for c in report.checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}\n")
            if not c.passed:
                for key, val in verification_entry(report)["checks"][report.checks.index(c)]["detail"].items():
                    out.write(f"     {key}: {val}\n")
        out.write("PASS\n" if report.passed else "FAIL\n")
    if not report.passed:
        first = report.first_failure
        if first.name == "irreducible":
            comps = [[v - 1 for v in c] for c in first.detail["components"]]
            print(f"maxalg: {ReducibleMatrixError(comps)}", file=sys.stderr)
            return EXIT_REDUCIBLE
        print(f"maxalg: verification failed at check '{first.name}'", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_gen(args, out):
    try:
        a = random_matrix(args.n, args.density, args.seed, irreducible=args.irreducible)
    except ValueError as exc:
        print(f"maxalg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    tag = " --irreducible" if args.irreducible else ""
    text = format_dense(a, comment=f"maxalg gen {args.n} {args.density} {args.seed}{tag}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {
    "mu": cmd_mu,
    "basis": cmd_basis,
    "sunflowers": cmd_sunflowers,
    "kleene": cmd_kleene,
    "verify": cmd_verify,
}


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON result document")
    common.add_argument("--cap", type=_positive_int, default=DEFAULT_CIRCUIT_CAP,
                        help="maximum number of circuits to enumerate (default %(default)s)")
    common.add_argument("--eps", type=float, default=None,
                        help="log-domain equality tolerance (default $MAXALG_EPS or 1e-9)")
    common.add_argument("--all-sunflowers", action="store_true",
                        help="use every tie-break variant of the sunflower construction")
    parser = argparse.ArgumentParser(prog="maxalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"maxalg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("mu", "print the maximum circuit geometric mean"),
        ("basis", "print a scaled basis of the principal max-eigencone"),
        ("sunflowers", "print the mutation-sunflower matrices"),
        ("kleene", "print the Kleene star of A / mu(A)"),
        ("verify", "cross-check the pipeline against the oracles"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="matrix file (DENSE or COORD)")
        if name == "verify":
            p.add_argument("--corrupt-eigenvector", action="store_true", help=argparse.SUPPRESS)
    g = sub.add_parser("gen", help="write a seeded random matrix file")
    g.add_argument("n", type=int)
    g.add_argument("density", type=float)
    g.add_argument("seed", type=int)
    g.add_argument("--irreducible", action="store_true",
                   help="superimpose a random Hamiltonian cycle")
    g.add_argument("-o", "--output", help="write to this path instead of stdout")
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "gen":
        return cmd_gen(args, out)
    try:
        try:
            args.eps = get_eps(args.eps)
        except ValueError as exc:
            print(f"maxalg: {exc}", file=sys.stderr)
            return EXIT_USAGE
        a = read_matrix(args.file)
        return COMMANDS[args.command](args, a, out)
    except (MatrixFileError, OSError) as exc:
        print(f"maxalg: {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReducibleMatrixError as exc:
        print(f"maxalg: {exc}", file=sys.stderr)
        return EXIT_REDUCIBLE
    except CircuitCapError as exc:
        print(f"maxalg: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InconsistencyError as exc:
        print(f"maxalg: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except MaxAlgError as exc:
        print(f"maxalg: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
