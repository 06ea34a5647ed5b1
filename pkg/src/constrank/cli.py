"""Command-line front end.

Exit codes: 0 success or certified, 1 usage error, 2 refuted, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import serialize as ser
from .aci import acify, hz_family_dim, is_aci
from .acceptance import run_all
from .certifier import (certify_constant_rank, certify_constant_signature, falsify_random_overdim,
                        maximality_probe)
from .errors import ConstRankError
from .formulas import a_rect, a_sym, formula
from .lemmas import lemma1_symbolic, lemma2_root_exists, lemma3_bordered_det
from .matrix import PMatrix, QMatrix
from .poly import format_rational, parse_rational
from .search import random_rational
from .subspace import (AffineSubspace, construct_rect_witness, construct_signature_witness,
                       construct_sym_witness)

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
VERDICT_EXIT = {"certified": EXIT_OK, "refuted": EXIT_REFUTED, "inconclusive": EXIT_INCONCLUSIVE}
WITNESSES = ("sym", "rect", "sig")


class UsageError(Exception):
    pass


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required here")


def _witness(args) -> AffineSubspace:
    if args.kind == "sym":
        _need(args, "n", "r")
        return construct_sym_witness(args.n, args.r)
    if args.kind == "rect":
        _need(args, "n", "r")
        return construct_rect_witness(args.n if args.m is None else args.m, args.n, args.r)
    _need(args, "n", "p", "nu")
    return construct_signature_witness(args.n, args.p, args.nu)


def _read_json(args):
    if args.input and args.input != "-":
        with open(args.input) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}") from None


def _family(args) -> AffineSubspace | PMatrix:
    if getattr(args, "kind", None):
        return _witness(args)
    return ser.load_family(_read_json(args))


def _default_rank(args) -> int:
    if args.r is not None:
        return args.r
    if getattr(args, "kind", None) == "sig":
        return args.p + args.nu
    raise UsageError("--r is required")


def _table(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        if all(not isinstance(x, (dict, list)) for x in doc):
            lines.append(pad + "  ".join(str(x) for x in doc))
        else:
            for x in doc:
                lines.append(_table(x, indent + 1) if isinstance(x, dict) else _table(x, indent))
                if isinstance(x, dict):
                    lines.append("")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(line for line in lines if line is not None).rstrip("\n")


def _matrix_table(M) -> str:
    cells = [[str(x) if not isinstance(x, Fraction) else format_rational(x) for x in row] for row in M.entries]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _emit(args, doc, table: str | None = None):
    fmt = args.format or ("table" if doc is None else "json")
    text = ser.dumps(doc) if fmt == "json" else (table if table is not None else _table(doc)) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------


def cmd_construct(args) -> int:
    S = _witness(args)
    table = f"{S.m}x{S.n} {'symmetric ' if S.symmetric else ''}affine subspace of dimension {S.dim}\n"
    table += _matrix_table(S.to_parametric())
    _emit(args, ser.subspace_to_json(S), table)
    return EXIT_OK


def cmd_certify(args) -> int:
    fam = _family(args)
    if args.mode == "randomized" and args.seed is None:
        raise UsageError("--seed is required for randomized mode")
    seed = 0 if args.seed is None else args.seed
    if args.p is not None or args.nu is not None:
        _need(args, "p", "nu")
        if not isinstance(fam, AffineSubspace):
            fam = AffineSubspace.from_parametric(fam)
        rep = certify_constant_signature(fam, args.p, args.nu, trials=args.trials or 200, seed=seed)
        _emit(args, rep.to_json())
        return VERDICT_EXIT[rep.verdict]
    r = _default_rank(args)
    cert = certify_constant_rank(fam, r, args.mode, seed=seed, trials=args.trials or 100)
    _emit(args, ser.certificate_to_json(cert))
    return VERDICT_EXIT[cert.verdict]


def cmd_probe(args) -> int:
    seed = 0 if args.seed is None else args.seed
    if args.kind == "random":
        _need(args, "n", "r")
        if args.seed is None:
            raise UsageError("--seed is required for random subspaces")
        m = args.n if args.m is None else args.m
        dim = args.dim if args.dim is not None else (a_sym(args.n, args.r) if args.symmetric else a_rect(m, args.n, args.r)) + 1
        rep = falsify_random_overdim(m, args.n, args.r, args.symmetric, dim, seed, trials=args.trials or 100)
        _emit(args, rep.to_json())
        return EXIT_OK if rep.falsified == rep.trials else EXIT_INCONCLUSIVE
    fam = _family(args)
    if not isinstance(fam, AffineSubspace):
        fam = AffineSubspace.from_parametric(fam)
    r = _default_rank(args)
    results = maximality_probe(fam, r, grid=args.grid or 2, seed=seed)
    _emit(args, {"r": r, "seed": seed, "directions": [x.to_json() for x in results]})
    return EXIT_OK if all(x.found or x.in_span for x in results) else EXIT_INCONCLUSIVE


def cmd_formula(args) -> int:
    names = {"a-sym": ("n", "r"), "a-rect": ("m", "n", "r"), "a-rect-alt": ("m", "n", "r"),
             "a-sig": ("n", "p", "nu"), "hz-dim": ("m", "n", "r", "k")}
    kind = args.kind.replace("_", "-")
    if kind not in names:
        raise UsageError(f"unknown formula {args.kind!r}; choose from {sorted(names)}")
    if "m" in names[kind] and args.m is None:
        args.m = args.n
    _need(args, *names[kind])
    params = {k: getattr(args, k) for k in names[kind]}
    value = formula(kind, **params)
    if args.format == "json":
        _emit(args, {"formula": kind, "params": params, "value": value})
    else:
        _emit(args, None, str(value))
    return EXIT_OK


def _lemma1(args) -> dict:
    m = args.m or 2
    n = args.n or 2
    rep = lemma1_symbolic(m, n)
    return {"lemma": "lemma1", "shape": [m, n], "block_square_identity": rep.block_square,
            "cauchy_binet": rep.cauchy_binet.holds, "minors": rep.cauchy_binet.minors,
            "block_determinant": str(rep.block_det)}


def _lemma2_one(A: QMatrix) -> dict:
    res = lemma2_root_exists(A)
    out = {"matrix": ser.qmatrix_to_json(A), "exists": res.exists, "polynomial": str(res.polynomial),
           "root_count": res.root_count}
    if res.interval:
        out["interval"] = [format_rational(x) for x in res.interval]
    if res.exact_root is not None:
        out["root"] = format_rational(res.exact_root)
    return out


def _random_sym(rng: random.Random, n: int) -> QMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = random_rational(rng)
    return QMatrix.from_rows(rows)


def _lemma2(args) -> dict:
    if args.input:
        return {"lemma": "lemma2", "results": [_lemma2_one(ser.qmatrix_from_json(_read_json(args)))]}
    if args.seed is None:
        raise UsageError("--seed is required for random inputs")
    rng = random.Random(args.seed)
    n = args.n or 3
    return {"lemma": "lemma2", "seed": args.seed,
            "results": [_lemma2_one(_random_sym(rng, n)) for _ in range(args.trials or 5)]}


def _lemma3_one(A: QMatrix, x) -> dict:
    return {"matrix": ser.qmatrix_to_json(A), "x": [format_rational(v) for v in x],
            "determinant": format_rational(lemma3_bordered_det(A, x))}


def _lemma3(args) -> dict:
    if args.input:
        doc = _read_json(args)
        x = [parse_rational(str(v)) for v in doc["x"]]
        return {"lemma": "lemma3", "results": [_lemma3_one(ser.qmatrix_from_json(doc["A"]), x)]}
    if args.seed is None:
        raise UsageError("--seed is required for random inputs")
    rng = random.Random(args.seed)
    n = args.n or 3
    results = []
    while len(results) < (args.trials or 5):
        A = _random_sym(rng, n)
        try:
            results.append(_lemma3_one(A, [random_rational(rng) for _ in range(n)]))
        except ConstRankError:
            continue
    return {"lemma": "lemma3", "seed": args.seed, "results": results}


def cmd_lemma(args) -> int:
    doc = {"lemma1": _lemma1, "lemma2": _lemma2, "lemma3": _lemma3}[args.which](args)
    _emit(args, doc)
    return EXIT_OK


def cmd_aci(args) -> int:
    if args.action == "dim":
        _need(args, "m", "n", "r", "k")
        value = hz_family_dim(args.m, args.n, args.r, args.k)
        if args.format == "json":
            _emit(args, {"m": args.m, "n": args.n, "r": args.r, "k": args.k, "value": value})
        else:
            _emit(args, None, str(value))
        return EXIT_OK
    fam = ser.load_family(_read_json(args))
    P = fam.to_parametric() if isinstance(fam, AffineSubspace) else fam
    if args.action == "check":
        rep = is_aci(P)
        _emit(args, rep.to_json())
        return EXIT_OK
    out = acify(P)
    _emit(args, ser.pmatrix_to_json(out), _matrix_table(out))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_all(lambda line: print(line, flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_USAGE


# --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    for name in ("n", "m", "r", "p", "nu", "k", "seed", "trials", "grid"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--mode", choices=("symbolic", "randomized", "structural"), default="symbolic")
    p.add_argument("--in", dest="input", metavar="PATH", help="input JSON (default: stdin)")
    p.add_argument("--out", dest="output", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "table"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="constrank", description="Constant-rank affine matrix subspaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a witness subspace as JSON")
    p.add_argument("kind", choices=WITNESSES)
    _common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="certify constant rank (or signature with --p/--nu)")
    p.add_argument("kind", nargs="?", choices=WITNESSES, help="named witness instead of JSON input")
    _common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("probe", help="look for rank breaks in every direction outside a subspace")
    p.add_argument("kind", nargs="?", choices=WITNESSES + ("random",))
    p.add_argument("--dim", type=int, help="dimension of random subspaces (default: maximum + 1)")
    p.add_argument("--symmetric", action="store_true", help="random symmetric subspaces")
    _common(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("formula", help="evaluate a closed-form dimension")
    p.add_argument("kind", help="a-sym | a-rect | a-rect-alt | a-sig | hz-dim")
    _common(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("lemma", help="check one of the auxiliary lemmas")
    p.add_argument("which", choices=("lemma1", "lemma2", "lemma3"))
    _common(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("aci", help="ACI predicate, acify transform, block family dimension")
    p.add_argument("action", choices=("check", "acify", "dim"))
    _common(p)
    p.set_defaults(func=cmd_aci)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ConstRankError, KeyError, ValueError) as exc:
        print(f"constrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
