"""Command-line surface: check, initial, free, verify, oracle.

Exit status contract: 0 success, 1 property violation (including budget
exhaustion while verifying), 2 non-convergence, 3 parse or usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import InputError, OrdalgError, ParseError, ResourceBudgetError
from .algebra import (
    PreAlgebra,
    enumerate_algebras,
    enumerate_morphisms,
    find_algebra_iso,
    first_violation,
)
from .catalog import EXAMPLE_NAMES, build_example
from .dsl import load_poset, load_signature, parse_algebra_file
from .free import free_algebra
from .initial import (
    NonConvergence,
    SaturationConfig,
    build_initial,
    check_generated,
    check_sup_rules,
)
from .serialize import hasse_dot, serialize_free, serialize_initial
from .signature import format_term


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {name} must be an integer, got {raw!r}")


def _config(args) -> SaturationConfig:
    return SaturationConfig(
        max_depth=args.depth,
        window=args.window,
        pair_budget=_env_int("ORDALG_PAIR_BUDGET", 10 ** 6),
        node_budget=_env_int("ORDALG_NODE_BUDGET", 10 ** 5),
        workers=args.workers,
    )


def _emit(doc: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)


def _emit_dot(dot_path: str | None, poset, labels=None) -> None:
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(hasse_dot(poset, labels))


def cmd_check(args) -> int:
    sig = load_signature(args.signature)
    print(f"signature ok: {len(sig.op_names)} operation(s), {len(sig.ineq_names)} inequality(ies)")
    if args.algebra is None:
        return 0
    with open(args.algebra, "r", encoding="utf-8") as fh:
        _, carrier, tables = parse_algebra_file(fh.read())
    try:
        algebra = PreAlgebra(sig, carrier, tables)
    except InputError as exc:
        print(f"FAIL: not a prealgebra: {exc}")
        return 1
    witness = first_violation(algebra, budget=_env_int("ORDALG_ASSIGNMENT_BUDGET", 10 ** 6))
    if witness is None:
        print(f"algebra ok: all {len(sig.ineq_names)} inequality(ies) valid "
              f"on the {len(carrier)}-element carrier")
        return 0
    name, rho = witness
    binding = ", ".join(f"{v}={rho[v]}" for v in sorted(rho)) or "(no variables)"
    print(f"FAIL: inequality {name!r} violated under {binding}")
    return 1


def cmd_initial(args) -> int:
    sig = load_signature(args.signature)
    built = build_initial(sig, _config(args))
    if isinstance(built, NonConvergence):
        print(built.describe())
        return 2
    if not check_sup_rules(built):
        print("FAIL: supremum rules violated in the built algebra")
        return 1
    if not check_generated(built):
        print("FAIL: built algebra has ungenerated elements")
        return 1
    if not len(built.algebra.carrier):
        print("note: empty initial algebra (the signature has no closed terms)")
    _emit(serialize_initial(built), args.out)
    _emit_dot(args.dot, built.algebra.carrier)
    return 0


def cmd_free(args) -> int:
    sig = load_signature(args.signature)
    generator = load_poset(args.poset)
    fr = free_algebra(sig, generator, _config(args))
    if isinstance(fr, NonConvergence):
        print(fr.describe())
        return 2
    if not check_sup_rules(fr.initial) or not check_generated(fr.initial):
        print("FAIL: built free algebra fails its property suite")
        return 1
    from .catalog import verify_free_adjunction

    spot = verify_free_adjunction(sig, generator, fr.initial, bound=2)
    if not spot.ok:
        for line in spot.lines:
            print(line)
        return 1
    _emit(serialize_free(fr), args.out)
    _emit_dot(args.dot, fr.algebra.carrier)
    return 0


def _load_checked_algebra(sig, path: str) -> PreAlgebra | None:
    with open(path, "r", encoding="utf-8") as fh:
        _, carrier, tables = parse_algebra_file(fh.read())
    try:
        algebra = PreAlgebra(sig, carrier, tables)
    except InputError as exc:
        print(f"FAIL: {path}: not a prealgebra: {exc}")
        return None
    witness = first_violation(algebra)
    if witness is not None:
        print(f"FAIL: {path}: inequality {witness[0]!r} is violated")
        return None
    return algebra


def cmd_verify(args) -> int:
    sig = load_signature(args.signature)
    algebra = _load_checked_algebra(sig, args.algebra)
    if algebra is None:
        return 1
    if args.against:
        other = _load_checked_algebra(sig, args.against)
        if other is None:
            return 1
        iso = find_algebra_iso(algebra, other)
        if iso is None:
            print("no isomorphism between the two algebras")
            return 1
        for e in algebra.carrier:
            print(f"iso {e} -> {iso[e]}")
        return 0
    ok = True
    count_lines = []
    try:
        for idx, target in enumerate(enumerate_algebras(sig, args.corpus_bound)):
            n = len(enumerate_morphisms(algebra, target))
            count_lines.append(f"target#{idx} (|carrier|={len(target.carrier)}): {n} morphism(s)")
            if n != 1:
                ok = False
    except ResourceBudgetError as exc:
        for line in count_lines:
            print(line)
        print(f"resource budget exhausted: {exc}")
        return 1
    for line in count_lines:
        print(line)
    print("initiality counts all 1" if ok else "FAIL: some morphism count differs from 1")
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    try:
        instance = build_example(args.example, args.args)
    except InputError as exc:
        print(f"usage error: {exc}")
        return 3
    built = build_initial(instance.signature, _config(args))
    if isinstance(built, NonConvergence):
        print(built.describe())
        return 2
    oracle = instance.oracle
    witness = first_violation(oracle)
    if witness is not None:  # pragma: no cover - oracles are algebras by construction
        raise OrdalgError(f"oracle for {instance.name} violates {witness[0]!r}")
    print(f"example {instance.name}")
    print(f"engine:  {len(built.algebra.carrier)} class(es)")
    print(f"oracle:  {len(oracle.carrier)} element(s)")
    iso = find_algebra_iso(built.algebra, oracle)
    if iso is None:
        print("COUNTEREXAMPLE: initial algebra and oracle are not isomorphic")
        return 1
    for e in built.algebra.carrier:
        print(f"match {format_term(built.repr[e], built.algebra.sig)} -> {iso[e]}")
    if args.verify:
        report = instance.verify(built, args.corpus_bound)
        for line in report.lines:
            print(line)
        if not report.ok:
            return 1
    _emit_dot(args.dot, built.algebra.carrier)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordalg",
        description="Initial and free algebras over finite posets by rule saturation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, corpus=False):
        p.add_argument("--depth", type=int, default=8, help="maximum saturation depth")
        p.add_argument("--window", type=int, default=2, help="stabilisation window")
        p.add_argument("--workers", type=int, default=1, help="parallel rule evaluation workers")
        p.add_argument("--out", default=None, help="write the structured document here")
        p.add_argument("--dot", default=None, help="write a Hasse diagram in DOT format here")
        if corpus:
            p.add_argument("--corpus-bound", type=int, default=3,
                           help="carrier size bound for enumerated targets")

    p = sub.add_parser("check", help="well-formedness of a signature, validity of an algebra")
    p.add_argument("signature")
    p.add_argument("algebra", nargs="?", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("initial", help="build and emit the initial algebra")
    p.add_argument("signature")
    common(p)
    p.set_defaults(func=cmd_initial)

    p = sub.add_parser("free", help="build the free algebra over a poset")
    p.add_argument("signature")
    p.add_argument("poset")
    common(p)
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("verify", help="morphism counts against an enumerated corpus")
    p.add_argument("signature")
    p.add_argument("algebra")
    p.add_argument("--against", default=None, help="second algebra file to compare up to isomorphism")
    p.add_argument("--corpus-bound", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="build a catalog example and compare with its oracle")
    p.add_argument("example", help=f"one of: {', '.join(EXAMPLE_NAMES)}")
    p.add_argument("args", nargs="*", help="instance arguments (poset specs, map specs)")
    p.add_argument("--verify", action="store_true", help="also run the universal property verifier")
    common(p, corpus=True)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 3
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return 3
    except ResourceBudgetError as exc:
        print(f"resource budget exhausted: {exc}", file=sys.stderr)
        return 1
    except (InputError, OrdalgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
