"""Ready-made constructions, each paired with an independent oracle.

Every entry builds a signature whose initial algebra realises a classical
poset construction, a directly-constructed oracle algebra for comparison,
and a verifier for the construction's universal property.  The oracles never
touch the saturation engine; agreement between the two routes is the main
evidence the engine is right (and, for the powerdomain, that the oracle's
convex-subset Egli-Milner carrier is the right guess).
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import InputError, OrdalgError
from .algebra import PreAlgebra, enumerate_algebras, enumerate_monotone_maps
from .free import ExtendedSignature, FreeAlgebraResult, extend_signature, forget_incl, extend_along_unit
from .initial import InitialAlgebra, check_initiality
from .poset import (
    FinPoset,
    MonotoneMap,
    chain,
    discrete,
    enumerate_posets,
    has_bottom,
    pair_id,
    posetal_reflection,
    product,
)
from .signature import Apply, Signature, Term, Var, signature


# -- signatures ---------------------------------------------------------------


def pointed_sig() -> Signature:
    """One nullary bottom constant, below everything."""
    bot = Apply("bot", (), "*")
    return signature(
        ops=[("bot", (), _unit())],
        ineqs=[("least", ("x",), bot, Var("x"))],
    )


def power_sig() -> Signature:
    """One binary union, commutative, associative and idempotent."""
    x, y, z = Var("x"), Var("y"), Var("z")

    def u(a: Term, b: Term) -> Term:
        return Apply("union", (a, b), "*")

    return signature(
        ops=[("union", ("1", "2"), _unit())],
        ineqs=[
            ("comm", ("x", "y"), u(x, y), u(y, x)),
            ("assoc", ("x", "y", "z"), u(u(x, y), z), u(x, u(y, z))),
            ("idem_le", ("x",), u(x, x), x),
            ("idem_ge", ("x",), x, u(x, x)),
        ],
    )


def coalesced_sum_sig(d: FinPoset, e: FinPoset) -> Signature:
    """Two inclusions whose bottom images are identified."""
    bd, be = _bottom_of(d), _bottom_of(e)
    return signature(
        ops=[("inl", (), d), ("inr", (), e)],
        ineqs=[
            ("glue_le", (), Apply("inl", (), bd), Apply("inr", (), be)),
            ("glue_ge", (), Apply("inr", (), be), Apply("inl", (), bd)),
        ],
    )


def coequalizer_sig(f: MonotoneMap, g: MonotoneMap) -> Signature:
    """One inclusion of the shared codomain, identifying f and g pointwise."""
    if f.dom != g.dom or f.cod != g.cod:
        raise InputError("coequalizer needs parallel maps with shared domain and codomain")
    ineqs = []
    for d in f.dom:
        ineqs.append((f"merge@{d}_le", (), Apply("iota", (), f(d)), Apply("iota", (), g(d))))
        ineqs.append((f"merge@{d}_ge", (), Apply("iota", (), g(d)), Apply("iota", (), f(d))))
    return signature(ops=[("iota", (), f.cod)], ineqs=ineqs)


def smash_sig(d: FinPoset, e: FinPoset) -> Signature:
    """One inclusion of the product, collapsing every pair touching a bottom."""
    bd, be = _bottom_of(d), _bottom_of(e)
    ineqs = []
    for x in d:
        for y in e:
            lhs = Apply("pair", (), pair_id(x, be))
            rhs = Apply("pair", (), pair_id(bd, y))
            ineqs.append((f"zero@{x}@{y}_le", (), lhs, rhs))
            ineqs.append((f"zero@{x}@{y}_ge", (), rhs, lhs))
    return signature(ops=[("pair", (), product(d, e))], ineqs=ineqs)


def _unit() -> FinPoset:
    from .signature import UNIT

    return UNIT


def _bottom_of(p: FinPoset) -> str:
    bot = has_bottom(p)
    if bot is None:
        raise InputError("construction needs a pointed poset (no least element found)")
    return bot


def _fresh(candidate: str, taken) -> str:
    while candidate in taken:
        candidate += "'"
    return candidate


# -- oracles ------------------------------------------------------------------


def oracle_pointed() -> PreAlgebra:
    carrier = FinPoset(("bot",))
    return PreAlgebra(pointed_sig(), carrier, {"bot": {((), "*"): "bot"}})


def oracle_power_bare() -> PreAlgebra:
    """The empty algebra; the bare union theory has no closed terms."""
    return PreAlgebra(power_sig(), FinPoset(()), {"union": {}})


def oracle_coalesced_sum(d: FinPoset, e: FinPoset) -> PreAlgebra:
    """Disjoint union minus both bottoms, under one fresh bottom."""
    bd, be = _bottom_of(d), _bottom_of(e)
    left = {x: f"l_{x}" for x in d if x != bd}
    right = {x: f"r_{x}" for x in e if x != be}
    bot = _fresh("bot", set(left.values()) | set(right.values()))
    elems = [bot] + [left[x] for x in d if x != bd] + [right[x] for x in e if x != be]
    pairs = [(bot, z) for z in elems]
    pairs += [(left[a], left[b]) for a in left for b in left if d.leq(a, b)]
    pairs += [(right[a], right[b]) for a in right for b in right if e.leq(a, b)]
    carrier = FinPoset(elems, pairs)
    inl = {((), x): (bot if x == bd else left[x]) for x in d}
    inr = {((), x): (bot if x == be else right[x]) for x in e}
    return PreAlgebra(coalesced_sum_sig(d, e), carrier, {"inl": inl, "inr": inr})


def oracle_coequalizer(f: MonotoneMap, g: MonotoneMap) -> PreAlgebra:
    """Posetal reflection of the codomain under the identifications f(d) ~ g(d)."""
    e = f.cod
    edges = list(e.pairs)
    for x in f.dom:
        edges.append((f(x), g(x)))
        edges.append((g(x), f(x)))
    carrier, class_of = posetal_reflection(e.elements, edges)
    iota = {((), y): class_of[y] for y in e}
    return PreAlgebra(coequalizer_sig(f, g), carrier, {"iota": iota})


def oracle_smash(d: FinPoset, e: FinPoset) -> PreAlgebra:
    """Pairs of non-bottom elements under a fresh bottom absorbing the rest."""
    bd, be = _bottom_of(d), _bottom_of(e)
    points = {(x, y): f"s_{x}_{y}" for x in d for y in e if x != bd and y != be}
    bot = _fresh("bot", set(points.values()))
    elems = [bot] + [points[(x, y)] for x in d for y in e if (x, y) in points]
    pairs = [(bot, z) for z in elems]
    pairs += [
        (points[p], points[q])
        for p in points
        for q in points
        if d.leq(p[0], q[0]) and e.leq(p[1], q[1])
    ]
    carrier = FinPoset(elems, pairs)
    table = {}
    for x in d:
        for y in e:
            table[((), pair_id(x, y))] = points.get((x, y), bot)
    return PreAlgebra(smash_sig(d, e), carrier, {"pair": table})


def oracle_lifting(d: FinPoset) -> PreAlgebra:
    """The generator with one fresh bottom glued underneath; over the extended signature."""
    ext = extend_signature(pointed_sig(), d)
    bot = _fresh("bot", set(d.elements))
    elems = [bot] + list(d.elements)
    pairs = [(bot, z) for z in elems] + list(d.pairs)
    carrier = FinPoset(elems, pairs)
    tables = {
        "bot": {((), "*"): bot},
        ext.incl_name: {((), x): x for x in d},
    }
    return PreAlgebra(ext.sig, carrier, tables)


def convex_closure(d: FinPoset, members: frozenset[str]) -> frozenset[str]:
    return frozenset(
        x for x in d
        if any(d.leq(s, x) and d.leq(x, t) for s in members for t in members)
    )


def egli_milner_leq(d: FinPoset, s: frozenset[str], t: frozenset[str]) -> bool:
    return all(any(d.leq(x, y) for y in t) for x in s) and \
        all(any(d.leq(x, y) for x in s) for y in t)


def oracle_plotkin(d: FinPoset) -> PreAlgebra:
    """Convex nonempty subsets under the Egli-Milner order; over the extended signature.

    Union is convex closure of set union, inclusion is the singleton map.
    The carrier is a classical-theory conjecture, validated instance-wise by
    the isomorphism and universal-property suites, never assumed.
    """
    ext = extend_signature(power_sig(), d)
    subsets = []
    for r in range(1, len(d) + 1):
        for combo in itertools.combinations(d.elements, r):
            s = frozenset(combo)
            if convex_closure(d, s) == s:
                subsets.append(s)

    def sid(s: frozenset[str]) -> str:
        return "{" + ",".join(sorted(s, key=d.index)) + "}"

    elems = [sid(s) for s in subsets]
    pairs = [
        (sid(s), sid(t))
        for s in subsets
        for t in subsets
        if egli_milner_leq(d, s, t)
    ]
    carrier = FinPoset(elems, pairs)
    by_id = {sid(s): s for s in subsets}
    union_table = {}
    for a in elems:
        for b in elems:
            union_table[((a, b), "*")] = sid(convex_closure(d, by_id[a] | by_id[b]))
    incl_table = {((), x): sid(frozenset((x,))) for x in d}
    return PreAlgebra(ext.sig, carrier, {"union": union_table, ext.incl_name: incl_table})


# -- universal property verifiers ---------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    name: str
    ok: bool
    lines: tuple[str, ...]


def _mediator_count(src: FinPoset, dst: FinPoset,
                    constraints: Mapping[str, str]) -> int:
    count = 0
    for h in enumerate_monotone_maps(src, dst):
        if all(h[k] == v for k, v in constraints.items()):
            count += 1
    return count


def verify_coproduct(d: FinPoset, e: FinPoset, initial: InitialAlgebra,
                     bound: int) -> PropertyReport:
    """Coproduct of pointed posets: unique strict mediator for every cospan."""
    bd, be = _bottom_of(d), _bottom_of(e)
    alg = initial.algebra
    lines = []
    ok = True
    checked = 0
    for target in enumerate_posets(bound):
        bx = has_bottom(target)
        if bx is None or not len(target):
            continue
        maps_d = [m for m in enumerate_monotone_maps(d, target) if m[bd] == bx]
        maps_e = [m for m in enumerate_monotone_maps(e, target) if m[be] == bx]
        for u in maps_d:
            for v in maps_e:
                constraints = {alg.apply("inl", (), x): u[x] for x in d}
                for y in e:
                    constraints[alg.apply("inr", (), y)] = v[y]
                n = _mediator_count(alg.carrier, target, constraints)
                checked += 1
                if n != 1:
                    ok = False
                    lines.append(f"FAIL target size {len(target)}: {n} mediators for one cospan")
    lines.append(f"coproduct property: {checked} cospans, all mediators unique" if ok
                 else "coproduct property violated")
    return PropertyReport("coproduct", ok, tuple(lines))


def verify_coequalizer(f: MonotoneMap, g: MonotoneMap, initial: InitialAlgebra,
                       bound: int) -> PropertyReport:
    """Unique factorisation of every cocone through the built coequalizer."""
    alg = initial.algebra
    lines = []
    ok = True
    checked = 0
    for target in enumerate_posets(bound):
        for m in enumerate_monotone_maps(f.cod, target):
            if any(m[f(x)] != m[g(x)] for x in f.dom):
                continue
            constraints = {alg.apply("iota", (), y): m[y] for y in f.cod}
            n = _mediator_count(alg.carrier, target, constraints)
            checked += 1
            if n != 1:
                ok = False
                lines.append(f"FAIL target size {len(target)}: {n} factorisations for one cocone")
    lines.append(f"coequalizer property: {checked} cocones, all factorisations unique" if ok
                 else "coequalizer property violated")
    return PropertyReport("coequalizer", ok, tuple(lines))


def verify_initiality_in_corpus(sig: Signature, initial: InitialAlgebra,
                                bound: int) -> PropertyReport:
    targets = list(enumerate_algebras(sig, bound))
    report = check_initiality(initial, targets)
    lines = list(report.lines())
    lines.append(f"{len(targets)} target algebra(s) of size <= {bound}")
    return PropertyReport("initiality", report.ok, tuple(lines))


def verify_free_adjunction(base: Signature, generator: FinPoset,
                           initial: InitialAlgebra, bound: int) -> PropertyReport:
    """Triangle law and uniqueness of the extension for every corpus (X, f)."""
    ext = extend_signature(base, generator)
    base_alg = forget_incl(initial.algebra, ext)
    unit = MonotoneMap(generator, base_alg.carrier,
                       {x: initial.algebra.apply(ext.incl_name, (), x) for x in generator})
    fr = FreeAlgebraResult(algebra=base_alg, unit=unit, extended=ext, initial=initial)
    lines = []
    ok = True
    checked = 0
    for target in enumerate_algebras(base, bound):
        for f in enumerate_monotone_maps(generator, target.carrier):
            checked += 1
            try:
                extend_along_unit(fr, target, f)
            except OrdalgError as exc:
                ok = False
                lines.append(f"FAIL (target size {len(target.carrier)}): {exc}")
    lines.append(f"adjunction: {checked} (algebra, map) pairs, triangle and uniqueness hold" if ok
                 else "adjunction property violated")
    return PropertyReport("free-adjunction", ok, tuple(lines))


# -- bundle registry ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExampleInstance:
    """One fully-instantiated construction, ready for the engine and the oracle."""

    name: str
    signature: Signature
    oracle: PreAlgebra
    verify: Callable[[InitialAlgebra, int], PropertyReport]


def instance_poset(spec: str) -> FinPoset:
    """Poset specs on the command line: chainN, discreteN, v, diamond, or a file path."""
    from .dsl import load_poset

    if os.path.sep in spec or os.path.exists(spec):
        return load_poset(spec)
    m = re.fullmatch(r"chain(\d+)", spec)
    if m:
        return chain(int(m.group(1)))
    m = re.fullmatch(r"disc(?:rete)?(\d+)", spec)
    if m:
        return discrete(int(m.group(1)))
    if spec == "v":
        return FinPoset.from_covers(("bot", "l", "r"), [("bot", "l"), ("bot", "r")])
    if spec == "diamond":
        return FinPoset.from_covers(
            ("bot", "l", "r", "top"),
            [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")])
    raise InputError(f"unknown poset spec {spec!r} (try chainN, discreteN, v, diamond, or a file)")


def parse_map_spec(spec: str, dom: FinPoset, cod: FinPoset) -> MonotoneMap:
    """Map spec 'a:x,b:y' for command-line coequalizer instances."""
    table = {}
    for part in spec.split(","):
        if ":" not in part:
            raise InputError(f"bad map entry {part!r}, expected 'src:dst'")
        k, v = part.split(":", 1)
        table[k.strip()] = v.strip()
    return MonotoneMap(dom, cod, table)


def _need(args: Sequence[str], n: int, usage: str) -> None:
    if len(args) != n:
        raise InputError(f"expected {usage}")


def build_example(name: str, args: Sequence[str]) -> ExampleInstance:
    """Instantiate a named construction from command-line style arguments."""
    if name == "pointed":
        _need(args, 0, "no arguments")
        sig = pointed_sig()
        return ExampleInstance(
            "pointed", sig, oracle_pointed(),
            lambda initial, bound: verify_initiality_in_corpus(sig, initial, bound))
    if name == "power":
        _need(args, 0, "no arguments")
        sig = power_sig()
        return ExampleInstance(
            "power", sig, oracle_power_bare(),
            lambda initial, bound: verify_initiality_in_corpus(sig, initial, bound))
    if name == "lifting":
        _need(args, 1, "one poset spec")
        d = instance_poset(args[0])
        ext = extend_signature(pointed_sig(), d)
        return ExampleInstance(
            f"lifting({args[0]})", ext.sig, oracle_lifting(d),
            lambda initial, bound: verify_free_adjunction(pointed_sig(), d, initial, bound))
    if name == "plotkin":
        _need(args, 1, "one poset spec")
        d = instance_poset(args[0])
        ext = extend_signature(power_sig(), d)
        return ExampleInstance(
            f"plotkin({args[0]})", ext.sig, oracle_plotkin(d),
            lambda initial, bound: verify_free_adjunction(power_sig(), d, initial, bound))
    if name == "coalesced":
        _need(args, 2, "two pointed poset specs")
        d, e = instance_poset(args[0]), instance_poset(args[1])
        sig = coalesced_sum_sig(d, e)
        return ExampleInstance(
            f"coalesced({args[0]},{args[1]})", sig, oracle_coalesced_sum(d, e),
            lambda initial, bound: verify_coproduct(d, e, initial, bound))
    if name == "smash":
        _need(args, 2, "two pointed poset specs")
        d, e = instance_poset(args[0]), instance_poset(args[1])
        sig = smash_sig(d, e)
        return ExampleInstance(
            f"smash({args[0]},{args[1]})", sig, oracle_smash(d, e),
            lambda initial, bound: verify_initiality_in_corpus(sig, initial, bound))
    if name == "coequalizer":
        _need(args, 4, "two poset specs and two map specs like a:x,b:y")
        d, e = instance_poset(args[0]), instance_poset(args[1])
        f = parse_map_spec(args[2], d, e)
        g = parse_map_spec(args[3], d, e)
        sig = coequalizer_sig(f, g)
        return ExampleInstance(
            f"coequalizer({args[0]},{args[1]})", sig, oracle_coequalizer(f, g),
            lambda initial, bound: verify_coequalizer(f, g, initial, bound))
    raise InputError(f"unknown example {name!r}")


EXAMPLE_NAMES = ("pointed", "power", "lifting", "plotkin", "coalesced", "smash", "coequalizer")
