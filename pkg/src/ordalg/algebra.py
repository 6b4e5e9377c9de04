"""Algebras over a signature: interpretation, validity, morphisms, enumeration.

A :class:`PreAlgebra` is a finite poset carrier with one interpretation map
per operation.  An algebra is a prealgebra validating every inequality of
its signature under all variable assignments; validity here is decided by
exhaustive enumeration, which is the point of working at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from .errors import InputError, ResourceBudgetError
from .poset import (
    FinPoset,
    MonotoneMap,
    automorphisms,
    directed_subset_count,
    enumerate_monotone_maps,
    enumerate_posets,
    is_continuous,
    is_monotone,
)
from .signature import (
    Apply,
    FormalIneq,
    MonomialTable,
    Signature,
    Term,
    Var,
    check_term,
    free_vars,
    monomial_table,
)

DEFAULT_ASSIGNMENT_BUDGET = 10 ** 6
DEFAULT_MAP_BUDGET = 10 ** 6
DEFAULT_ALGEBRA_BUDGET = 10 ** 6
# Above this many directed subsets, construction-time continuity checking
# falls back to monotonicity, which is equivalent on finite posets.
_EXHAUSTIVE_CONTINUITY_LIMIT = 2 ** 14


class PreAlgebra:
    """Carrier poset plus one monotone, continuous map per operation.

    ``tables`` maps each operation name to a dict from ``(args, const)``
    points to carrier elements, where ``args`` is a tuple of carrier
    elements aligned with the operation's arity.  Construction validates
    totality, monotonicity and (size permitting, exhaustively) continuity.
    """

    def __init__(self, sig: Signature, carrier: FinPoset,
                 tables: Mapping[str, Mapping[tuple[tuple[str, ...], str], str]]):
        self.sig = sig
        self.carrier = carrier
        self._montabs: dict[str, MonomialTable] = {}
        self._tables: dict[str, dict[tuple[tuple[str, ...], str], str]] = {}
        self.interp: dict[str, MonotoneMap] = {}
        extra = set(tables) - set(sig.op_names)
        if extra:
            raise InputError(f"interpretation for unknown operation {sorted(extra)[0]!r}")
        for op in sig.op_names:
            if op not in tables:
                raise InputError(f"no interpretation table for operation {op!r}")
            montab = monomial_table(sig.monomial(op), carrier)
            self._montabs[op] = montab
            table: dict[tuple[tuple[str, ...], str], str] = {}
            raw = tables[op]
            for key in raw:
                args, c = key
                table[(tuple(args), c)] = raw[key]
            id_table: dict[str, str] = {}
            for eid, args, c in montab:
                if (args, c) not in table:
                    raise InputError(f"table for {op!r} is missing the point ({args!r}, {c!r})")
                out = table[(args, c)]
                if out not in carrier:
                    raise InputError(f"table for {op!r} maps ({args!r}, {c!r}) to unknown element {out!r}")
                id_table[eid] = out
            if len(table) != len(montab):
                raise InputError(f"table for {op!r} has rows outside the monomial interpretation")
            if not is_monotone(id_table, montab.poset, carrier):
                raise InputError(f"interpretation of {op!r} is not monotone")
            if directed_subset_count(montab.poset) <= _EXHAUSTIVE_CONTINUITY_LIMIT:
                if not is_continuous((id_table, montab.poset, carrier)):
                    raise InputError(f"interpretation of {op!r} is not continuous")  # pragma: no cover
            self._tables[op] = table
            self.interp[op] = MonotoneMap(montab.poset, carrier, id_table)

    def monomial_table(self, op: str) -> MonomialTable:
        try:
            return self._montabs[op]
        except KeyError:
            raise InputError(f"unknown operation {op!r}") from None

    def apply(self, op: str, args: Sequence[str], const: str) -> str:
        table = self._tables.get(op)
        if table is None:
            raise InputError(f"unknown operation {op!r}")
        try:
            return table[(tuple(args), const)]
        except KeyError:
            raise InputError(f"({tuple(args)!r}, {const!r}) is not a point of {op!r}") from None

    def table(self, op: str) -> dict[tuple[tuple[str, ...], str], str]:
        return dict(self._tables[op])

    def __repr__(self) -> str:
        return f"PreAlgebra({len(self.carrier)} elements, ops={list(self.sig.op_names)})"


def interpret_term(t: Term, x: PreAlgebra, rho: Mapping[str, str]) -> str:
    """Evaluate a term in an algebra under a variable assignment."""
    if isinstance(t, Var):
        try:
            val = rho[t.name]
        except KeyError:
            raise InputError(f"unbound variable {t.name!r}") from None
        if val not in x.carrier:
            raise InputError(f"assignment sends {t.name!r} to unknown element {val!r}")
        return val
    args = tuple(interpret_term(a, x, rho) for a in t.args)
    return x.apply(t.op, args, t.const)


def assignments(vars: Sequence[str], carrier: FinPoset) -> Iterator[dict[str, str]]:
    """All assignments in canonical order (product over canonical element order)."""
    for combo in itertools.product(carrier.elements, repeat=len(vars)):
        yield dict(zip(vars, combo))


def find_invalid_assignment(x: PreAlgebra, ineq: FormalIneq,
                            budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> dict[str, str] | None:
    """First assignment violating the inequality, or None if it is valid."""
    check_term(ineq.lhs, x.sig.pre, ineq.vars)
    check_term(ineq.rhs, x.sig.pre, ineq.vars)
    total = len(x.carrier) ** len(ineq.vars)
    if total > budget:
        raise ResourceBudgetError(
            f"validity check needs {total} assignments, budget is {budget}")
    for rho in assignments(ineq.vars, x.carrier):
        if not x.carrier.leq(interpret_term(ineq.lhs, x, rho), interpret_term(ineq.rhs, x, rho)):
            return rho
    return None


def is_valid(x: PreAlgebra, ineq: FormalIneq, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    return find_invalid_assignment(x, ineq, budget) is None


def first_violation(x: PreAlgebra,
                    budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> tuple[str, dict[str, str]] | None:
    """First (inequality name, assignment) witness that x is not an algebra."""
    for name in x.sig.ineq_names:
        rho = find_invalid_assignment(x, x.sig.ineqs[name], budget)
        if rho is not None:
            return name, rho
    return None


def is_algebra(x: PreAlgebra, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    return first_violation(x, budget) is None


# -- morphisms ---------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraMorphism:
    """A monotone map between carriers commuting with every operation."""

    src: PreAlgebra
    dst: PreAlgebra
    mapping: Mapping[str, str]

    def __call__(self, e: str) -> str:
        return self.mapping[e]


def is_morphism(mapping: Mapping[str, str], x: PreAlgebra, y: PreAlgebra) -> bool:
    """Monotone plus commuting squares, checked pointwise on every monomial point."""
    if x.sig.pre != y.sig.pre:
        raise InputError("morphism endpoints have different signatures")
    if not is_monotone(mapping, x.carrier, y.carrier):
        return False
    for op in x.sig.op_names:
        for _, args, c in x.monomial_table(op):
            lhs = mapping[x.apply(op, args, c)]
            rhs = y.apply(op, tuple(mapping[a] for a in args), c)
            if lhs != rhs:
                return False
    return True


def make_morphism(x: PreAlgebra, y: PreAlgebra, mapping: Mapping[str, str]) -> AlgebraMorphism:
    if not is_morphism(mapping, x, y):
        raise InputError("map is not an algebra morphism")
    return AlgebraMorphism(x, y, dict(mapping))


def identity_morphism(x: PreAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(x, x, {e: e for e in x.carrier})


def compose_morphisms(g: AlgebraMorphism, f: AlgebraMorphism) -> AlgebraMorphism:
    """g after f."""
    if f.dst is not g.src and f.dst.carrier != g.src.carrier:
        raise InputError("composition endpoint mismatch")
    return AlgebraMorphism(f.src, g.dst, {e: g.mapping[f.mapping[e]] for e in f.src.carrier})


def check_naturality(t: Term, f: AlgebraMorphism, rho: Mapping[str, str]) -> bool:
    """Interpretation commutes with morphisms; False would expose a bad witness."""
    via_dst = interpret_term(t, f.dst, {v: f.mapping[rho[v]] for v in rho})
    via_src = f.mapping[interpret_term(t, f.src, rho)]
    return via_dst == via_src


def enumerate_morphisms(x: PreAlgebra, y: PreAlgebra,
                        budget: int = DEFAULT_MAP_BUDGET) -> list[AlgebraMorphism]:
    """Every algebra morphism x -> y, in canonical order.

    The candidate space is all monotone maps between the carriers; the
    budget guards the total-map count before enumeration starts.
    """
    total = len(y.carrier) ** len(x.carrier)
    if total > budget:
        raise ResourceBudgetError(f"{total} candidate maps exceed budget {budget}")
    out = []
    for mapping in enumerate_monotone_maps(x.carrier, y.carrier):
        if is_morphism(mapping, x, y):
            out.append(AlgebraMorphism(x, y, mapping))
    return out


# -- algebra enumeration -----------------------------------------------------


def _algebra_key(x: PreAlgebra, relabel: Mapping[str, str]) -> tuple:
    rows = []
    for op in x.sig.op_names:
        for (args, c), outv in sorted(x.table(op).items()):
            rows.append((op, tuple(relabel[a] for a in args), c, relabel[outv]))
    return tuple(sorted(rows))


def enumerate_algebras(sig: Signature, size_bound: int = 3,
                       budget: int = DEFAULT_ALGEBRA_BUDGET,
                       posets: Sequence[FinPoset] | None = None) -> Iterator[PreAlgebra]:
    """All algebras on carriers of at most size_bound elements, up to relabeling.

    Carriers run over canonical posets (one per isomorphism class); algebras
    related by a carrier automorphism are deduplicated by keeping the one
    whose table is least under the transport.
    """
    if posets is None:
        posets = enumerate_posets(size_bound)
    for carrier in posets:
        per_op: list[list[dict]] = []
        count = 1
        for op in sig.op_names:
            montab = monomial_table(sig.monomial(op), carrier)
            maps = list(enumerate_monotone_maps(montab.poset, carrier))
            tables = []
            for m in maps:
                tables.append({(args, c): m[eid] for eid, args, c in montab})
            per_op.append(tables)
            count *= len(tables)
            if count > budget:
                raise ResourceBudgetError(
                    f"algebra enumeration on {len(carrier)}-element carrier exceeds budget {budget}")
        autos = automorphisms(carrier)
        for combo in itertools.product(*per_op):
            tables = dict(zip(sig.op_names, combo))
            try:
                candidate = PreAlgebra(sig, carrier, tables)
            except InputError:  # pragma: no cover - tables are monotone by construction
                continue
            if not is_algebra(candidate):
                continue
            ident = {e: e for e in carrier}
            own = _algebra_key(candidate, ident)
            if any(_algebra_key(candidate, phi) < own for phi in autos):
                continue
            yield candidate


# -- algebra isomorphism -----------------------------------------------------


def find_algebra_iso(x: PreAlgebra, y: PreAlgebra) -> dict[str, str] | None:
    """An order isomorphism commuting with all operations, if one exists."""
    from .poset import order_isomorphisms

    if x.sig.pre != y.sig.pre:
        raise InputError("isomorphism endpoints have different signatures")
    for phi in order_isomorphisms(x.carrier, y.carrier):
        if is_morphism(phi, x, y):
            return phi
    return None
