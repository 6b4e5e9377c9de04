"""Syntax of ordered algebraic theories: operations, terms, inequalities.

An operation shape is a :class:`Monomial`: a finite set of argument labels
plus a constant poset.  Over a carrier X it denotes the poset of points
``(argument function, constant element)``, i.e. ``(labels -> X) x constant``.
A :class:`Signature` packages named monomials with named formal
inequalities, each a pair of terms over declared variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence, Union

from .errors import InputError
from .poset import (
    DEFAULT_CARRIER_CAP,
    FinPoset,
    discrete_exponent,
    product,
)

#: Shared one-point constant poset; its sole element prints as ``*``.
UNIT = FinPoset(("*",))


@dataclass(frozen=True)
class Monomial:
    """Shape of one operation: argument labels plus a constant poset."""

    arity: tuple[str, ...]
    constant: FinPoset

    def __post_init__(self):
        if len(set(self.arity)) != len(self.arity):
            raise InputError("duplicate argument label in arity")


@dataclass(frozen=True, eq=True)
class PreSignature:
    """Named family of monomials; ``names`` fixes the canonical order."""

    names: tuple[str, ...]
    monomials: Mapping[str, Monomial]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InputError("duplicate operation name")
        for name in self.names:
            if name not in self.monomials:
                raise InputError(f"no monomial for operation {name!r}")
            if not name or any(ch.isspace() for ch in name):
                raise InputError(f"bad operation name {name!r}")

    def monomial(self, name: str) -> Monomial:
        try:
            return self.monomials[name]
        except KeyError:
            raise InputError(f"unknown operation {name!r}") from None

    def __hash__(self):
        return hash(self.names)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    """Operation application; ``args`` aligns with the monomial's arity order."""

    op: str
    args: tuple["Term", ...]
    const: str


Term = Union[Var, Apply]


@dataclass(frozen=True)
class FormalIneq:
    """Two terms over a shared variable tuple, read as lhs <= rhs."""

    vars: tuple[str, ...]
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise InputError("duplicate variable in inequality")
        loose = (free_vars(self.lhs) | free_vars(self.rhs)) - set(self.vars)
        if loose:
            raise InputError(f"inequality uses undeclared variable {sorted(loose)[0]!r}")


@dataclass(frozen=True, eq=True)
class Signature:
    """A presignature together with named formal inequalities.

    Construction checks that every inequality is well sorted against the
    presignature, so a Signature value is well formed by fiat everywhere
    downstream.
    """

    pre: PreSignature
    ineq_names: tuple[str, ...]
    ineqs: Mapping[str, FormalIneq]

    def __post_init__(self):
        if len(set(self.ineq_names)) != len(self.ineq_names):
            raise InputError("duplicate inequality name")
        for name in self.ineq_names:
            if name not in self.ineqs:
                raise InputError(f"no inequality named {name!r}")
            if not name or any(ch.isspace() for ch in name):
                raise InputError(f"bad inequality name {name!r}")
            ineq = self.ineqs[name]
            check_term(ineq.lhs, self.pre, ineq.vars)
            check_term(ineq.rhs, self.pre, ineq.vars)

    def __hash__(self):
        return hash((self.pre.names, self.ineq_names))

    @property
    def op_names(self) -> tuple[str, ...]:
        return self.pre.names

    def monomial(self, name: str) -> Monomial:
        return self.pre.monomial(name)


def signature(ops: Sequence[tuple[str, Sequence[str], FinPoset]],
              ineqs: Sequence[tuple[str, Sequence[str], Term, Term]]) -> Signature:
    """Convenience builder from flat op and inequality descriptions."""
    names = tuple(name for name, _, _ in ops)
    monomials = {name: Monomial(tuple(arity), const) for name, arity, const in ops}
    ineq_names = tuple(name for name, _, _, _ in ineqs)
    fam = {name: FormalIneq(tuple(vs), lhs, rhs) for name, vs, lhs, rhs in ineqs}
    return Signature(PreSignature(names, monomials), ineq_names, fam)


# -- term utilities ----------------------------------------------------------


def free_vars(t: Term) -> frozenset[str]:
    """Exactly the variables occurring in t."""
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: set[str] = set()
    stack = list(t.args)
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        else:
            stack.extend(s.args)
    return frozenset(out)


def term_depth(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if not t.args:
        return 1
    return 1 + max(term_depth(a) for a in t.args)


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def format_term(t: Term, sig: Signature | PreSignature | None = None) -> str:
    """Printable form ``op[const](args)``.

    The constant bracket is dropped for one-element constant posets and the
    parentheses for empty arities, which matches what the text format
    accepts back.
    """
    pre = sig.pre if isinstance(sig, Signature) else sig
    if isinstance(t, Var):
        return t.name
    parts = ""
    if pre is not None and len(pre.monomial(t.op).constant) == 1:
        pass
    else:
        parts = f"[{t.const}]"
    if t.args:
        inner = ",".join(format_term(a, pre) for a in t.args)
        return f"{t.op}{parts}({inner})"
    return f"{t.op}{parts}"


def term_key(t: Term, sig: Signature | PreSignature | None = None) -> tuple[int, int, str]:
    """Canonical comparison key: depth, then size, then printed form."""
    return (term_depth(t), term_size(t), format_term(t, sig))


def substitute(t: Term, subst: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        try:
            return subst[t.name]
        except KeyError:
            raise InputError(f"unbound variable {t.name!r}") from None
    return Apply(t.op, tuple(substitute(a, subst) for a in t.args), t.const)


def check_term(t: Term, pre: PreSignature, allowed_vars: Sequence[str] = ()) -> None:
    """Raise InputError unless t is well sorted for the presignature."""
    if isinstance(t, Var):
        if t.name not in allowed_vars:
            raise InputError(f"unknown variable {t.name!r}")
        return
    mono = pre.monomial(t.op)
    if len(t.args) != len(mono.arity):
        raise InputError(
            f"operation {t.op!r} expects {len(mono.arity)} arguments, got {len(t.args)}"
        )
    if t.const not in mono.constant:
        raise InputError(f"constant {t.const!r} is not an element of {t.op!r}'s constant poset")
    for a in t.args:
        check_term(a, pre, allowed_vars)


def is_ground(t: Term) -> bool:
    return not free_vars(t)


# -- monomial interpretation -------------------------------------------------


class MonomialTable:
    """Interpretation of a monomial at a carrier, with point bookkeeping.

    ``poset`` is ``product(discrete_exponent(arity, carrier), constant)``.
    Each element corresponds to a point ``(args, const)`` where ``args`` is a
    tuple of carrier elements aligned with the arity; ``encode``/``decode``
    translate between the two views without string parsing.
    """

    __slots__ = ("monomial", "carrier", "poset", "points", "_encode", "_decode")

    def __init__(self, monomial: Monomial, carrier: FinPoset,
                 size_cap: int = DEFAULT_CARRIER_CAP):
        self.monomial = monomial
        self.carrier = carrier
        exp = discrete_exponent(monomial.arity, carrier, size_cap)
        self.poset = product(exp, monomial.constant, size_cap)
        combos = itertools.product(
            itertools.product(carrier.elements, repeat=len(monomial.arity)),
            monomial.constant.elements,
        )
        # product() iterates exponent-major, matching the combo order here.
        self.points: tuple[tuple[str, tuple[str, ...], str], ...] = tuple(
            (eid, args, c) for eid, (args, c) in zip(self.poset.elements, combos)
        )
        self._encode = {(args, c): eid for eid, args, c in self.points}
        self._decode = {eid: (args, c) for eid, args, c in self.points}

    def encode(self, args: Sequence[str], const: str) -> str:
        try:
            return self._encode[(tuple(args), const)]
        except KeyError:
            raise InputError(f"({tuple(args)!r}, {const!r}) is not a point of this monomial") from None

    def decode(self, eid: str) -> tuple[tuple[str, ...], str]:
        try:
            return self._decode[eid]
        except KeyError:
            raise InputError(f"unknown monomial point {eid!r}") from None

    def __iter__(self) -> Iterator[tuple[str, tuple[str, ...], str]]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


@lru_cache(maxsize=4096)
def monomial_table(monomial: Monomial, carrier: FinPoset,
                   size_cap: int = DEFAULT_CARRIER_CAP) -> MonomialTable:
    """Cached MonomialTable; tables are immutable and freely shared."""
    return MonomialTable(monomial, carrier, size_cap)


def interp_monomial(monomial: Monomial, carrier: FinPoset,
                    size_cap: int = DEFAULT_CARRIER_CAP) -> FinPoset:
    """The poset of (argument function, constant element) points over a carrier."""
    return monomial_table(monomial, carrier, size_cap).poset
