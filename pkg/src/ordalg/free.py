"""Free algebras via signature extension.

Extending a signature with a fresh constant-only inclusion operation over a
generator poset D makes the initial algebra of the extension the free
algebra over D: forgetting the inclusion yields the underlying algebra, the
inclusion itself is the unit, and any map from D into an algebra extends
uniquely along the unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InputError, OrdalgError
from .algebra import (
    AlgebraMorphism,
    PreAlgebra,
    enumerate_morphisms,
    make_morphism,
)
from .initial import InitialAlgebra, NonConvergence, SaturationConfig, build_initial, rec_morphism
from .poset import FinPoset, MonotoneMap
from .signature import Monomial, PreSignature, Signature


@dataclass(frozen=True)
class ExtendedSignature:
    """A base signature plus one fresh nullary-arity inclusion over a generator."""

    base: Signature
    incl_name: str
    generator: FinPoset
    sig: Signature


def extend_signature(base: Signature, generator: FinPoset) -> ExtendedSignature:
    """Add a fresh inclusion operation with the generator poset as constant.

    Inequalities carry over unchanged: the fresh name cannot occur in any
    existing term, so lifting is the identity on their syntax.
    """
    incl = "incl"
    n = 2
    while incl in base.op_names:
        incl = f"incl{n}"
        n += 1
    names = base.op_names + (incl,)
    monomials = dict(base.pre.monomials)
    monomials[incl] = Monomial((), generator)
    sig = Signature(PreSignature(names, monomials), base.ineq_names, dict(base.ineqs))
    return ExtendedSignature(base=base, incl_name=incl, generator=generator, sig=sig)


def add_incl(x: PreAlgebra, f: MonotoneMap | Mapping[str, str],
             ext: ExtendedSignature | None = None) -> PreAlgebra:
    """Reinterpret an algebra over the extended signature, using f for inclusion."""
    if ext is None:
        if isinstance(f, MonotoneMap):
            ext = extend_signature(x.sig, f.dom)
        else:
            raise InputError("add_incl needs an ExtendedSignature or a MonotoneMap")
    if isinstance(f, MonotoneMap):
        if f.dom != ext.generator or f.cod != x.carrier:
            raise InputError("inclusion map endpoints do not match")
        table = dict(f.table)
    else:
        table = MonotoneMap(ext.generator, x.carrier, dict(f)).table  # validates monotonicity
    if x.sig != ext.base:
        raise InputError("algebra is not over the extension's base signature")
    tables = {op: x.table(op) for op in x.sig.op_names}
    tables[ext.incl_name] = {((), d): table[d] for d in ext.generator}
    return PreAlgebra(ext.sig, x.carrier, tables)


def forget_incl(y: PreAlgebra, ext: ExtendedSignature) -> PreAlgebra:
    """Drop the inclusion interpretation; the base inequalities still hold."""
    if y.sig != ext.sig:
        raise InputError("algebra is not over the extended signature")
    tables = {op: y.table(op) for op in ext.base.op_names}
    return PreAlgebra(ext.base, y.carrier, tables)


@dataclass(frozen=True, eq=False)
class FreeAlgebraResult:
    """Free algebra over a generator poset, with its unit and raw materials."""

    algebra: PreAlgebra
    unit: MonotoneMap
    extended: ExtendedSignature
    initial: InitialAlgebra


def free_algebra(sig: Signature, generator: FinPoset,
                 cfg: SaturationConfig = SaturationConfig()
                 ) -> FreeAlgebraResult | NonConvergence:
    """Initial algebra of the extended signature, with the inclusion forgotten."""
    ext = extend_signature(sig, generator)
    built = build_initial(ext.sig, cfg)
    if isinstance(built, NonConvergence):
        return built
    base_alg = forget_incl(built.algebra, ext)
    unit_table = {d: built.algebra.apply(ext.incl_name, (), d) for d in generator}
    unit = MonotoneMap(generator, base_alg.carrier, unit_table)
    return FreeAlgebraResult(algebra=base_alg, unit=unit, extended=ext, initial=built)


def extend_along_unit(fr: FreeAlgebraResult, x: PreAlgebra,
                      f: MonotoneMap | Mapping[str, str],
                      uniqueness_budget: int = 10 ** 6) -> AlgebraMorphism:
    """The unique base-signature morphism h with h . unit = f.

    Obtained by interpreting class representatives in x extended with f as
    inclusion, then forgetting the inclusion square.  Both the triangle law
    and uniqueness are verified before returning.
    """
    target_ext = add_incl(x, f, fr.extended)
    rec = rec_morphism(fr.initial, target_ext)
    result = make_morphism(fr.algebra, x, dict(rec.mapping))
    f_table = f.table if isinstance(f, MonotoneMap) else f
    for d in fr.extended.generator:
        if result.mapping[fr.unit(d)] != f_table[d]:
            raise OrdalgError(f"triangle law fails at generator {d!r}")  # pragma: no cover
    matching = [
        m for m in enumerate_morphisms(fr.algebra, x, uniqueness_budget)
        if all(m.mapping[fr.unit(d)] == f_table[d] for d in fr.extended.generator)
    ]
    if len(matching) != 1 or dict(matching[0].mapping) != dict(result.mapping):
        raise OrdalgError("extension along the unit is not unique")  # pragma: no cover
    return result
