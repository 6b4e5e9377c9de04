"""Stable text emission for engine results.

The structured documents are versioned and fully determined by canonical
class order, so byte-identical output across runs and worker counts is a
testable contract.  DOT output is best-effort presentation and carries no
such guarantee.
"""

from __future__ import annotations

from .free import FreeAlgebraResult
from .initial import InitialAlgebra
from .poset import FinPoset
from .signature import Signature, format_term

INITIAL_HEADER = "ordalg-initial v1"
FREE_HEADER = "ordalg-free v1"


def _algebra_block(sig: Signature, initial: InitialAlgebra, ops: tuple[str, ...]) -> list[str]:
    carrier = initial.algebra.carrier
    index = {e: i for i, e in enumerate(carrier.elements)}
    lines = [f"classes {len(carrier)}"]
    for i, e in enumerate(carrier.elements):
        lines.append(f"class {i} {format_term(initial.repr[e], sig)}")
    strict = [(index[a], index[b]) for a, b in carrier.strict_pairs()]
    strict.sort()
    lines.append(f"order {len(strict)}")
    for a, b in strict:
        lines.append(f"leq {a} {b}")
    for op in ops:
        lines.append(f"op {op}")
        rows = []
        for (args, c), out in initial.algebra.table(op).items():
            rows.append((tuple(index[a] for a in args), c, index[out]))
        rows.sort()
        for args, c, out in rows:
            argpart = " ".join(str(a) for a in args)
            argpart = argpart + " " if argpart else ""
            lines.append(f"row {argpart}{c} -> {out}")
    return lines


def serialize_initial(initial: InitialAlgebra) -> str:
    sig = initial.algebra.sig
    lines = [INITIAL_HEADER, f"depth {initial.depth}"]
    lines += _algebra_block(sig, initial, sig.op_names)
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_free(fr: FreeAlgebraResult) -> str:
    ext = fr.extended
    lines = [FREE_HEADER, f"depth {fr.initial.depth}",
             f"generator {len(ext.generator)}"]
    lines += _algebra_block(ext.sig, fr.initial, ext.base.op_names)
    index = {e: i for i, e in enumerate(fr.algebra.carrier.elements)}
    lines.append("unit")
    for d in ext.generator:
        lines.append(f"map {d} -> {index[fr.unit(d)]}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def hasse_dot(poset: FinPoset, labels: dict[str, str] | None = None) -> str:
    """Graphviz Hasse diagram; edges point upward in the order."""
    index = {e: i for i, e in enumerate(poset.elements)}
    out = ["digraph poset {", "  rankdir=BT;"]
    for e in poset.elements:
        label = (labels or {}).get(e, e).replace('"', '\\"')
        out.append(f'  n{index[e]} [label="{label}"];')
    for a, b in poset.covers():
        out.append(f"  n{index[a]} -> n{index[b]};")
    out.append("}")
    return "\n".join(out) + "\n"
