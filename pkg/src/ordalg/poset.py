"""Finite partial orders and the order-theoretic helpers everything builds on.

Every carrier in this package is a finite poset.  Finite posets are
directed-complete for free: a finite directed subset contains its own
maximum, so suprema never introduce new elements and Scott continuity
coincides with monotonicity.  The checks below still verify those facts by
brute enumeration, so they can serve as independent oracles for each other.

Element ids are opaque nonempty strings without whitespace.  The tuple order
of ``FinPoset.elements`` is the canonical order used by every enumeration in
the package; all outputs are deterministic functions of it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import InputError, ResourceBudgetError

# Cap on carrier size for the exponential directed-subset enumeration.
DEFAULT_ELEMENT_CAP = 64
# Cap on the size of carriers produced by product / discrete_exponent.
DEFAULT_CARRIER_CAP = 4096

_PLAIN = re.compile(r"[^\s(),\[\]{};:'\"]+\Z")


def _quote(part: str) -> str:
    # Composite ids stay readable for simple tokens and unambiguous otherwise.
    return part if _PLAIN.match(part) else repr(part)


def pair_id(x: str, y: str) -> str:
    return f"({_quote(x)},{_quote(y)})"


def tuple_id(values: Sequence[str]) -> str:
    return "[" + ",".join(_quote(v) for v in values) + "]"


class FinPoset:
    """Immutable finite poset: an element tuple plus a reflexive order table.

    The constructor validates reflexivity, transitivity and antisymmetry and
    rejects ids containing whitespace.  ``leq`` must be the full relation;
    use :meth:`from_covers` to close a covering relation instead.
    """

    __slots__ = ("elements", "_pairs", "_index", "_up")

    def __init__(self, elements: Iterable[str], leq: Iterable[tuple[str, str]] = ()):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise InputError("duplicate element id in poset")
        for e in self.elements:
            if not e or any(ch.isspace() for ch in e):
                raise InputError(f"bad element id {e!r}: empty or contains whitespace")
        up: dict[str, set[str]] = {e: {e} for e in self.elements}
        for x, y in leq:
            if x not in self._index:
                raise InputError(f"leq pair mentions unknown element {x!r}")
            if y not in self._index:
                raise InputError(f"leq pair mentions unknown element {y!r}")
            up[x].add(y)
        self._up = {e: frozenset(s) for e, s in up.items()}
        self._pairs = frozenset((x, y) for x, s in self._up.items() for y in s)
        self._validate()

    @classmethod
    def from_covers(cls, elements: Iterable[str], covers: Iterable[tuple[str, str]]) -> "FinPoset":
        """Reflexive-transitive closure of a covering relation.

        Raises InputError when the closure violates antisymmetry, i.e. the
        covers contain a cycle through distinct elements.
        """
        elems = tuple(elements)
        index = {e: i for i, e in enumerate(elems)}
        succ: dict[str, set[str]] = {e: set() for e in elems}
        for x, y in covers:
            if x not in index:
                raise InputError(f"cover mentions unknown element {x!r}")
            if y not in index:
                raise InputError(f"cover mentions unknown element {y!r}")
            succ[x].add(y)
        closed: dict[str, set[str]] = {}
        for e in elems:
            seen = {e}
            stack = [e]
            while stack:
                cur = stack.pop()
                for nxt in succ[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            closed[e] = seen
        pairs = [(x, y) for x in elems for y in closed[x]]
        return cls(elems, pairs)

    def _validate(self) -> None:
        up = self._up
        for x in self.elements:
            for y in up[x]:
                if not up[y] <= up[x]:
                    missing = sorted(up[y] - up[x])[0]
                    raise InputError(
                        f"relation not transitive: {x!r} <= {y!r} <= {missing!r} "
                        f"but not {x!r} <= {missing!r}"
                    )
                if y != x and x in up[y]:
                    raise InputError(f"relation not antisymmetric: {x!r} and {y!r} are mutually related")

    # -- basic queries -------------------------------------------------

    def leq(self, x: str, y: str) -> bool:
        if x not in self._index or y not in self._index:
            raise InputError(f"unknown element in leq query: {x!r}, {y!r}")
        return y in self._up[x]

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise InputError(f"unknown element {x!r}") from None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinPoset):
            return NotImplemented
        return self.elements == other.elements and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash((self.elements, self._pairs))

    def __repr__(self) -> str:
        return f"FinPoset({len(self)} elements, {len(self.strict_pairs())} strict pairs)"

    @property
    def pairs(self) -> frozenset[tuple[str, str]]:
        return self._pairs

    def strict_pairs(self) -> list[tuple[str, str]]:
        return [(x, y) for x in self.elements for y in self.up_set(x) if x != y]

    def up_set(self, x: str) -> list[str]:
        """Elements above x, in canonical order."""
        ups = self._up[x]
        return [e for e in self.elements if e in ups]

    def down_set(self, x: str) -> list[str]:
        return [e for e in self.elements if x in self._up[e]]

    def upper_bounds(self, xs: Iterable[str]) -> list[str]:
        xs = list(xs)
        for x in xs:
            if x not in self._index:
                raise InputError(f"unknown element {x!r}")
        return [u for u in self.elements if all(self.leq(x, u) for x in xs)]

    def covers(self) -> list[tuple[str, str]]:
        """Hasse diagram edges: pairs x < y with nothing strictly between."""
        out = []
        for x in self.elements:
            for y in self.up_set(x):
                if x == y:
                    continue
                if any(z != x and z != y and self.leq(x, z) and self.leq(z, y) for z in self.elements):
                    continue
                out.append((x, y))
        return out


@dataclass(frozen=True)
class DirectedSubset:
    """Nonempty subset in which every pair has an upper bound inside it."""

    poset: FinPoset
    members: frozenset[str]

    def __post_init__(self):
        if not is_directed(self.members, self.poset):
            raise InputError("subset is not directed")


@dataclass(frozen=True)
class MonotoneMap:
    """Total order-preserving map between finite posets.

    Construction validates totality and order preservation; use
    :func:`is_monotone` to test a raw table without raising.
    """

    dom: FinPoset
    cod: FinPoset
    table: Mapping[str, str]

    def __post_init__(self):
        if not is_monotone(self.table, self.dom, self.cod):
            raise InputError("table is not monotone")

    def __call__(self, x: str) -> str:
        try:
            return self.table[x]
        except KeyError:
            raise InputError(f"element {x!r} not in map domain") from None

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """self after other."""
        if other.cod != self.dom:
            raise InputError("composition domain mismatch")
        return MonotoneMap(other.dom, self.cod, {x: self.table[other.table[x]] for x in other.dom})


def identity_map(p: FinPoset) -> MonotoneMap:
    return MonotoneMap(p, p, {e: e for e in p})


def is_directed(members: Iterable[str], poset: FinPoset) -> bool:
    """True iff the subset is nonempty and every pair has an upper bound in it."""
    ms = list(dict.fromkeys(members))
    for m in ms:
        if m not in poset:
            raise InputError(f"unknown element {m!r}")
    if not ms:
        return False
    for x, y in itertools.combinations(ms, 2):
        if not any(poset.leq(x, z) and poset.leq(y, z) for z in ms):
            return False
    return True


def directed_sup(subset: DirectedSubset) -> str:
    """Least upper bound of a directed subset.

    For a finite directed subset this is its unique maximum member; the two
    characterisations are computed separately and compared.
    """
    poset, members = subset.poset, subset.members
    maxima = [m for m in members if all(poset.leq(x, m) for x in members)]
    ubs = poset.upper_bounds(members)
    least = [u for u in ubs if all(poset.leq(u, v) for v in ubs)]
    if len(maxima) != 1 or least != maxima:
        raise InputError("directed subset has no unique maximum")  # pragma: no cover
    return maxima[0]


def least_upper_bound(poset: FinPoset, xs: Iterable[str]) -> str | None:
    """The least upper bound of a subset if one exists, else None."""
    ubs = poset.upper_bounds(xs)
    least = [u for u in ubs if all(poset.leq(u, v) for v in ubs)]
    return least[0] if least else None


def has_bottom(poset: FinPoset) -> str | None:
    """The element below all others, if it exists."""
    for e in poset:
        if all(poset.leq(e, x) for x in poset):
            return e
    return None


def is_monotone(table: Mapping[str, str], dom: FinPoset, cod: FinPoset) -> bool:
    """Order preservation for a total table; raises InputError on partial ones."""
    for x in dom:
        if x not in table:
            raise InputError(f"table is partial: no image for {x!r}")
        if table[x] not in cod:
            raise InputError(f"image {table[x]!r} of {x!r} not in codomain")
    for x, y in dom.pairs:
        if not cod.leq(table[x], table[y]):
            return False
    return True


def directed_subsets(poset: FinPoset) -> Iterator[frozenset[str]]:
    """All directed subsets, each exactly once.

    A finite directed subset contains its maximum m and lies inside the down
    set of m, so the enumeration walks down sets.  Exponential; guard with
    :func:`directed_subset_count` before calling on large posets.
    """
    for m in poset:
        below = [d for d in poset.down_set(m) if d != m]
        for r in range(len(below) + 1):
            for combo in itertools.combinations(below, r):
                yield frozenset((m, *combo))


def directed_subset_count(poset: FinPoset) -> int:
    return sum(2 ** (len(poset.down_set(m)) - 1) for m in poset)


def is_continuous(f: MonotoneMap | tuple[Mapping[str, str], FinPoset, FinPoset],
                  element_cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Directed-supremum preservation, by exhaustive enumeration.

    Accepts a MonotoneMap or a raw ``(table, dom, cod)`` triple so it can act
    as an independent check against :func:`is_monotone`.  True iff for every
    directed subset S of the domain, the image of S has a maximum equal to
    the image of the maximum of S.
    """
    if isinstance(f, MonotoneMap):
        table, dom, cod = f.table, f.dom, f.cod
    else:
        table, dom, cod = f
        for x in dom:
            if x not in table:
                raise InputError(f"table is partial: no image for {x!r}")
    if len(dom) > element_cap:
        raise ResourceBudgetError(
            f"is_continuous: carrier has {len(dom)} elements, cap is {element_cap}"
        )
    # Every directed subset is some {m} plus a chunk of m's strict down set,
    # with supremum m; walking them grouped by m keeps the maximum known.
    for m in dom:
        below = [d for d in dom.down_set(m) if d != m]
        fm = table[m]
        for r in range(len(below) + 1):
            for combo in itertools.combinations(below, r):
                image = {table[x] for x in combo}
                image.add(fm)
                maxima = [y for y in image if all(cod.leq(z, y) for z in image)]
                if maxima != [fm]:
                    return False
    return True


# -- combinators -----------------------------------------------------------


def product(p: FinPoset, q: FinPoset, size_cap: int = DEFAULT_CARRIER_CAP) -> FinPoset:
    """Componentwise-ordered pairs, p-major element order."""
    if len(p) * len(q) > size_cap:
        raise ResourceBudgetError(f"product carrier would have {len(p) * len(q)} elements, cap is {size_cap}")
    elems = [pair_id(x, y) for x in p for y in q]
    pairs = []
    for x1 in p:
        for y1 in q:
            a = pair_id(x1, y1)
            for x2 in p.up_set(x1):
                for y2 in q.up_set(y1):
                    pairs.append((a, pair_id(x2, y2)))
    return FinPoset(elems, pairs)


def discrete_exponent(labels: Sequence[str], x: FinPoset,
                      size_cap: int = DEFAULT_CARRIER_CAP) -> FinPoset:
    """All total functions from a finite label set into x, ordered pointwise.

    Functions are encoded as value tuples aligned with ``labels``; with no
    labels the result is the one-point poset of the empty function.
    """
    n = len(x) ** len(labels) if labels else 1
    if n > size_cap:
        raise ResourceBudgetError(f"exponent carrier would have {n} elements, cap is {size_cap}")
    funcs = list(itertools.product(x.elements, repeat=len(labels)))
    elems = [tuple_id(f) for f in funcs]
    pairs = [
        (tuple_id(f), tuple_id(g))
        for f in funcs
        for g in funcs
        if all(x.leq(a, b) for a, b in zip(f, g))
    ]
    return FinPoset(elems, pairs)


def chain(n: int, prefix: str = "c") -> FinPoset:
    """Total order c0 < c1 < ... on n elements."""
    elems = [f"{prefix}{i}" for i in range(n)]
    return FinPoset(elems, [(elems[i], elems[j]) for i in range(n) for j in range(i, n)])


def discrete(spec: int | Sequence[str]) -> FinPoset:
    """Discrete poset on given labels, or on the first n letters for an int."""
    if isinstance(spec, int):
        if spec > 26:
            raise InputError("discrete(n) supports at most 26 elements; pass labels instead")
        labels: Sequence[str] = [chr(ord("a") + i) for i in range(spec)]
    else:
        labels = spec
    return FinPoset(labels)


# -- quotients and isomorphisms --------------------------------------------


def posetal_reflection(elements: Sequence[str],
                       edges: Iterable[tuple[str, str]]) -> tuple[FinPoset, dict[str, str]]:
    """Collapse a preorder into a poset of mutual-relation classes.

    ``edges`` generate the preorder (reflexive-transitive closure is taken
    here).  Class ids are the canonically-least member.  Returns the quotient
    poset and the element-to-class map.
    """
    index = {e: i for i, e in enumerate(elements)}
    reach: dict[str, set[str]] = {}
    succ: dict[str, set[str]] = {e: {e} for e in elements}
    for a, b in edges:
        if a not in index or b not in index:
            raise InputError(f"edge ({a!r}, {b!r}) mentions unknown element")
        succ[a].add(b)
    for e in elements:
        seen = {e}
        stack = [e]
        while stack:
            for nxt in succ[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        reach[e] = seen
    class_of: dict[str, str] = {}
    for e in elements:
        mutual = [m for m in elements if m in reach[e] and e in reach[m]]
        class_of[e] = min(mutual, key=index.__getitem__)
    classes = list(dict.fromkeys(class_of[e] for e in elements))
    pairs = [(class_of[a], class_of[b]) for a in elements for b in reach[a]]
    return FinPoset(classes, pairs), class_of


def _profile(p: FinPoset) -> dict[str, tuple[int, int]]:
    return {e: (len(p.down_set(e)), len(p.up_set(e))) for e in p}


def order_isomorphisms(p: FinPoset, q: FinPoset) -> Iterator[dict[str, str]]:
    """All order isomorphisms p -> q, in deterministic order.

    Backtracking with a degree-profile prefilter; fine for the desk-scale
    carriers this package deals in.
    """
    if len(p) != len(q):
        return
    pp, qp = _profile(p), _profile(q)
    q_elems = list(q.elements)

    def extend(i: int, img: dict[str, str], used: set[str]) -> Iterator[dict[str, str]]:
        if i == len(p.elements):
            yield dict(img)
            return
        x = p.elements[i]
        for y in q_elems:
            if y in used or pp[x] != qp[y]:
                continue
            ok = True
            for x2, y2 in img.items():
                if p.leq(x, x2) != q.leq(y, y2) or p.leq(x2, x) != q.leq(y2, y):
                    ok = False
                    break
            if ok:
                img[x] = y
                used.add(y)
                yield from extend(i + 1, img, used)
                del img[x]
                used.remove(y)

    yield from extend(0, {}, set())


def find_order_iso(p: FinPoset, q: FinPoset) -> dict[str, str] | None:
    return next(order_isomorphisms(p, q), None)


def automorphisms(p: FinPoset) -> list[dict[str, str]]:
    return list(order_isomorphisms(p, p))


def enumerate_posets(max_size: int) -> list[FinPoset]:
    """All posets with at most max_size elements, one per isomorphism class.

    Canonically labelled ``e0, e1, ...``; brute enumeration of order
    relations with a min-over-permutations canonical form, so keep
    max_size small (intended for corpus bounds of 4 or less).
    """
    out: list[FinPoset] = []
    for n in range(max_size + 1):
        elems = [f"e{i}" for i in range(n)]
        idx = range(n)
        strict = [(i, j) for i in idx for j in idx if i != j]
        seen: set[tuple[tuple[int, int], ...]] = set()
        for bits in itertools.product((False, True), repeat=len(strict)):
            rel = {p_ for p_, b in zip(strict, bits) if b}
            ok = True
            for (a, b) in rel:
                if (b, a) in rel:
                    ok = False
                    break
                for c in idx:
                    if (b, c) in rel and (a, c) not in rel and a != c:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            canon = min(
                tuple(sorted((perm[a], perm[b]) for a, b in rel))
                for perm in itertools.permutations(idx)
            )
            if canon in seen:
                continue
            seen.add(canon)
            pairs = [(elems[a], elems[b]) for a, b in canon]
            out.append(FinPoset(elems, pairs + [(e, e) for e in elems]))
    return out


def enumerate_monotone_maps(dom: FinPoset, cod: FinPoset) -> Iterator[dict[str, str]]:
    """All monotone total maps dom -> cod, lexicographic in canonical order."""
    elems = dom.elements
    cod_elems = cod.elements

    def extend(i: int, table: dict[str, str]) -> Iterator[dict[str, str]]:
        if i == len(elems):
            yield dict(table)
            return
        x = elems[i]
        for y in cod_elems:
            ok = True
            for x2 in elems[:i]:
                if dom.leq(x, x2) and not cod.leq(y, table[x2]):
                    ok = False
                    break
                if dom.leq(x2, x) and not cod.leq(table[x2], y):
                    ok = False
                    break
            if ok:
                table[x] = y
                yield from extend(i + 1, table)
                del table[x]

    yield from extend(0, {})
