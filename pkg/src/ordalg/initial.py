"""Initial algebras by ground-term saturation.

The engine closes an order relation over the closed terms of depth at most k
under four rule families, then collapses mutually related terms:

    R1  reflexivity
    R2  transitivity
    R3  congruence: applications with pointwise related arguments and
        constant elements related in the constant poset are related
    R4  inequality instantiation: every formal inequality, instantiated with
        one canonical representative per current equivalence class

Terms are not stored individually.  Classes are hash-consed by their
signature over argument classes, so the universe of depth-bounded terms is
represented implicitly: two terms land in the same node exactly when a chain
of R3 congruences identifies them, and all deeper bookkeeping happens on the
(small) class graph.  Rules fire in rounds until nothing changes; the
relation grows monotonically and is reflexive and transitive at every round
boundary.

Saturation at a fixed depth under-approximates the full theory: an instance
whose terms fall outside the depth-k universe is skipped.  ``build_initial``
therefore compares quotients across a depth window and only reports a result
once the window is stable; growth without stabilisation is reported as
:class:`NonConvergence`, never as a wrong finite answer.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import InputError, OrdalgError, RecMorphismError, ResourceBudgetError
from .algebra import (
    AlgebraMorphism,
    PreAlgebra,
    enumerate_morphisms,
    first_violation,
    interpret_term,
    is_algebra,
)
from .poset import FinPoset, directed_subset_count, directed_subsets, is_monotone
from .signature import (
    Apply,
    Signature,
    Term,
    Var,
    format_term,
    is_ground,
    term_depth,
    term_key,
)

DEFAULT_PAIR_BUDGET = 10 ** 6
DEFAULT_NODE_BUDGET = 10 ** 5
DEFAULT_TERM_BUDGET = 10 ** 5
DEFAULT_SUP_CHECK_CAP = 2 ** 16


@dataclass(frozen=True)
class SaturationConfig:
    """Knobs for build_initial; the window is extra depth demanded stable."""

    max_depth: int = 8
    window: int = 2
    pair_budget: int = DEFAULT_PAIR_BUDGET
    node_budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1

    def __post_init__(self):
        if self.window < 1:
            raise InputError("window must be at least 1")
        if self.max_depth < self.window + 1:
            raise InputError("max_depth must be at least window + 1")
        if self.pair_budget < 1 or self.node_budget < 1 or self.workers < 1:
            raise InputError("budgets and workers must be positive")


@dataclass(frozen=True)
class NonConvergence:
    """Diagnosis returned when no stable depth window exists within budget."""

    max_depth_tried: int
    class_counts: tuple[tuple[int, int], ...]  # (depth, class count) pairs
    reason: str

    def describe(self) -> str:
        counts = ", ".join(f"depth {d}: {n} classes" for d, n in self.class_counts)
        return f"no convergence up to depth {self.max_depth_tried} ({self.reason}); {counts}"


# -- ground term enumeration -------------------------------------------------


def ground_term_count(sig: Signature, depth: int) -> int:
    """Number of closed well-sorted terms of depth <= depth, computed arithmetically."""
    total = 0
    for d in range(1, depth + 1):
        new_total = 0
        for op in sig.op_names:
            mono = sig.monomial(op)
            if mono.arity:
                new_total += len(mono.constant) * total ** len(mono.arity)
            else:
                new_total += len(mono.constant)
        total = new_total
    return total


def enumerate_ground_terms(sig: Signature, depth: int,
                           budget: int = DEFAULT_TERM_BUDGET) -> list[Term]:
    """All closed well-sorted terms of depth <= depth, canonically ordered."""
    if depth < 1:
        raise InputError("depth bound must be at least 1")
    total = ground_term_count(sig, depth)
    if total > budget:
        raise ResourceBudgetError(f"{total} ground terms exceed budget {budget}")
    terms: list[Term] = []
    frontier_depth: dict[Term, int] = {}
    for op in sig.op_names:
        mono = sig.monomial(op)
        if not mono.arity:
            for c in mono.constant:
                t = Apply(op, (), c)
                terms.append(t)
                frontier_depth[t] = 1
    for d in range(2, depth + 1):
        prev = list(terms)
        for op in sig.op_names:
            mono = sig.monomial(op)
            if not mono.arity:
                continue
            for combo in itertools.product(prev, repeat=len(mono.arity)):
                if max(frontier_depth[a] for a in combo) != d - 1:
                    continue
                for c in mono.constant:
                    t = Apply(op, combo, c)
                    terms.append(t)
                    frontier_depth[t] = d
    return sorted(terms, key=lambda t: term_key(t, sig))


# -- the saturation engine ---------------------------------------------------


class _Saturator:
    def __init__(self, sig: Signature, depth: int, pair_budget: int,
                 node_budget: int, workers: int):
        self.sig = sig
        self.depth = depth
        self.pair_budget = pair_budget
        self.node_budget = node_budget
        self.workers = workers
        self.parent: list[int] = []
        self.rank: list[int] = []
        self.rep: list[Term] = []
        self.level: list[int] = []
        self.hashcons: dict[tuple[str, tuple[int, ...], str], int] = {}
        self.above: dict[int, set[int]] = {}
        self.round_log: list[dict[str, int]] = []
        self._keys: dict[Term, tuple[int, int, str]] = {}

    # union-find ------------------------------------------------------

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb] or (self.rank[ra] == self.rank[rb] and rb < ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        if self._key(self.rep[rb]) < self._key(self.rep[ra]):
            self.rep[ra] = self.rep[rb]
        self.level[ra] = min(self.level[ra], self.level[rb])
        return True

    def _key(self, t: Term) -> tuple[int, int, str]:
        k = self._keys.get(t)
        if k is None:
            k = term_key(t, self.sig)
            self._keys[t] = k
        return k

    def roots(self) -> list[int]:
        return [i for i in range(len(self.parent)) if self.find(i) == i]

    # node management ---------------------------------------------------

    def _add(self, op: str, args: tuple[int, ...], const: str, level: int) -> bool:
        key = (op, args, const)
        node = self.hashcons.get(key)
        if node is not None:
            r = self.find(node)
            if level < self.level[r]:
                self.level[r] = level
            return False
        if len(self.parent) >= self.node_budget:
            raise ResourceBudgetError(
                f"saturation universe exceeds node budget {self.node_budget}")
        n = len(self.parent)
        self.parent.append(n)
        self.rank.append(0)
        self.rep.append(Apply(op, tuple(self.rep[self.find(a)] for a in args), const))
        self.level.append(level)
        self.hashcons[key] = n
        self.above[n] = {n}
        return True

    # rounds --------------------------------------------------------------

    def run(self) -> None:
        # Deepen one level at a time and saturate to a fixpoint before the
        # next: classes merged early keep the deeper application pools small.
        # The least fixpoint is unaffected by this schedule; the final rounds
        # rescan the whole universe until nothing fires.
        for bound in range(1, self.depth + 1):
            while True:
                created = self._grow(bound)
                cands = self._congruence_candidates() | self._instance_candidates()
                new_pairs = self._add_edges(cands)
                merged = self._merge_mutuals()
                self.round_log.append(
                    {"depth": bound, "nodes": created, "pairs": new_pairs, "merges": merged})
                if not (created or new_pairs or merged):
                    break

    def _grow(self, bound: int) -> int:
        created = 0
        for d in range(1, bound + 1):
            pool = sorted(r for r in self.roots() if self.level[r] <= d - 1)
            for op in self.sig.op_names:
                mono = self.sig.monomial(op)
                ar = len(mono.arity)
                if ar == 0:
                    if d != 1:
                        continue
                    combos: Iterable[tuple[int, ...]] = [()]
                else:
                    if d == 1:
                        continue
                    space = len(pool) ** ar * len(mono.constant)
                    if space > self.node_budget:
                        raise ResourceBudgetError(
                            f"universe growth at depth {d} would scan {space} "
                            f"candidate applications, node budget is {self.node_budget}")
                    combos = itertools.product(pool, repeat=ar)
                for combo in combos:
                    for c in mono.constant:
                        if self._add(op, combo, c, d):
                            created += 1
        return created

    def _le(self, a: int, b: int) -> bool:
        return self.find(b) in self.above[self.find(a)]

    def _fanout(self, items: list, scan: Callable[[list], set]) -> set:
        if self.workers <= 1 or len(items) < 256:
            return scan(items)
        chunks = [items[i::self.workers] for i in range(self.workers)]
        with ThreadPoolExecutor(max_workers=self.workers) as ex:
            results = list(ex.map(scan, chunks))
        out: set = set()
        for r in results:
            out |= r
        return out

    def _congruence_candidates(self) -> set[tuple[int, int]]:
        by_op: dict[str, list[tuple[tuple[int, ...], str, int]]] = {}
        for (op, args, c), n in self.hashcons.items():
            by_op.setdefault(op, []).append((args, c, self.find(n)))
        scan_size = sum(len(v) ** 2 for v in by_op.values())
        if scan_size > self.pair_budget:
            raise ResourceBudgetError(
                f"congruence scan of {scan_size} entry pairs exceeds pair budget {self.pair_budget}")
        cands: set[tuple[int, int]] = set()
        for op, entries in sorted(by_op.items()):
            const = self.sig.monomial(op).constant

            def scan(pairs: list, entries=entries, const=const) -> set:
                found = set()
                for args1, c1, n1 in pairs:
                    for args2, c2, n2 in entries:
                        if n1 == n2:
                            continue
                        if not const.leq(c1, c2):
                            continue
                        if all(self._le(a1, a2) for a1, a2 in zip(args1, args2)):
                            found.add((n1, n2))
                return found

            cands |= self._fanout(entries, scan)
        return cands

    def _instance_candidates(self) -> set[tuple[int, int]]:
        roots = sorted(self.roots())
        scan_size = 0
        for name in self.sig.ineq_names:
            scan_size += len(roots) ** len(self.sig.ineqs[name].vars)
        if scan_size > self.pair_budget:
            raise ResourceBudgetError(
                f"inequality instantiation over {scan_size} assignments "
                f"exceeds pair budget {self.pair_budget}")
        cands: set[tuple[int, int]] = set()
        for name in self.sig.ineq_names:
            ineq = self.sig.ineqs[name]
            combos = list(itertools.product(roots, repeat=len(ineq.vars)))

            def scan(chunk: list, ineq=ineq) -> set:
                found = set()
                for combo in chunk:
                    rho = dict(zip(ineq.vars, combo))
                    lhs = self._eval(ineq.lhs, rho)
                    if lhs is None:
                        continue
                    rhs = self._eval(ineq.rhs, rho)
                    if rhs is None:
                        continue
                    if lhs != rhs:
                        found.add((lhs, rhs))
                return found

            cands |= self._fanout(combos, scan)
        return cands

    def _eval(self, t: Term, rho: Mapping[str, int]) -> int | None:
        """Class of an instantiated term, without creating nodes.

        None when some subterm's signature is absent from the depth-bounded
        universe; such instances are skipped (the under-approximation).
        """
        if isinstance(t, Var):
            return rho[t.name]
        args = []
        for a in t.args:
            v = self._eval(a, rho)
            if v is None:
                return None
            args.append(v)
        node = self.hashcons.get((t.op, tuple(args), t.const))
        return None if node is None else self.find(node)

    def _add_edges(self, cands: set[tuple[int, int]]) -> int:
        new = 0
        for a, b in sorted(cands):
            ra, rb = self.find(a), self.find(b)
            if rb not in self.above[ra]:
                self.above[ra].add(rb)
                new += 1
        new += self._close()
        total = sum(len(s) for s in self.above.values())
        if total > self.pair_budget:
            raise ResourceBudgetError(
                f"{total} relation pairs exceed pair budget {self.pair_budget}")
        return new

    def _close(self) -> int:
        added = 0
        changed = True
        while changed:
            changed = False
            for x in self.above:
                ups = self.above[x]
                extra = set()
                for y in ups:
                    extra |= self.above[y]
                extra -= ups
                if extra:
                    ups |= extra
                    added += len(extra)
                    changed = True
        return added

    def _merge_mutuals(self) -> int:
        merged = 0
        for x in list(self.above):
            for y in self.above[x]:
                if y != x and x in self.above.get(y, ()):
                    if self.union(x, y):
                        merged += 1
        if merged:
            self._rebuild()
        return merged

    def _rebuild(self) -> None:
        # Congruence cascade: entries whose keys collide after merging merge too.
        while True:
            fresh: dict[tuple[str, tuple[int, ...], str], int] = {}
            dirty = False
            for (op, args, c), n in self.hashcons.items():
                key = (op, tuple(self.find(a) for a in args), c)
                rn = self.find(n)
                other = fresh.get(key)
                if other is None:
                    fresh[key] = rn
                elif self.find(other) != rn:
                    self.union(other, rn)
                    dirty = True
            if not dirty:
                self.hashcons = {k: self.find(v) for k, v in fresh.items()}
                break
        new_above: dict[int, set[int]] = {}
        for x, ys in self.above.items():
            rx = self.find(x)
            new_above.setdefault(rx, set()).update(self.find(y) for y in ys)
        self.above = new_above
        self._close()
        self._refresh_reps()

    def _refresh_reps(self) -> None:
        changed = True
        while changed:
            changed = False
            for (op, args, c), n in self.hashcons.items():
                cand_level = 1 + max((self.level[a] for a in args), default=0)
                if cand_level < self.level[n]:
                    self.level[n] = cand_level
                    changed = True
                cand = Apply(op, tuple(self.rep[a] for a in args), c)
                if self._key(cand) < self._key(self.rep[n]):
                    self.rep[n] = cand
                    changed = True


class SaturationState:
    """Finished saturation at one depth bound, exposed through class queries.

    The depth-k term universe is implicit: every closed term of depth <= k
    maps to a class through the hash-consed signatures, and the order
    relation is stored on classes.  ``universe`` materialises the term list
    on demand, under a budget.
    """

    def __init__(self, sat: _Saturator):
        self._sat = sat
        self.sig = sat.sig
        self.depth = sat.depth
        self.round_log = list(sat.round_log)
        roots = sorted(sat.roots(), key=lambda r: sat._key(sat.rep[r]))
        self._roots = roots
        self._class_index = {r: i for i, r in enumerate(roots)}

    @property
    def class_count(self) -> int:
        return len(self._roots)

    def class_rep(self, i: int) -> Term:
        return self._sat.rep[self._roots[i]]

    def class_level(self, i: int) -> int:
        return self._sat.level[self._roots[i]]

    def class_le(self, i: int, j: int) -> bool:
        return self._roots[j] in self._sat.above[self._roots[i]]

    def class_pairs(self) -> list[tuple[int, int]]:
        n = self.class_count
        return [(i, j) for i in range(n) for j in range(n) if self.class_le(i, j)]

    def class_entries(self, i: int) -> list[tuple[str, tuple[int, ...], str]]:
        """All hash-cons signatures landing in class i, i.e. its member shapes."""
        root = self._roots[i]
        out = []
        for (op, args, c), n in self._sat.hashcons.items():
            if self._sat.find(n) == root:
                out.append((op, tuple(self._class_index[self._sat.find(a)] for a in args), c))
        return sorted(out)

    def apply_class(self, op: str, arg_classes: Sequence[int], const: str) -> int | None:
        """Class of op applied to classes, or None if outside this universe."""
        key = (op, tuple(self._roots[i] for i in arg_classes), const)
        node = self._sat.hashcons.get(key)
        return None if node is None else self._class_index[self._sat.find(node)]

    def class_of_term(self, t: Term) -> int:
        if not is_ground(t):
            raise InputError("only ground terms live in the saturated universe")
        root = self._sat._eval(t, {})
        if root is None:
            raise InputError(
                f"term {format_term(t, self.sig)} is outside the depth-{self.depth} universe")
        return self._class_index[root]

    def rel(self, s: Term, t: Term) -> bool:
        """The saturated order relation, queried on universe terms."""
        return self.class_le(self.class_of_term(s), self.class_of_term(t))

    def universe(self, budget: int = DEFAULT_TERM_BUDGET) -> list[Term]:
        return enumerate_ground_terms(self.sig, self.depth, budget)

    def universe_count(self) -> int:
        return ground_term_count(self.sig, self.depth)


def saturate(sig: Signature, depth: int, *,
             pair_budget: int = DEFAULT_PAIR_BUDGET,
             node_budget: int = DEFAULT_NODE_BUDGET,
             workers: int = 1) -> SaturationState:
    """Close the depth-bounded ground-term order under R1-R4, to a fixpoint."""
    if depth < 1:
        raise InputError("depth bound must be at least 1")
    sat = _Saturator(sig, depth, pair_budget, node_budget, workers)
    sat.run()
    return SaturationState(sat)


def quotient(state: SaturationState) -> tuple[FinPoset, Callable[[Term], str]]:
    """Collapse mutual relations into a poset of classes.

    Element ids are the printed canonical representatives; the returned map
    sends any term of the saturated universe to its class element.
    """
    elems = [format_term(state.class_rep(i), state.sig) for i in range(state.class_count)]
    pairs = [(elems[i], elems[j]) for i, j in state.class_pairs()]
    poset = FinPoset(elems, pairs)

    def class_map(t: Term) -> str:
        return elems[state.class_of_term(t)]

    return poset, class_map


# -- assembled initial algebras ----------------------------------------------


@dataclass(frozen=True, eq=False)
class InitialAlgebra:
    """Saturation result packaged as an algebra with class bookkeeping."""

    algebra: PreAlgebra
    class_of: Callable[[Term], str]
    repr: Mapping[str, Term]
    depth: int
    state: SaturationState


def build_initial(sig: Signature, cfg: SaturationConfig = SaturationConfig()
                  ) -> InitialAlgebra | NonConvergence:
    """Saturate at increasing depths until a window-stable quotient appears.

    Convergence at depth d means the depth-d quotient embeds onto the
    depth-(d+window) quotient as an order isomorphism hitting every class.
    Budget exhaustion during saturation is reported as NonConvergence with
    the growth seen so far; a stable but internally inconsistent result
    raises instead of being returned.
    """
    states: dict[int, SaturationState] = {}
    counts: list[tuple[int, int]] = []

    def get(k: int) -> SaturationState:
        if k not in states:
            states[k] = saturate(sig, k, pair_budget=cfg.pair_budget,
                                 node_budget=cfg.node_budget, workers=cfg.workers)
            counts.append((k, states[k].class_count))
            counts.sort()
        return states[k]

    for d in range(1, cfg.max_depth + 1):
        try:
            low = get(d)
        except ResourceBudgetError as exc:
            return NonConvergence(d, tuple(counts),
                                  f"budget exhausted saturating depth {d}: {exc}")
        try:
            high = get(d + cfg.window)
        except ResourceBudgetError as exc:
            return NonConvergence(d, tuple(counts),
                                  f"budget exhausted saturating depth {d + cfg.window}: {exc}")
        if _window_stable(low, high):
            return _assemble(sig, high)
    return NonConvergence(cfg.max_depth, tuple(counts),
                          "class structure keeps changing across the stabilisation window")


def _window_stable(low: SaturationState, high: SaturationState) -> bool:
    if low.class_count != high.class_count:
        return False
    image = [high.class_of_term(low.class_rep(i)) for i in range(low.class_count)]
    if len(set(image)) != high.class_count:
        return False
    for i in range(low.class_count):
        for j in range(low.class_count):
            if low.class_le(i, j) != high.class_le(image[i], image[j]):
                return False
    return True


def _assemble(sig: Signature, state: SaturationState) -> InitialAlgebra:
    carrier, class_map = quotient(state)
    elems = carrier.elements
    tables: dict[str, dict[tuple[tuple[str, ...], str], str]] = {}
    for op in sig.op_names:
        mono = sig.monomial(op)
        table: dict[tuple[tuple[str, ...], str], str] = {}
        for combo in itertools.product(range(len(elems)), repeat=len(mono.arity)):
            for c in mono.constant:
                res = state.apply_class(op, combo, c)
                if res is None:  # pragma: no cover - excluded by window stability
                    raise OrdalgError(
                        f"stable window is missing the application of {op!r}; "
                        "raise the depth bound")
                table[(tuple(elems[i] for i in combo), c)] = elems[res]
        tables[op] = table
    algebra = PreAlgebra(sig, carrier, tables)
    witness = first_violation(algebra)
    if witness is not None:  # pragma: no cover - R4 closure guarantees validity
        raise OrdalgError(f"saturated result violates inequality {witness[0]!r}")
    reprs = {elems[i]: state.class_rep(i) for i in range(len(elems))}
    return InitialAlgebra(algebra=algebra, class_of=class_map, repr=reprs,
                          depth=state.depth, state=state)


# -- checks on initial algebras ----------------------------------------------


def check_sup_rules(initial: InitialAlgebra, cap: int = DEFAULT_SUP_CHECK_CAP) -> bool:
    """Each directed subset's maximum is its least upper bound, exhaustively."""
    carrier = initial.algebra.carrier
    if directed_subset_count(carrier) > cap:
        raise ResourceBudgetError("too many directed subsets to check exhaustively")
    for subset in directed_subsets(carrier):
        maxima = [m for m in subset if all(carrier.leq(s, m) for s in subset)]
        if len(maxima) != 1:
            return False
        top = maxima[0]
        for v in carrier:
            if all(carrier.leq(s, v) for s in subset) and not carrier.leq(top, v):
                return False
    return True


def check_generated(initial: InitialAlgebra) -> bool:
    """Every carrier element is the class of some universe term."""
    for e in initial.algebra.carrier:
        t = initial.repr.get(e) if hasattr(initial.repr, "get") else None
        if t is None:
            return False
        try:
            if initial.class_of(t) != e:
                return False
        except InputError:
            return False
    return True


def rec_morphism(initial: InitialAlgebra, target: PreAlgebra) -> AlgebraMorphism:
    """The canonical morphism: interpret each class representative in the target.

    Checked before returning: all member shapes of a class interpret to the
    same target element (well-definedness), the map commutes with every
    operation, preserves order, and sends directed maxima to maxima of
    images.  On failure the cause is classified by re-validating the target.
    """
    if target.sig != initial.algebra.sig:
        raise InputError("target algebra is for a different signature")
    src = initial.algebra
    state = initial.state
    carrier = src.carrier
    mapping = {e: interpret_term(initial.repr[e], target, {}) for e in carrier}
    problems: list[str] = []
    for i, e in enumerate(carrier.elements):
        for op, arg_classes, c in state.class_entries(i):
            via_target = target.apply(
                op, tuple(mapping[carrier.elements[j]] for j in arg_classes), c)
            if via_target != mapping[e]:
                problems.append(
                    f"class {e} has a member shape interpreting to {via_target!r}, "
                    f"not {mapping[e]!r}")
                break
    for op in src.sig.op_names:
        for _, args, c in src.monomial_table(op):
            lhs = mapping[src.apply(op, args, c)]
            rhs = target.apply(op, tuple(mapping[a] for a in args), c)
            if lhs != rhs:
                problems.append(f"computation rule fails for {op!r} at ({args!r}, {c!r})")
                break
    if not is_monotone(mapping, carrier, target.carrier):
        problems.append("map does not preserve the class order")
    else:
        for subset in directed_subsets(carrier):
            top = next(m for m in subset if all(carrier.leq(s, m) for s in subset))
            image = {mapping[s] for s in subset}
            maxima = [y for y in image if all(target.carrier.leq(z, y) for z in image)]
            if maxima != [mapping[top]]:
                problems.append("map does not send a directed maximum to the image maximum")
                break
    if problems:
        cause = "target-not-algebra" if not is_algebra(target) else "saturation-incomplete"
        raise RecMorphismError("; ".join(problems), cause)
    return AlgebraMorphism(src, target, mapping)


@dataclass(frozen=True)
class TargetVerdict:
    label: str
    carrier_size: int
    morphism_count: int
    unique_matches_rec: bool | None

    @property
    def ok(self) -> bool:
        return self.morphism_count == 1 and self.unique_matches_rec is True


@dataclass(frozen=True)
class InitialityReport:
    verdicts: tuple[TargetVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def lines(self) -> list[str]:
        out = []
        for v in self.verdicts:
            status = "ok" if v.ok else "FAIL"
            if v.unique_matches_rec is None:
                rec = "rec not compared"
            else:
                rec = "matches rec" if v.unique_matches_rec else "rec mismatch"
            out.append(
                f"{status}  {v.label} (|carrier|={v.carrier_size}): "
                f"{v.morphism_count} morphism(s), {rec}")
        return out


def check_initiality(initial: InitialAlgebra, targets: Iterable[PreAlgebra],
                     budget: int = 10 ** 6) -> InitialityReport:
    """Exactly one morphism into every target, and it is the canonical one."""
    verdicts = []
    for idx, target in enumerate(targets):
        morphisms = enumerate_morphisms(initial.algebra, target, budget)
        matches: bool | None = None
        if len(morphisms) == 1:
            rec = rec_morphism(initial, target)
            matches = dict(morphisms[0].mapping) == dict(rec.mapping)
        verdicts.append(TargetVerdict(
            label=f"target#{idx}",
            carrier_size=len(target.carrier),
            morphism_count=len(morphisms),
            unique_matches_rec=matches,
        ))
    return InitialityReport(tuple(verdicts))
