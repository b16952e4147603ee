"""Ideal theory on finite PEAs/GPEAs: predicates, enumeration, Riesz
conditions, congruences, quotients, generated ideals, radicals, and the
two-valued-state partition theorems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .core import (
    InconsistencyError,
    PartialAdditionTable,
    PreconditionError,
    _require_gpea,
    _require_pea,
    check_axioms,
    complements,
    induced_order,
)


@dataclass
class IdealSet:
    """An ideal with lazily computed structural flags."""

    table: PartialAdditionTable
    members: FrozenSet[str]
    _normal: Optional[bool] = None
    _maximal: Optional[bool] = None
    _riesz: Optional[bool] = None

    @property
    def proper(self) -> bool:
        if self.table.one is not None:
            return self.table.one not in self.members
        return self.members != frozenset(self.table.elements)

    @property
    def normal(self) -> bool:
        if self._normal is None:
            self._normal = is_normal(self.table, self.members)[0]
        return self._normal

    @property
    def maximal(self) -> bool:
        if self._maximal is None:
            self._maximal = is_maximal(self.table, self.members)[0]
        return self._maximal

    @property
    def riesz(self) -> bool:
        if self._riesz is None:
            self._riesz = is_riesz_ideal(self.table, self.members)[0]
        return self._riesz

    def sorted_ids(self) -> List[str]:
        return sorted(self.members)

    def __repr__(self):
        return "IdealSet({%s})" % ",".join(self.sorted_ids())


def _as_index_set(table: PartialAdditionTable, S: Iterable[str]) -> Set[int]:
    idx = set()
    for a in S:
        idx.add(table.index(a))
    return idx


def is_ideal(table: PartialAdditionTable, S: Iterable[str]):
    """Nonempty, downward closed, closed under defined sums."""
    _require_gpea(table)
    idx = _as_index_set(table, S)
    els = table.elements
    if not idx:
        return False, ("empty",)
    leq = induced_order(table)._leq
    for i in idx:
        for a in range(table.size):
            if leq[a][i] and a not in idx:
                return False, ("downward", els[a], els[i])
    t = table._sums
    for i in idx:
        for j in idx:
            s = t[i][j]
            if s is not None and s not in idx:
                return False, ("sum", els[i], els[j])
    return True, None


def is_normal(table: PartialAdditionTable, S: Iterable[str]):
    """Normality: whenever a+i = j+a, membership of i and j agree."""
    _require_gpea(table)
    idx = _as_index_set(table, S)
    els = table.elements
    t = table._sums
    k = table.size
    for a in range(k):
        for i in range(k):
            s = t[a][i]
            if s is None:
                continue
            for j in range(k):
                if t[j][a] == s and (i in idx) != (j in idx):
                    return False, (els[a], els[i], els[j])
    return True, None


def is_maximal(table: PartialAdditionTable, S: Iterable[str]):
    """Maximal proper ideal, decided against the enumerated ideal lattice."""
    members = frozenset(S)
    ok, witness = is_ideal(table, members)
    if not ok:
        return False, ("not-ideal",) + witness
    probe = IdealSet(table, members)
    if not probe.proper:
        return False, ("not-proper",)
    for other in enumerate_ideals(table):
        if other.proper and members < other.members:
            return False, ("contained-in",) + tuple(other.sorted_ids())
    return True, None


def enumerate_ideals(table: PartialAdditionTable) -> List[IdealSet]:
    """All ideals, generated from antichains of the induced order (each
    downward-closed set is the down-closure of its antichain of maximal
    elements) and filtered by sum closure."""
    if "ideals" in table._cache:
        return table._cache["ideals"]  # type: ignore[return-value]
    _require_gpea(table)
    k = table.size
    leq = induced_order(table)._leq
    t = table._sums
    els = table.elements
    downsets: List[FrozenSet[int]] = []

    def extend(antichain: List[int], start: int) -> None:
        if antichain:
            down = set()
            for a in antichain:
                down.update(b for b in range(k) if leq[b][a])
            downsets.append(frozenset(down))
        for nxt in range(start, k):
            if all(not leq[nxt][a] and not leq[a][nxt] for a in antichain):
                antichain.append(nxt)
                extend(antichain, nxt + 1)
                antichain.pop()

    extend([], 0)
    result = []
    for down in downsets:
        if all(t[i][j] is None or t[i][j] in down for i in down for j in down):
            result.append(IdealSet(table, frozenset(els[i] for i in down)))
    result.sort(key=lambda ide: (len(ide.members), ide.sorted_ids()))
    table._cache["ideals"] = result
    return result


def _is_upwards_directed(table: PartialAdditionTable) -> bool:
    leq = induced_order(table)._leq
    k = table.size
    return all(
        any(leq[a][c] and leq[b][c] for c in range(k))
        for a in range(k)
        for b in range(k)
    )


def check_r1(table: PartialAdditionTable, S: Iterable[str]):
    """(R1): every ideal element below a sum a+b is below some sum j+k of
    ideal elements j <= a, k <= b."""
    members = frozenset(S)
    ok, witness = is_ideal(table, members)
    if not ok:
        raise PreconditionError("(R1) test requires an ideal: %r" % (witness,))
    idx = _as_index_set(table, members)
    t = table._sums
    k = table.size
    leq = induced_order(table)._leq
    els = table.elements
    for i in idx:
        for a in range(k):
            for b in range(k):
                s = t[a][b]
                if s is None or not leq[i][s]:
                    continue
                ok = False
                for j in idx:
                    if not leq[j][a]:
                        continue
                    for kk in idx:
                        if not leq[kk][b]:
                            continue
                        jk = t[j][kk]
                        if jk is not None and leq[i][jk]:
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return False, ("R1", els[i], els[a], els[b])
    return True, None


def check_r2(table: PartialAdditionTable, S: Iterable[str]):
    """(R2), taken literally from its definition, both clauses."""
    members = frozenset(S)
    ok, witness = is_ideal(table, members)
    if not ok:
        raise PreconditionError("(R2) test requires an ideal: %r" % (witness,))
    idx = _as_index_set(table, members)
    t = table._sums
    k = table.size
    leq = induced_order(table)._leq
    els = table.elements

    def left_diff(x, y):  # x \ y, the d with d + y = x
        return next((d for d in range(k) if t[d][y] == x), None)

    def right_diff(y, x):  # y / x, the d with y + d = x
        return next((d for d in range(k) if t[y][d] == x), None)

    for i in idx:
        for a in range(k):
            if not leq[i][a]:
                continue
            ai = left_diff(a, i)
            ia = right_diff(i, a)
            for b in range(k):
                if ai is not None and t[ai][b] is not None:
                    ok = any(
                        leq[j][b]
                        and right_diff(j, b) is not None
                        and t[a][right_diff(j, b)] is not None
                        for j in idx
                    )
                    if not ok:
                        return False, ("R2a", els[i], els[a], els[b])
                if ia is not None and t[b][ia] is not None:
                    ok = any(
                        leq[j][b]
                        and left_diff(b, j) is not None
                        and t[left_diff(b, j)][a] is not None
                        for j in idx
                    )
                    if not ok:
                        return False, ("R2b", els[i], els[a], els[b])
    return True, None


def is_riesz_ideal(table: PartialAdditionTable, S: Iterable[str]):
    """Riesz ideal test.

    (R1) is always checked; for upwards directed algebras (every PEA is) it
    already decides the matter, and (R2) is checked in addition only when
    directedness fails to hold.
    """
    r1, witness = check_r1(table, S)
    if not r1:
        return False, witness
    if _is_upwards_directed(table):
        return True, None
    return check_r2(table, S)


def congruence_relation(table: PartialAdditionTable, I: Iterable[str]) -> List[List[bool]]:
    """Matrix of a ~_I b: some i, j in I with i <= a, j <= b, a\\i = b\\j."""
    members = frozenset(I)
    norm, w = is_normal(table, members)
    if not norm:
        raise PreconditionError("congruence requires a normal ideal: %r" % (w,))
    riesz, w = is_riesz_ideal(table, members)
    if not riesz:
        raise PreconditionError("congruence requires a Riesz ideal: %r" % (w,))
    idx = _as_index_set(table, members)
    t = table._sums
    k = table.size
    leq = induced_order(table)._leq
    # diff[a] = {a \ i : i in I, i <= a}
    diffs: List[Set[int]] = [set() for _ in range(k)]
    for a in range(k):
        for i in idx:
            if leq[i][a]:
                d = next((x for x in range(k) if t[x][i] == a), None)
                if d is not None:
                    diffs[a].add(d)
    rel = [[bool(diffs[a] & diffs[b]) for b in range(k)] for a in range(k)]
    for a in range(k):
        if not rel[a][a]:
            raise InconsistencyError("~_I not reflexive")
        for b in range(k):
            if rel[a][b] != rel[b][a]:
                raise InconsistencyError("~_I not symmetric")
            if rel[a][b]:
                for c in range(k):
                    if rel[b][c] and not rel[a][c]:
                        raise InconsistencyError("~_I not transitive")
    return rel


def congruence_classes(table: PartialAdditionTable, I: Iterable[str]) -> List[Tuple[str, ...]]:
    """Classes of ~_I, each sorted, ordered by smallest member index."""
    rel = congruence_relation(table, I)
    k = table.size
    els = table.elements
    seen = [False] * k
    classes = []
    for a in range(k):
        if seen[a]:
            continue
        cls = [b for b in range(k) if rel[a][b]]
        for b in cls:
            seen[b] = True
        classes.append(tuple(sorted(els[b] for b in cls)))
    return classes


def quotient(table: PartialAdditionTable, I: Iterable[str]):
    """Quotient table E/~_I plus the linearity flag of condition (L).

    Class sums [a]+[b] = [a+b] are verified well-defined over all
    representatives.  Condition (L) is checked exhaustively and asserted
    equivalent to the quotient order being total.
    """
    classes = congruence_classes(table, I)
    rel = congruence_relation(table, I)
    k = table.size
    els = table.elements
    t = table._sums
    class_of: Dict[int, int] = {}
    for ci, cls in enumerate(classes):
        for e in cls:
            class_of[table.index(e)] = ci

    def class_name(cls: Tuple[str, ...]) -> str:
        return "{%s}" % ",".join(cls)

    names = [class_name(c) for c in classes]
    sums: Dict[Tuple[str, str], str] = {}
    for ci, ca in enumerate(classes):
        for cj, cb in enumerate(classes):
            results = set()
            for a in ca:
                for b in cb:
                    s = t[table.index(a)][table.index(b)]
                    if s is not None:
                        results.add(class_of[s])
            if len(results) > 1:
                raise InconsistencyError(
                    "quotient sum ill-defined on %s + %s" % (names[ci], names[cj])
                )
            if results:
                sums[(names[ci], names[cj])] = names[results.pop()]
    zero_name = names[class_of[table.zero_i]]
    one_name = None
    if table.one is not None:
        cand = names[class_of[table.one_i]]
        if cand != zero_name:
            one_name = cand
    q = PartialAdditionTable(names, zero_name, one_name, sums)
    rep = check_axioms(q, "gpea")
    if not rep.passed:
        raise InconsistencyError("quotient fails GPEA axioms: %r" % (rep.violations,))

    # condition (L): for all a, b there is c with a+c ~ b or b+c ~ a
    linear = True
    for a in range(k):
        for b in range(k):
            found = False
            for c in range(k):
                ac = t[a][c]
                bc = t[b][c]
                if (ac is not None and rel[ac][b]) or (bc is not None and rel[bc][a]):
                    found = True
                    break
            if not found:
                linear = False
                break
        if not linear:
            break
    if linear != induced_order(q).is_total():
        raise InconsistencyError("condition (L) disagrees with quotient order totality")
    mapping = {els[i]: names[class_of[i]] for i in range(k)}
    return q, linear, mapping


def ideal_generated(table: PartialAdditionTable, I: Iterable[str], a: str) -> IdealSet:
    """Smallest ideal containing I and a, computed by the alternating-sum
    closure formula (valid under (RDP)_0, which is checked)."""
    from .rdp import check_rdp0

    members = frozenset(I)
    ok, witness = is_ideal(table, members)
    if not ok:
        raise PreconditionError("ideal_generated requires an ideal: %r" % (witness,))
    r0, w0 = check_rdp0(table)
    if not r0:
        raise PreconditionError(
            "ideal_generated requires (RDP)_0; it fails with witness %r" % (w0,)
        )
    idx = _as_index_set(table, members)
    leq = induced_order(table)._leq
    ai = table.index(a)
    t = table._sums
    seeds = set(idx) | {b for b in range(table.size) if leq[b][ai]}
    closed = set(seeds)
    frontier = True
    while frontier:
        frontier = False
        for i in list(closed):
            for j in list(closed):
                s = t[i][j]
                if s is not None and s not in closed:
                    closed.add(s)
                    frontier = True
    result = frozenset(table.elements[i] for i in closed)
    ok, witness = is_ideal(table, result)
    if not ok:
        raise InconsistencyError("generated-set formula did not yield an ideal: %r" % (witness,))
    return IdealSet(table, result)


def radicals(table: PartialAdditionTable) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(Rad, Rad_n): intersections of all maximal (resp. maximal normal) ideals."""
    _require_pea(table)
    all_ideals = enumerate_ideals(table)
    maximal = [i for i in all_ideals if i.maximal]
    universe = frozenset(table.elements)
    rad = universe
    for i in maximal:
        rad &= i.members
    rad_n = universe
    for i in maximal:
        if i.normal:
            rad_n &= i.members
    if not rad <= rad_n:
        raise InconsistencyError("Rad(E) not contained in Rad_n(E)")
    return rad, rad_n


def two_valued_partition(table: PartialAdditionTable):
    """All pairs (maximal normal ideal I, two-valued state) with
    E = I u I- = I u I~ disjointly; certified bijective with the 2-valued
    discrete states, and for symmetric tables checked against unitization."""
    from fractions import Fraction

    from . import states as states_mod
    from .core import is_symmetric

    _require_pea(table)
    universe = frozenset(table.elements)
    pairs = []
    for ide in enumerate_ideals(table):
        if not (ide.maximal and ide.normal):
            continue
        i_minus = frozenset(complements(table, x)[0] for x in ide.members)
        i_tilde = frozenset(complements(table, x)[1] for x in ide.members)
        if ide.members | i_minus != universe or ide.members & i_minus:
            continue
        if ide.members | i_tilde != universe or ide.members & i_tilde:
            continue
        vals = {
            e: Fraction(0) if e in ide.members else Fraction(1)
            for e in table.elements
        }
        s = states_mod.StateVector(table, vals)
        pairs.append((ide, s))

    expected = states_mod.enumerate_discrete_states(table, 1)
    if {s for _, s in pairs} != set(expected):
        raise InconsistencyError(
            "two-valued partition does not match the 2-valued discrete states"
        )

    if pairs and is_symmetric(table).symmetric:
        from .constructions import unitize
        from .corpus import are_isomorphic

        for ide, _ in pairs:
            sub = table.restrict(ide.members)
            lifted = unitize(sub)
            if not are_isomorphic(lifted, table):
                raise InconsistencyError(
                    "unitization of %r is not isomorphic to the algebra" % (ide,)
                )
    return pairs
