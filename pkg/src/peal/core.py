"""Finite partial algebras as explicit addition tables.

The central object is :class:`PartialAdditionTable`: a finite list of named
elements together with a partial binary addition, a zero, and (for
pseudo-effect algebras) a unit.  Elements are referenced by stable string
identifiers and internally by dense indices; all algorithms work on indices
and all arithmetic is exact.

Tables are immutable after construction.  Derived structure (axiom reports,
the induced order, complements, isotropic data) is memoised on the table, so
repeated queries over the same table are cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple


class PealError(Exception):
    """Base class for all library errors."""


class InputError(PealError):
    """Malformed document, table, or argument (distinct from axiom failure)."""


class PreconditionError(PealError):
    """Operation invoked on a structure that fails its stated preconditions."""


class InconsistencyError(PealError):
    """An internal cross-check failed; indicates a bug or corrupted input."""


class DifferenceUndefinedError(PealError):
    """Requested difference b-a for elements with a not below b."""


GPEA_AXIOMS = ("GP1", "GP2", "GP3", "GP4", "GP5")
PEA_AXIOMS = ("PE1", "PE2", "PE3", "PE4", "GP3", "GP4", "GP5")


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of an exhaustive axiom scan.

    ``violations`` holds one minimal witness per violated axiom, as pairs
    ``(axiom tag, tuple of element ids)``.
    """

    kind: str
    passed: bool
    violations: Tuple[Tuple[str, Tuple[str, ...]], ...]

    def __post_init__(self):
        if self.passed != (len(self.violations) == 0):
            raise InconsistencyError("AxiomReport passed flag contradicts violations")


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    witness: Optional[Tuple[str, ...]]
    sampled: bool = False
    samples: int = 0
    seed: Optional[int] = None


@dataclass(frozen=True)
class ElementInfo:
    element: str
    minus: Optional[str]  # left complement, PEA only
    tilde: Optional[str]  # right complement, PEA only
    iota: Optional[int]   # isotropic index; None means infinite


class OrderRelation:
    """The order induced by the partial addition: a <= b iff a + c = b for some c."""

    def __init__(self, table: "PartialAdditionTable", leq: List[List[bool]]):
        self.table = table
        self._leq = leq

    def le(self, a: str, b: str) -> bool:
        return self._leq[self.table.index(a)][self.table.index(b)]

    def le_i(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    @property
    def pairs(self) -> FrozenSet[Tuple[str, str]]:
        els = self.table.elements
        return frozenset(
            (els[i], els[j])
            for i in range(len(els))
            for j in range(len(els))
            if self._leq[i][j]
        )

    @property
    def strict_pairs(self) -> FrozenSet[Tuple[str, str]]:
        return frozenset((a, b) for a, b in self.pairs if a != b)

    @property
    def covering_pairs(self) -> FrozenSet[Tuple[str, str]]:
        """Pairs a < b with no element strictly between."""
        leq = self._leq
        els = self.table.elements
        k = len(els)
        covers = set()
        for i in range(k):
            for j in range(k):
                if i == j or not leq[i][j]:
                    continue
                if any(m != i and m != j and leq[i][m] and leq[m][j] for m in range(k)):
                    continue
                covers.add((els[i], els[j]))
        return frozenset(covers)

    def is_total(self) -> bool:
        k = len(self.table.elements)
        return all(
            self._leq[i][j] or self._leq[j][i] for i in range(k) for j in range(k)
        )

    def down_set(self, a: str) -> FrozenSet[str]:
        j = self.table.index(a)
        els = self.table.elements
        return frozenset(els[i] for i in range(len(els)) if self._leq[i][j])


class PartialAdditionTable:
    """A finite GPEA/PEA given by its partial Cayley table.

    The unit laws a+0 = 0+a = a are enforced at construction, so downstream
    code may rely on them.  Everything else is the business of
    :func:`check_axioms`.
    """

    __slots__ = ("elements", "zero", "one", "_sums", "_index", "_cache")

    def __init__(
        self,
        elements: Sequence[str],
        zero: str,
        one: Optional[str],
        sums: Mapping[Tuple[str, str], str],
    ):
        elements = tuple(str(e) for e in elements)
        if not elements:
            raise InputError("element list is empty")
        if len(set(elements)) != len(elements):
            raise InputError("duplicate element identifiers")
        index = {e: i for i, e in enumerate(elements)}
        if zero not in index:
            raise InputError("zero %r is not an element" % (zero,))
        if one is not None and one not in index:
            raise InputError("one %r is not an element" % (one,))
        if one is not None and one == zero:
            raise InputError("a unital table needs distinct zero and one")
        k = len(elements)
        table: List[List[Optional[int]]] = [[None] * k for _ in range(k)]
        for (a, b), c in sums.items():
            if a not in index or b not in index or c not in index:
                raise InputError("sum entry (%r, %r) -> %r references unknown element" % (a, b, c))
            i, j = index[a], index[b]
            if table[i][j] is not None and table[i][j] != index[c]:
                raise InputError("conflicting entries for %r + %r" % (a, b))
            table[i][j] = index[c]
        z = index[zero]
        for i in range(k):
            if table[i][z] != i or table[z][i] != i:
                raise InputError(
                    "unit law violated at construction: %r + 0 and 0 + %r must equal %r"
                    % (elements[i], elements[i], elements[i])
                )
        self.elements = elements
        self.zero = zero
        self.one = one
        self._sums = tuple(tuple(row) for row in table)
        self._index = index
        self._cache: Dict[str, object] = {}

    # -- basic access -------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def zero_i(self) -> int:
        return self._index[self.zero]

    @property
    def one_i(self) -> Optional[int]:
        return None if self.one is None else self._index[self.one]

    @property
    def is_unital(self) -> bool:
        return self.one is not None

    def index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise InputError("unknown element %r" % (a,)) from None

    def add(self, a: str, b: str) -> Optional[str]:
        c = self._sums[self.index(a)][self.index(b)]
        return None if c is None else self.elements[c]

    def add_i(self, i: int, j: int) -> Optional[int]:
        return self._sums[i][j]

    def defined(self, a: str, b: str) -> bool:
        return self._sums[self.index(a)][self.index(b)] is not None

    def defined_sums(self) -> Iterable[Tuple[int, int, int]]:
        for i, row in enumerate(self._sums):
            for j, c in enumerate(row):
                if c is not None:
                    yield i, j, c

    def __eq__(self, other):
        return (
            isinstance(other, PartialAdditionTable)
            and self.elements == other.elements
            and self.zero == other.zero
            and self.one == other.one
            and self._sums == other._sums
        )

    def __hash__(self):
        return hash((self.elements, self.zero, self.one, self._sums))

    def __repr__(self):
        kind = "PEA" if self.is_unital else "GPEA"
        return "<%s table on %d elements>" % (kind, self.size)

    # -- construction helpers ------------------------------------------

    @classmethod
    def build(
        cls,
        elements: Sequence[str],
        zero: str,
        one: Optional[str],
        sums: Mapping[Tuple[str, str], str],
    ) -> "PartialAdditionTable":
        """Like the constructor but fills in the unit-law entries itself."""
        full = dict(sums)
        for e in elements:
            full[(e, zero)] = e
            full[(zero, e)] = e
        return cls(elements, zero, one, full)

    def restrict(self, members: Iterable[str], one: Optional[str] = None) -> "PartialAdditionTable":
        """Sub-table on a subset of elements (sums kept when both operands and
        the result lie in the subset)."""
        keep = [e for e in self.elements if e in set(members)]
        sums = {}
        for a in keep:
            for b in keep:
                c = self.add(a, b)
                if c is not None and c in set(keep):
                    sums[(a, b)] = c
        return PartialAdditionTable(keep, self.zero, one, sums)


# -- axiom checking -----------------------------------------------------


def check_axioms(table: PartialAdditionTable, kind: str = "pea") -> AxiomReport:
    """Exhaustively verify the GPEA axioms (GP1-GP5) or PEA axioms (PE1-PE4).

    One minimal witness is reported per violated axiom.  Malformed input
    (asking for PEA checks on a table with no unit) raises
    :class:`InputError` instead of producing a report.
    """
    kind = kind.lower()
    if kind not in ("pea", "gpea"):
        raise InputError("kind must be 'pea' or 'gpea', got %r" % (kind,))
    cache_key = "axioms_" + kind
    if cache_key in table._cache:
        return table._cache[cache_key]  # type: ignore[return-value]
    if kind == "pea" and table.one is None:
        raise InputError("PEA axiom check requires a table with a unit")

    t = table._sums
    k = table.size
    els = table.elements
    z = table.zero_i
    violations: List[Tuple[str, Tuple[str, ...]]] = []

    def witness(tag, idxs):
        violations.append((tag, tuple(els[i] for i in idxs)))

    assoc_tag = "PE1" if kind == "pea" else "GP1"
    shift_tag = "PE3" if kind == "pea" else "GP2"

    # associativity biconditional
    found = None
    for a in range(k):
        for b in range(k):
            ab = t[a][b]
            for c in range(k):
                lhs = ab is not None and t[ab][c] is not None
                bc = t[b][c]
                rhs = bc is not None and t[a][bc] is not None
                if lhs != rhs or (lhs and t[ab][c] != t[a][bc]):
                    found = (a, b, c)
                    break
            if found:
                break
        if found:
            break
    if found:
        witness(assoc_tag, found)

    # shift representation: a+b = d+a = b+e for some d, e
    found = None
    for a in range(k):
        for b in range(k):
            s = t[a][b]
            if s is None:
                continue
            if not any(t[d][a] == s for d in range(k)):
                found = (a, b)
                break
            if not any(t[b][e] == s for e in range(k)):
                found = (a, b)
                break
        if found:
            break
    if found:
        witness(shift_tag, found)

    # cancellation
    found = None
    for a in range(k):
        seen: Dict[int, int] = {}
        for b in range(k):
            s = t[a][b]
            if s is None:
                continue
            if s in seen:
                found = (a, seen[s], b)
                break
            seen[s] = b
        if found:
            break
    if not found:
        for a in range(k):
            seen = {}
            for b in range(k):
                s = t[b][a]
                if s is None:
                    continue
                if s in seen:
                    found = (a, seen[s], b)
                    break
                seen[s] = b
            if found:
                break
    if found:
        witness("GP3", found)

    # positivity: a + b = 0 only for a = b = 0
    found = None
    for a in range(k):
        for b in range(k):
            if t[a][b] == z and (a != z or b != z):
                found = (a, b)
                break
        if found:
            break
    if found:
        witness("GP4", found)

    # unit laws (held by construction; re-checked for completeness)
    for a in range(k):
        if t[a][z] != a or t[z][a] != a:
            witness("GP5", (a,))
            break

    if kind == "pea":
        u = table.one_i
        found = None
        for a in range(k):
            ds = [d for d in range(k) if t[a][d] == u]
            es = [e for e in range(k) if t[e][a] == u]
            if len(ds) != 1 or len(es) != 1:
                found = (a,)
                break
        if found:
            witness("PE2", found)
        found = None
        for a in range(k):
            if a != z and (t[u][a] is not None or t[a][u] is not None):
                found = (a,)
                break
        if found:
            witness("PE4", found)

    report = AxiomReport(kind=kind, passed=not violations, violations=tuple(violations))
    table._cache[cache_key] = report
    return report


def _require_gpea(table: PartialAdditionTable) -> None:
    report = check_axioms(table, "gpea")
    if not report.passed:
        raise PreconditionError("table fails GPEA axioms: %r" % (report.violations[:1],))


def _require_pea(table: PartialAdditionTable) -> None:
    if table.one is None:
        raise PreconditionError("operation requires a PEA (table has no unit)")
    report = check_axioms(table, "pea")
    if not report.passed:
        raise PreconditionError("table fails PEA axioms: %r" % (report.violations[:1],))


# -- induced order ------------------------------------------------------


def induced_order(table: PartialAdditionTable) -> OrderRelation:
    """Order with a <= b iff a + c = b for some c.

    The equivalent left-witness form (d + a = b for some d) is computed as
    well; a mismatch between the two is reported as an inconsistency.
    """
    if "order" in table._cache:
        return table._cache["order"]  # type: ignore[return-value]
    _require_gpea(table)
    t = table._sums
    k = table.size
    right = [[False] * k for _ in range(k)]
    left = [[False] * k for _ in range(k)]
    for a in range(k):
        for c in range(k):
            s = t[a][c]
            if s is not None:
                right[a][s] = True
            s = t[c][a]
            if s is not None:
                left[a][s] = True
    for a in range(k):
        for b in range(k):
            if right[a][b] != left[a][b]:
                raise InconsistencyError(
                    "order witness mismatch at (%s, %s): right %s, left %s"
                    % (table.elements[a], table.elements[b], right[a][b], left[a][b])
                )
    # sanity: partial-order laws, guaranteed by the GPEA axioms
    for a in range(k):
        if not right[a][a]:
            raise InconsistencyError("induced order not reflexive")
        for b in range(k):
            if a != b and right[a][b] and right[b][a]:
                raise InconsistencyError("induced order not antisymmetric")
            if right[a][b]:
                for c in range(k):
                    if right[b][c] and not right[a][c]:
                        raise InconsistencyError("induced order not transitive")
    z = table.zero_i
    if not all(right[z][a] for a in range(k)):
        raise InconsistencyError("zero is not the least element")
    if table.one is not None and check_axioms(table, "pea").passed:
        u = table.one_i
        if not all(right[a][u] for a in range(k)):
            raise InconsistencyError("unit is not the greatest element")
    order = OrderRelation(table, right)
    table._cache["order"] = order
    return order


# -- complements, isotropic data, differences ---------------------------


def complements(table: PartialAdditionTable, a: str) -> Tuple[str, str]:
    """Left and right complement (a-, a~) with a- + a = 1 and a + a~ = 1."""
    _require_pea(table)
    t = table._sums
    u = table.one_i
    i = table.index(a)
    minus = [d for d in range(table.size) if t[d][i] == u]
    tilde = [d for d in range(table.size) if t[i][d] == u]
    if len(minus) != 1 or len(tilde) != 1:
        raise InconsistencyError("complement of %r is not unique" % (a,))
    return table.elements[minus[0]], table.elements[tilde[0]]


def is_symmetric(table_or_symbolic, seed: int = 0, samples: int = 2000) -> SymmetryReport:
    """Decide a- = a~ for all a; cross-checked against weak commutativity.

    Finite tables are scanned exhaustively; symbolic algebras are sampled
    (the report says so).  The two criteria must agree on every instance.
    """
    if hasattr(table_or_symbolic, "sample_member"):
        return table_or_symbolic.is_symmetric_sampled(seed=seed, samples=samples)
    table: PartialAdditionTable = table_or_symbolic
    _require_pea(table)
    comp_witness = None
    for a in table.elements:
        minus, tilde = complements(table, a)
        if minus != tilde:
            comp_witness = (a, minus, tilde)
            break
    cond_c_witness = None
    for a in table.elements:
        for b in table.elements:
            if table.defined(a, b) != table.defined(b, a):
                cond_c_witness = (a, b)
                break
        if cond_c_witness:
            break
    if (comp_witness is None) != (cond_c_witness is None):
        raise InconsistencyError(
            "symmetry criteria disagree: complements %r vs condition (C) %r"
            % (comp_witness, cond_c_witness)
        )
    if comp_witness is None:
        return SymmetryReport(symmetric=True, witness=None)
    return SymmetryReport(symmetric=False, witness=comp_witness)


def isotropic_data(
    table: PartialAdditionTable,
) -> Tuple[Dict[str, ElementInfo], FrozenSet[str]]:
    """Isotropic index of every element plus Infinit(E) = those of infinite index.

    The iteration is capped at |E|+1; reaching the cap in a finite table
    would contradict strict growth of multiples and raises an inconsistency.
    """
    if "iota" in table._cache:
        return table._cache["iota"]  # type: ignore[return-value]
    _require_gpea(table)
    t = table._sums
    z = table.zero_i
    unital = table.one is not None and check_axioms(table, "pea").passed
    info: Dict[str, ElementInfo] = {}
    infinite = []
    for i, a in enumerate(table.elements):
        if unital:
            minus, tilde = complements(table, a)
        else:
            minus = tilde = None
        if i == z:
            info[a] = ElementInfo(a, minus, tilde, None)
            infinite.append(a)
            continue
        m, count = i, 1
        while t[m][i] is not None:
            m = t[m][i]
            count += 1
            if count > table.size + 1:
                raise InconsistencyError("isotropic index iteration exceeded cap at %r" % (a,))
        info[a] = ElementInfo(a, minus, tilde, count)
    result = (info, frozenset(infinite))
    table._cache["iota"] = result
    return result


def difference(table: PartialAdditionTable, a: str, b: str, side: str = "left") -> str:
    """The difference of b by a: left gives b\\a (with (b\\a)+a = b), right
    gives a/b (with a+(a/b) = b).  Undefined unless a <= b."""
    _require_gpea(table)
    order = induced_order(table)
    if not order.le(a, b):
        raise DifferenceUndefinedError("difference requires %r <= %r" % (a, b))
    t = table._sums
    i, j = table.index(a), table.index(b)
    if side == "left":
        sols = [x for x in range(table.size) if t[x][i] == j]
    elif side == "right":
        sols = [x for x in range(table.size) if t[i][x] == j]
    else:
        raise InputError("side must be 'left' or 'right', got %r" % (side,))
    if len(sols) != 1:
        raise InconsistencyError("difference of %r by %r is not unique" % (b, a))
    return table.elements[sols[0]]


# -- document serialization ---------------------------------------------


def table_to_document(table: PartialAdditionTable) -> dict:
    doc = {
        "elements": list(table.elements),
        "zero": table.zero,
        "add": sorted([a, b, c] for a, b, c in (
            (table.elements[i], table.elements[j], table.elements[s])
            for i, j, s in table.defined_sums()
        )),
    }
    if table.one is not None:
        doc["one"] = table.one
    return doc


def table_from_document(doc: dict) -> PartialAdditionTable:
    if not isinstance(doc, dict):
        raise InputError("algebra document must be a JSON object")
    for key in ("elements", "zero", "add"):
        if key not in doc:
            raise InputError("algebra document missing %r" % (key,))
    sums = {}
    for entry in doc["add"]:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 3):
            raise InputError("add entries must be [a, b, c] triples, got %r" % (entry,))
        a, b, c = entry
        if (a, b) in sums and sums[(a, b)] != c:
            raise InputError("conflicting add entries for (%r, %r)" % (a, b))
        sums[(a, b)] = c
    return PartialAdditionTable(doc["elements"], doc["zero"], doc.get("one"), sums)


def dumps_document(doc: dict) -> str:
    """Canonical byte-stable rendering (sorted keys, sorted triples)."""
    doc = dict(doc)
    if "add" in doc:
        doc["add"] = sorted(list(t) for t in doc["add"])
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_table(path: str) -> PartialAdditionTable:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %r: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("cannot parse %r: %s" % (path, exc)) from None
    return table_from_document(doc)
