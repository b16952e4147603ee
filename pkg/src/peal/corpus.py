"""Exhaustive small-model corpus: generation of all PEAs/GPEAs up to a size
cap, canonical labeling, and isomorphism testing.

Isomorphisms fix zero (and the unit); dedup works by lexicographic
minimization of the (order relation, addition table) encoding over admissible
relabelings.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator, List, Optional, Sequence, Tuple

from .core import InputError, PartialAdditionTable, check_axioms, induced_order

UNDEC = -2
UNDEF = -1

_NAMES = "abcdefghijklmnop"


def _middle_names(count: int) -> List[str]:
    return [_NAMES[i] for i in range(count)]


def _encode(table: PartialAdditionTable, perm: Sequence[int], positions: Sequence[int]):
    """Key of the table relabeled so that old index positions[i] becomes i."""
    old_of_new = list(positions)
    new_of_old = [0] * table.size
    for new, old in enumerate(old_of_new):
        new_of_old[old] = new
    leq = induced_order(table)._leq
    t = table._sums
    k = table.size
    order_part = tuple(
        leq[old_of_new[i]][old_of_new[j]] for i in range(k) for j in range(k)
    )
    add_part = tuple(
        -1 if t[old_of_new[i]][old_of_new[j]] is None else new_of_old[t[old_of_new[i]][old_of_new[j]]]
        for i in range(k)
        for j in range(k)
    )
    return order_part + add_part


def _element_profile(table: PartialAdditionTable, i: int):
    """Isomorphism-invariant fingerprint of one element; used to cut the
    permutation search without changing the induced equivalence."""
    leq = induced_order(table)._leq
    t = table._sums
    k = table.size
    return (
        sum(1 for j in range(k) if leq[j][i]),
        sum(1 for j in range(k) if leq[i][j]),
        sum(1 for j in range(k) if t[i][j] is not None),
        sum(1 for j in range(k) if t[j][i] is not None),
        t[i][i] is not None,
    )


def _candidate_perms(table: PartialAdditionTable, middles: List[int]):
    """Permutations of the middle elements compatible with sorting by the
    invariant profile.  The profile tuple leads the canonical key, so the
    lexicographic minimum is attained inside this family."""
    profiles = {i: _element_profile(table, i) for i in middles}
    blocks: List[List[int]] = []
    for i in sorted(middles, key=lambda i: profiles[i]):
        if blocks and profiles[blocks[-1][0]] == profiles[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    def rec(idx: int, acc: List[int]):
        if idx == len(blocks):
            yield list(acc)
            return
        for perm in permutations(blocks[idx]):
            yield from rec(idx + 1, acc + list(perm))
    yield from rec(0, [])


def _min_encoding(table: PartialAdditionTable):
    fixed = [table.zero_i]
    if table.one_i is not None and table.one_i != table.zero_i:
        fixed.append(table.one_i)
    middles = [i for i in range(table.size) if i not in fixed]
    profiles = {i: _element_profile(table, i) for i in middles}
    best = None
    best_perm: Optional[List[int]] = None
    for perm in _candidate_perms(table, middles):
        key = tuple(profiles[i] for i in perm) + _encode(table, perm, fixed + perm)
        if best is None or key < best:
            best, best_perm = key, perm
    if best_perm is None:
        best = _encode(table, (), fixed)
        best_perm = []
    return fixed, middles, best, best_perm


def canonical_key(table: PartialAdditionTable):
    """Lexicographically minimal (element profiles, order, addition) encoding
    over relabelings that fix zero and, when present, the unit."""
    if "canonical_key" in table._cache:
        return table._cache["canonical_key"]
    _, _, best, _ = _min_encoding(table)
    result = (table.size, table.one is not None, best)
    table._cache["canonical_key"] = result
    return result


def canonical_table(table: PartialAdditionTable) -> PartialAdditionTable:
    """A canonically labeled representative of the isomorphism class, with
    elements renamed 0, 1, a, b, ..."""
    fixed, middles, _, best_perm = _min_encoding(table)
    positions = fixed + best_perm
    names = ["0"]
    if len(fixed) == 2:
        names.append("1")
    names.extend(_middle_names(len(middles)))
    old_to_name = {old: names[new] for new, old in enumerate(positions)}
    sums = {}
    t = table._sums
    for i in range(table.size):
        for j in range(table.size):
            s = t[i][j]
            if s is not None:
                sums[(old_to_name[i], old_to_name[j])] = old_to_name[s]
    ordered = [old_to_name[old] for old in positions]
    one_name = "1" if len(fixed) == 2 else None
    return PartialAdditionTable(ordered, "0", one_name, sums)


def are_isomorphic(t1: PartialAdditionTable, t2: PartialAdditionTable) -> bool:
    return canonical_key(t1) == canonical_key(t2)


def _search(k: int, unital: bool) -> Iterator[List[List[int]]]:
    """Backtracking enumeration of all valid k-element tables (labeled).

    Sound pruning only (cancellation, partial associativity, complement
    feasibility); completeness of each leaf is certified afterwards by the
    real axiom checker.
    """
    lo = 2 if unital else 1
    t = [[UNDEC] * k for _ in range(k)]
    for a in range(k):
        t[0][a] = a
        t[a][0] = a
    if unital:
        for a in range(1, k):
            t[1][a] = UNDEF
            t[a][1] = UNDEF
    cells = [(a, b) for a in range(lo, k) for b in range(lo, k)]
    pairs_by_value: List[List[Tuple[int, int]]] = [[] for _ in range(k)]
    for a in range(k):
        pairs_by_value[a].append((0, a))
        if a != 0:
            pairs_by_value[a].append((a, 0))
    undec_row = [sum(1 for x in row if x == UNDEC) for row in t]
    undec_col = [sum(1 for r in range(k) if t[r][c] == UNDEC) for c in range(k)]

    def triple_ok(x: int, y: int, z: int) -> bool:
        xy = t[x][y]
        if xy == UNDEC:
            return True
        yz = t[y][z]
        if yz == UNDEC:
            return True
        if xy == UNDEF:
            lhs, lval = False, -1
        else:
            w = t[xy][z]
            if w == UNDEC:
                return True
            lhs, lval = w != UNDEF, w
        if yz == UNDEF:
            rhs, rval = False, -1
        else:
            w = t[x][yz]
            if w == UNDEC:
                return True
            rhs, rval = w != UNDEF, w
        if lhs != rhs:
            return False
        return not lhs or lval == rval

    def incident_ok(a: int, b: int) -> bool:
        for z in range(k):
            if not triple_ok(a, b, z):
                return False
        for x in range(k):
            if not triple_ok(x, a, b):
                return False
        for (x, y) in pairs_by_value[a]:
            if not triple_ok(x, y, b):
                return False
        for (y, z) in pairs_by_value[b]:
            if not triple_ok(a, y, z):
                return False
        return True

    def rec(pos: int) -> Iterator[List[List[int]]]:
        if pos == len(cells):
            yield [row[:] for row in t]
            return
        a, b = cells[pos]
        row = t[a]
        col = [t[r][b] for r in range(k)]
        candidates = [UNDEF]
        for v in range(1, k):
            if v == a or v == b:
                continue
            if v in row or v in col:
                continue  # cancellation
            candidates.append(v)
        for v in candidates:
            t[a][b] = v
            undec_row[a] -= 1
            undec_col[b] -= 1
            ok = True
            if v >= 0:
                pairs_by_value[v].append((a, b))
            if unital:
                # every non-unit row and column must eventually hit the unit
                if undec_row[a] == 0 and 1 not in t[a]:
                    ok = False
                if ok and undec_col[b] == 0 and not any(t[r][b] == 1 for r in range(k)):
                    ok = False
            if ok:
                ok = incident_ok(a, b)
            if ok:
                yield from rec(pos + 1)
            if v >= 0:
                pairs_by_value[v].pop()
            undec_row[a] += 1
            undec_col[b] += 1
            t[a][b] = UNDEC
    yield from rec(0)


def _table_from_matrix(matrix: List[List[int]], unital: bool) -> PartialAdditionTable:
    k = len(matrix)
    names = ["0"]
    if unital:
        names.append("1")
    names.extend(_middle_names(k - len(names)))
    sums = {}
    for i in range(k):
        for j in range(k):
            v = matrix[i][j]
            if v >= 0:
                sums[(names[i], names[j])] = names[v]
    return PartialAdditionTable(names, "0", "1" if unital else None, sums)


@lru_cache(maxsize=None)
def generate_peas(max_size: int, min_size: int = 2) -> Tuple[PartialAdditionTable, ...]:
    """All PEAs with min_size..max_size elements, one canonical table per
    isomorphism class, deterministically ordered.

    Tables are immutable, so the result is memoised process-wide.
    """
    if max_size < 2:
        raise InputError("a PEA needs at least the two elements 0 and 1")
    out: List[PartialAdditionTable] = []
    for k in range(max(2, min_size), max_size + 1):
        seen = set()
        sized: List[Tuple[object, PartialAdditionTable]] = []
        for matrix in _search(k, unital=True):
            table = _table_from_matrix(matrix, unital=True)
            if not check_axioms(table, "pea").passed:
                continue
            key = canonical_key(table)
            if key in seen:
                continue
            seen.add(key)
            sized.append((key, canonical_table(table)))
        sized.sort(key=lambda kv: kv[0])
        out.extend(tb for _, tb in sized)
    return tuple(out)


@lru_cache(maxsize=None)
def generate_gpeas(max_size: int, min_size: int = 1) -> Tuple[PartialAdditionTable, ...]:
    """All GPEAs with min_size..max_size elements up to isomorphism."""
    if max_size < 1:
        raise InputError("a GPEA needs at least the element 0")
    out: List[PartialAdditionTable] = []
    for k in range(max(1, min_size), max_size + 1):
        seen = set()
        sized: List[Tuple[object, PartialAdditionTable]] = []
        for matrix in _search(k, unital=False):
            table = _table_from_matrix(matrix, unital=False)
            if not check_axioms(table, "gpea").passed:
                continue
            key = canonical_key(table)
            if key in seen:
                continue
            seen.add(key)
            sized.append((key, canonical_table(table)))
        sized.sort(key=lambda kv: kv[0])
        out.extend(tb for _, tb in sized)
    return tuple(out)
