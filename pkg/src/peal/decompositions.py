"""n-decompositions of finite PEAs, their bijection with discrete states,
comparability, n-perfectness, condition (e), and the canonical-chain collapse
of finite n-perfect algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from .core import (
    InconsistencyError,
    InputError,
    PartialAdditionTable,
    complements,
    induced_order,
    isotropic_data,
)
from . import ideals as ideals_mod
from . import states as states_mod


@dataclass(frozen=True)
class Decomposition:
    """Ordered partition (E_0, ..., E_n) of the carrier."""

    parts: Tuple[FrozenSet[str], ...]

    @property
    def n(self) -> int:
        return len(self.parts) - 1

    def label_of(self, a: str) -> int:
        for i, part in enumerate(self.parts):
            if a in part:
                return i
        raise InputError("element %r not in any part" % (a,))

    def __repr__(self):
        return "Decomposition(%s)" % ", ".join(
            "{%s}" % ",".join(sorted(p)) for p in self.parts
        )


def validate_decomposition(table: PartialAdditionTable, D: Decomposition) -> None:
    """Check the partition conditions (disjoint, covering, complement-matched,
    additive) plus nonemptiness; raise on the first failure."""
    n = D.n
    if n < 1:
        raise InputError("decomposition needs at least two parts")
    seen: Dict[str, int] = {}
    for i, part in enumerate(D.parts):
        if not part:
            raise InputError("part E_%d is empty" % (i,))
        for a in part:
            if a in seen:
                raise InputError("element %r in both E_%d and E_%d" % (a, seen[a], i))
            seen[a] = i
    if set(seen) != set(table.elements):
        raise InputError("parts do not cover the carrier")
    for i, part in enumerate(D.parts):
        for a in part:
            minus, tilde = complements(table, a)
            if seen[minus] != n - i or seen[tilde] != n - i:
                raise InputError(
                    "complements of %r land outside E_%d" % (a, n - i)
                )
    for ai, bj, s in table.defined_sums():
        a, b, c = table.elements[ai], table.elements[bj], table.elements[s]
        if seen[a] + seen[b] > n or seen[c] != seen[a] + seen[b]:
            raise InputError("sum %r + %r = %r violates additivity of parts" % (a, b, c))


def find_decompositions(table: PartialAdditionTable, n: int) -> List[Decomposition]:
    """All n-decompositions, by the shared labeling search; each result is
    re-validated against the partition conditions before being returned."""
    result = []
    for labels in states_mod.discrete_labelings(table, n):
        parts = tuple(
            frozenset(
                table.elements[i] for i in range(table.size) if labels[i] == v
            )
            for v in range(n + 1)
        )
        D = Decomposition(parts)
        validate_decomposition(table, D)
        result.append(D)
    return result


def decomposition_state_bijection(table: PartialAdditionTable, n: int):
    """The bijection D_n(E) <-> S_n(E): each decomposition is paired with its
    induced state and the two constructions are verified mutually inverse."""
    decomps = find_decompositions(table, n)
    states = states_mod.enumerate_discrete_states(table, n)
    if len(decomps) != len(states):
        raise InconsistencyError(
            "|D_n| = %d but |S_n| = %d" % (len(decomps), len(states))
        )
    pairs = []
    state_set = set(states)
    for D in decomps:
        vals = {}
        for i, part in enumerate(D.parts):
            for a in part:
                vals[a] = Fraction(i, n)
        s = states_mod.StateVector(table, vals)
        if s not in state_set:
            raise InconsistencyError("decomposition-induced state not enumerated")
        back = Decomposition(
            tuple(
                frozenset(e for e in table.elements if s(e) == Fraction(i, n))
                for i in range(n + 1)
            )
        )
        if back != D:
            raise InconsistencyError("state preimages do not recover the decomposition")
        pairs.append((D, s))
    for s in states:
        D = Decomposition(
            tuple(
                frozenset(e for e in table.elements if s(e) == Fraction(i, n))
                for i in range(n + 1)
            )
        )
        if D not in {d for d, _ in pairs}:
            raise InconsistencyError("state has no matching decomposition")
    return pairs


@dataclass(frozen=True)
class ComparabilityReport:
    comparable: bool
    sums_exist: bool
    witness: Optional[Tuple[str, ...]]
    e0_is_infinit: Optional[bool] = None
    e0_normal: Optional[bool] = None
    sums_onto: Optional[bool] = None
    no_high_sums: Optional[bool] = None
    sampled: bool = False
    samples: int = 0


def check_comparability(table_or_symbolic, D: Decomposition, seed: int = 0, samples: int = 2000):
    """Comparability check of a decomposition.

    Decides (A) E_0 <= ... <= E_n and (B) E_i + E_j exists whenever i+j < n,
    asserts A <=> B, and when they hold verifies the three consequences
    (E_0 = Infinit(E) and normal; E_i + E_j = E_{i+j} below n; no sums above n).
    Symbolic algebras get the sampled variant.
    """
    if hasattr(table_or_symbolic, "sample_member"):
        return table_or_symbolic.check_comparability_sampled(seed=seed, samples=samples)
    table: PartialAdditionTable = table_or_symbolic
    validate_decomposition(table, D)
    order = induced_order(table)
    n = D.n
    comparable = True
    witness = None
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            for a in D.parts[i]:
                for b in D.parts[j]:
                    if not order.le(a, b):
                        comparable = False
                        if witness is None:
                            witness = (a, b)
    sums_exist = all(
        table.defined(a, b)
        for i in range(n + 1)
        for j in range(n + 1)
        if i + j < n
        for a in D.parts[i]
        for b in D.parts[j]
    )
    if comparable != sums_exist:
        raise InconsistencyError(
            "comparability biconditional failed: chain %s, sums %s"
            % (comparable, sums_exist)
        )
    if not comparable:
        return ComparabilityReport(False, sums_exist, witness)
    _, infinit = isotropic_data(table)
    e0_is_infinit = D.parts[0] == infinit
    e0_normal = (
        ideals_mod.is_ideal(table, D.parts[0])[0]
        and ideals_mod.is_normal(table, D.parts[0])[0]
    )
    sums_onto = True
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j >= n:
                continue
            image = {table.add(a, b) for a in D.parts[i] for b in D.parts[j]}
            if image != set(D.parts[i + j]):
                sums_onto = False
    no_high = all(
        not table.defined(a, b)
        for i in range(n + 1)
        for j in range(n + 1)
        if i + j > n
        for a in D.parts[i]
        for b in D.parts[j]
    )
    if not (e0_is_infinit and e0_normal and sums_onto and no_high):
        raise InconsistencyError(
            "comparability consequences failed: infinit=%s normal=%s onto=%s high=%s"
            % (e0_is_infinit, e0_normal, sums_onto, no_high)
        )
    return ComparabilityReport(
        True, True, None, e0_is_infinit, e0_normal, sums_onto, no_high
    )


@dataclass(frozen=True)
class NPerfectCertificate:
    decomposition: Optional[Decomposition]
    maximal_ideals: Tuple[Tuple[str, ...], ...]
    reason: Optional[str] = None


def is_n_perfect(table: PartialAdditionTable, n: int):
    """Literal n-perfectness: some n-decomposition has all sums E_i + E_j
    defined for i+j < n and E_0 equal to the unique maximal ideal."""
    maximal = tuple(
        tuple(i.sorted_ids())
        for i in ideals_mod.enumerate_ideals(table)
        if i.maximal
    )
    decomps = find_decompositions(table, n)
    if not decomps:
        return False, NPerfectCertificate(None, maximal, "no n-decomposition")
    for D in decomps:
        sums_exist = all(
            table.defined(a, b)
            for i in range(n + 1)
            for j in range(n + 1)
            if i + j < n
            for a in D.parts[i]
            for b in D.parts[j]
        )
        if not sums_exist:
            continue
        if len(maximal) == 1 and set(maximal[0]) == set(D.parts[0]):
            return True, NPerfectCertificate(D, maximal)
    return False, NPerfectCertificate(
        None, maximal, "no decomposition satisfies the sum and ideal conditions"
    )


def check_condition_e(table: PartialAdditionTable, D: Decomposition) -> bool:
    """Per-part directedness, both directions."""
    validate_decomposition(table, D)
    order = induced_order(table)
    for part in D.parts:
        for x in part:
            for y in part:
                if not any(order.le(x, z) and order.le(y, z) for z in part):
                    return False
                if not any(order.le(z, x) and order.le(z, y) for z in part):
                    return False
    return True


@dataclass(frozen=True)
class ChainReport:
    ok: bool
    refusal: Optional[str] = None
    c: Optional[str] = None
    chain: Optional[Tuple[str, ...]] = None
    quotient_is_chain: Optional[bool] = None


def canonical_chain_report(table: PartialAdditionTable, n: int) -> ChainReport:
    """For an n-perfect table with condition (e), certify the collapse
    E = {0, c, ..., nc} and that the quotient by E_0 is the n-chain.

    Finiteness supplies the descending-chain condition, so once the
    hypotheses hold the certificate must succeed; any internal failure is an
    inconsistency, while failed hypotheses yield a refusal."""
    perfect, cert = is_n_perfect(table, n)
    if not perfect:
        return ChainReport(False, refusal="not %d-perfect: %s" % (n, cert.reason))
    D = cert.decomposition
    if not check_condition_e(table, D):
        return ChainReport(False, refusal="condition (e) fails")
    order = induced_order(table)

    def least_of(part):
        cands = [x for x in part if all(order.le(x, y) for y in part)]
        return cands[0] if len(cands) == 1 else None

    c = least_of(D.parts[1])
    if c is None:
        raise InconsistencyError("E_1 has no least element despite condition (e)")
    multiples = [table.zero]
    cur = table.zero
    for _ in range(n):
        cur = table.add(cur, c)
        if cur is None:
            raise InconsistencyError("ic undefined while building the chain")
        multiples.append(cur)
    for i in range(n + 1):
        part = D.parts[i]
        ic = multiples[i]
        if ic not in part or not all(order.le(ic, y) for y in part):
            raise InconsistencyError("%d*c is not least in E_%d" % (i, i))
        minus, tilde = complements(table, ic)
        if minus != tilde:
            raise InconsistencyError("(ic)~ != (ic)- at i=%d" % (i,))
        top = D.parts[n - i]
        if not all(order.le(y, tilde) for y in top):
            raise InconsistencyError("(ic)~ not greatest in E_%d" % (n - i,))
        interval = {
            e
            for e in table.elements
            if order.le(multiples[i], e)
            and order.le(e, complements(table, multiples[n - i])[1])
        }
        if interval != set(part):
            raise InconsistencyError("E_%d is not the interval [ic, ((n-i)c)~]" % (i,))
    if set(multiples) != set(table.elements):
        raise InconsistencyError("E != {0, c, ..., nc}")

    from .constructions import chain_table
    from .corpus import are_isomorphic

    q, _, _ = ideals_mod.quotient(table, D.parts[0])
    quotient_is_chain = are_isomorphic(q, chain_table(n))
    if not quotient_is_chain:
        raise InconsistencyError("quotient by E_0 is not the %d-chain" % (n,))
    return ChainReport(True, c=c, chain=tuple(multiples), quotient_is_chain=True)
