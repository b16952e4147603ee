from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hyp

from peal.constructions import chain_table
from peal.core import InputError
from peal.ideals import enumerate_ideals, is_ideal, is_normal
from peal.states import (
    StateVector,
    classify_state,
    enumerate_discrete_states,
    is_extremal,
    kernel,
    solve_state_space,
)


def brute_discrete_states(table, n):
    """Independent oracle: filter all (n+1)^k value assignments."""
    values = [Fraction(i, n) for i in range(n + 1)]
    found = []
    for combo in product(values, repeat=table.size):
        vals = dict(zip(table.elements, combo))
        if vals[table.zero] != 0 or vals[table.one] != 1:
            continue
        if set(vals.values()) != set(values):
            continue
        ok = all(
            vals[table.elements[i]] + vals[table.elements[j]] == vals[table.elements[s]]
            for i, j, s in table.defined_sums()
        )
        if ok:
            found.append(tuple(combo))
    return found


def test_diamond_unique_state(diamond):
    space = solve_state_space(diamond)
    assert space.consistent and space.dimension == 0
    assert len(space.extremal_states) == 1
    s = space.extremal_states[0]
    assert s("a") == s("b") == Fraction(1, 2)
    cls = classify_state(diamond, s)
    assert cls.discrete and cls.n == 2


def test_boolean4_state_family(boolean4):
    space = solve_state_space(boolean4)
    assert space.dimension == 1
    # the single free parameter is one of the middle elements
    free = space.free_elements[0]
    assert free in ("a", "a'")
    vals = {s(free) for s in space.extremal_states}
    assert vals == {Fraction(0), Fraction(1)}
    # the family is s(a) = t, s(a') = 1 - t
    other = "a'" if free == "a" else "a"
    assert space.particular[other] + space.basis[0][other] * 0 == space.particular[other]
    assert space.basis[0][other] == -1


def test_two_chain_unique_state():
    space = solve_state_space(chain_table(1))
    assert space.dimension == 0 and len(space.extremal_states) == 1


def test_discrete_states_boolean4(boolean4):
    one = enumerate_discrete_states(boolean4, 1)
    assert len(one) == 1 + 1
    assert {s("a") for s in one} == {Fraction(0), Fraction(1)}
    two = enumerate_discrete_states(boolean4, 2)
    assert len(two) == 1 and two[0]("a") == Fraction(1, 2)
    assert len(brute_discrete_states(boolean4, 1)) == 2
    assert len(brute_discrete_states(boolean4, 2)) == 1


def test_discrete_states_diamond(diamond):
    assert enumerate_discrete_states(diamond, 1) == []
    assert len(enumerate_discrete_states(diamond, 2)) == 1
    assert len(brute_discrete_states(diamond, 2)) == 1


def test_discrete_states_match_brute(pea_corpus_small):
    for table in pea_corpus_small:
        if table.size > 5:
            continue
        for n in (1, 2, 3):
            assert len(enumerate_discrete_states(table, n)) == len(
                brute_discrete_states(table, n)
            )


def test_discrete_rejects_zero():
    with pytest.raises(InputError):
        enumerate_discrete_states(chain_table(2), 0)


def test_classification_non_discrete(boolean4):
    s = StateVector(
        boolean4,
        {"0": Fraction(0), "a": Fraction(2, 5), "a'": Fraction(3, 5), "1": Fraction(1)},
    )
    cls = classify_state(boolean4, s)
    assert not cls.discrete
    assert cls.gap_witness == (Fraction(2, 5), Fraction(3, 5), Fraction(1, 5))


def test_two_valued_always_discrete(boolean4):
    for s in enumerate_discrete_states(boolean4, 1):
        cls = classify_state(boolean4, s)
        assert cls.discrete and cls.n == 1


@settings(max_examples=60, deadline=None)
@given(num=hyp.integers(min_value=0, max_value=60), den=hyp.integers(min_value=1, max_value=60))
def test_classification_criteria_agree_on_random_states(num, den):
    # classify_state itself asserts the three-way agreement; feeding it the
    # whole rational family on boolean4 exercises that assertion
    from peal.constructions import boolean4_table

    t = Fraction(num, den)
    if t > 1:
        t = 1 / t
    table = boolean4_table()
    s = StateVector(table, {"0": Fraction(0), "a": t, "a'": 1 - t, "1": Fraction(1)})
    classify_state(table, s)


def test_extremality(boolean4, diamond):
    s = StateVector(
        boolean4,
        {"0": Fraction(0), "a": Fraction(1, 2), "a'": Fraction(1, 2), "1": Fraction(1)},
    )
    rep = is_extremal(boolean4, s)
    assert not rep.extremal
    s1, s2 = rep.witness
    assert s1 != s2
    assert {s1("a"), s2("a")} == {Fraction(0), Fraction(1)}
    for e in boolean4.elements:
        assert s(e) * 2 == s1(e) + s2(e)
    for vertex in solve_state_space(boolean4).extremal_states:
        assert is_extremal(boolean4, vertex).extremal
    assert is_extremal(diamond, solve_state_space(diamond).extremal_states[0]).extremal


def test_kernel(boolean4, diamond):
    s0 = enumerate_discrete_states(boolean4, 1)[0]
    ker = kernel(boolean4, s0)
    assert ker == frozenset({"0", "a"})
    assert is_ideal(boolean4, ker)[0] and is_normal(boolean4, ker)[0]
    assert kernel(diamond, solve_state_space(diamond).extremal_states[0]) == frozenset({"0"})


def test_kernels_in_ideal_lattice(pea_corpus_small):
    for table in pea_corpus_small:
        lattice = {i.members for i in enumerate_ideals(table)}
        for s in solve_state_space(table).extremal_states:
            assert kernel(table, s) in lattice


def test_state_validation_rejects_non_additive(boolean4):
    with pytest.raises(InputError):
        StateVector(
            boolean4,
            {"0": Fraction(0), "a": Fraction(1, 2), "a'": Fraction(1, 4), "1": Fraction(1)},
        )


def test_refuses_oversized_parameter_space():
    # 13 independent complement pairs -> 13 free parameters, above the cap
    from peal.core import PartialAdditionTable, PreconditionError

    names = ["0", "1"]
    sums = {}
    for i in range(13):
        x, y = "x%d" % i, "y%d" % i
        names += [x, y]
        sums[(x, y)] = "1"
        sums[(y, x)] = "1"
    table = PartialAdditionTable.build(names, "0", "1", sums)
    with pytest.raises(PreconditionError):
        solve_state_space(table)
