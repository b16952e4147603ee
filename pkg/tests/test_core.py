import json

import pytest

from peal.core import (
    DifferenceUndefinedError,
    InputError,
    PartialAdditionTable,
    check_axioms,
    complements,
    difference,
    dumps_document,
    induced_order,
    is_symmetric,
    isotropic_data,
    table_from_document,
    table_to_document,
)


def test_construction_rejects_missing_unit_laws():
    with pytest.raises(InputError):
        PartialAdditionTable(["0", "a"], "0", None, {("0", "0"): "0"})


def test_construction_rejects_unknown_references():
    with pytest.raises(InputError):
        PartialAdditionTable.build(["0", "a"], "0", None, {("a", "x"): "a"})


def test_diamond_passes_pea_axioms(diamond):
    report = check_axioms(diamond, "pea")
    assert report.passed and report.violations == ()


def test_pe4_violation_witnessed():
    table = PartialAdditionTable.build(
        ["0", "a", "1"], "0", "1", {("a", "a"): "1", ("1", "a"): "a"}
    )
    report = check_axioms(table, "pea")
    assert not report.passed
    tags = {tag for tag, _ in report.violations}
    assert "PE4" in tags
    witness = dict(report.violations)["PE4"]
    assert witness == ("a",)


def test_pe1_violation_witnessed():
    # a+b defined, (a+b)+c defined, b+c undefined
    table = PartialAdditionTable.build(
        ["0", "a", "b", "c", "d", "1"],
        "0",
        "1",
        {
            ("a", "b"): "c",
            ("c", "c"): "1",
            ("a", "d"): "1",
            ("d", "a"): "1",
            ("b", "d"): "1", ("d", "b"): "1",
        },
    )
    report = check_axioms(table, "pea")
    assert not report.passed
    tags = {tag for tag, _ in report.violations}
    assert "PE1" in tags


def test_induced_order_diamond(diamond):
    # oracle: exhaustive witness search over the table
    expected = set()
    for a in diamond.elements:
        for b in diamond.elements:
            if any(diamond.add(a, c) == b for c in diamond.elements):
                expected.add((a, b))
    order = induced_order(diamond)
    assert order.pairs == frozenset(expected)
    assert order.le("a", "1") and order.le("0", "b")
    assert not order.le("a", "b") and not order.le("b", "a")


def test_order_reflexive_on_corpus(pea_corpus_small):
    for table in pea_corpus_small:
        order = induced_order(table)
        assert all(order.le(a, a) for a in table.elements)


def test_chain_total_order(chain3):
    assert induced_order(chain3).is_total()


def test_complements(diamond, boolean4):
    assert complements(diamond, "a") == ("a", "a")
    assert complements(diamond, "0") == ("1", "1")
    assert complements(boolean4, "a") == ("a'", "a'")


def test_double_complement_on_corpus(pea_corpus_small):
    for table in pea_corpus_small:
        for a in table.elements:
            minus, tilde = complements(table, a)
            assert complements(table, minus)[1] == a
            assert complements(table, tilde)[0] == a


def test_symmetry(diamond, boolean4):
    assert is_symmetric(diamond).symmetric
    assert is_symmetric(boolean4).symmetric


def test_symmetry_matches_weak_commutativity(pea_corpus_small):
    for table in pea_corpus_small:
        report = is_symmetric(table)  # raises if the two criteria disagree
        commutable = all(
            table.defined(a, b) == table.defined(b, a)
            for a in table.elements
            for b in table.elements
        )
        assert report.symmetric == commutable


def test_isotropic_data(diamond, boolean4):
    info, infinit = isotropic_data(diamond)
    assert infinit == frozenset({"0"})
    assert info["0"].iota is None
    assert info["a"].iota == 2  # a+a=1, 1+a undefined
    info, _ = isotropic_data(boolean4)
    assert info["a"].iota == 1  # a+a undefined


def test_difference(diamond, boolean4):
    assert difference(boolean4, "a", "1", "left") == "a'"
    assert difference(diamond, "a", "1", "right") == "a"
    for table in (diamond, boolean4):
        for b in table.elements:
            assert difference(table, "0", b, "left") == b
            assert difference(table, "0", b, "right") == b
    with pytest.raises(DifferenceUndefinedError):
        difference(diamond, "a", "b", "left")


def test_difference_identities_on_corpus(pea_corpus_small):
    for table in pea_corpus_small:
        order = induced_order(table)
        for a in table.elements:
            for b in table.elements:
                if not order.le(a, b):
                    continue
                left = difference(table, a, b, "left")
                right = difference(table, a, b, "right")
                assert table.add(left, a) == b
                assert table.add(a, right) == b


def test_document_roundtrip(diamond):
    doc = table_to_document(diamond)
    text = dumps_document(doc)
    again = table_from_document(json.loads(text))
    assert again == diamond
    assert dumps_document(table_to_document(again)) == text


def test_document_rejects_conflicts():
    doc = {
        "elements": ["0", "1"],
        "zero": "0",
        "one": "1",
        "add": [["0", "0", "0"], ["0", "1", "1"], ["1", "0", "1"], ["1", "0", "0"]],
    }
    with pytest.raises(InputError):
        table_from_document(doc)


def test_gpea_kind_checks():
    gpea = PartialAdditionTable.build(["0", "a", "b"], "0", None, {("a", "a"): "b"})
    assert check_axioms(gpea, "gpea").passed
    with pytest.raises(InputError):
        check_axioms(gpea, "pea")


def test_document_roundtrip_over_corpus(pea_corpus_small):
    for table in pea_corpus_small:
        text = dumps_document(table_to_document(table))
        again = table_from_document(json.loads(text))
        assert again == table
        assert dumps_document(table_to_document(again)) == text


def test_rejects_degenerate_unit():
    with pytest.raises(InputError):
        PartialAdditionTable(["0"], "0", "0", {("0", "0"): "0"})
