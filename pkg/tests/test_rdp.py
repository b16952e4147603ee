from peal.constructions import chain_table
from peal.core import induced_order
from peal.rdp import check_rdp, check_rdp0, check_rdp1, rdp_report


def brute_rdp0(table):
    """Independent oracle: exhaustive search over all (d1, d2) splits."""
    order = induced_order(table)
    for b1 in table.elements:
        for b2 in table.elements:
            s = table.add(b1, b2)
            if s is None:
                continue
            for a in table.elements:
                if not order.le(a, s):
                    continue
                if not any(
                    order.le(d1, b1) and order.le(d2, b2) and table.add(d1, d2) == a
                    for d1 in table.elements
                    for d2 in table.elements
                ):
                    return False, (a, b1, b2)
    return True, None


def brute_rdp(table):
    """Independent oracle: full quadruple search for the refinement matrix."""
    order = induced_order(table)
    els = table.elements
    for a1 in els:
        for a2 in els:
            s = table.add(a1, a2)
            if s is None:
                continue
            for b1 in els:
                for b2 in els:
                    if table.add(b1, b2) != s:
                        continue
                    found = any(
                        table.add(c11, c12) == a1
                        and table.add(c21, c22) == a2
                        and table.add(c11, c21) == b1
                        and table.add(c12, c22) == b2
                        for c11 in els
                        for c12 in els
                        for c21 in els
                        for c22 in els
                    )
                    if not found:
                        return False
    return True


def test_diamond_fails_rdp0(diamond):
    ok, witness = check_rdp0(diamond)
    assert not ok
    assert brute_rdp0(diamond)[0] is False
    # the reported witness really has no split
    a, b1, b2 = witness
    order = induced_order(diamond)
    assert order.le(a, diamond.add(b1, b2))
    assert not any(
        order.le(d1, b1) and order.le(d2, b2) and diamond.add(d1, d2) == a
        for d1 in diamond.elements
        for d2 in diamond.elements
    )


def test_boolean4_satisfies_all(boolean4):
    rep = rdp_report(boolean4)
    assert rep.rdp0 and rep.rdp and rep.rdp1


def test_chains_satisfy_all():
    for n in range(1, 7):
        rep = rdp_report(chain_table(n))
        assert rep.rdp0 and rep.rdp and rep.rdp1


def test_diamond_fails_rdp_and_rdp1(diamond):
    assert not check_rdp(diamond)[0]
    assert not check_rdp1(diamond)[0]
    assert brute_rdp(diamond) is False


def test_rdp_matches_brute_oracle(pea_corpus_small):
    for table in pea_corpus_small:
        if table.size > 5:
            continue  # the quadruple-of-quadruples oracle is O(k^8)
        assert check_rdp(table)[0] == brute_rdp(table)
        assert check_rdp0(table)[0] == brute_rdp0(table)[0]


def test_implication_chain_on_corpus(pea_corpus_small):
    for table in pea_corpus_small:
        rep = rdp_report(table)  # constructor enforces rdp1 => rdp => rdp0
        if all(table.add(a, b) == table.add(b, a) for a in table.elements for b in table.elements):
            assert rep.rdp == rep.rdp1
