import pytest

from peal.constructions import boolean4_table, chain_table, diamond_table
from peal.corpus import generate_gpeas, generate_peas


@pytest.fixture(scope="session")
def diamond():
    return diamond_table()


@pytest.fixture(scope="session")
def boolean4():
    return boolean4_table()


@pytest.fixture(scope="session")
def chain3():
    return chain_table(3)


@pytest.fixture(scope="session")
def pea_corpus_small():
    """All PEAs up to 6 elements, for the faster unit-level sweeps."""
    return generate_peas(6)


@pytest.fixture(scope="session")
def pea_corpus_full():
    """All PEAs up to 7 elements (the acceptance corpus)."""
    return generate_peas(7)


@pytest.fixture(scope="session")
def gpea_corpus():
    """All GPEAs up to 5 elements."""
    return generate_gpeas(5)
