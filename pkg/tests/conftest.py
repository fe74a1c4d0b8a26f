import pytest

from charkit.chartab import character_table
from charkit.corpus import corpus_group


@pytest.fixture(scope="session")
def table_of():
    """Character table of a corpus group by name (memoized library-side)."""

    def get(name):
        return character_table(corpus_group(name))

    return get
