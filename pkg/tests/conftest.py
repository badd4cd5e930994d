import random

import pytest
from hypothesis import strategies as st

from tamildep.core import PosTag
from tamildep.lexical import load_lexicon, load_suffix_table
from tamildep.pipeline import Pipeline

REAL_TAGS = [t for t in PosTag if t is not PosTag.UNK]


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def suffixes():
    return load_suffix_table()


@pytest.fixture(scope="session")
def pipeline():
    return Pipeline.load()


tag_lists = st.lists(st.sampled_from(REAL_TAGS), min_size=0, max_size=20)


def random_tags(rng: random.Random, max_len: int = 20, min_len: int = 0) -> list[PosTag]:
    return [rng.choice(REAL_TAGS) for _ in range(rng.randint(min_len, max_len))]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
