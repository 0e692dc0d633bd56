import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

# exact arithmetic on worst-case inputs can be slow on loaded machines;
# correctness, not latency, is what these properties check
settings.register_profile("knotcert", deadline=None, derandomize=True)
settings.load_profile("knotcert")


def letters_strategy(max_gen: int = 4):
    return st.integers(min_value=1, max_value=max_gen).flatmap(
        lambda g: st.sampled_from([g, -g])
    )


def words_strategy(max_gen: int = 4, max_len: int = 12):
    return st.lists(letters_strategy(max_gen), max_size=max_len).map(tuple)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
