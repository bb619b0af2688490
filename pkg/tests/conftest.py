import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qtoric.chars import QuasitoricPair, enumerate_pairs

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_corpus(max_dim=4, bound=2):
    return [p for n in range(1, max_dim) for m in range(1, max_dim - n + 1) for p in enumerate_pairs(n, m, bound)]


CORPUS = small_corpus()


@st.composite
def valid_pairs(draw, max_dim=4):
    return draw(st.sampled_from(CORPUS if max_dim == 4 else small_corpus(max_dim)))


@pytest.fixture
def report(capsys):
    """Print straight to the terminal, bypassing capture."""
    def _print(line):
        with capsys.disabled():
            print(line)
    return _print
