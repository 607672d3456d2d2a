import pytest

from blstate.corpus import default_corpus


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def corpus_by_name(corpus):
    return {inst.name: inst for inst in corpus}
