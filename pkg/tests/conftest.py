import json
from importlib import resources

import pytest

from redprimes.newforms import load_newform


def _fixture(label):
    doc = json.loads(resources.files("redprimes").joinpath(f"data/{label}.json").read_text())
    return load_newform(doc)


@pytest.fixture(scope="session")
def f77a():
    return _fixture("7.7.b.a")


@pytest.fixture(scope="session")
def f77b():
    return _fixture("7.7.b.b")


@pytest.fixture(scope="session")
def f354():
    return _fixture("35.4.a")
