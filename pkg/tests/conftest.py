from pathlib import Path

import pytest

from lexicomp import DistanceParams, SegmentedForm, default_model

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def model():
    return default_model()


@pytest.fixture(scope="session")
def params(model):
    return DistanceParams(model=model)


def form(*tokens):
    return SegmentedForm(tokens=tuple(tokens))


@pytest.fixture(scope="session")
def data_dir():
    return DATA
