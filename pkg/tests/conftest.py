import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0xE9)


@pytest.fixture
def data_dir(request):
    return request.path.parent / "data"
