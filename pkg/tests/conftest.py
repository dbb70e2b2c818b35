import random

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--rng-seed",
        action="store",
        type=int,
        default=20207,
        help="seed for the randomized property tests",
    )


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--rng-seed"))
