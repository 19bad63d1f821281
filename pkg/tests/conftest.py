import pytest

from src.bimould import EvalBackend, ExactBackend


@pytest.fixture
def exact2():
    return ExactBackend(2)


@pytest.fixture
def exact3():
    return ExactBackend(3)


@pytest.fixture
def eval4():
    return EvalBackend(4)
