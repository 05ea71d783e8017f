import pytest

from qkforms import kraines_form, standard_frame


@pytest.fixture(scope="session")
def kd1():
    return kraines_form(standard_frame(1))


@pytest.fixture(scope="session")
def kd2():
    return kraines_form(standard_frame(2))


@pytest.fixture(scope="session")
def kd3():
    return kraines_form(standard_frame(3))
