import pytest

from riskctl import builtin_paper_model


@pytest.fixture()
def model():
    return builtin_paper_model()
