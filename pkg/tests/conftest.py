import random

import pytest

from grasscomplex.derivation import Derivation
from grasscomplex.field import CoprimeBase, Field
from grasscomplex.groups import Context


@pytest.fixture(scope="session")
def field():
    return Field(("t1", "t2"))


@pytest.fixture()
def rng():
    return random.Random(20240811)


@pytest.fixture()
def ctx(field):
    """Fresh context per test: shared field, fresh atom base."""
    return Context(field, Derivation.special_two_variable(field), CoprimeBase(field))


def make_ctx(field, derivation=None):
    if derivation is None:
        derivation = Derivation.special_two_variable(field)
    return Context(field, derivation, CoprimeBase(field))
