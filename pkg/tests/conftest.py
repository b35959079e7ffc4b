import pytest

from poset_automata.dtm import Dtm


def accepting_machine() -> Dtm:
    """Enters the accepting state on the first input symbol."""
    return Dtm(states=("q0", "qf"), initial="q0", accepting="qf",
               tape_alphabet=("_", "1"), input_alphabet=("1",), blank="_",
               rules=(("q0", "1", "qf", "1", "S"), ("q0", "_", "q0", "_", "S")))


def rejecting_machine() -> Dtm:
    """Loops in place forever; never accepts."""
    return Dtm(states=("q0", "qf"), initial="q0", accepting="qf",
               tape_alphabet=("_", "1"), input_alphabet=("1",), blank="_",
               rules=(("q0", "1", "q0", "1", "S"), ("q0", "_", "q0", "_", "S")))


def incrementing_machine() -> Dtm:
    """Walks right over 1s and writes a 1 on the first blank."""
    return Dtm(states=("q0", "qf"), initial="q0", accepting="qf",
               tape_alphabet=("_", "1"), input_alphabet=("1",), blank="_",
               rules=(("q0", "1", "q0", "1", "R"), ("q0", "_", "qf", "1", "S")))


@pytest.fixture
def tm_accepting():
    return accepting_machine()


@pytest.fixture
def tm_rejecting():
    return rejecting_machine()


@pytest.fixture
def tm_incrementing():
    return incrementing_machine()
