import pytest

from ppt import Trace, parse_program

P1_TEXT = """\
load.
#dynamic.
shoot | load | unload.
dead :- shoot, (not unload since load).
shoot :- dead.
#final.
:- not dead.
"""

# P1 without the choice rule: the shoot/dead cycle has no external support.
P2_TEXT = """\
load.
#dynamic.
dead :- shoot, (not unload since load).
shoot :- dead.
#final.
:- not dead.
"""

TARGET = Trace.of(["load"], ["shoot", "dead"])


@pytest.fixture(scope="session")
def p1():
    return parse_program(P1_TEXT)


@pytest.fixture(scope="session")
def p2():
    return parse_program(P2_TEXT)
