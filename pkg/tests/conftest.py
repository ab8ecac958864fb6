import random

import pytest

from ssetool.games import Arena, Coloring, ParityGame
from ssetool.strategies import ALL, MealyMachine

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])


@pytest.fixture
def rng():
    return random.Random(20261015)


def loop_game(color=0):
    arena = Arena(["p"], ["v"], {"v": "p"}, [("v", "v")], "v")
    return ParityGame(arena, {"p": Coloring({"v": color})})


def one_state(arena, choice):
    """All-players machine with a single state playing `choice[u]` at u."""
    table = {("q", u): [("q", choice[u])] for u in arena.vertices}
    return MealyMachine(ALL, ["q"], "q", table)
