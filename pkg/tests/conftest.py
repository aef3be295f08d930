import pytest

from tablr import corpus
from tablr.grammar import augment
from tablr.pipeline import build_parser
from tablr.twolr import build_a_2lr


@pytest.fixture(scope="session")
def grammars():
    return corpus.all_grammars()


@pytest.fixture(scope="session")
def g_ab():
    return corpus.grammar("ab")


@pytest.fixture(scope="session")
def g_ab_aug(g_ab):
    return augment(g_ab)


@pytest.fixture(scope="session")
def two_ab(g_ab_aug):
    return build_a_2lr(g_ab_aug)


@pytest.fixture(scope="session")
def parsers(grammars):
    return {(name, method): build_parser(g, method)
            for name, g in grammars.items() for method in ("blr", "2lr")}


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE, report_line
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(report_line(number))
