"""Small grammars bundled for tests, benchmarks and the ``check`` command."""
from .grammar import Cfg, parse_grammar

G_AB = """\
S -> a S b
S ->
"""

G_AMB = """\
S -> S S
S -> a
"""

G_UNIT = """\
S -> A
A -> a
"""

# LR(0): no state holds a completed item next to anything else
G_ARITH = """\
E -> E + T
E -> T
T -> a
T -> ( E )
"""

# reduce/reduce conflict between A -> a and B -> a, resolved by nothing;
# both continuations end in the shared suffix "c d"
G_SUFFIX = """\
S -> A c d
S -> B c d
A -> a
B -> a
"""

TEXTS = {
    "ab": G_AB,
    "amb": G_AMB,
    "unit": G_UNIT,
    "arith": G_ARITH,
    "suffix": G_SUFFIX,
}


def grammar(name: str) -> Cfg:
    return parse_grammar(TEXTS[name])


def all_grammars() -> dict:
    return {name: parse_grammar(text) for name, text in TEXTS.items()}
