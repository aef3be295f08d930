import json

import pytest

from helpers import catalan
from tablr.forest import (Forest, InfiniteAmbiguity, ParseTree, _rank, count_parses,
                          extract_trees)
from tablr.grammar import BEGIN, END, parse_grammar, sentences_up_to
from tablr.oracle import count_derivations
from tablr.pipeline import build_parser


def parse(parsers, name, text, method="2lr"):
    p = parsers[name, method]
    table, _ = p.recognize(text)
    return table, p.cover


def test_ab_single_tree(parsers):
    for method in ("2lr", "blr"):
        trees = extract_trees(*parse(parsers, "ab", "a b", method))
        assert {str(t) for t in trees} == {"S(a S() b)"}


def test_ab_empty(parsers):
    assert {str(t) for t in extract_trees(*parse(parsers, "ab", ""))} == {"S()"}


def test_amb_aaa(parsers):
    trees = extract_trees(*parse(parsers, "amb", "a a a"))
    assert {str(t) for t in trees} == {"S(S(S(a) S(a)) S(a))", "S(S(a) S(S(a) S(a)))"}


def test_counts(parsers):
    assert count_parses(*parse(parsers, "amb", "a a a a")) == 5
    assert count_parses(*parse(parsers, "ab", "a a b b")) == 1
    assert count_parses(*parse(parsers, "ab", "a b b")) == 0
    assert extract_trees(*parse(parsers, "ab", "b a")) == set()


def test_catalan_both_methods(parsers):
    for method in ("2lr", "blr"):
        for n in range(1, 8):
            assert count_parses(*parse(parsers, "amb", " ".join("a" * n), method)) == catalan(n - 1)


def test_count_matches_enumeration_and_oracle(parsers, grammars):
    source_rules = {name: {(r.lhs, r.rhs) for r in g.rules} for name, g in grammars.items()}
    for (name, method), p in parsers.items():
        g = grammars[name]
        for v in sentences_up_to(sorted(g.terminals), 5 if name != "amb" else 4):
            table, _ = p.recognize(v)
            forest = Forest(table, p.cover)
            trees = list(forest.trees())
            assert forest.count() == len(trees) == len(set(trees)) == count_derivations(g, v)
            for tree in trees:
                assert tree.label == g.start
                assert tree.yield_() == v.tokens
                for lhs, rhs in tree.rules():
                    assert (lhs, rhs) in source_rules[name]
                    assert BEGIN not in rhs and END not in rhs


Q_SPLIT = """\
S -> X A c
S -> Y A d
X -> x
Y -> x
A -> a
A -> A a
"""


def test_q_choice_independence():
    """Pair symbols that differ only in their state yield the same trees."""
    p = build_parser(parse_grammar(Q_SPLIT))
    table, metrics = p.recognize("x a a c")
    assert metrics.accepted
    forest = Forest(table, p.cover)
    groups = {}
    for (i, j), cell in table.cells.items():
        for sym in cell:
            if sym in p.two_lr.pairs:
                groups.setdefault((sym.last, i, j), []).append(sym)
    shared = [(key, syms) for key, syms in groups.items() if len(syms) > 1]
    assert shared
    for (_, i, j), syms in shared:
        tree_sets = [set(forest.trees((sym, i, j))) for sym in syms]
        assert all(s == tree_sets[0] for s in tree_sets)
    assert forest.count() == count_derivations(p.grammar, "x a a c") == 1
    # the cover grammar by itself is ambiguous here; the choice removes it
    assert count_derivations(p.cover.cfg, "x a a c") > 1


def test_spurious_ambiguity_removed(parsers):
    p = parsers["amb", "2lr"]
    for n in (2, 3, 4):
        v = " ".join("a" * n)
        table, _ = p.recognize(v)
        assert count_derivations(p.cover.cfg, v) > Forest(table, p.cover).count() == catalan(n - 1)


def test_rank_prefers_smaller_state(parsers):
    p = parsers["amb", "2lr"]
    pairs = [s for s in p.two_lr.pairs]
    ordered = sorted(pairs, key=_rank)
    assert [q.state.id for q in ordered] == sorted(q.state.id for q in pairs)


def test_cyclic_grammar():
    g = parse_grammar("S -> S\nS -> a")
    p = build_parser(g)
    table, metrics = p.recognize("a")
    assert metrics.accepted
    with pytest.raises(InfiniteAmbiguity):
        Forest(table, p.cover).count()
    with pytest.raises(ValueError):
        count_derivations(g, "a")


def test_forest_json(parsers):
    table, cover = parse(parsers, "amb", "a a a")
    forest = Forest(table, cover)
    nodes = json.loads(forest.to_json())
    root = nodes[0]
    assert root["count"] == 2
    assert root["key"].endswith(" 0 3")
    keys = {n["key"] for n in nodes}
    for n in nodes:
        for alt in n["alternatives"]:
            assert set(alt["children"]) <= keys
    assert len(forest.packed()) == len(nodes)


def test_tree_str():
    assert str(ParseTree("S", (ParseTree("a"), ParseTree("S", ()), ParseTree("b")))) == "S(a S() b)"
