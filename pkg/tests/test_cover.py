import pytest
from hypothesis import given, settings, strategies as st

from tablr import corpus
from tablr.cover import (BLR, TWO_LR, build_cover, build_cover_blr, build_pred_tables,
                         cover_name, pred)
from tablr.grammar import Rule, augment, is_binary_form, parse_grammar
from tablr.lr import LrItem, build_a_lr_prime, build_r_lr
from tablr.pda import GATHERING, REDUCE, Pda, Transition


@pytest.fixture(scope="module")
def ab(two_ab):
    return two_ab, build_cover(two_ab.pda), build_pred_tables(two_ab.pda)


def test_cover_rules_ab(ab):
    two, cover, _ = ab
    rules = set(cover.cfg.rules)
    assert Rule(two.q_fin, (two.item("a", "S", "b"),)) in rules
    assert Rule(two.item(), ()) in rules
    a_sb = two.pair("a", {("S", "b")})
    assert Rule(two.item("a", "S", "b"), (a_sb, two.item("S", "b"))) in rules
    assert cover.start == two.q_fin and cover.init_nonterminal == two.q_in


def test_pred_tables_ab(ab):
    two, _, tables = ab
    a_sb = two.pair("a", {("S", "b")})
    assert a_sb in tables.triggered(two.q_in)
    assert two.item("S", "b") in tables.unconditional
    assert two.q_fin in tables.triggered(two.q_in)
    gathered = {t.rhs[0] for t in two.pda.transitions if t.kind == GATHERING}
    assert tables.unconditional == gathered


def test_pred(ab):
    two, _, tables = ab
    assert pred(tables, set()) == tables.unconditional
    got = pred(tables, {two.q_in})
    assert {two.pair("a", {("S", "b")}), two.item(), two.q_fin} | tables.unconditional <= got


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(sorted(corpus.TEXTS)), st.data())
def test_pred_monotone(name, data):
    pda = build_cover(build_parser_pda(name)).pda
    tables = build_pred_tables(pda)
    symbols = list(pda.stack_symbols)
    t1 = data.draw(st.sets(st.sampled_from(symbols), max_size=4))
    t2 = t1 | data.draw(st.sets(st.sampled_from(symbols), max_size=4))
    assert pred(tables, t1) <= pred(tables, t2) <= set(symbols)


def build_parser_pda(name):
    from tablr.twolr import build_a_2lr
    return build_a_2lr(augment(corpus.grammar(name))).pda


def test_blr_single():
    g_aug = augment(parse_grammar("S -> a"))
    lr = build_r_lr(g_aug)
    pda = build_a_lr_prime(g_aug, lr)
    cover = build_cover_blr(pda)
    assert Rule(lr.q_fin, (LrItem(Rule("S", ("a",)), 0),)) in cover.cfg.rules
    assert cover.method == BLR
    assert is_binary_form(cover.cfg)
    assert cover.transition_count == len(pda.transitions)


def test_bijection_all(grammars):
    for g in grammars.values():
        g_aug = augment(g)
        from tablr.twolr import build_a_2lr
        for pda, method in ((build_a_2lr(g_aug).pda, TWO_LR), (build_a_lr_prime(g_aug), BLR)):
            cover = build_cover(pda, method)
            assert is_binary_form(cover.cfg)
            flat = [t for ts in cover.rule_to_transitions.values() for t in ts]
            assert len(flat) == len(set(flat)) == len(pda.transitions)
            assert set(cover.rule_to_transitions) == set(cover.cfg.rules)
            assert set(cover.cfg.nonterminals) <= set(pda.stack_symbols)


def test_duplicates_collapse():
    # shifts on "a" from several pairs land in the same pair symbol
    from tablr.twolr import build_a_2lr
    pda = build_a_2lr(augment(corpus.grammar("amb"))).pda
    cover = build_cover(pda)
    assert len(cover.cfg.rules) < len(pda.transitions)
    assert cover.transition_count == len(pda.transitions)


def test_reduce_rejected():
    pda = Pda(frozenset(), ("p",), (Transition(("p",), None, ("p",), REDUCE),), "p", "p")
    with pytest.raises(ValueError):
        build_cover(pda)


def test_cover_names(ab):
    two, cover, _ = ab
    assert cover_name(two.q_in) == "[^|q0]"
    assert cover_name(two.item("a", "S", "b")) == "[a_S_b]"
    assert cover_name(two.item()) == "[ε]"
    assert cover_name(two.q_fin).startswith("[S|q")


def test_cover_text_round_trip(grammars):
    for g in grammars.values():
        from tablr.pipeline import build_parser
        for method in (BLR, TWO_LR):
            cover = build_parser(g, method).cover
            back = parse_grammar(cover.to_text())
            rename = {cover_name(s): s for s in cover.cfg.nonterminals}
            assert len(rename) == len(cover.cfg.nonterminals)
            assert {(rename[r.lhs], tuple(rename.get(x, x) for x in r.rhs)) for r in back.rules} \
                == set(cover.cfg.rules)
            assert back.start == cover_name(cover.start)
