"""Cover grammars: one binary-form rule per automaton transition, plus the
``pred`` filter that restricts the chart to what the automaton could push.
"""
from __future__ import annotations

from dataclasses import dataclass

from .grammar import BEGIN, DAGGER, END, Cfg, Rule, is_binary_form
from .lr import LrItem, LrState
from .twolr import PairSymbol, SuffixItem
from .pda import GATHERING, GOTO, INITIATE, REDUCE, SHIFT, Pda

BLR = "blr"
TWO_LR = "2lr"


@dataclass(frozen=True)
class PredTables:
    unconditional: frozenset
    by_trigger: dict  # stack symbol -> frozenset of symbols it enables

    def triggered(self, trigger) -> frozenset:
        return self.by_trigger.get(trigger, frozenset())


@dataclass(frozen=True)
class CoverGrammar:
    cfg: Cfg
    init_nonterminal: object
    start: object
    rule_to_transitions: dict  # Rule -> tuple of Transition
    pda: Pda
    method: str

    def name(self, sym) -> str:
        return cover_name(sym)

    def to_text(self) -> str:
        return self.cfg.to_text(self.name)

    @property
    def transition_count(self) -> int:
        return sum(len(ts) for ts in self.rule_to_transitions.values())


_MARKS = {BEGIN: "^", END: "$", DAGGER: "+"}


def cover_name(sym) -> str:
    """A single whitespace-free token naming a stack symbol in cover grammar text.

    ``[X|q17]`` for pair symbols, ``[a_S_b]`` for suffixes (``[ε]`` when empty),
    ``[q3]`` for LR states and ``[S:a•S_b]`` for LR items.  The reserved
    marker characters are spelled ``^``, ``$`` and ``+`` so that the output
    can be read back with :func:`~tablr.grammar.parse_grammar`.
    """
    if isinstance(sym, PairSymbol):
        text = f"[{sym.last}|q{sym.state.id}]"
    elif isinstance(sym, SuffixItem):
        text = "[" + ("_".join(map(str, sym.symbols)) or "ε") + "]"
    elif isinstance(sym, LrState):
        text = f"[q{sym.id}]"
    elif isinstance(sym, LrItem):
        rhs = list(map(str, sym.rule.rhs))
        text = f"[{sym.rule.lhs}:{'_'.join(rhs[:sym.dot])}•{'_'.join(rhs[sym.dot:])}]"
    else:
        return str(sym)
    for mark, spelled in _MARKS.items():
        text = text.replace(mark, spelled)
    return text.replace(" ", "_")


def cover_rule(t) -> Rule:
    """The cover rule induced by a single transition."""
    if t.kind == SHIFT:
        return Rule(t.rhs[1], (t.label,))
    if t.kind == INITIATE:
        return Rule(t.rhs[1], ())
    if t.kind == GATHERING:
        return Rule(t.rhs[0], t.lhs)
    if t.kind == GOTO:
        return Rule(t.rhs[1], (t.lhs[1],))
    raise ValueError(f"cannot cover a {t.kind} transition: {t}")


def build_cover(pda: Pda, method: str = TWO_LR) -> CoverGrammar:
    """Works for both the 2LR and the binary-form LR automaton.

    Distinct transitions may induce the same rule (shifts from different
    sources into one pair symbol, say); the rule is then kept once and mapped
    to all of its transitions.
    """
    if any(t.kind == REDUCE for t in pda.transitions):
        raise ValueError("automata with reduce transitions have no binary cover")
    provenance: dict = {}
    for t in pda.transitions:
        provenance.setdefault(cover_rule(t), []).append(t)
    rules = tuple(provenance)
    cfg = Cfg(pda.input_alphabet, frozenset(pda.stack_symbols), rules, pda.final)
    assert is_binary_form(cfg)
    return CoverGrammar(cfg, pda.initial, pda.final,
                        {r: tuple(ts) for r, ts in provenance.items()}, pda, method)


def build_cover_blr(pda: Pda) -> CoverGrammar:
    return build_cover(pda, BLR)


def build_pred_tables(pda: Pda) -> PredTables:
    unconditional = set()
    by_trigger: dict = {}
    for t in pda.transitions:
        if len(t.rhs) == 1 and len(t.lhs) == 2:
            unconditional.add(t.rhs[0])
        elif len(t.rhs) == 2 and t.rhs[0] == t.lhs[0]:
            by_trigger.setdefault(t.lhs[0], set()).add(t.rhs[1])
    return PredTables(frozenset(unconditional),
                      {k: frozenset(v) for k, v in by_trigger.items()})


def pred(tables: PredTables, tau) -> set:
    result = set(tables.unconditional)
    for trigger in tau:
        result |= tables.triggered(trigger)
    return result
