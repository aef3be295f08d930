"""Grammar in, ready-to-run tabular parser out."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chart import FIFO, recognize
from .cover import BLR, TWO_LR, CoverGrammar, PredTables, build_cover, build_pred_tables
from .forest import Forest
from .grammar import Cfg, augment, grammar_size
from .lr import LrStates, all_items, build_a_lr_prime, build_r_lr
from .pda import Pda
from .twolr import SuffixStates, TwoLr, all_suffixes, build_a_2lr, build_r_2lr

METHODS = (BLR, TWO_LR)


@dataclass
class TabularParser:
    grammar: Cfg
    augmented: Cfg
    method: str
    pda: Pda
    cover: CoverGrammar
    tables: PredTables
    two_lr: Optional[TwoLr] = None

    def recognize(self, v, agenda: str = FIFO):
        return recognize(self.cover, self.tables, v, agenda)

    def parse(self, v):
        """Returns ``(table, metrics, forest)``."""
        table, metrics = self.recognize(v)
        return table, metrics, Forest(table, self.cover)


def build_parser(g: Cfg, method: str = TWO_LR) -> TabularParser:
    g_aug = augment(g)
    if method == TWO_LR:
        two = build_a_2lr(g_aug)
        pda = two.pda
    elif method == BLR:
        two = None
        pda = build_a_lr_prime(g_aug)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return TabularParser(g, g_aug, method, pda, build_cover(pda, method), build_pred_tables(pda), two)


STATIC_COLUMNS = ("grammar", "|G|", "|N|", "|P|",
                  "|R_LR|", "|Q'_LR|", "|T'_LR|", "|R_2LR|", "|Q_2LR|", "|T_2LR|")


def static_report(g: Cfg, name: str = "") -> dict:
    g_aug = augment(g)
    lr: LrStates = build_r_lr(g_aug)
    r2: SuffixStates = build_r_2lr(g_aug)
    blr = build_a_lr_prime(g_aug, lr)
    two = build_a_2lr(g_aug, r2)
    row = dict(zip(STATIC_COLUMNS, (
        name, grammar_size(g), len(g.nonterminals), len(g.rules),
        len(lr), len(lr.states) + len(all_items(g_aug)), len(blr.transitions),
        len(r2), len(two.pairs) + len(all_suffixes(g_aug)), len(two.pda.transitions),
    )))
    return row
