"""Tabular LR parsing: LR and 2LR automata, binary cover grammars, a filtered
chart recognizer, and parse forest extraction."""
from .chart import ChartTable, RunMetrics, recognize
from .cover import BLR, TWO_LR, CoverGrammar, PredTables, build_cover, build_cover_blr, build_pred_tables, pred
from .forest import Forest, ParseTree, count_parses, extract_trees
from .grammar import (Cfg, GrammarError, Rule, Sentence, augment, generate_sentence, grammar_size,
                      is_binary_form, load_grammar, parse_grammar)
from .lr import build_a_lr_prime, build_r_lr
from .pipeline import TabularParser, build_parser, static_report
from .twolr import build_a_2lr, build_r_2lr

__all__ = [
    "BLR", "TWO_LR", "Cfg", "ChartTable", "CoverGrammar", "Forest", "GrammarError", "ParseTree",
    "PredTables", "Rule", "RunMetrics", "Sentence", "TabularParser", "augment", "build_a_2lr",
    "build_a_lr_prime", "build_cover", "build_cover_blr", "build_parser", "build_pred_tables",
    "build_r_2lr", "build_r_lr", "count_parses", "extract_trees", "generate_sentence",
    "grammar_size", "is_binary_form", "load_grammar", "parse_grammar", "pred", "recognize",
    "static_report",
]
