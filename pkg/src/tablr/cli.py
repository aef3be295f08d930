"""Command line: build automata and covers, parse, benchmark, self-check.

Exit status: 0 on success or acceptance, 1 on rejection or a failed check,
2 on bad input (unreadable grammar, unknown token, bad arguments).
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys

from .cover import BLR, TWO_LR, PredTables, cover_name
from .forest import Forest
from .grammar import (GrammarError, Sentence, augment, check_sentence, generate_sentence,
                      load_grammar, sentences_up_to)
from .lr import build_r_lr
from .oracle import count_derivations
from .pda import SearchLimitExceeded, push_spans
from .pipeline import METHODS, STATIC_COLUMNS, build_parser, static_report

EXIT_OK, EXIT_REJECT, EXIT_INPUT = 0, 1, 2


def _emit_rows(rows, columns, as_csv, out):
    if as_csv:
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:
        json.dump(rows if len(rows) != 1 else rows[0], out, ensure_ascii=False)
        out.write("\n")


def cmd_parse(args, out) -> int:
    g = load_grammar(args.grammar)
    v = Sentence.of(args.sentence)
    check_sentence(g, v)
    parser = build_parser(g, args.method)
    table, metrics, forest = parser.parse(v)
    out.write(("accepted" if metrics.accepted else "rejected") + "\n")
    out.write(metrics.to_json() + "\n")
    if args.table:
        out.write(table.dump(cover_name))
    if metrics.accepted:
        if args.trees:
            out.write(f"parses: {forest.count()}\n")
            for k, tree in enumerate(forest.trees()):
                if k >= args.trees:
                    break
                out.write(str(tree) + "\n")
        if args.forest:
            with open(args.forest, "w", encoding="utf-8") as fh:
                fh.write(forest.to_json() + "\n")
    return EXIT_OK if metrics.accepted else EXIT_REJECT


def cmd_stats(args, out) -> int:
    rows = [static_report(load_grammar(path), path) for path in args.grammar]
    _emit_rows(rows, STATIC_COLUMNS, args.csv, out)
    return EXIT_OK


def generated_sentences(g, count: int, seed: int, max_len: int, attempts_per: int = 50) -> list:
    """Up to ``count`` random sentences, trying successive seeds from ``seed``."""
    found = []
    for s in range(seed, seed + count * attempts_per):
        if len(found) == count:
            break
        v = generate_sentence(g, s, max_len)
        if v is not None:
            found.append(v)
    return found


BENCH_COLUMNS = ("sentence", "n", "blr_space", "blr_time", "2lr_space", "2lr_time", "accepted")


def bench(g, sentences) -> dict:
    parsers = {m: build_parser(g, m) for m in METHODS}
    rows = []
    for v in sentences:
        row = {"sentence": str(v), "n": len(v)}
        accepted = set()
        for m, p in parsers.items():
            _, metrics = p.recognize(v)
            row[f"{m}_space"] = metrics.space
            row[f"{m}_time"] = metrics.time
            accepted.add(metrics.accepted)
        if len(accepted) != 1:
            raise AssertionError(f"methods disagree on {v}")
        row["accepted"] = accepted.pop()
        rows.append(row)
    average = {m: {"space": sum(r[f"{m}_space"] for r in rows) / len(rows),
                   "time": sum(r[f"{m}_time"] for r in rows) / len(rows)} for m in METHODS}
    return {"sentences": rows, "average": average}


def cmd_bench(args, out) -> int:
    g = load_grammar(args.grammar)
    if args.sentences:
        with open(args.sentences, encoding="utf-8") as fh:
            sentences = [Sentence.of(line) for line in fh if line.strip()]
    else:
        sentences = generated_sentences(g, args.gen, args.seed, args.max_len)
    if not sentences:
        raise GrammarError("no sentences generated" if not args.sentences else "no sentences in file")
    for v in sentences:
        check_sentence(g, v)
    report = bench(g, sentences)
    if args.csv:
        rows = list(report["sentences"])
        avg = report["average"]
        rows.append({"sentence": "(average)", "n": sum(r["n"] for r in rows) / len(rows),
                     "blr_space": avg[BLR]["space"], "blr_time": avg[BLR]["time"],
                     "2lr_space": avg[TWO_LR]["space"], "2lr_time": avg[TWO_LR]["time"],
                     "accepted": ""})
        _emit_rows(rows, BENCH_COLUMNS, True, out)
    else:
        json.dump(report, out, ensure_ascii=False)
        out.write("\n")
    return EXIT_OK


def break_pred(tables: PredTables, victim) -> PredTables:
    """A pred table with the triggers of ``victim`` removed; fault injection for ``check``."""
    by_trigger = dict(tables.by_trigger)
    by_trigger.pop(victim, None)
    return PredTables(tables.unconditional, by_trigger)


def check_grammar(g, max_len: int, sample: int = 2000, seed: int = 0, fault: bool = False):
    """Cross-check chart, automaton and derivation counts on short sentences.

    Returns ``(passed, failures)``; each failure is a dict describing a witness.
    """
    two = build_parser(g, TWO_LR)
    blr = build_parser(g, BLR)
    if fault:
        two.tables = break_pred(two.tables, two.pda.initial)
    sentences = list(sentences_up_to(g.terminals, max_len))
    if len(sentences) > sample:
        sentences = random.Random(seed).sample(sentences, sample)
    passed, failures = 0, []
    for v in sentences:
        table, metrics = two.recognize(v)
        spans = {(f.symbol, f.i, f.j) for f in push_spans(two.pda, v)}
        chart = table.facts()
        if chart != spans:
            sym, i, j = min(chart ^ spans, key=lambda f: (f[1], f[2], str(f[0])))
            side = "chart only" if (sym, i, j) in chart else "automaton only"
            failures.append({"check": "characterization", "sentence": str(v),
                             "symbol": cover_name(sym), "span": [i, j], "where": side})
            continue
        expected = count_derivations(g, v)
        _, blr_metrics = blr.recognize(v)
        if metrics.accepted != (expected > 0) or blr_metrics.accepted != (expected > 0):
            failures.append({"check": "membership", "sentence": str(v),
                             "expected": expected > 0,
                             "2lr": metrics.accepted, "blr": blr_metrics.accepted})
            continue
        got = Forest(table, two.cover).count()
        if got != expected:
            failures.append({"check": "parse count", "sentence": str(v),
                             "expected": expected, "got": got})
            continue
        passed += 1
    return passed, failures


def cmd_check(args, out) -> int:
    g = load_grammar(args.grammar)
    passed, failures = check_grammar(g, args.max_len, args.sample, args.seed, args.inject_fault)
    for f in failures:
        out.write("MISMATCH " + json.dumps({"grammar": args.grammar, **f}, ensure_ascii=False) + "\n")
    out.write(f"passed {passed} failed {len(failures)}\n")
    return EXIT_OK if not failures else EXIT_REJECT


def cmd_automaton(args, out) -> int:
    g = load_grammar(args.grammar)
    g_aug = augment(g)
    parser = build_parser(g, args.method)
    if args.method == TWO_LR:
        for q in parser.two_lr.states.states:
            out.write("state " + q.describe() + "\n")
    else:
        for q in build_r_lr(g_aug).states:
            out.write("state " + q.describe() + "\n")
    out.write(parser.pda.dump())
    return EXIT_OK


def cmd_cover(args, out) -> int:
    parser = build_parser(load_grammar(args.grammar), args.method)
    out.write(parser.cover.to_text())
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tablr", description="Tabular LR parsing with 2LR covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="recognize a sentence and report space/time")
    p.add_argument("grammar")
    p.add_argument("sentence", help="whitespace-separated tokens")
    p.add_argument("--method", choices=METHODS, default=TWO_LR)
    p.add_argument("--table", action="store_true", help="dump the chart")
    p.add_argument("--trees", type=int, default=0, metavar="N", help="print up to N parse trees")
    p.add_argument("--forest", metavar="PATH", help="write the packed forest as JSON")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("stats", help="static sizes of both automata")
    p.add_argument("grammar", nargs="+")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="space/time of both methods over a sentence set")
    p.add_argument("grammar")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sentences", metavar="PATH", help="one sentence per line")
    src.add_argument("--gen", type=int, metavar="COUNT", help="generate COUNT random sentences")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="cross-check the chart against the automaton and brute force")
    p.add_argument("grammar")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--sample", type=int, default=2000, help="sentence count above which to sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("automaton", help="dump states and transitions")
    p.add_argument("grammar")
    p.add_argument("--method", choices=METHODS, default=TWO_LR)
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("cover", help="print the cover grammar")
    p.add_argument("grammar")
    p.add_argument("--method", choices=METHODS, default=TWO_LR)
    p.set_defaults(func=cmd_cover)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (GrammarError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchLimitExceeded as exc:
        print(f"error: {exc}; try a smaller --max-len", file=sys.stderr)
        return EXIT_INPUT

