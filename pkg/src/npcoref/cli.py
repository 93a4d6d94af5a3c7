"""Command-line entry point: ``npcoref {score,resolve,filter,stats,diagnose}``.

Exit codes: 0 success, 1 internal error, 2 input contract violation.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import reports
from .conll import emit_conll
from .filtering import FilterDiagnostic, filter_chains, filter_diagnostic, load_honorifics
from .gazetteer import Gazetteer
from .jsondoc import emit_json_docs
from .metrics import ScoreReport
from .model import MalformedInputError, PreconditionError
from .npc_metrics import NpcReport, evaluate_document
from .resolver import ResolverConfig, load_config, resolve_document
from .stats import corpus_stats, pronoun_stats

CONFIG_ENV = "NPC_COREF_CONFIG"
STATS_TYPES = ("PER", "ORG", "GPE", "DATE")

log = logging.getLogger("npcoref")


class InputError(Exception):
    """Input files do not satisfy the command's contract."""


def _pair(gold_docs, sys_docs):
    gold = {d.doc_id: d for d in gold_docs}
    sys_ = {d.doc_id: d for d in sys_docs}
    orphans = [f"gold:{k}" for k in gold if k not in sys_] + [f"sys:{k}" for k in sys_ if k not in gold]
    if orphans:
        raise InputError("unpaired documents: " + ", ".join(orphans))
    return [(g, sys_[g.doc_id]) for g in gold_docs]


def _layers_for(args, docs):
    """Map doc_id to the document carrying the NER and dependency layers."""
    if args.ner_source:
        source = {d.doc_id: d for d in reports.load_documents(args.ner_source, "json")}
    else:
        source = {d.doc_id: d for d in docs}
    out = {}
    for doc in docs:
        layer_doc = source.get(doc.doc_id)
        if layer_doc is None:
            raise InputError(f"no NER source for document {doc.doc_id!r}")
        if len(layer_doc.tokens) != len(doc.tokens):
            raise InputError(f"{doc.doc_id}: NER source has {len(layer_doc.tokens)} tokens, "
                             f"expected {len(doc.tokens)}")
        layer_doc.require("ner", "dep")
        out[doc.doc_id] = layer_doc
    return out


def _resolver_config(args) -> tuple[ResolverConfig, dict]:
    cfg, raw = ResolverConfig(), {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        cfg, raw = load_config(path)
    changes = {}
    if args.threshold is not None:
        changes["similarity_threshold"] = args.threshold
    if args.window is not None:
        changes["window"] = args.window
    if args.entity_type is not None:
        changes["entity_type"] = args.entity_type
    if args.honorifics is not None:
        changes["honorifics"] = load_honorifics(args.honorifics)
    return replace(cfg, **changes), raw


def _write(args, text: str):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_score(args) -> int:
    cfg, _ = _resolver_config(args)
    gold_docs = reports.load_documents(args.gold, args.format)
    sys_docs = reports.load_documents(args.sys, args.format)
    pairs = _pair(gold_docs, sys_docs)
    standard = ScoreReport()
    for g, s in pairs:
        standard.add(g.chains, s.chains)
    npc = None
    if args.npc:
        layers = _layers_for(args, gold_docs)
        npc = NpcReport()
        for g, s in pairs:
            L = layers[g.doc_id]
            gold_entities = filter_chains(L, g.chains, cfg.entity_type, cfg.honorifics)
            sys_entities = filter_chains(L, s.chains, cfg.entity_type, cfg.honorifics)
            npc.add(evaluate_document(g.doc_id, gold_entities, sys_entities, s.chains))
    if args.json:
        payload = {"standard": standard.as_dict()}
        if npc is not None:
            payload["npc"] = npc.as_dict()
        _write(args, reports.dumps(payload))
    else:
        text = reports.score_table(standard)
        if npc is not None:
            text += "\n" + reports.npc_table(npc)
        _write(args, text)
    return 0


def _gazetteer(args, raw) -> Gazetteer:
    path = args.gazetteer or raw.get("gazetteer")
    return Gazetteer.load(path) if path else Gazetteer.bundled()


def cmd_resolve(args) -> int:
    cfg, raw = _resolver_config(args)
    gaz = _gazetteer(args, raw)
    docs = reports.load_documents(args.input, "json")
    out = [resolve_document(doc, cfg, gaz).document(doc) for doc in docs]
    fmt = args.format or "conll"
    _write(args, emit_json_docs(out) if fmt == "json" else emit_conll(out))
    return 0


def cmd_filter(args) -> int:
    cfg, _ = _resolver_config(args)
    docs = reports.load_documents(args.sys, args.format)
    layers = _layers_for(args, docs)
    out = []
    diag = FilterDiagnostic()
    for doc in docs:
        L = layers[doc.doc_id]
        kept = filter_chains(L, doc.chains, cfg.entity_type, cfg.honorifics)
        diag += filter_diagnostic(L, doc.chains, kept)
        out.append(doc.with_chains(e.chain for e in kept))
    _write(args, emit_conll(out))
    pct = diag.dropped_pronoun_pct
    sys.stderr.write(
        f"kept {diag.kept} chains, dropped {diag.dropped}; "
        f"dropped chains with an animate third-person pronoun: {diag.dropped_with_animate_pronoun}"
        f" ({'n/a' if pct is None else f'{pct:.1f}%'})\n"
    )
    return 0


def cmd_stats(args) -> int:
    docs = reports.load_documents(args.corpus, args.format)
    for doc in docs:
        doc.require("ner", "dep", "coref")
    types = [args.entity_type] if args.entity_type else list(STATS_TYPES)
    stats = [corpus_stats(docs, t) for t in types]
    pronouns = pronoun_stats(docs)
    if args.json:
        _write(args, reports.dumps({"stats": {s.entity_type: s.as_dict() for s in stats},
                                    "pronouns": pronouns.as_dict()}))
    else:
        _write(args, reports.stats_table(stats) + "\n" + reports.pronoun_table(pronouns))
    return 0


def cmd_diagnose(args) -> int:
    args.npc = True
    cfg, _ = _resolver_config(args)
    gold_docs = reports.load_documents(args.gold, args.format)
    sys_docs = reports.load_documents(args.sys, args.format)
    pairs = _pair(gold_docs, sys_docs)
    layers = _layers_for(args, gold_docs)
    report = NpcReport()
    for g, s in pairs:
        L = layers[g.doc_id]
        report.add(evaluate_document(
            g.doc_id,
            filter_chains(L, g.chains, cfg.entity_type, cfg.honorifics),
            filter_chains(L, s.chains, cfg.entity_type, cfg.honorifics),
            s.chains,
        ))
    _write(args, reports.diagnostics_tsv(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("conll", "json"),
                        help="input format (output format for resolve); default from file suffix")
    shared.add_argument("--json", action="store_true", help="machine-readable JSON report")
    shared.add_argument("--entity-type", help="named-entity type to work on (default PER)")
    shared.add_argument("--npc", action="store_true", help="also compute NPC metrics")
    shared.add_argument("--threshold", type=float, help="name similarity merge threshold")
    shared.add_argument("--window", type=int, help="pronoun antecedent window in tokens")
    shared.add_argument("--gazetteer", help="gender gazetteer TSV (token<TAB>M|F)")
    shared.add_argument("--honorifics", help="honorific list, one token per line")
    shared.add_argument("--ner-source", help="JSON documents carrying NER and dependency layers")
    shared.add_argument("-o", "--output", help="write to this file instead of stdout")
    shared.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="npcoref", description="Named person coreference toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", parents=[shared], help="standard and NPC metrics")
    p.add_argument("gold")
    p.add_argument("sys")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("resolve", parents=[shared], help="run the NER-driven resolver")
    p.add_argument("input")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("filter", parents=[shared], help="keep only name-headed chains")
    p.add_argument("sys")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("stats", parents=[shared], help="chain and pronoun statistics")
    p.add_argument("corpus")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("diagnose", parents=[shared], help="over-split, over-merge, not found")
    p.add_argument("gold")
    p.add_argument("sys")
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, MalformedInputError, PreconditionError, FileNotFoundError, ValueError) as exc:
        print(f"npcoref {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        log.exception("internal error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
