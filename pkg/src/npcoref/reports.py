"""Plain-text tables, JSON payloads and TSV diagnostics for reports."""

from __future__ import annotations

import json
from pathlib import Path

from .conll import parse_conll
from .jsondoc import parse_json_docs
from .metrics import METRICS, ScoreReport
from .model import MentionType
from .npc_metrics import NpcReport

METRIC_LABELS = {"muc": "MUC", "b3": "B-cubed", "ceafm": "CEAFm", "ceafe": "CEAFe", "lea": "LEA"}


def detect_format(path) -> str:
    suffix = Path(path).suffix.lower()
    return "json" if suffix in (".json", ".jsonl") else "conll"


def load_documents(path, fmt: str | None = None):
    fmt = fmt or detect_format(path)
    text = Path(path).read_text(encoding="utf-8")
    return parse_json_docs(text) if fmt == "json" else parse_conll(text)


def _num(value, digits=3, suffix="") -> str:
    if value is None:
        return "n/a"
    return f"{value:.{digits}f}{suffix}"


def table(rows: list[list[str]]) -> str:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = []
    for n, row in enumerate(rows):
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def score_table(report: ScoreReport) -> str:
    rows = [["metric", "R", "P", "F1"]]
    for name in METRICS:
        s = report[name]
        flag = " (absent)" if s.recall_absent or s.precision_absent else ""
        rows.append([METRIC_LABELS[name] + flag, _num(s.recall), _num(s.precision), _num(s.f1)])
    rows.append(["CoNLL avg", "", "", _num(report.conll_avg)])
    return table(rows)


def npc_table(report: NpcReport) -> str:
    rows = [["NPC metric", "value"],
            ["gold entities", str(report.gold_entities)],
            ["chains not found", _num(report.chains_not_found, 2, "%")],
            ["entity F1 (NPC)", _num(report.npc_f1)]]
    for t in MentionType:
        rows.append([f"F1 ({t.value}s)", _num(report.per_type_f1[t])])
    rows += [["no span overlap at all", str(report.soft_not_found)],
             ["over-split entities", str(report.oversplit_count)],
             ["over-merged chains", str(report.overmerge_count)]]
    return table(rows)


def stats_table(reports) -> str:
    reports = list(reports)
    rows = [[""] + [r.entity_type for r in reports]]
    for label, attr, unit in reports[0].ROWS:
        rows.append([label] + [_num(getattr(r, attr), 2, unit) for r in reports])
    return table(rows)


def pronoun_table(report) -> str:
    rows = [["", "Total", "Part of PER cluster"]]
    for form, row in report.rows.items():
        rows.append([form, str(row.total), f"{row.in_per} ({_num(row.in_per_pct, 1, '%')})"])
    return table(rows)


def diagnostic_rows(report: NpcReport) -> list[tuple[str, str, str, str]]:
    """(kind, doc_id, gold variants, system chain ids) for every finding."""
    rows = []
    for d in report.documents:
        for gold, sys in d.oversplits:
            rows.append(("oversplit", d.doc_id, _variants([gold]), _ids(sys)))
        for sys, golds in d.overmerges:
            rows.append(("overmerge", d.doc_id, _variants(golds), _ids([sys])))
        for m in d.matches:
            if not m.found:
                rows.append(("not_found", d.doc_id, _variants([m.gold]), ""))
    return rows


def _variants(entities) -> str:
    return " | ".join(",".join(sorted(e.name_variants)) for e in entities)


def _ids(entities) -> str:
    return ",".join(str(e.id) for e in entities)


def diagnostics_tsv(report: NpcReport) -> str:
    return "".join("\t".join(row) + "\n" for row in diagnostic_rows(report))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
