"""Reading and writing the CoNLL-2012 coreference column format."""

from __future__ import annotations

import re
from collections import defaultdict

from .model import ROOT, AnnotatedDocument, Chain, MalformedInputError, Mention, Token

MIN_COLUMNS = 5

_BEGIN = re.compile(r"^#begin document\s*(.*)$")
_DOC_NAME = re.compile(r"^\((.*)\);\s*part\s+(\d+)$")
_PART = re.compile(r"^\((\d+)\)$|^\((\d+)$|^(\d+)\)$")


def _doc_id_from_header(rest: str) -> str:
    m = _DOC_NAME.match(rest.strip())
    if not m:
        return rest.strip()
    name, part = m.groups()
    return name if int(part) == 0 else f"{name}_{part}"


def parse_conll(text: str) -> list[AnnotatedDocument]:
    docs = []
    doc_id = None
    lineno_begin = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        m = _BEGIN.match(stripped)
        if m:
            if doc_id is not None:
                raise MalformedInputError(f"line {lineno}: nested #begin document in {doc_id!r}")
            doc_id = _doc_id_from_header(m.group(1))
            lineno_begin = lineno
            rows: list[tuple[int, list[str] | None]] = []
            continue
        if stripped.startswith("#end document"):
            if doc_id is None:
                raise MalformedInputError(f"line {lineno}: #end document without #begin")
            docs.append(_build_document(doc_id, rows, lineno))
            doc_id = None
            continue
        if doc_id is None or stripped.startswith("#"):
            continue
        if not stripped:
            rows.append((lineno, None))
            continue
        cols = stripped.split()
        if len(cols) < MIN_COLUMNS:
            raise MalformedInputError(
                f"{doc_id}: line {lineno}: expected at least {MIN_COLUMNS} columns, got {len(cols)}"
            )
        rows.append((lineno, cols))
    if doc_id is not None:
        raise MalformedInputError(f"{doc_id}: line {lineno_begin}: document is never closed")
    return docs


def _build_document(doc_id: str, rows, end_lineno: int) -> AnnotatedDocument:
    tokens = []
    sentence = 0
    open_marks: dict[int, tuple[int, int]] = {}
    spans: dict[int, list[Mention]] = defaultdict(list)
    pending_break = False
    for lineno, cols in rows:
        if cols is None:
            pending_break = bool(tokens)
            continue
        if pending_break:
            sentence += 1
            pending_break = False
        k = len(tokens)
        pos = cols[4] if len(cols) > MIN_COLUMNS else ""
        tokens.append(Token(k, cols[3], "" if pos == "-" else pos, ROOT, "", sentence))
        field = cols[-1]
        if field == "-":
            continue
        for part in field.split("|"):
            m = _PART.match(part)
            if not m:
                raise MalformedInputError(f"{doc_id}: line {lineno}: bad coreference field {field!r}")
            single, opening, closing = m.groups()
            if single is not None:
                cid = int(single)
                if cid in open_marks:
                    raise MalformedInputError(
                        f"{doc_id}: line {lineno}: mention of chain {cid} overlaps an open one"
                    )
                spans[cid].append(Mention(k, k + 1))
            elif opening is not None:
                cid = int(opening)
                if cid in open_marks:
                    raise MalformedInputError(
                        f"{doc_id}: line {lineno}: mention of chain {cid} overlaps an open one"
                    )
                open_marks[cid] = (k, lineno)
            else:
                cid = int(closing)
                if cid not in open_marks:
                    raise MalformedInputError(
                        f"{doc_id}: line {lineno}: close of chain {cid} without matching open"
                    )
                start, _ = open_marks.pop(cid)
                spans[cid].append(Mention(start, k + 1))
    if open_marks:
        cid, (_, lineno) = min(open_marks.items(), key=lambda kv: kv[1][1])
        raise MalformedInputError(f"{doc_id}: line {lineno}: chain {cid} is never closed")
    chains = []
    for cid in sorted(spans):
        mentions = spans[cid]
        if len(set(mentions)) != len(mentions):
            raise MalformedInputError(f"{doc_id}: chain {cid} repeats a mention")
        chains.append(Chain(cid, mentions))
    layers = {"coref"}
    if any(t.pos for t in tokens):
        layers.add("pos")
    return AnnotatedDocument(doc_id, tokens, (), chains, layers)


def coref_fields(doc: AnnotatedDocument) -> list[str]:
    """The coreference column value for each token of ``doc``."""
    opens = defaultdict(list)
    closes = defaultdict(list)
    singles = defaultdict(list)
    for chain in doc.chains:
        for m in chain.mentions:
            if len(m) == 1:
                singles[m.start].append(chain.id)
            else:
                opens[m.start].append((m.end, chain.id))
                closes[m.end - 1].append((m.start, chain.id))
    fields = []
    for k in range(len(doc.tokens)):
        parts = [f"({cid}" for end, cid in sorted(opens[k], key=lambda x: (-x[0], x[1]))]
        parts += [f"({cid})" for cid in sorted(singles[k])]
        parts += [f"{cid})" for start, cid in sorted(closes[k], key=lambda x: (-x[0], x[1]))]
        fields.append("|".join(parts) if parts else "-")
    return fields


def emit_conll(docs) -> str:
    lines = []
    for doc in docs:
        if not doc.doc_id or any(c.isspace() for c in doc.doc_id):
            raise MalformedInputError(f"document id {doc.doc_id!r} cannot be written as a column")
        lines.append(f"#begin document ({doc.doc_id}); part 000")
        fields = coref_fields(doc)
        for n, (start, end) in enumerate(doc.sentences()):
            if n:
                lines.append("")
            for k in range(start, end):
                tok = doc.tokens[k]
                if not tok.text or any(c.isspace() for c in tok.text):
                    raise MalformedInputError(f"{doc.doc_id}: token {k} cannot be written as a column")
                lines.append(
                    "\t".join([doc.doc_id, "0", str(k - start), tok.text, tok.pos or "-", fields[k]])
                )
        lines.append("")
        lines.append("#end document")
    return "\n".join(lines) + "\n" if lines else ""
