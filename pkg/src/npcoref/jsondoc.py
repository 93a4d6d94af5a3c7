"""The JSON annotated-document format.

One document is an object::

    {"doc_id": ..., "sentences": [{"tokens": [{"text", "pos", "head", "deprel"}]}],
     "ner": [{"type", "start", "end"}], "chains": [{"id", "mentions": [{"start", "end"}]}]}

``head`` is sentence-local with -1 for the root; ``ner`` and ``chains`` use
document-global token offsets. ``ner`` and ``chains`` may be omitted.
"""

from __future__ import annotations

import json
from typing import Any

from .model import ROOT, AnnotatedDocument, Chain, MalformedInputError, Mention, NerSpan, Token


def _fail(path: str, msg: str):
    raise MalformedInputError(f"{path}: {msg}")


def _int(obj: dict, key: str, path: str) -> int:
    if key not in obj:
        _fail(f"{path}.{key}", "missing")
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def doc_from_obj(obj: Any) -> AnnotatedDocument:
    if not isinstance(obj, dict):
        _fail("$", "expected a JSON object")
    doc_id = str(obj.get("doc_id", ""))
    tokens: list[Token] = []
    has_pos = has_dep = False
    for s, sent in enumerate(obj.get("sentences", [])):
        offset = len(tokens)
        toks = sent.get("tokens", [])
        for j, t in enumerate(toks):
            path = f"sentences[{s}].tokens[{j}]"
            if "text" not in t:
                _fail(f"{path}.text", "missing")
            head = t.get("head", ROOT)
            if not isinstance(head, int) or isinstance(head, bool):
                _fail(f"{path}.head", f"expected an integer, got {head!r}")
            if head == ROOT:
                global_head = ROOT
            elif 0 <= head < len(toks):
                global_head = offset + head
            else:
                _fail(f"{path}.head", f"head {head} outside sentence of {len(toks)} tokens")
            pos = t.get("pos", "") or ""
            deprel = t.get("deprel", "") or ""
            has_pos |= bool(pos)
            has_dep |= bool(deprel)
            tokens.append(Token(len(tokens), str(t["text"]), pos, global_head, deprel, s))
    n = len(tokens)
    layers = set()
    if has_pos:
        layers.add("pos")
    if has_dep:
        layers.add("dep")

    ner = []
    if "ner" in obj:
        layers.add("ner")
        for i, span in enumerate(obj["ner"]):
            path = f"ner[{i}]"
            start, end = _int(span, "start", path), _int(span, "end", path)
            if not 0 <= start < n:
                _fail(f"{path}.start", f"{start} out of bounds for {n} tokens")
            if not start < end <= n:
                _fail(f"{path}.end", f"{end} out of bounds for {n} tokens")
            ner.append(NerSpan(str(span.get("type", "")), start, end))
        by_type: dict[str, list[NerSpan]] = {}
        for i, span in enumerate(ner):
            for other in by_type.get(span.entity_type, []):
                if span.start < other.end and other.start < span.end:
                    _fail(f"ner[{i}]", f"overlaps another {span.entity_type} span")
            by_type.setdefault(span.entity_type, []).append(span)

    chains = []
    if "chains" in obj:
        layers.add("coref")
        seen = set()
        for i, ch in enumerate(obj["chains"]):
            cid = _int(ch, "id", f"chains[{i}]")
            if cid in seen:
                _fail(f"chains[{i}].id", f"duplicate chain id {cid}")
            seen.add(cid)
            mentions = []
            for j, m in enumerate(ch.get("mentions", [])):
                path = f"chains[{i}].mentions[{j}]"
                start, end = _int(m, "start", path), _int(m, "end", path)
                if not 0 <= start < end <= n:
                    _fail(path, f"span [{start}, {end}) out of bounds for {n} tokens")
                mentions.append(Mention(start, end))
            if len(set(mentions)) != len(mentions):
                _fail(f"chains[{i}].mentions", "repeated mention")
            chains.append(Chain(cid, mentions))
    return AnnotatedDocument(doc_id, tokens, ner, chains, layers)


def parse_json_doc(text: str) -> AnnotatedDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    return doc_from_obj(obj)


def parse_json_docs(text: str) -> list[AnnotatedDocument]:
    """Read a single document, a JSON array of documents, or JSON lines."""
    stripped = text.strip()
    if not stripped:
        return []
    try:
        obj = json.loads(stripped)
    except json.JSONDecodeError:
        docs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if line.strip():
                try:
                    docs.append(doc_from_obj(json.loads(line)))
                except json.JSONDecodeError as exc:
                    raise MalformedInputError(f"line {lineno}: invalid JSON: {exc}") from None
        return docs
    if isinstance(obj, list):
        return [doc_from_obj(o) for o in obj]
    return [doc_from_obj(obj)]


def doc_to_obj(doc: AnnotatedDocument, include_chains: bool = True) -> dict:
    sentences = []
    for start, end in doc.sentences():
        toks = []
        for tok in doc.tokens[start:end]:
            toks.append({
                "text": tok.text,
                "pos": tok.pos,
                "head": ROOT if tok.head == ROOT else tok.head - start,
                "deprel": tok.deprel,
            })
        sentences.append({"tokens": toks})
    obj: dict[str, Any] = {"doc_id": doc.doc_id, "sentences": sentences}
    if doc.has_layer("ner") or doc.ner:
        obj["ner"] = [{"type": s.entity_type, "start": s.start, "end": s.end} for s in doc.ner]
    if include_chains and (doc.has_layer("coref") or doc.chains):
        obj["chains"] = [
            {"id": c.id, "mentions": [{"start": m.start, "end": m.end} for m in c.sorted_mentions()]}
            for c in doc.chains
        ]
    return obj


def emit_json_docs(docs) -> str:
    return json.dumps([doc_to_obj(d) for d in docs], indent=1, ensure_ascii=False) + "\n"
