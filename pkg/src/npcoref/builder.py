"""Build annotated documents from a compact notation.

Each sentence is a whitespace-separated list of ``text|POS|head|deprel``
tokens, with CoNLL-U style 1-based sentence-local heads (0 for the root)::

    b = DocBuilder("henry")
    b.sentence("Henry|NNP|2|nsubj went|VBD|0|root .|.|2|punct")
    b.ner("PER", "Henry")
    b.chain("Henry", ("he", 0))
    doc = b.build()

Spans are located by their surface text; ``(text, k)`` picks the k-th
occurrence (0-based) and a bare string the first one.
"""

from __future__ import annotations

from .model import ROOT, AnnotatedDocument, Chain, Mention, NerSpan, Token


class DocBuilder:
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        self.tokens: list[Token] = []
        self._ner: list[NerSpan] = []
        self._chains: list[Chain] = []
        self._sentences = 0

    def sentence(self, spec: str) -> "DocBuilder":
        offset = len(self.tokens)
        for j, item in enumerate(spec.split()):
            parts = item.split("|")
            if len(parts) != 4:
                raise ValueError(f"token {j} of sentence {self._sentences}: expected text|POS|head|deprel")
            text, pos, head, deprel = parts
            head = int(head)
            self.tokens.append(
                Token(offset + j, text, pos, ROOT if head == 0 else offset + head - 1, deprel, self._sentences)
            )
        self._sentences += 1
        return self

    def find(self, ref) -> Mention:
        text, occurrence = (ref, 0) if isinstance(ref, str) else ref
        words = text.split()
        seen = 0
        for k in range(len(self.tokens) - len(words) + 1):
            if [t.text for t in self.tokens[k:k + len(words)]] == words:
                if seen == occurrence:
                    return Mention(k, k + len(words))
                seen += 1
        raise ValueError(f"{self.doc_id}: occurrence {occurrence} of {text!r} not found")

    def ner(self, entity_type: str, *refs) -> "DocBuilder":
        for ref in refs:
            m = self.find(ref)
            self._ner.append(NerSpan(entity_type, m.start, m.end))
        return self

    def chain(self, *refs, id: int | None = None) -> "DocBuilder":
        cid = len(self._chains) if id is None else id
        self._chains.append(Chain(cid, [self.find(r) for r in refs]))
        return self

    def build(self, with_chains: bool = True) -> AnnotatedDocument:
        layers = {"pos", "dep", "ner"}
        if with_chains:
            layers.add("coref")
        return AnnotatedDocument(
            self.doc_id, self.tokens, self._ner, self._chains if with_chains else (), layers
        )
