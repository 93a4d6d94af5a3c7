"""Documents, mentions and coreference chains.

All objects are immutable once built. Token offsets are document-global and
spans are half-open ``[start, end)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

ROOT = -1

#: Priority used to break ties when a chain's heads fall in several entity types.
ENTITY_TYPE_PRIORITY = ("PER", "ORG", "GPE", "DATE")


class MalformedInputError(ValueError):
    """Raised when an input file or object violates its format contract."""


class PreconditionError(ValueError):
    """Raised when a document lacks an annotation layer an operation needs."""

    def __init__(self, layer: str, doc_id: str = ""):
        self.layer = layer
        self.doc_id = doc_id
        where = f" in document {doc_id!r}" if doc_id else ""
        super().__init__(f"missing required layer {layer!r}{where}")


class MentionType(str, enum.Enum):
    NAME = "name"
    PRONOUN = "pronoun"
    NOMINAL = "nominal"


@dataclass(frozen=True)
class Token:
    index: int
    text: str
    pos: str = ""
    head: int = ROOT
    deprel: str = ""
    sentence_index: int = 0


@dataclass(frozen=True, order=True)
class Mention:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise MalformedInputError(f"invalid mention span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def __contains__(self, index: int) -> bool:
        return self.start <= index < self.end

    @property
    def indices(self) -> range:
        return range(self.start, self.end)


@dataclass(frozen=True)
class NerSpan:
    entity_type: str
    start: int
    end: int

    def __contains__(self, index: int) -> bool:
        return self.start <= index < self.end

    @property
    def mention(self) -> Mention:
        return Mention(self.start, self.end)


@dataclass(frozen=True)
class Chain:
    id: int
    mentions: frozenset

    def __init__(self, id: int, mentions: Iterable[Mention]):
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "mentions", frozenset(mentions))

    def __len__(self) -> int:
        return len(self.mentions)

    def __iter__(self):
        return iter(sorted(self.mentions))

    def sorted_mentions(self) -> list[Mention]:
        return sorted(self.mentions)


@dataclass(frozen=True)
class AnnotatedDocument:
    """A tokenized document with optional POS, dependency, NER and coref layers.

    ``layers`` records which annotation layers the source actually carried, so
    that an empty NER list can be told apart from a missing NER layer.
    """

    doc_id: str
    tokens: tuple
    ner: tuple = ()
    chains: tuple = ()
    layers: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "ner", tuple(self.ner))
        object.__setattr__(self, "chains", tuple(self.chains))
        object.__setattr__(self, "layers", frozenset(self.layers))
        self._validate()

    def _validate(self):
        n = len(self.tokens)
        for k, tok in enumerate(self.tokens):
            if tok.index != k:
                raise MalformedInputError(f"{self.doc_id}: token {k} has index {tok.index}")
            if tok.head != ROOT:
                if not 0 <= tok.head < n or self.tokens[tok.head].sentence_index != tok.sentence_index:
                    raise MalformedInputError(
                        f"{self.doc_id}: head of token {k} lies outside its sentence"
                    )
        for span in self.ner:
            if not 0 <= span.start < span.end <= n:
                raise MalformedInputError(f"{self.doc_id}: NER span out of bounds: {span}")
        ids = set()
        for chain in self.chains:
            if chain.id in ids:
                raise MalformedInputError(f"{self.doc_id}: duplicate chain id {chain.id}")
            ids.add(chain.id)
            for m in chain.mentions:
                if m.end > n:
                    raise MalformedInputError(f"{self.doc_id}: mention {m} out of bounds")

    def __len__(self) -> int:
        return len(self.tokens)

    def has_layer(self, layer: str) -> bool:
        return layer in self.layers

    def require(self, *layers: str) -> None:
        for layer in layers:
            if layer not in self.layers:
                raise PreconditionError(layer, self.doc_id)

    def text(self, span) -> str:
        return " ".join(t.text for t in self.tokens[span.start:span.end])

    def sentence_bounds(self, sentence_index: int) -> tuple[int, int]:
        idx = [t.index for t in self.tokens if t.sentence_index == sentence_index]
        return idx[0], idx[-1] + 1

    def sentences(self) -> list[tuple[int, int]]:
        bounds = []
        start = 0
        for k in range(1, len(self.tokens) + 1):
            if k == len(self.tokens) or self.tokens[k].sentence_index != self.tokens[start].sentence_index:
                bounds.append((start, k))
                start = k
        return bounds

    def ner_at(self, index: int, entity_type: Optional[str] = None) -> Optional[NerSpan]:
        for span in self.ner:
            if index in span and (entity_type is None or span.entity_type == entity_type):
                return span
        return None

    def with_chains(self, chains: Iterable[Chain]) -> "AnnotatedDocument":
        return AnnotatedDocument(
            self.doc_id, self.tokens, self.ner, tuple(chains), self.layers | {"coref"}
        )

    def chain_sets(self) -> list[frozenset]:
        return [c.mentions for c in self.chains]


def children_map(doc: AnnotatedDocument) -> dict[int, list[int]]:
    kids: dict[int, list[int]] = {}
    for tok in doc.tokens:
        if tok.head != ROOT and tok.head != tok.index:
            kids.setdefault(tok.head, []).append(tok.index)
    return kids


def descendants(doc: AnnotatedDocument, index: int, kids: Optional[dict] = None) -> set[int]:
    """Transitive dependents of ``index`` (excluding the token itself)."""
    if kids is None:
        kids = children_map(doc)
    seen: set[int] = set()
    stack = list(kids.get(index, ()))
    while stack:
        k = stack.pop()
        if k in seen or k == index:
            continue
        seen.add(k)
        stack.extend(kids.get(k, ()))
    return seen


def ancestors(doc: AnnotatedDocument, index: int) -> list[int]:
    """Heads of ``index`` from nearest to the root.

    Raises MalformedInputError on a cycle in the dependency layer.
    """
    path = []
    seen = {index}
    h = doc.tokens[index].head
    while h != ROOT:
        if h in seen:
            raise MalformedInputError(f"{doc.doc_id}: dependency cycle through token {h}")
        seen.add(h)
        path.append(h)
        h = doc.tokens[h].head
    return path
