"""Reduce coreference chains to named-person (or other named-entity) entities.

A chain survives filtering when at least one of its mentions has a syntactic
head inside a named-entity span of the requested type.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .model import (
    ENTITY_TYPE_PRIORITY,
    AnnotatedDocument,
    Chain,
    Mention,
    MentionType,
    ancestors,
)

DEFAULT_HONORIFICS = frozenset(["mr", "mr.", "mrs", "mrs.", "ms", "ms.", "dr", "dr.", "messrs."])

# Fallback when the document has no POS layer (plain CoNLL input).
PRONOUN_FORMS = frozenset(
    "i me my mine myself you your yours yourself he him his himself she her hers herself "
    "it its itself we us our ours ourselves yourselves they them their theirs themselves".split()
)
ANIMATE_THIRD_PERSON = frozenset(["he", "him", "his", "she", "her", "hers"])

_INITIAL = re.compile(r"^\w\.$")


def load_honorifics(path) -> frozenset:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(line.strip().casefold() for line in lines if line.strip())


def strip_honorifics(tokens: list[str], honorifics=DEFAULT_HONORIFICS) -> list[str]:
    """Drop leading honorifics; a name made only of honorifics is kept as is."""
    k = 0
    while k < len(tokens) and tokens[k].casefold() in honorifics:
        k += 1
    return tokens[k:] or tokens


def normalize_name(name: str, honorifics=DEFAULT_HONORIFICS) -> str:
    return " ".join(strip_honorifics(name.split(), honorifics))


def variant_key(name: str) -> str:
    return " ".join(name.split()).casefold()


def mention_head(doc: AnnotatedDocument, m: Mention) -> int:
    """Token of ``m`` with no ancestor inside ``m``; rightmost if several."""
    candidates = [k for k in m.indices if not any(a in m for a in ancestors(doc, k))]
    return candidates[-1]


def is_person_headed(doc: AnnotatedDocument, m: Mention, entity_type: str = "PER") -> bool:
    return doc.ner_at(mention_head(doc, m), entity_type) is not None


def is_pronoun_token(doc: AnnotatedDocument, index: int) -> bool:
    tok = doc.tokens[index]
    if tok.pos:
        return tok.pos.startswith("PRP")
    return tok.text.casefold() in PRONOUN_FORMS


def classify_mention(doc: AnnotatedDocument, m: Mention, entity_type: str = "PER") -> MentionType:
    head = mention_head(doc, m)
    if is_pronoun_token(doc, head):
        return MentionType.PRONOUN
    if doc.ner_at(head, entity_type) is not None:
        return MentionType.NAME
    return MentionType.NOMINAL


def chain_entity_type(doc: AnnotatedDocument, mentions: Iterable[Mention]) -> Optional[str]:
    """Entity type of a chain from the NER spans its mention heads fall in.

    Majority vote over mentions; ties go to PER > ORG > GPE > DATE, then to
    the alphabetically first remaining label.
    """
    votes: Counter = Counter()
    for m in mentions:
        head = mention_head(doc, m)
        types = {s.entity_type for s in doc.ner if head in s}
        votes.update(types)
    if not votes:
        return None

    def rank(t):
        prio = ENTITY_TYPE_PRIORITY.index(t) if t in ENTITY_TYPE_PRIORITY else len(ENTITY_TYPE_PRIORITY)
        return (-votes[t], prio, t)

    return min(votes, key=rank)


def name_variants(
    doc: AnnotatedDocument,
    mentions: Iterable[Mention],
    entity_type: str = "PER",
    honorifics=DEFAULT_HONORIFICS,
) -> frozenset:
    """Surface forms naming the entity, plus the family name of multi-token names."""
    found: dict[str, str] = {}

    def add(name):
        found.setdefault(variant_key(name), name)

    for m in sorted(mentions):
        head = mention_head(doc, m)
        span = doc.ner_at(head, entity_type)
        if span is None or is_pronoun_token(doc, head):
            continue
        tokens = strip_honorifics([t.text for t in doc.tokens[span.start:span.end]], honorifics)
        add(" ".join(tokens))
        if len(tokens) > 1 and not _INITIAL.match(tokens[-1]):
            add(tokens[-1])
    return frozenset(found.values())


@dataclass(frozen=True)
class NpcEntity:
    chain: Chain
    name_variants: frozenset
    mention_types: dict = field(compare=False, hash=False)

    @property
    def id(self) -> int:
        return self.chain.id

    @property
    def mentions(self) -> frozenset:
        return self.chain.mentions

    @property
    def variant_keys(self) -> frozenset:
        return frozenset(variant_key(v) for v in self.name_variants)

    def mentions_of_type(self, mention_type: MentionType) -> frozenset:
        return frozenset(m for m, t in self.mention_types.items() if t == mention_type)


def make_entity(
    doc: AnnotatedDocument, chain: Chain, entity_type: str = "PER", honorifics=DEFAULT_HONORIFICS
) -> Optional[NpcEntity]:
    types = {m: classify_mention(doc, m, entity_type) for m in chain.mentions}
    if MentionType.NAME not in types.values():
        return None
    variants = name_variants(doc, chain.mentions, entity_type, honorifics)
    return NpcEntity(chain, variants, types)


def filter_chains(
    doc: AnnotatedDocument,
    chains: Optional[Iterable[Chain]] = None,
    entity_type: str = "PER",
    honorifics=DEFAULT_HONORIFICS,
) -> list[NpcEntity]:
    """Keep the chains with at least one mention headed by a name of ``entity_type``."""
    if chains is None:
        chains = doc.chains
    entities = []
    for chain in chains:
        entity = make_entity(doc, chain, entity_type, honorifics)
        if entity is not None:
            entities.append(entity)
    return entities


@dataclass
class FilterDiagnostic:
    kept: int = 0
    dropped: int = 0
    dropped_with_animate_pronoun: int = 0

    @property
    def dropped_pronoun_pct(self) -> Optional[float]:
        if not self.dropped:
            return None
        return 100.0 * self.dropped_with_animate_pronoun / self.dropped

    def __iadd__(self, other: "FilterDiagnostic"):
        self.kept += other.kept
        self.dropped += other.dropped
        self.dropped_with_animate_pronoun += other.dropped_with_animate_pronoun
        return self


def filter_diagnostic(
    doc: AnnotatedDocument, chains: Iterable[Chain], kept: Iterable[NpcEntity]
) -> FilterDiagnostic:
    """Counts of dropped chains that still contain a he/him/his/she/her/hers mention."""
    kept_ids = {e.id for e in kept}
    diag = FilterDiagnostic()
    for chain in chains:
        if chain.id in kept_ids:
            diag.kept += 1
            continue
        diag.dropped += 1
        if any(
            len(m) == 1 and doc.tokens[m.start].text.casefold() in ANIMATE_THIRD_PERSON
            for m in chain.mentions
        ):
            diag.dropped_with_animate_pronoun += 1
    return diag
