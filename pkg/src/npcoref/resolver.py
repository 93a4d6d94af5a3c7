"""NER-driven rule-based coreference (NER-DE).

The pipeline finds a mention span for every named entity, clusters the names
agglomeratively, then attaches first-person and third-person singular
pronouns to gender-compatible name chains with three ordered rules:

1. a subject pronoun goes to the chain of the nearest preceding subject, if
   that subject is a name;
2. otherwise to the nearest preceding name whose chain is not blocked by a
   subject/object relation with the pronoun and has a name in the window;
3. otherwise the pronoun stays unresolved.

Chains left with one mention are dropped.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional

from .filtering import DEFAULT_HONORIFICS, load_honorifics, strip_honorifics
from .gazetteer import Gazetteer, Gender
from .model import (
    ROOT,
    AnnotatedDocument,
    Chain,
    Mention,
    NerSpan,
    PreconditionError,
    children_map,
    descendants,
)
from .similarity import name_similarity

log = logging.getLogger(__name__)

SUBJECT_DEPRELS = frozenset(["nsubj", "nsubjpass", "nsubj:pass"])
OBJECT_DEPRELS = frozenset(["dobj", "obj", "iobj"])

PRONOUN_GENDER = {
    "i": Gender.UNISEX, "me": Gender.UNISEX, "my": Gender.UNISEX, "mine": Gender.UNISEX,
    "he": Gender.M, "him": Gender.M, "his": Gender.M,
    "she": Gender.F, "her": Gender.F, "hers": Gender.F,
}


@dataclass(frozen=True)
class ResolverConfig:
    similarity_threshold: float = 0.5
    window: int = 100
    entity_type: str = "PER"
    # None means: on for PER, off for other entity types.
    pronoun_rules_enabled: Optional[bool] = None
    honorifics: frozenset = DEFAULT_HONORIFICS

    def __post_init__(self):
        if not 0 < self.similarity_threshold < 1:
            raise ValueError(f"similarity_threshold must lie in (0, 1), got {self.similarity_threshold}")
        if self.window <= 0:
            raise ValueError(f"window must be positive, got {self.window}")

    @property
    def resolve_pronouns(self) -> bool:
        if self.pronoun_rules_enabled is None:
            return self.entity_type == "PER"
        return self.pronoun_rules_enabled


_BOOL = {"true": True, "yes": True, "1": True, "on": True,
         "false": False, "no": False, "0": False, "off": False}


def parse_config(text: str, base: Optional[ResolverConfig] = None) -> tuple[ResolverConfig, dict]:
    """Read ``key=value`` lines.

    Returns the resolver config and the raw key/value pairs, so that callers
    can pick up keys the resolver does not use (``gazetteer``, ...).
    """
    cfg = base or ResolverConfig()
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        raw[key] = value
    changes = {}
    if "threshold" in raw:
        changes["similarity_threshold"] = float(raw["threshold"])
    if "window" in raw:
        changes["window"] = int(raw["window"])
    if "entity_type" in raw:
        changes["entity_type"] = raw["entity_type"]
    if "pronoun_rules" in raw:
        flag = raw["pronoun_rules"].lower()
        if flag not in _BOOL:
            raise ValueError(f"config: pronoun_rules must be a boolean, got {raw['pronoun_rules']!r}")
        changes["pronoun_rules_enabled"] = _BOOL[flag]
    if "honorifics" in raw:
        changes["honorifics"] = load_honorifics(raw["honorifics"])
    return replace(cfg, **changes), raw


def load_config(path) -> tuple[ResolverConfig, dict]:
    return parse_config(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class NameMention:
    mention: Mention
    ner: NerSpan
    name: str

    @property
    def position(self) -> int:
        """Last token of the name, used for distances to pronouns."""
        return self.ner.end - 1

    @property
    def length(self) -> int:
        return self.ner.end - self.ner.start


def _sentence_bounds(doc: AnnotatedDocument) -> dict[int, tuple[int, int]]:
    return {doc.tokens[s].sentence_index: (s, e) for s, e in doc.sentences()}


def derive_mention_span(doc: AnnotatedDocument, ner: NerSpan, kids=None, bounds=None) -> Mention:
    """Noun phrase headed by the last word of a named entity."""
    if kids is None:
        kids = children_map(doc)
    if bounds is None:
        bounds = _sentence_bounds(doc)
    s_start, s_end = bounds[doc.tokens[ner.start].sentence_index]
    last = ner.end - 1
    covered = {last} | descendants(doc, last, kids) | set(range(ner.start, ner.end))
    start, end = min(covered), max(covered) + 1

    capped = ner.end < s_end and doc.tokens[ner.end].text.casefold() == "and"
    if capped:
        end = ner.end
    prev = ner.start - 1
    if prev >= s_start and doc.tokens[prev].pos.startswith("NN"):
        extra = {prev} | descendants(doc, prev, kids)
        start = min(start, min(extra))
        if not capped:
            end = max(end, max(extra) + 1)
    start, end = max(start, s_start), min(end, s_end)
    while start < ner.start and _is_punct(doc.tokens[start]):
        start += 1
    while end > ner.end and _is_punct(doc.tokens[end - 1]):
        end -= 1
    return Mention(start, end)


def _is_punct(tok) -> bool:
    return tok.deprel == "punct" or (bool(tok.text) and not any(c.isalnum() for c in tok.text))


def name_mentions(doc: AnnotatedDocument, entity_type: str = "PER") -> list[NameMention]:
    kids = children_map(doc)
    bounds = _sentence_bounds(doc)
    out = []
    used = set()
    for span in sorted((s for s in doc.ner if s.entity_type == entity_type), key=lambda s: (s.start, s.end)):
        m = derive_mention_span(doc, span, kids, bounds)
        if m in used:
            m = span.mention
        used.add(m)
        out.append(NameMention(m, span, doc.text(span)))
    return sorted(out, key=lambda n: (n.ner.start, n.mention))


def longest_name(names: Iterable[NameMention]) -> NameMention:
    names = list(names)
    return max(names, key=lambda n: (n.length, -names.index(n)))


def cluster_name_groups(names: list[NameMention], cfg: ResolverConfig) -> list[list[NameMention]]:
    groups = [[n] for n in names]
    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            head = longest_name(groups[i]).name
            for j in range(i + 1, len(groups)):
                if any(
                    name_similarity(head, n.name, cfg.honorifics) > cfg.similarity_threshold
                    for n in groups[j]
                ):
                    groups[i] = sorted(groups[i] + groups.pop(j), key=lambda n: n.ner.start)
                    merged = True
                    break
            if merged:
                break
    return groups


def cluster_names(doc: AnnotatedDocument, spans: list[NameMention], cfg: ResolverConfig) -> list[Chain]:
    """Group name mentions into chains, ids in order of first occurrence."""
    groups = cluster_name_groups(list(spans), cfg)
    return [Chain(k, [n.mention for n in g]) for k, g in enumerate(groups)]


def chain_gender(names: Iterable, gaz: Gazetteer, honorifics=DEFAULT_HONORIFICS) -> Gender:
    """Gender of the first word of the chain's longest name.

    ``names`` are name strings or :class:`NameMention` objects in document
    order; ties on length go to the earliest.
    """
    strings = [n.name if isinstance(n, NameMention) else n for n in names]
    tokenized = [strip_honorifics(s.split(), honorifics) for s in strings]
    longest = max(range(len(tokenized)), key=lambda k: (len(tokenized[k]), -k))
    return gaz.lookup(tokenized[longest][0])


@dataclass
class ChainState:
    id: int
    names: list
    gender: Gender
    pronouns: list = field(default_factory=list)

    def contains_name_token(self, index: int) -> bool:
        return any(index in n.mention for n in self.names)

    def mentions(self) -> list[Mention]:
        return [n.mention for n in self.names] + [Mention(p, p + 1) for p in self.pronouns]


@dataclass(frozen=True)
class PronounAssignment:
    token: int
    chain_id: Optional[int]
    rule: str


def pronoun_gender(doc: AnnotatedDocument, index: int) -> Optional[Gender]:
    tok = doc.tokens[index]
    if tok.pos and not tok.pos.startswith("PRP"):
        return None
    return PRONOUN_GENDER.get(tok.text.casefold())


def _dependents(doc: AnnotatedDocument, head: int, deprels: frozenset) -> list[int]:
    return [t.index for t in doc.tokens if t.head == head and t.deprel in deprels]


def _blocked(doc: AnnotatedDocument, p: int, chain: ChainState) -> bool:
    tok = doc.tokens[p]
    if tok.head == ROOT:
        return False
    if tok.deprel in SUBJECT_DEPRELS:
        others = _dependents(doc, tok.head, OBJECT_DEPRELS)
    elif tok.deprel in OBJECT_DEPRELS:
        others = _dependents(doc, tok.head, SUBJECT_DEPRELS)
    else:
        return False
    return any(chain.contains_name_token(k) for k in others)


def _resolve(doc: AnnotatedDocument, p: int, chains: list[ChainState], cfg: ResolverConfig):
    gender = pronoun_gender(doc, p)
    if gender is None:
        return None, "iii"
    # A chain whose own name span covers the pronoun ("his wife Laci") cannot take it.
    compatible = [c for c in chains if c.gender.compatible(gender) and not c.contains_name_token(p)]

    if doc.tokens[p].deprel in SUBJECT_DEPRELS:
        subject = next((k for k in range(p - 1, -1, -1) if doc.tokens[k].deprel in SUBJECT_DEPRELS), None)
        if subject is not None:
            for chain in compatible:
                if chain.contains_name_token(subject):
                    return chain.id, "i"

    candidates = sorted(
        ((n.position, chain) for chain in compatible for n in chain.names if n.position < p),
        key=lambda pc: (-pc[0], pc[1].id),
    )
    for _, chain in candidates:
        if _blocked(doc, p, chain):
            continue
        if any(0 < p - n.position <= cfg.window for n in chain.names):
            return chain.id, "ii"
    return None, "iii"


def resolve_pronoun(doc: AnnotatedDocument, p: int, chains: list[ChainState], cfg: ResolverConfig) -> Optional[int]:
    return _resolve(doc, p, chains, cfg)[0]


@dataclass
class Resolution:
    doc_id: str
    chains: list
    assignments: list
    states: list

    def document(self, doc: AnnotatedDocument) -> AnnotatedDocument:
        return doc.with_chains(self.chains)


def resolve_document(doc: AnnotatedDocument, cfg: Optional[ResolverConfig] = None,
                     gaz: Optional[Gazetteer] = None) -> Resolution:
    cfg = cfg or ResolverConfig()
    gaz = gaz if gaz is not None else Gazetteer.bundled()
    for layer in ("ner", "dep", "pos"):
        if not doc.has_layer(layer) and not (layer in ("dep", "pos") and not doc.ner):
            raise PreconditionError(layer, doc.doc_id)

    names = name_mentions(doc, cfg.entity_type)
    groups = cluster_name_groups(names, cfg)
    states = [ChainState(k, g, chain_gender(g, gaz, cfg.honorifics)) for k, g in enumerate(groups)]

    assignments = []
    if cfg.resolve_pronouns and states:
        inside_names = {k for s in doc.ner if s.entity_type == cfg.entity_type for k in range(s.start, s.end)}
        for tok in doc.tokens:
            p = tok.index
            gender = pronoun_gender(doc, p)
            if gender is None or p in inside_names:
                continue
            chain_id, rule = _resolve(doc, p, states, cfg)
            assignments.append(PronounAssignment(p, chain_id, rule))
            if chain_id is None:
                continue
            state = states[chain_id]
            state.pronouns.append(p)
            if state.gender is Gender.UNISEX and gender is not Gender.UNISEX:
                state.gender = gender
            log.debug("%s: pronoun %r@%d -> chain %d (rule %s)", doc.doc_id, tok.text, p, chain_id, rule)

    chains = []
    for state in states:
        mentions = set(state.mentions())
        if len(mentions) > 1:
            chains.append(Chain(len(chains), mentions))
    return Resolution(doc.doc_id, chains, assignments, states)


def run_ner_de(doc: AnnotatedDocument, cfg: Optional[ResolverConfig] = None,
               gaz: Optional[Gazetteer] = None) -> list[Chain]:
    return resolve_document(doc, cfg, gaz).chains
