"""Entity-level evaluation for named person coreference.

Each gold entity is paired with the system entity that shares one of its name
variants and has the best mention-overlap F1. Unpaired gold entities score 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .filtering import NpcEntity
from .metrics import f1_score
from .model import MentionType


@dataclass(frozen=True)
class EntityMatch:
    gold: NpcEntity
    predicted: Optional[NpcEntity]
    recall: float = 0.0
    precision: float = 0.0
    f1: float = 0.0
    overlap: int = 0

    @property
    def found(self) -> bool:
        return self.predicted is not None


def _prf(gold_mentions, sys_mentions) -> tuple[float, float, float, int]:
    overlap = len(gold_mentions & sys_mentions)
    r = overlap / len(gold_mentions) if gold_mentions else 0.0
    p = overlap / len(sys_mentions) if sys_mentions else 0.0
    return r, p, f1_score(r, p), overlap


def shares_name(a: NpcEntity, b: NpcEntity) -> bool:
    return bool(a.variant_keys & b.variant_keys)


def match_entity(gold: NpcEntity, candidates: Sequence[NpcEntity]) -> EntityMatch:
    best = None
    best_key = None
    for cand in candidates:
        if not shares_name(gold, cand):
            continue
        r, p, f1, overlap = _prf(gold.mentions, cand.mentions)
        key = (-f1, -overlap, len(cand.mentions), cand.id)
        if best_key is None or key < best_key:
            best_key = key
            best = EntityMatch(gold, cand, r, p, f1, overlap)
    return best if best is not None else EntityMatch(gold, None)


def match_all(gold_entities, sys_entities) -> list[EntityMatch]:
    return [match_entity(g, sys_entities) for g in gold_entities]


def _mean(values) -> Optional[float]:
    values = list(values)
    return sum(values) / len(values) if values else None


def npc_f1(gold_entities, sys_entities) -> Optional[float]:
    return _mean(m.f1 for m in match_all(gold_entities, sys_entities))


def chains_not_found(gold_entities, sys_entities) -> Optional[float]:
    matches = match_all(gold_entities, sys_entities)
    if not matches:
        return None
    return 100.0 * sum(not m.found for m in matches) / len(matches)


def type_f1(match: EntityMatch, mention_type: MentionType) -> Optional[float]:
    """Entity F1 restricted to mentions of one type, keeping the original pairing.

    None when the gold entity has no mention of that type.
    """
    gold = match.gold.mentions_of_type(mention_type)
    if not gold:
        return None
    if match.predicted is None:
        return 0.0
    return _prf(gold, match.predicted.mentions_of_type(mention_type))[2]


def per_type_f1(gold_entities, sys_entities, mention_type: MentionType) -> Optional[float]:
    values = (type_f1(m, mention_type) for m in match_all(gold_entities, sys_entities))
    return _mean(v for v in values if v is not None)


def detect_oversplit(gold_entities, sys_entities) -> list[tuple[NpcEntity, list[NpcEntity]]]:
    found = []
    for g in gold_entities:
        sharing = [s for s in sys_entities if shares_name(g, s)]
        if len(sharing) > 1:
            found.append((g, sharing))
    return found


def detect_overmerge(gold_entities, sys_entities) -> list[tuple[NpcEntity, list[NpcEntity]]]:
    found = []
    for s in sys_entities:
        sharing = [g for g in gold_entities if shares_name(g, s)]
        if len(sharing) > 1:
            found.append((s, sharing))
    return found


def no_span_overlap(gold: NpcEntity, sys_chains) -> bool:
    """True when no mention of ``gold`` appears in any system chain at all."""
    return not any(gold.mentions & frozenset(getattr(c, "mentions", c)) for c in sys_chains)


@dataclass
class DocumentEvaluation:
    doc_id: str
    matches: list
    oversplits: list
    overmerges: list
    soft_not_found: int = 0


def evaluate_document(doc_id, gold_entities, sys_entities, sys_chains=None) -> DocumentEvaluation:
    if sys_chains is None:
        sys_chains = [e.chain for e in sys_entities]
    matches = match_all(gold_entities, sys_entities)
    return DocumentEvaluation(
        doc_id,
        matches,
        detect_oversplit(gold_entities, sys_entities),
        detect_overmerge(gold_entities, sys_entities),
        sum(no_span_overlap(g, sys_chains) for g in gold_entities),
    )


@dataclass
class NpcReport:
    """NPC scores aggregated over gold entities of one or more documents."""

    documents: list = field(default_factory=list)

    def add(self, evaluation: DocumentEvaluation) -> "NpcReport":
        self.documents.append(evaluation)
        return self

    @property
    def matches(self) -> list[EntityMatch]:
        return [m for d in self.documents for m in d.matches]

    @property
    def gold_entities(self) -> int:
        return len(self.matches)

    @property
    def npc_f1(self) -> Optional[float]:
        return _mean(m.f1 for m in self.matches)

    @property
    def not_found(self) -> int:
        return sum(not m.found for m in self.matches)

    @property
    def chains_not_found(self) -> Optional[float]:
        n = self.gold_entities
        return 100.0 * self.not_found / n if n else None

    @property
    def soft_not_found(self) -> int:
        return sum(d.soft_not_found for d in self.documents)

    @property
    def per_type_f1(self) -> dict:
        out = {}
        for t in MentionType:
            values = [type_f1(m, t) for m in self.matches]
            out[t] = _mean(v for v in values if v is not None)
        return out

    @property
    def oversplit_count(self) -> int:
        return sum(len(d.oversplits) for d in self.documents)

    @property
    def overmerge_count(self) -> int:
        return sum(len(d.overmerges) for d in self.documents)

    def as_dict(self) -> dict:
        return {
            "gold_entities": self.gold_entities,
            "npc_f1": self.npc_f1,
            "chains_not_found": self.chains_not_found,
            "not_found": self.not_found,
            "soft_not_found": self.soft_not_found,
            "per_type_f1": {t.value: v for t, v in self.per_type_f1.items()},
            "oversplit_count": self.oversplit_count,
            "overmerge_count": self.overmerge_count,
            "entities": [
                {
                    "doc_id": d.doc_id,
                    "gold_chain": m.gold.id,
                    "gold_variants": sorted(m.gold.name_variants),
                    "predicted_chain": m.predicted.id if m.predicted else None,
                    "recall": m.recall,
                    "precision": m.precision,
                    "f1": m.f1,
                }
                for d in self.documents
                for m in d.matches
            ],
        }


def evaluate(gold_entities, sys_entities, doc_id: str = "") -> NpcReport:
    return NpcReport().add(evaluate_document(doc_id, gold_entities, sys_entities))
