"""Corpus statistics on coreference chains by named-entity type."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .filtering import chain_entity_type, classify_mention
from .model import MentionType

PRONOUN_FORMS = ("he", "him", "his", "she", "her", "hers")


def _pct(num, den) -> Optional[float]:
    return 100.0 * num / den if den else None


@dataclass
class StatsReport:
    """Chain statistics for one entity type.

    ``avg_cluster_size`` and the named/non-named split are computed over the
    type's non-singleton chains. ``entity_mentions_pct`` divides by mentions
    in all non-singleton chains; ``entity_mentions_pct_all`` divides by all
    mentions, singletons included.
    """

    entity_type: str
    chains: int = 0
    type_chains: int = 0
    type_non_singleton: int = 0
    type_with_named: int = 0
    mentions: int = 0
    non_singleton_mentions: int = 0
    type_mentions: int = 0
    type_non_singleton_mentions: int = 0
    type_named_mentions: int = 0

    @property
    def non_singleton_pct(self):
        return _pct(self.type_non_singleton, self.type_chains)

    @property
    def entities_pct(self):
        return _pct(self.type_chains, self.chains)

    @property
    def entity_mentions_pct(self):
        return _pct(self.type_non_singleton_mentions, self.non_singleton_mentions)

    @property
    def entity_mentions_pct_all(self):
        return _pct(self.type_mentions, self.mentions)

    @property
    def named_pct(self):
        return _pct(self.type_named_mentions, self.type_non_singleton_mentions)

    @property
    def non_named_pct(self):
        named = self.named_pct
        return None if named is None else 100.0 - named

    @property
    def avg_cluster_size(self):
        if not self.type_non_singleton:
            return None
        return self.type_non_singleton_mentions / self.type_non_singleton

    @property
    def with_named_pct(self):
        return _pct(self.type_with_named, self.type_chains)

    ROWS = (
        ("Non-singleton", "non_singleton_pct", "%"),
        ("Entities", "entities_pct", "%"),
        ("Entity Mentions", "entity_mentions_pct", "%"),
        ("Entity Mentions (incl. singletons)", "entity_mentions_pct_all", "%"),
        ("Named mentions", "named_pct", "%"),
        ("Non-named mentions", "non_named_pct", "%"),
        ("Avg cluster size", "avg_cluster_size", ""),
        ("Chains with a named mention", "with_named_pct", "%"),
    )

    def as_dict(self) -> dict:
        d = asdict(self)
        for _, attr, _ in self.ROWS:
            d[attr] = getattr(self, attr)
        return d


def corpus_stats(docs, entity_type: str = "PER") -> StatsReport:
    report = StatsReport(entity_type)
    for doc in docs:
        for chain in doc.chains:
            size = len(chain)
            report.chains += 1
            report.mentions += size
            if size > 1:
                report.non_singleton_mentions += size
            if chain_entity_type(doc, chain.mentions) != entity_type:
                continue
            report.type_chains += 1
            report.type_mentions += size
            types = [classify_mention(doc, m, entity_type) for m in chain.mentions]
            named = sum(t == MentionType.NAME for t in types)
            if named:
                report.type_with_named += 1
            if size > 1:
                report.type_non_singleton += 1
                report.type_non_singleton_mentions += size
                report.type_named_mentions += named
    return report


@dataclass
class PronounRow:
    form: str
    total: int = 0
    in_per: int = 0

    @property
    def in_per_pct(self) -> Optional[float]:
        return _pct(self.in_per, self.total)


@dataclass
class PronounReport:
    rows: dict

    def __getitem__(self, form: str) -> PronounRow:
        return self.rows[form]

    def as_dict(self) -> dict:
        return {f: {"total": r.total, "in_per": r.in_per, "in_per_pct": r.in_per_pct}
                for f, r in self.rows.items()}


def pronoun_stats(docs, entity_type: str = "PER") -> PronounReport:
    rows = {f: PronounRow(f) for f in PRONOUN_FORMS}
    for doc in docs:
        covered = set()
        for chain in doc.chains:
            if chain_entity_type(doc, chain.mentions) == entity_type:
                for m in chain.mentions:
                    covered.update(m.indices)
        for tok in doc.tokens:
            form = tok.text.casefold()
            if form in rows:
                rows[form].total += 1
                if tok.index in covered:
                    rows[form].in_per += 1
    return PronounReport(rows)
