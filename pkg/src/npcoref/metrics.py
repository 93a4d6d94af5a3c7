"""Standard coreference metrics: MUC, B-cubed, CEAFm, CEAFe and LEA.

Every metric takes two collections of clusters (sets of hashable mentions) and
returns :class:`MetricCounts`, the recall and precision numerators and
denominators. Counts add up across documents, so corpus scores are
micro-averages. Mentions absent from the other side contribute nothing; no
singleton clusters are synthesised for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

METRICS = ("muc", "b3", "ceafm", "ceafe", "lea")


@dataclass(frozen=True)
class MetricScore:
    recall: float
    precision: float
    f1: float
    recall_absent: bool = False
    precision_absent: bool = False

    @property
    def absent(self) -> bool:
        return self.recall_absent and self.precision_absent

    def as_dict(self) -> dict:
        d = {"recall": self.recall, "precision": self.precision, "f1": self.f1}
        if self.recall_absent or self.precision_absent:
            d["absent"] = [k for k, a in (("recall", self.recall_absent), ("precision", self.precision_absent)) if a]
        return d


def f1_score(recall: float, precision: float) -> float:
    if recall + precision == 0:
        return 0.0
    return 2 * recall * precision / (recall + precision)


@dataclass
class MetricCounts:
    recall_num: float = 0.0
    recall_den: float = 0.0
    precision_num: float = 0.0
    precision_den: float = 0.0

    def __add__(self, other: "MetricCounts") -> "MetricCounts":
        return MetricCounts(
            self.recall_num + other.recall_num,
            self.recall_den + other.recall_den,
            self.precision_num + other.precision_num,
            self.precision_den + other.precision_den,
        )

    def score(self) -> MetricScore:
        r_absent = self.recall_den == 0
        p_absent = self.precision_den == 0
        r = 0.0 if r_absent else self.recall_num / self.recall_den
        p = 0.0 if p_absent else self.precision_num / self.precision_den
        return MetricScore(r, p, f1_score(r, p), r_absent, p_absent)


def _clusters(chains) -> list[frozenset]:
    out = []
    for c in chains:
        mentions = getattr(c, "mentions", c)
        out.append(frozenset(mentions))
    return [c for c in out if c]


def _index(clusters: list[frozenset]) -> dict:
    return {m: i for i, c in enumerate(clusters) for m in c}


def _muc_side(key: list[frozenset], response: list[frozenset]) -> tuple[float, float]:
    where = _index(response)
    num = den = 0
    for cluster in key:
        parts = set()
        missing = 0
        for m in cluster:
            if m in where:
                parts.add(where[m])
            else:
                missing += 1
        num += len(cluster) - (len(parts) + missing)
        den += len(cluster) - 1
    return num, den


def muc(gold, sys) -> MetricCounts:
    gold, sys = _clusters(gold), _clusters(sys)
    rn, rd = _muc_side(gold, sys)
    pn, pd = _muc_side(sys, gold)
    return MetricCounts(rn, rd, pn, pd)


def _b3_side(key, response):
    where = _index(response)
    num = 0.0
    den = 0
    for cluster in key:
        den += len(cluster)
        for m in cluster:
            if m in where:
                num += len(cluster & response[where[m]]) / len(cluster)
    return num, den


def bcubed(gold, sys) -> MetricCounts:
    gold, sys = _clusters(gold), _clusters(sys)
    rn, rd = _b3_side(gold, sys)
    pn, pd = _b3_side(sys, gold)
    return MetricCounts(rn, rd, pn, pd)


def phi3(k: frozenset, r: frozenset) -> float:
    return len(k & r)


def phi4(k: frozenset, r: frozenset) -> float:
    return 2 * len(k & r) / (len(k) + len(r))


def similarity_matrix(gold, sys, phi: Callable) -> np.ndarray:
    sim = np.zeros((len(gold), len(sys)))
    for i, k in enumerate(gold):
        for j, r in enumerate(sys):
            if k & r:
                sim[i, j] = phi(k, r)
    return sim


def optimal_alignment(sim: np.ndarray) -> tuple[float, list[tuple[int, int]]]:
    """Maximum-weight one-to-one alignment of rows to columns."""
    if sim.size == 0:
        return 0.0, []
    rows, cols = linear_sum_assignment(sim, maximize=True)
    pairs = [(int(i), int(j)) for i, j in zip(rows, cols) if sim[i, j] > 0]
    return float(sum(sim[i, j] for i, j in pairs)), pairs


def ceaf(gold, sys, variant: str = "entity") -> MetricCounts:
    gold, sys = _clusters(gold), _clusters(sys)
    if variant == "mention":
        phi = phi3
        rd = sum(len(k) for k in gold)
        pd = sum(len(r) for r in sys)
    elif variant == "entity":
        phi = phi4
        rd, pd = len(gold), len(sys)
    else:
        raise ValueError(f"unknown CEAF variant {variant!r}")
    total, _ = optimal_alignment(similarity_matrix(gold, sys, phi))
    return MetricCounts(total, rd, total, pd)


def ceafm(gold, sys) -> MetricCounts:
    return ceaf(gold, sys, "mention")


def ceafe(gold, sys) -> MetricCounts:
    return ceaf(gold, sys, "entity")


def _links(n: int) -> int:
    return n * (n - 1) // 2


def _lea_side(key, response):
    where = _index(response)
    num = 0.0
    den = 0
    for cluster in key:
        size = len(cluster)
        den += size
        if size == 1:
            (m,) = cluster
            if m in where and len(response[where[m]]) == 1:
                num += 1
            continue
        overlaps: dict[int, int] = {}
        for m in cluster:
            if m in where:
                overlaps[where[m]] = overlaps.get(where[m], 0) + 1
        resolved = sum(_links(c) for c in overlaps.values())
        num += size * resolved / _links(size)
    return num, den


def lea(gold, sys) -> MetricCounts:
    gold, sys = _clusters(gold), _clusters(sys)
    rn, rd = _lea_side(gold, sys)
    pn, pd = _lea_side(sys, gold)
    return MetricCounts(rn, rd, pn, pd)


METRIC_FUNCTIONS = {"muc": muc, "b3": bcubed, "ceafm": ceafm, "ceafe": ceafe, "lea": lea}


def score_muc(gold, sys) -> MetricScore:
    return muc(gold, sys).score()


def score_bcubed(gold, sys) -> MetricScore:
    return bcubed(gold, sys).score()


def score_ceaf(gold, sys, variant: str = "entity") -> MetricScore:
    return ceaf(gold, sys, variant).score()


def score_lea(gold, sys) -> MetricScore:
    return lea(gold, sys).score()


@dataclass
class ScoreReport:
    counts: dict = field(default_factory=lambda: {name: MetricCounts() for name in METRICS})
    documents: int = 0

    def add(self, gold, sys) -> "ScoreReport":
        for name, fn in METRIC_FUNCTIONS.items():
            self.counts[name] = self.counts[name] + fn(gold, sys)
        self.documents += 1
        return self

    def __getitem__(self, name: str) -> MetricScore:
        return self.counts[name].score()

    @property
    def scores(self) -> dict:
        return {name: self[name] for name in METRICS}

    @property
    def conll_avg(self) -> float:
        return conll_average(self)

    def as_dict(self) -> dict:
        d = {name: s.as_dict() for name, s in self.scores.items()}
        d["conll_avg"] = self.conll_avg
        d["documents"] = self.documents
        return d


def conll_average(report: ScoreReport) -> float:
    return (report["muc"].f1 + report["b3"].f1 + report["ceafe"].f1) / 3


def score_all(gold, sys) -> ScoreReport:
    return ScoreReport().add(gold, sys)


def score_corpus(pairs: Iterable[tuple[Collection, Collection]]) -> ScoreReport:
    """Micro-averaged report over (gold clusters, system clusters) pairs."""
    report = ScoreReport()
    for gold, sys in pairs:
        report.add(gold, sys)
    return report


def truncate(value: float, digits: int = 2) -> float:
    """Round toward zero the way published score tables usually do."""
    scale = 10 ** digits
    return math.floor(value * scale + 1e-9) / scale
