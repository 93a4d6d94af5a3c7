import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npcoref import fixtures
from npcoref.filtering import NpcEntity, filter_chains
from npcoref.model import Chain, Mention, MentionType
from npcoref.npc_metrics import (
    chains_not_found, detect_overmerge, detect_oversplit, evaluate, evaluate_document, match_entity, npc_f1,
    per_type_f1,
)


@pytest.fixture(scope="module")
def t4():
    gold, sols = fixtures.three_people()
    g = filter_chains(gold)
    return gold, g, {k: filter_chains(gold, v) for k, v in sols.items()}


def by_name(entities, name):
    return next(e for e in entities if name in e.name_variants)


def test_match_john_doe_solution3(t4):
    _, g, s = t4
    m = match_entity(by_name(g, "John Doe"), s[3])
    assert "John Doe" in m.predicted.name_variants
    assert (m.precision, m.recall) == (1.0, 0.5)
    assert m.f1 == pytest.approx(2 / 3)


def test_match_none_for_solution2(t4):
    _, g, s = t4
    assert match_entity(g[0], s[2]).predicted is None
    assert match_entity(g[0], s[2]).f1 == 0


def test_match_self(t4):
    _, g, _ = t4
    assert match_entity(g[1], [g[1]]).f1 == 1.0


@pytest.mark.parametrize("solution, expected", [(1, 1 / 3), (2, 0.0), (3, (2 / 3 + 0.8 + 0.8) / 3)])
def test_npc_f1(t4, solution, expected):
    _, g, s = t4
    assert npc_f1(g, s[solution]) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("solution, expected", [(1, 200 / 3), (2, 100.0), (3, 0.0)])
def test_chains_not_found(t4, solution, expected):
    _, g, s = t4
    assert chains_not_found(g, s[solution]) == pytest.approx(expected)


def test_gold_vs_gold(t4):
    _, g, _ = t4
    assert npc_f1(g, g) == 1.0
    assert chains_not_found(g, g) == 0.0
    for t in (MentionType.NAME, MentionType.PRONOUN):
        assert per_type_f1(g, g, t) == 1.0
    assert detect_oversplit(g, g) == [] and detect_overmerge(g, g) == []


def test_per_type(t4):
    _, g, s = t4
    assert per_type_f1(g, s[3], MentionType.PRONOUN) == pytest.approx((4 / 7 + 2 / 3 + 2 / 3) / 3)
    assert per_type_f1(g, s[1], MentionType.NAME) == pytest.approx(1 / 3)
    assert per_type_f1(g, s[3], MentionType.NOMINAL) is None


def test_absent_when_no_gold():
    assert npc_f1([], []) is None
    assert chains_not_found([], []) is None


def test_solution3_no_oversplit(t4):
    _, g, s = t4
    assert detect_oversplit(g, s[3]) == []


def test_curzio_oversplit():
    doc, system = fixtures.curzio()
    (found,) = detect_oversplit(filter_chains(doc), filter_chains(doc, system))
    assert len(found[1]) == 2


@pytest.mark.parametrize("make", [fixtures.annan_turk, fixtures.peterson])
def test_overmerge(make):
    doc, system = make()
    (found,) = detect_overmerge(filter_chains(doc), filter_chains(doc, system))
    assert len(found[1]) == 2


def test_soft_not_found(t4):
    gold, g, s = t4
    ev = evaluate_document("t", g, s[2], fixtures.three_people()[1][2])
    assert ev.soft_not_found == 0
    ev = evaluate_document("t", g, [], [])
    assert ev.soft_not_found == 3


def test_report_as_dict(t4):
    _, g, s = t4
    d = evaluate(g, s[3]).as_dict()
    assert d["gold_entities"] == 3
    assert d["npc_f1"] == pytest.approx(0.7555555, abs=1e-6)


def _entity(cid, mentions, variants):
    return NpcEntity(Chain(cid, [Mention(m, m + 1) for m in mentions]), frozenset(variants),
                     {Mention(m, m + 1): MentionType.NAME for m in mentions})


@st.composite
def candidate_sets(draw):
    gold = _entity(0, draw(st.sets(st.integers(0, 12), min_size=1, max_size=6)), ["Ann"])
    cands = []
    for cid in range(draw(st.integers(0, 5))):
        mentions = draw(st.sets(st.integers(0, 12), min_size=1, max_size=6))
        names = draw(st.sets(st.sampled_from(["Ann", "ann", "Bob"]), min_size=1))
        cands.append(_entity(cid + 1, mentions, names))
    return gold, cands


@settings(max_examples=300, deadline=None)
@given(candidate_sets())
def test_match_is_exhaustive_maximum(data):
    gold, cands = data
    m = match_entity(gold, cands)
    eligible = [c for c in cands if {v.casefold() for v in c.name_variants} & {"ann"}]
    if not eligible:
        assert m.predicted is None
        return

    def f1(c):
        ov = len(gold.mentions & c.mentions)
        return 0.0 if not ov else 2 * ov / (len(gold.mentions) + len(c.mentions))

    assert m.f1 == pytest.approx(max(f1(c) for c in eligible))
    assert match_entity(gold, list(reversed(cands))) == m


@settings(max_examples=200, deadline=None)
@given(candidate_sets())
def test_restricting_to_gold_never_lowers_precision(data):
    gold, cands = data
    for c in cands:
        restricted = _entity(c.id, [m.start for m in c.mentions & gold.mentions] or [99], c.name_variants)
        a = match_entity(gold, [c])
        b = match_entity(gold, [restricted])
        if a.predicted is not None and c.mentions & gold.mentions:
            assert b.precision >= a.precision


@settings(max_examples=200, deadline=None)
@given(st.lists(candidate_sets(), min_size=1, max_size=3))
def test_npc_f1_bounds(items):
    golds = [g for g, _ in items]
    cands = [c for _, cs in items for c in cs]
    value = npc_f1(golds, cands)
    assert 0.0 <= value <= 1.0
    if chains_not_found(golds, cands) == 100.0:
        assert value == 0.0
