import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from npcoref import fixtures
from npcoref.model import AnnotatedDocument, Chain, Mention, Token

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def three_people():
    return fixtures.three_people()


@st.composite
def partitions(draw, max_mentions=20, max_chains=7, min_size=1):
    """A set of disjoint clusters over integer mentions."""
    n = draw(st.integers(0, max_mentions))
    pool = draw(st.permutations(list(range(max_mentions))))[:n]
    k = draw(st.integers(1, max_chains))
    labels = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    clusters = {}
    for m, lab in zip(pool, labels):
        clusters.setdefault(lab, set()).add(m)
    return [frozenset(c) for c in clusters.values() if len(c) >= min_size]


def random_document(rng: random.Random, doc_id: str, n_tokens=None, n_chains=None) -> AnnotatedDocument:
    """Random tokens and sentences with nested/adjacent mentions; no same-chain overlap."""
    n = n_tokens or rng.randint(1, 30)
    tokens = []
    sentence = 0
    for k in range(n):
        if k and rng.random() < 0.15:
            sentence += 1
        tokens.append(Token(k, rng.choice(["a", "John", "he", "Doe", ",", "said", "it's", "(x)"]), "", -1, "", sentence))
    chains = []
    for cid in range(n_chains if n_chains is not None else rng.randint(0, 5)):
        spans = []
        for _ in range(rng.randint(1, 4)):
            start = rng.randrange(n)
            end = rng.randint(start + 1, min(n, start + 4))
            m = Mention(start, end)
            if all(m.end <= o.start or o.end <= m.start for o in spans):
                spans.append(m)
        chains.append(Chain(rng.randint(0, 40) * 7 + cid if rng.random() < 0.3 else cid, spans))
    ids = set()
    unique = []
    for c in chains:
        if c.id not in ids:
            ids.add(c.id)
            unique.append(c)
    return AnnotatedDocument(doc_id, tokens, (), unique, {"coref"})


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
