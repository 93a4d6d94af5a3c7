"""Chain statistics by entity type and pronoun coverage on the bundled corpus."""

from pathlib import Path

from npcoref.reports import load_documents, pronoun_table, stats_table
from npcoref.stats import corpus_stats, pronoun_stats

corpus = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus_gold.json"
docs = load_documents(corpus)
print(f"{len(docs)} documents, {sum(len(d.tokens) for d in docs)} tokens\n")
print(stats_table([corpus_stats(docs, t) for t in ("PER", "ORG")]))
print(pronoun_table(pronoun_stats(docs)))
