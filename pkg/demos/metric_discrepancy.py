"""Why standard coreference scores mislead for named-person coreference.

Three hypothetical outputs for a short document about John Doe, Richard Roe
and Joe Smith are scored with the standard metrics and with entity-level NPC
F1. The output that links only pronouns to each other (solution 2) wins on
the CoNLL average but finds no named person at all.
"""

from npcoref import fixtures
from npcoref.filtering import filter_chains
from npcoref.metrics import METRICS, conll_average, score_all, truncate
from npcoref.npc_metrics import chains_not_found, npc_f1

gold, solutions = fixtures.three_people()
gold_entities = filter_chains(gold)

print("gold chains:")
for chain in gold.chains:
    print("  ", [gold.text(m) for m in chain.sorted_mentions()])

print(f"\n{'':8}" + "".join(f"{m:>8}" for m in METRICS) + f"{'CoNLL':>8}{'NPC F1':>8}{'missed':>8}")
for k, chains in solutions.items():
    report = score_all(gold.chains, chains)
    entities = filter_chains(gold, chains)
    cells = "".join(f"{truncate(report[m].f1):>8.2f}" for m in METRICS)
    print(f"solution {k}{cells}{conll_average(report):>8.3f}{npc_f1(gold_entities, entities):>8.3f}"
          f"{chains_not_found(gold_entities, entities):>7.1f}%")

print("\nSolution 2 keeps every pronoun cluster pure, so precision-heavy metrics reward it;")
print("none of its chains contains a name, so every person is 'not found'.")
