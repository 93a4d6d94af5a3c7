"""Over-split and over-merge errors on three news-style passages.

Frank Curzio is split over two system chains; Kofi Annan and Danilo Turk, and
Laci and Scott Peterson, are each fused into one system chain.
"""

from npcoref import fixtures
from npcoref.filtering import filter_chains
from npcoref.npc_metrics import evaluate_document

for make in (fixtures.curzio, fixtures.annan_turk, fixtures.peterson):
    doc, system = make()
    ev = evaluate_document(doc.doc_id, filter_chains(doc), filter_chains(doc, system), system)
    print(f"== {doc.doc_id}")
    for match in ev.matches:
        names = ", ".join(sorted(match.gold.name_variants))
        print(f"   {names}: F1 {match.f1:.2f} (R {match.recall:.2f}, P {match.precision:.2f})")
    for gold, parts in ev.oversplits:
        print(f"   over-split: {sorted(gold.name_variants)} spread over system chains {[p.id for p in parts]}")
    for sys_entity, golds in ev.overmerges:
        people = [max(sorted(g.name_variants), key=len) for g in golds]
        print(f"   over-merge: system chain {sys_entity.id} fuses {people}")
    print()
