"""Run the NER-driven resolver on three short passages and explain each link."""

from npcoref import fixtures
from npcoref.gazetteer import Gazetteer
from npcoref.resolver import ResolverConfig, resolve_document

gazetteer = Gazetteer.bundled()
config = ResolverConfig()

for doc in (fixtures.henry_barry(), fixtures.curzio()[0], fixtures.peterson()[0]):
    print(f"== {doc.doc_id}")
    print("  ", " ".join(t.text for t in doc.tokens))
    result = resolve_document(doc, config, gazetteer)
    for state in result.states:
        names = ", ".join(doc.text(n.mention) for n in state.names)
        pronouns = ", ".join(f"{doc.tokens[p].text}@{p}" for p in state.pronouns) or "-"
        print(f"   cluster {state.id} [{state.gender.value}]: names {names}; pronouns {pronouns}")
    for a in result.assignments:
        target = "unresolved" if a.chain_id is None else f"cluster {a.chain_id}"
        print(f"   {doc.tokens[a.token].text}@{a.token} -> {target} (rule {a.rule})")
    print(f"   output chains (singletons dropped): {len(result.chains)}\n")
