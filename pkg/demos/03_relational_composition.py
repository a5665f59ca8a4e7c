"""
Composing non-linked relations
==============================

Replace numeric criteria with preference relations that may leave pairs
incomparable. The composition is then only a quasi-order.
"""

from pathlib import Path

from lexmcdm import check_axioms, compose_table, derive_parts, load_relations, verify_affirmation2

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

labels, rels = load_relations((FIXTURES / "partial_orders.json").read_text())
parts = derive_parts(rels[1])
print("level 2 incomparable pairs:",
      [(labels[i], labels[l]) for i in range(4) for l in range(i + 1, 4) if parts.incomparable[i, l]])

table = compose_table(rels)
for i in range(len(labels)):
    for l in range(i + 1, len(labels)):
        o = table[i][l]
        print(f"  {labels[i]} vs {labels[l]}: {o.verdict.value}", f"@ {o.level}" if o.level else "")

# %%
# Transitive levels whose equivalent alternatives are interchangeable
# compose into a transitive strict part, checked here triple by triple.

print(verify_affirmation2(rels))

# %%
# A level where a ~ b but only a beats c breaks the substitution axiom.

bad_labels, bad = load_relations((FIXTURES / "a1_violation.json").read_text())
print("A1 violations:", check_axioms(bad).a1_violations)
