"""
Crisp lexicographic cascade
===========================

Choose between four cars on reliability, fuel economy and cost, in that
order of importance. Cost is a loss-type criterion, so it is negated first.
"""

from pathlib import Path

from lexmcdm import lex_best, lex_compare, lex_rank, load_matrix, negate_criteria

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

cars = load_matrix((FIXTURES / "cars.json").read_text(), "json")
cars = negate_criteria(cars, ["cost"])
print("criteria in importance order:", [c.name for c in cars.criteria])
for alt, row in zip(cars.alternatives, cars.scores):
    print(f"  {alt:<6}", [str(v) for v in row])

# %%
# Pairwise comparison stops at the first criterion that separates the pair.
# The stopping level is the superiority degree.

for a, b in [("sedan", "suv"), ("hatch", "wagon"), ("sedan", "wagon")]:
    o = lex_compare(cars, a, b)
    print(f"{a} vs {b}: {o.verdict.value} at level {o.level}")

# %%
# The cascade is a linear order, so a full ranking exists and its top tier
# is the best choice.

ranking = lex_rank(cars)
for p, tier in enumerate(ranking.tiers, start=1):
    print(p, tier)
print("best:", set(lex_best(cars)))
