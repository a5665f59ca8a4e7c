"""
Fuzzy lexicographic procedure
=============================

Each level is a fuzzy preference relation. Only its strict part, the
positive net preference, drives the cascade.
"""

from pathlib import Path

from lexmcdm import (IntransitivityError, check_scale_theorem, fuzzy_lex_compare, fuzzy_lex_convolve,
                     fuzzy_lex_rank, load_fuzzy, strict_part, utility_projection)
from lexmcdm.fuzzy import TRANSFORMS

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

labels, rels = load_fuzzy((FIXTURES / "fuzzy.json").read_text())
print("strict part of level 1:")
for row in strict_part(rels[0]).membership:
    print("  ", [str(v) for v in row])

o = fuzzy_lex_compare(rels, 0, 1)
print(f"{labels[0]} vs {labels[1]}: {o.verdict.value} at level {o.level}, degree {o.degree}")
print("ranking:", fuzzy_lex_rank(rels, labels).tiers)
print("row-mean utilities of level 1:", [str(u) for u in utility_projection(rels[0])])

# %%
# Base-10 place values are not enough on a 0.1 grid: a 0.1 margin on the
# first level is cancelled by a full margin the other way on the second.

_, tight = load_fuzzy((FIXTURES / "fuzzy_base10.json").read_text())
for base in (10, 12):
    s = fuzzy_lex_convolve(tight, base)
    print(f"base {base}: score difference {s[0][1] - s[1][0]}")
print("cascade:", fuzzy_lex_compare(tight, 0, 1).verdict.value)

# %%
# Verdicts and levels survive any common strictly increasing rescaling
# that fixes zero. Degrees do not.

for name in ("square", "halve"):
    print(name, "holds:", check_scale_theorem(rels, TRANSFORMS[name]).holds)

# %%
# Arbitrary fuzzy data need not be transitive; the ranking says so.

_, cyc = load_fuzzy((FIXTURES / "fuzzy_cycle.json").read_text())
try:
    fuzzy_lex_rank(cyc)
except IntransitivityError as exc:
    print(exc)
