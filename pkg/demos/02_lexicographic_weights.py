"""
Lexicographic weights and the weighted sum
==========================================

A weighted sum reproduces the cascade when every weight outweighs the
largest swing the less important criteria can produce together. Place
values of a mixed-radix numeral have that property.
"""

from pathlib import Path

from lexmcdm import argmax_convolution, check_lex_condition, convolve, lex_best, lex_weights, load_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

cube = load_matrix((FIXTURES / "cube.csv").read_text())
w = lex_weights(cube, "mixed_radix")
print("mixed-radix weights:", [str(x) for x in w.weights], "dominance bound:", w.dominance_holds())
for a in cube.alternatives:
    print(f"  L({a}) = {convolve(cube, w, a)}")
print("argmax of L:", set(argmax_convolution(cube, w)), " cascade best:", set(lex_best(cube)))

# %%
# The power rule d_j ** (j - 1) puts the heaviest weight on the least
# important criterion, and its maximiser can differ from the cascade.

literal = lex_weights(cube, "paper_literal")
print("power-rule weights:", [str(x) for x in literal.weights])
print("argmax under power rule:", set(argmax_convolution(cube, literal)))

# %%
# When scales are stacked so that every criterion's lowest value beats the
# next criterion's highest, even equal weights would respect the order.

nested = load_matrix((FIXTURES / "scales_nested.csv").read_text())
print("nested scales:", check_lex_condition(nested))
print("cube scales:  ", check_lex_condition(cube))
