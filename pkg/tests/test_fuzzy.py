from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexmcdm import (FuzzyRelation, IntransitivityError, Verdict, check_scale_theorem, equivalence_part,
                     fuzzy_lex_compare, fuzzy_lex_convolve, fuzzy_lex_rank, fuzzy_table, inverse, strict_part,
                     utility_projection)
from lexmcdm.fuzzy import TRANSFORMS, dump_fuzzy, fuzzy_lex_weights, load_fuzzy

from oracles import literal_fuzzy_chain, random_grid_fuzzy

FIRST, SECOND, EQUIV = Verdict.FIRST_PREFERRED, Verdict.SECOND_PREFERRED, Verdict.EQUIVALENT
_NAMES = {"first": FIRST, "second": SECOND, "equivalent": EQUIV}


def fr(rows):
    return FuzzyRelation(tuple(tuple(F(str(v)) for v in row) for row in rows))


PAIR = fr([[1, 0.7], [0.3, 1]])


def test_membership_bounds():
    with pytest.raises(ValueError):
        fr([[0, 1.2], [0, 0]])


def test_inverse():
    assert inverse(fr([[0, 0.5], [0.5, 0]])) == fr([[0, 0.5], [0.5, 0]])
    assert inverse(fr([[0, 0.7], [0.2, 0]])) == fr([[0, 0.2], [0.7, 0]])


def test_equivalence_part():
    e = equivalence_part(PAIR)
    assert e[0, 1] == e[1, 0] == F(3, 10)
    assert (e[0, 0], e[1, 1]) == (1, 1)
    zero = fr([[0, 0], [0, 0]])
    assert equivalence_part(zero) == zero


def test_strict_part():
    s = strict_part(PAIR)
    assert (s[0, 1], s[1, 0]) == (F(2, 5), 0)
    assert strict_part(fr([[0.2, 0.5], [0.5, 0.9]])) == fr([[0, 0], [0, 0]])


def test_compare_examples():
    o = fuzzy_lex_compare([PAIR], 0, 1)
    assert (o.verdict, o.level, o.degree) == (FIRST, 1, F(2, 5))
    sym = fr([[1, 0.5], [0.5, 1]])
    second = fr([[0, 0.2], [0.3, 0]])
    o = fuzzy_lex_compare([sym, second], 0, 1)
    assert (o.verdict, o.level, o.degree) == (SECOND, 2, F(1, 10))
    o = fuzzy_lex_compare([sym, sym], 0, 1)
    assert o.verdict is EQUIV and o.level is None and o.degree == 0
    assert o.equivalence_degree == F(1, 2)


def test_compare_matches_literal_chain(rng):
    for _ in range(300):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        mus = [random_grid_fuzzy(rng, n, F(1, 4)) for _ in range(m)]
        rels = [FuzzyRelation(mu) for mu in mus]
        for i, l in product(range(n), repeat=2):
            o = fuzzy_lex_compare(rels, i, l)
            name, level = literal_fuzzy_chain(mus, i, l)
            assert (o.verdict, o.level) == (_NAMES[name], level)


def test_convolve_weights_and_single_relation():
    assert fuzzy_lex_weights(3, 10) == (100, 10, 1)
    assert fuzzy_lex_convolve([PAIR]) == [list(r) for r in strict_part(PAIR).membership]


def _sign_verdict(scores, i, l):
    d = scores[i][l] - scores[l][i]
    return FIRST if d > 0 else SECOND if d < 0 else EQUIV


def test_base12_agrees_on_tenth_grid(rng):
    for _ in range(100):
        n, m = int(rng.integers(2, 6)), int(rng.integers(1, 4))
        rels = [FuzzyRelation(random_grid_fuzzy(rng, n)) for _ in range(m)]
        scores = fuzzy_lex_convolve(rels, 12)
        for i, l in product(range(n), repeat=2):
            assert _sign_verdict(scores, i, l) is fuzzy_lex_compare(rels, i, l).verdict


BASE10_COUNTEREXAMPLE = [fr([[0, 0.6], [0.5, 0]]), fr([[0, 0], [1, 0]])]


def test_base10_counterexample():
    assert fuzzy_lex_compare(BASE10_COUNTEREXAMPLE, 0, 1).verdict is FIRST
    assert _sign_verdict(fuzzy_lex_convolve(BASE10_COUNTEREXAMPLE, 10), 0, 1) is EQUIV
    assert _sign_verdict(fuzzy_lex_convolve(BASE10_COUNTEREXAMPLE, 12), 0, 1) is FIRST


def test_utility_projection():
    assert utility_projection(fr([[0.4, 0.8], [0, 0]])) == [F(3, 5), 0]
    assert utility_projection(fr([[1, 1], [1, 1]])) == [1, 1]


def test_rank_from_scalar_utilities(rng):
    for _ in range(30):
        u = rng.integers(0, 4, size=5).tolist()
        rel = fr([[1 if a >= b else 0 for b in u] for a in u])
        r = fuzzy_lex_rank([rel])
        expected = [{f"x{k + 1}" for k in range(5) if u[k] == v} for v in sorted(set(u), reverse=True)]
        assert [set(t) for t in r.tiers] == expected


def test_symmetric_relations_give_single_tier():
    sym = fr([[1, 0.3, 0.6], [0.3, 1, 0.2], [0.6, 0.2, 1]])
    assert fuzzy_lex_rank([sym, sym]).tiers == (("x1", "x2", "x3"),)


def test_cyclic_stack_reported(rng):
    # randomized search over 3x3 stacks for a stack whose verdicts cycle
    for _ in range(1000):
        rels = [FuzzyRelation(random_grid_fuzzy(rng, 3)) for _ in range(2)]
        try:
            fuzzy_lex_rank(rels)
        except IntransitivityError as exc:
            a, b, c = exc.triple
            t = fuzzy_table(rels)
            assert t[a][b].verdict is not SECOND and t[b][c].verdict is not SECOND
            assert t[c][a].verdict is FIRST
            return
    pytest.fail("no intransitive stack found")


def test_scale_theorem_examples(rng):
    for _ in range(50):
        n = int(rng.integers(2, 5))
        rels = [FuzzyRelation(random_grid_fuzzy(rng, n)) for _ in range(2)]
        for name in ("identity", "square", "halve"):
            assert check_scale_theorem(rels, TRANSFORMS[name]).holds


def test_scale_theorem_rejects_bad_transforms():
    with pytest.raises(ValueError, match="fix 0"):
        check_scale_theorem([PAIR], lambda t: (t + 1) / 2)
    with pytest.raises(ValueError, match="strictly increasing"):
        check_scale_theorem([PAIR], lambda t: t * (1 - t))


def test_degrees_not_invariant_but_verdicts_are():
    before = fuzzy_lex_compare([PAIR], 0, 1)
    after = fuzzy_lex_compare([PAIR.map(TRANSFORMS["halve"])], 0, 1)
    assert before.outcome == after.outcome
    assert before.degree != after.degree


def test_load_fuzzy_roundtrip():
    text = '{"n": 2, "relations": [{"rank": 1, "rows": [["1", "0.7"], ["0.3", "1"]]}]}'
    labels, rels = load_fuzzy(text)
    assert labels == ("x1", "x2") and rels == [PAIR]
    assert load_fuzzy(dump_fuzzy(labels, rels)) == (labels, rels)


memberships = st.fractions(min_value=0, max_value=1, max_denominator=20)


@st.composite
def relations(draw, n=None):
    n = n or draw(st.integers(1, 5))
    return FuzzyRelation(tuple(tuple(draw(memberships) for _ in range(n)) for _ in range(n)))


@settings(max_examples=100)
@given(relations())
def test_part_laws(M):
    s, e = strict_part(M), equivalence_part(M)
    for i, l in product(range(M.size), repeat=2):
        assert min(s[i, l], s[l, i]) == 0
        assert e[i, l] == e[l, i]
    assert equivalence_part(e) == e
    assert inverse(inverse(M)) == M


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(relations(n), min_size=1, max_size=3)))
def test_cascade_symmetry(rels):
    t = fuzzy_table(rels)
    for i, l in product(range(len(t)), repeat=2):
        assert t[l][i] == t[i][l].mirrored()
