"""Acceptance criteria, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import math
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from lexmcdm import (CrispRelation, DecisionMatrix, FuzzyRelation, Verdict, check_axioms, check_scale_theorem,
                     compose_table, convolve, equivalence_part, fuzzy_lex_compare, fuzzy_lex_convolve,
                     induced_relation, inverse, lex_compare, lex_weights, strict_part, verify_affirmation2)
from lexmcdm.crisp import superiority_table
from lexmcdm.fuzzy import TRANSFORMS, fuzzy_table

from conftest import FIXTURES, GOLDEN
from oracles import radix_verdict, random_grid_fuzzy, transitive_closure
from test_cli import GOLDEN_CASES, invoke

FIRST, SECOND, EQUIV, INCOMP = (Verdict.FIRST_PREFERRED, Verdict.SECOND_PREFERRED, Verdict.EQUIVALENT,
                                Verdict.INCOMPARABLE)
_NAMES = {"first": FIRST, "second": SECOND, "equivalent": EQUIV}
SEED = 20261019


def integer_corpus(count, seed=SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n, m = int(rng.integers(1, 9)), int(rng.integers(1, 5))
        out.append(DecisionMatrix.from_rows(rng.integers(0, 10, size=(n, m)).tolist(), scales=[(0, 9)] * m))
    return out


@pytest.fixture(scope="module")
def corpus():
    return integer_corpus(1000)


@pytest.mark.acceptance(1, "cascade agrees with mixed-radix oracle (1000 matrices, < 5 s)")
def test_cascade_matches_radix_oracle(corpus):
    start = time.perf_counter()
    pairs = 0
    for m in corpus:
        for a, b in product(m.alternatives, repeat=2):
            assert lex_compare(m, a, b).verdict is _NAMES[radix_verdict(m.row(a), m.row(b), 10)]
            pairs += 1
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {pairs} pairs agree in {elapsed:.2f} s")
    assert elapsed < 5


@pytest.mark.acceptance(2, "mixed-radix convolution order equals cascade order (< 5 s)")
def test_convolution_matches_cascade(corpus):
    start = time.perf_counter()
    for m in corpus:
        w = lex_weights(m, "mixed_radix")
        L = {a: convolve(m, w, a) for a in m.alternatives}
        for a, b in product(m.alternatives, repeat=2):
            v = lex_compare(m, a, b).verdict
            assert (L[a] > L[b]) == (v is FIRST)
            assert (L[a] == L[b]) == (v is EQUIV)
    elapsed = time.perf_counter() - start
    assert elapsed < 5


@pytest.mark.acceptance(3, "linkedness, asymmetry, transitivity, equivalence laws")
def test_order_axioms(corpus):
    for m in corpus:
        t = superiority_table(m)
        n = m.n
        for i in range(n):
            assert t[i][i].verdict is EQUIV
            for l in range(n):
                assert t[i][l].verdict is not INCOMP
                assert (t[i][l].verdict is FIRST) == (t[l][i].verdict is SECOND)
                assert t[i][l].level == t[l][i].level
                assert (t[i][l].verdict is EQUIV) == (t[l][i].verdict is EQUIV)
                for k in range(n):
                    if t[i][l].verdict is FIRST and t[l][k].verdict is FIRST:
                        assert t[i][k].verdict is FIRST
                    if t[i][l].verdict is EQUIV and t[l][k].verdict is EQUIV:
                        assert t[i][k].verdict is EQUIV


MONOTONE_MAPS = {
    "affine": lambda v: Fraction(7, 3) * v - 4,
    "cube": lambda v: Fraction(v) ** 3,
    "exp": lambda v: Fraction(math.exp(v)).limit_denominator(10 ** 6),
}


def _map_columns(m, f, columns):
    rows = [[f(v) if j in columns else v for j, v in enumerate(row)] for row in m.scores]
    crit = [c if j not in columns else type(c)(c.name, f(c.scale_min), f(c.scale_max), c.rank)
            for j, c in enumerate(m.criteria)]
    return m.with_scores(rows, crit)


@pytest.mark.acceptance(4, "per-criterion strictly increasing maps keep verdicts and levels")
def test_monotone_invariance(corpus):
    values = range(10)
    for f in MONOTONE_MAPS.values():
        assert all(f(a) < f(b) for a, b in zip(values, values[1:]))
    for m in corpus[:100]:
        base = superiority_table(m)
        for f in MONOTONE_MAPS.values():
            for j in range(m.m):
                assert superiority_table(_map_columns(m, f, {j})) == base
            assert superiority_table(_map_columns(m, f, set(range(m.m)))) == base


def transitive_stacks(count, seed=SEED):
    rng = np.random.default_rng(seed)
    stacks = []
    while len(stacks) < count:
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        rels = []
        for _ in range(m):
            density = rng.uniform(0.1, 0.6)
            raw = rng.random((n, n)) < density
            if rng.random() < 0.5:
                raw |= np.eye(n, dtype=bool)
            rels.append(CrispRelation(transitive_closure(raw)))
        if check_axioms(rels).holds:
            stacks.append(rels)
    return stacks


@pytest.mark.acceptance(5, "composition of transitive A1/A2 stacks is transitive (500 stacks, < 10 s)")
def test_affirmation2():
    stacks = transitive_stacks(500)
    start = time.perf_counter()
    non_linked = 0
    for rels in stacks:
        rep = verify_affirmation2(rels)
        assert rep.premises_hold
        assert rep.composed_transitive, rep.counterexample
        non_linked += not rep.composed_linked
    elapsed = time.perf_counter() - start
    print(f"criterion 5: 500 stacks, {non_linked} non-linked, zero counterexamples, {elapsed:.2f} s")
    assert non_linked > 0
    assert elapsed < 10


@pytest.mark.acceptance(6, "relations induced from criteria reproduce the cascade (200 matrices)")
def test_relational_crisp_consistency(corpus):
    for m in corpus[:200]:
        rels = [induced_relation(m, j) for j in range(1, m.m + 1)]
        table = compose_table(rels)
        assert table == superiority_table(m)


def random_fuzzy(rng, n):
    return FuzzyRelation([[Fraction(int(rng.integers(0, 21)), 20) for _ in range(n)] for _ in range(n)])


@pytest.mark.acceptance(7, "fuzzy part laws on 1000 random relations")
def test_fuzzy_part_laws():
    rng = np.random.default_rng(SEED)
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        M = random_fuzzy(rng, n)
        s, e = strict_part(M), equivalence_part(M)
        for i, l in product(range(n), repeat=2):
            assert min(s[i, l], s[l, i]) == 0
            assert e[i, l] == e[l, i]
        assert inverse(inverse(M)) == M


BASE10_COUNTEREXAMPLE = [
    FuzzyRelation([[0, Fraction(6, 10)], [Fraction(5, 10), 0]]),
    FuzzyRelation([[0, 0], [1, 0]]),
]


@pytest.mark.acceptance(8, "base-12 fuzzy convolution matches the cascade on a 0.1 grid; base 10 can fail")
def test_fuzzy_convolution_agreement():
    rng = np.random.default_rng(SEED)
    for _ in range(500):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        rels = [FuzzyRelation(random_grid_fuzzy(rng, n)) for _ in range(m)]
        scores = fuzzy_lex_convolve(rels, 12)
        table = fuzzy_table(rels)
        for i, l in product(range(n), repeat=2):
            d = scores[i][l] - scores[l][i]
            assert (d > 0) == (table[i][l].verdict is FIRST)
            assert (d < 0) == (table[i][l].verdict is SECOND)
    assert fuzzy_lex_compare(BASE10_COUNTEREXAMPLE, 0, 1).verdict is FIRST
    s10 = fuzzy_lex_convolve(BASE10_COUNTEREXAMPLE, 10)
    assert not s10[0][1] > s10[1][0]


@pytest.mark.acceptance(9, "verdict/level tables invariant under t^2 and t/2 (200 stacks)")
def test_scale_theorem():
    rng = np.random.default_rng(SEED)
    for _ in range(200):
        n, m = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        rels = [random_fuzzy(rng, n) for _ in range(m)]
        for name in ("square", "halve"):
            report = check_scale_theorem(rels, TRANSFORMS[name])
            assert report.holds, report.mismatches


@pytest.mark.acceptance(10, "repeated CLI runs are byte-identical to golden files")
def test_cli_determinism():
    for name, argv, code in GOLDEN_CASES:
        golden = (GOLDEN / name).read_text()
        for _ in range(2):
            got_code, out, _ = invoke(argv)
            assert got_code == code
            assert out == golden, name
    for name, argv, code in GOLDEN_CASES[:4]:
        runs = [subprocess.run([sys.executable, "-m", "lexmcdm", *argv], cwd=FIXTURES, capture_output=True)
                for _ in range(2)]
        assert runs[0].stdout == runs[1].stdout == (GOLDEN / name).read_bytes()
        assert runs[0].returncode == code
