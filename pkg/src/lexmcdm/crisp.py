"""Crisp lexicographic cascade over a decision matrix.

Criteria are scanned from most to least important; the first criterion on
which two alternatives differ decides the comparison, and its index is the
superiority degree of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from .model import ComparisonOutcome, DecisionMatrix, Verdict

EQUIVALENT = ComparisonOutcome(Verdict.EQUIVALENT)


@dataclass(frozen=True)
class Ranking:
    """Alternatives grouped into tiers of mutually equivalent members, best first.

    ``levels[p]`` is the superiority degree separating tier ``p`` from tier
    ``p + 1``, measured between their first members.
    """

    tiers: tuple[tuple[str, ...], ...]
    levels: tuple[int, ...] = ()

    @property
    def best(self) -> frozenset[str]:
        return frozenset(self.tiers[0]) if self.tiers else frozenset()

    def position(self, alternative: str) -> int:
        """1-based tier number of ``alternative``."""
        for p, tier in enumerate(self.tiers, start=1):
            if alternative in tier:
                return p
        raise KeyError(alternative)


def compare_rows(a: Sequence, b: Sequence) -> ComparisonOutcome:
    """Cascade two score tuples given in importance order."""
    for j, (x, y) in enumerate(zip(a, b), start=1):
        if x > y:
            return ComparisonOutcome(Verdict.FIRST_PREFERRED, j)
        if x < y:
            return ComparisonOutcome(Verdict.SECOND_PREFERRED, j)
    return EQUIVALENT


def lex_compare(matrix: DecisionMatrix, i: str, l: str) -> ComparisonOutcome:
    return compare_rows(matrix.row(i), matrix.row(l))


def _cmp(a, b) -> int:
    verdict = compare_rows(a[1], b[1]).verdict
    if verdict is Verdict.FIRST_PREFERRED:
        return -1
    if verdict is Verdict.SECOND_PREFERRED:
        return 1
    return 0


def group_tiers(ordered: Sequence[tuple[str, Sequence]], compare=compare_rows) -> Ranking:
    """Group an already sorted sequence of ``(id, key)`` into a :class:`Ranking`."""
    tiers: list[list[str]] = []
    heads: list[Sequence] = []
    levels: list[int] = []
    for alt, key in ordered:
        if heads:
            outcome = compare(heads[-1], key)
            if outcome.verdict is Verdict.EQUIVALENT:
                tiers[-1].append(alt)
                continue
            levels.append(outcome.level)
        tiers.append([alt])
        heads.append(key)
    return Ranking(tuple(map(tuple, tiers)), tuple(levels))


def lex_rank(matrix: DecisionMatrix) -> Ranking:
    """Full lexicographic ranking; ties keep their input order inside a tier."""
    keyed = sorted(zip(matrix.alternatives, matrix.scores), key=cmp_to_key(_cmp))
    return group_tiers(keyed)


def lex_best(matrix: DecisionMatrix) -> frozenset[str]:
    return lex_rank(matrix).best


def superiority_table(matrix: DecisionMatrix) -> list[list[ComparisonOutcome]]:
    """All ``n x n`` pairwise cascade outcomes, indexed by alternative position."""
    return [[compare_rows(a, b) for b in matrix.scores] for a in matrix.scores]
