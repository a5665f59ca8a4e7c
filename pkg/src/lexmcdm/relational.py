"""Lexicographic composition of crisp, possibly non-linked preference relations.

Each level of the stack is a binary relation ``R_j`` on the same alternatives,
ordered by importance. A pair is strictly decided at the first level where
one side is strictly preferred, passes through levels where the two are
equivalent, and becomes incomparable as soon as some level leaves them
incomparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import IO, Sequence

import numpy as np

from .model import ComparisonOutcome, DecisionMatrix, InputError, Verdict, read_stack, write_stack

_TRUE = {"1", "true", "True", "yes"}
_FALSE = {"0", "false", "False", "no", ""}


@dataclass(frozen=True, eq=False)
class CrispRelation:
    """Boolean adjacency matrix: ``adjacency[i, l]`` iff ``(x_i, x_l)`` is in the relation."""

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"relation must be square, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def size(self) -> int:
        return self.adjacency.shape[0]

    def __eq__(self, other):
        return isinstance(other, CrispRelation) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def is_transitive(self) -> bool:
        a = self.adjacency.astype(np.int64)
        implied = (a @ a) > 0
        return not np.any(implied & ~self.adjacency)


@dataclass(frozen=True, eq=False)
class RelationParts:
    strict: np.ndarray
    equivalent: np.ndarray
    incomparable: np.ndarray


def derive_parts(r: CrispRelation) -> RelationParts:
    a = r.adjacency
    return RelationParts(strict=a & ~a.T, equivalent=a & a.T, incomparable=~a & ~a.T)


def induced_relation(matrix: DecisionMatrix, j: int) -> CrispRelation:
    """``x_i R x_l`` iff ``x_i`` scores at least as high as ``x_l`` on criterion ``j``."""
    col = matrix.column(j)
    return CrispRelation(np.array([[a >= b for b in col] for a in col], dtype=bool))


def _check_sizes(relations: Sequence[CrispRelation]) -> int:
    if not relations:
        raise ValueError("need at least one relation")
    sizes = {r.size for r in relations}
    if len(sizes) != 1:
        raise ValueError(f"relations differ in size: {sorted(sizes)}")
    return sizes.pop()


def _cascade(parts: Sequence[RelationParts], i: int, l: int) -> ComparisonOutcome:
    for j, p in enumerate(parts, start=1):
        if p.strict[i, l]:
            return ComparisonOutcome(Verdict.FIRST_PREFERRED, j)
        if p.strict[l, i]:
            return ComparisonOutcome(Verdict.SECOND_PREFERRED, j)
        if p.incomparable[i, l]:
            return ComparisonOutcome(Verdict.INCOMPARABLE)
    return ComparisonOutcome(Verdict.EQUIVALENT)


def lex_compose(relations: Sequence[CrispRelation], i: int, l: int) -> ComparisonOutcome:
    n = _check_sizes(relations)
    if not (0 <= i < n and 0 <= l < n):
        raise IndexError(f"pair ({i}, {l}) outside 0..{n - 1}")
    return _cascade([derive_parts(r) for r in relations], i, l)


def compose_table(relations: Sequence[CrispRelation]) -> list[list[ComparisonOutcome]]:
    """Outcome of :func:`lex_compose` for every ordered pair."""
    n = _check_sizes(relations)
    parts = [derive_parts(r) for r in relations]
    return [[_cascade(parts, i, l) for l in range(n)] for i in range(n)]


@dataclass(frozen=True)
class AxiomReport:
    """Violations are ``(i, q, l, j)``: ``i ~ q`` at level ``j`` (0-based indices, 1-based level)."""

    a1_violations: list = field(default_factory=list)
    a2_violations: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.a1_violations and not self.a2_violations


def check_axioms(relations: Sequence[CrispRelation]) -> AxiomReport:
    """Scan every triple for the two substitution axioms of equivalent alternatives.

    A1: if ``i ~ q`` and ``i`` is strictly above ``l``, then ``q`` must be too.
    A2: if ``i ~ q`` and ``l`` is strictly above ``i``, then ``l`` must be above ``q``.
    """
    n = _check_sizes(relations)
    a1, a2 = [], []
    for j, r in enumerate(relations, start=1):
        p = derive_parts(r)
        for i, q, l in product(range(n), repeat=3):
            if not p.equivalent[i, q]:
                continue
            if p.strict[i, l] and not p.strict[q, l]:
                a1.append((i, q, l, j))
            if p.strict[l, i] and not p.strict[l, q]:
                a2.append((i, q, l, j))
    return AxiomReport(a1, a2)


@dataclass(frozen=True)
class Affirmation2Report:
    premises_hold: bool
    composed_transitive: bool
    composed_linked: bool
    intransitive_relations: list = field(default_factory=list)
    axioms: AxiomReport | None = None
    counterexample: tuple | None = None

    @property
    def confirmed(self) -> bool:
        """True unless the premises hold and the composed strict part still fails transitivity."""
        return not self.premises_hold or self.composed_transitive


def strict_transitivity_violation(table: Sequence[Sequence[ComparisonOutcome]]) -> tuple | None:
    """First ``(i, l, k)`` with ``i > l > k`` but not ``i > k``, or ``None``."""
    n = len(table)
    first = Verdict.FIRST_PREFERRED
    for i, l in product(range(n), repeat=2):
        if table[i][l].verdict is not first:
            continue
        for k in range(n):
            if table[l][k].verdict is first and table[i][k].verdict is not first:
                return (i, l, k)
    return None


def verify_affirmation2(relations: Sequence[CrispRelation]) -> Affirmation2Report:
    """Brute-force check that transitive levels obeying both axioms compose transitively."""
    table = compose_table(relations)
    bad = [j for j, r in enumerate(relations, start=1) if not r.is_transitive()]
    axioms = check_axioms(relations)
    counterexample = strict_transitivity_violation(table)
    linked = all(o.verdict is not Verdict.INCOMPARABLE for row in table for o in row)
    return Affirmation2Report(
        premises_hold=not bad and axioms.holds,
        composed_transitive=counterexample is None,
        composed_linked=linked,
        intransitive_relations=bad,
        axioms=axioms,
        counterexample=counterexample,
    )


def _cell(value: str) -> bool:
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise InputError(f"relation cell must be 0/1, got {value!r}")


def load_relations(source: str | bytes | IO, format: str = "json") -> tuple[tuple[str, ...], list[CrispRelation]]:
    """Read a stack of 0/1 matrices; returns alternative labels and relations in rank order."""
    labels, blocks = read_stack(source, format)
    return labels, [CrispRelation(np.array([[_cell(c) for c in row] for row in rows], dtype=bool))
                    for rows in blocks]


def dump_relations(alternatives: Sequence[str], relations: Sequence[CrispRelation]) -> str:
    return write_stack(alternatives, [r.adjacency.astype(int).tolist() for r in relations])
