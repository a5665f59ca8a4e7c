"""Fuzzy lexicographic preference.

A fuzzy relation is an ``n x n`` matrix of memberships in ``[0, 1]``. Its
strict part keeps only the positive net preference ``max(μ(i,l) - μ(l,i), 0)``.
The fuzzy cascade walks a stack of such relations in importance order and
stops at the first level whose strict part is positive in either direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import IO, Callable, Sequence

from .crisp import Ranking
from .model import ComparisonOutcome, InputError, Verdict, read_stack, to_fraction, write_stack


@dataclass(frozen=True)
class FuzzyRelation:
    membership: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(v) for v in row) for row in self.membership)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("membership matrix must be square")
        for i, j in product(range(n), repeat=2):
            if not 0 <= rows[i][j] <= 1:
                raise ValueError(f"membership[{i}][{j}] = {rows[i][j]} outside [0, 1]")
        object.__setattr__(self, "membership", rows)

    @property
    def size(self) -> int:
        return len(self.membership)

    def __getitem__(self, ij):
        i, j = ij
        return self.membership[i][j]

    def map(self, f: Callable[[Fraction], Fraction]) -> "FuzzyRelation":
        return FuzzyRelation(tuple(tuple(f(v) for v in row) for row in self.membership))


@dataclass(frozen=True)
class FuzzyOutcome:
    """Result of one fuzzy lexicographic comparison.

    ``degree`` is the strict membership at the deciding level (zero for
    equivalent pairs). ``equivalence_degree`` is only set for equivalent pairs
    and is the smallest equivalence membership across all levels.
    """

    verdict: Verdict
    level: int | None = None
    degree: Fraction = Fraction(0)
    equivalence_degree: Fraction | None = None

    def __post_init__(self):
        if (self.degree > 0) != self.verdict.is_strict:
            raise ValueError(f"degree must be positive iff the verdict is strict: {self}")

    @property
    def outcome(self) -> ComparisonOutcome:
        return ComparisonOutcome(self.verdict, self.level)

    def mirrored(self) -> "FuzzyOutcome":
        return FuzzyOutcome(self.verdict.mirrored(), self.level, self.degree, self.equivalence_degree)


def inverse(M: FuzzyRelation) -> FuzzyRelation:
    n = M.size
    return FuzzyRelation(tuple(tuple(M[l, i] for l in range(n)) for i in range(n)))


def equivalence_part(M: FuzzyRelation) -> FuzzyRelation:
    n = M.size
    return FuzzyRelation(tuple(tuple(min(M[i, l], M[l, i]) for l in range(n)) for i in range(n)))


def strict_part(M: FuzzyRelation) -> FuzzyRelation:
    n = M.size
    return FuzzyRelation(tuple(tuple(max(M[i, l] - M[l, i], Fraction(0)) for l in range(n)) for i in range(n)))


def _check_sizes(relations: Sequence[FuzzyRelation]) -> int:
    if not relations:
        raise ValueError("need at least one relation")
    sizes = {r.size for r in relations}
    if len(sizes) != 1:
        raise ValueError(f"relations differ in size: {sorted(sizes)}")
    return sizes.pop()


def _cascade(strict: Sequence[FuzzyRelation], equiv: Sequence[FuzzyRelation], i: int, l: int) -> FuzzyOutcome:
    for j, s in enumerate(strict, start=1):
        if s[i, l] > 0:
            return FuzzyOutcome(Verdict.FIRST_PREFERRED, j, s[i, l])
        if s[l, i] > 0:
            return FuzzyOutcome(Verdict.SECOND_PREFERRED, j, s[l, i])
    return FuzzyOutcome(Verdict.EQUIVALENT, equivalence_degree=min(e[i, l] for e in equiv))


def fuzzy_lex_compare(relations: Sequence[FuzzyRelation], i: int, l: int) -> FuzzyOutcome:
    n = _check_sizes(relations)
    if not (0 <= i < n and 0 <= l < n):
        raise IndexError(f"pair ({i}, {l}) outside 0..{n - 1}")
    return _cascade([strict_part(r) for r in relations], [equivalence_part(r) for r in relations], i, l)


def fuzzy_table(relations: Sequence[FuzzyRelation]) -> list[list[FuzzyOutcome]]:
    n = _check_sizes(relations)
    strict = [strict_part(r) for r in relations]
    equiv = [equivalence_part(r) for r in relations]
    return [[_cascade(strict, equiv, i, l) for l in range(n)] for i in range(n)]


def fuzzy_lex_weights(m: int, base: int = 10) -> tuple[int, ...]:
    """Place values ``base ** (m - j)`` for ``j = 1..m``."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    return tuple(base ** (m - j) for j in range(1, m + 1))


def fuzzy_lex_convolve(relations: Sequence[FuzzyRelation], base: int = 10) -> list[list[Fraction]]:
    """Weighted sum of strict parts, ``Σ_j base^(m-j) · μ_j^s``.

    Entries are not clipped to ``[0, 1]``. The default base of 10 can
    disagree with the cascade on a 0.1 grid; a base above ``1/δ + 1`` (12 for
    δ = 0.1) cannot.
    """
    n = _check_sizes(relations)
    weights = fuzzy_lex_weights(len(relations), base)
    strict = [strict_part(r) for r in relations]
    return [[sum((w * s[i, l] for w, s in zip(weights, strict)), Fraction(0)) for l in range(n)]
            for i in range(n)]


def utility_projection(M: FuzzyRelation) -> list[Fraction]:
    """Row means of ``M``, diagonal included."""
    n = M.size
    return [sum(row, Fraction(0)) / n for row in M.membership]


class IntransitivityError(ValueError):
    """The pairwise fuzzy verdicts do not form a total preorder.

    ``triple`` is ``(a, b, c)`` (0-based) with ``a`` weakly above ``b``,
    ``b`` weakly above ``c`` and ``c`` strictly above ``a``.
    """

    def __init__(self, triple: tuple[int, int, int], labels: Sequence[str] | None = None):
        self.triple = triple
        names = [labels[k] for k in triple] if labels else [f"x{k + 1}" for k in triple]
        self.names = tuple(names)
        super().__init__(f"fuzzy verdicts are intransitive: {names[0]} >= {names[1]} >= {names[2]} "
                         f"but {names[2]} > {names[0]}")


def _weakly_above(o: FuzzyOutcome) -> bool:
    return o.verdict in (Verdict.FIRST_PREFERRED, Verdict.EQUIVALENT)


def fuzzy_lex_rank(relations: Sequence[FuzzyRelation], alternatives: Sequence[str] | None = None) -> Ranking:
    """Rank alternatives by the fuzzy cascade.

    Raises :class:`IntransitivityError` naming a cycle when the pairwise
    verdicts are not transitive, rather than returning an arbitrary order.
    """
    n = _check_sizes(relations)
    labels = list(alternatives) if alternatives is not None else [f"x{k + 1}" for k in range(n)]
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} alternatives")
    table = fuzzy_table(relations)
    for a, b, c in product(range(n), repeat=3):
        if _weakly_above(table[a][b]) and _weakly_above(table[b][c]) and not _weakly_above(table[a][c]):
            raise IntransitivityError((a, b, c), labels)
    # verdicts form a total preorder, so the count of dominated alternatives orders the tiers
    wins = [sum(_weakly_above(table[i][l]) for l in range(n)) for i in range(n)]
    order = sorted(range(n), key=lambda i: -wins[i])
    tiers: list[list[int]] = []
    levels: list[int] = []
    for i in order:
        if tiers and table[tiers[-1][0]][i].verdict is Verdict.EQUIVALENT:
            tiers[-1].append(i)
            continue
        if tiers:
            levels.append(table[tiers[-1][0]][i].level)
        tiers.append([i])
    return Ranking(tuple(tuple(labels[i] for i in t) for t in tiers), tuple(levels))


@dataclass(frozen=True)
class ScaleTheoremReport:
    mismatches: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.mismatches


def _check_transform(relations: Sequence[FuzzyRelation], transform: Callable) -> None:
    if transform(Fraction(0)) != 0:
        raise ValueError("transform must fix 0")
    values = sorted({v for r in relations for row in r.membership for v in row} | {Fraction(0)})
    mapped = [transform(v) for v in values]
    if any(b <= a for a, b in zip(mapped, mapped[1:])):
        raise ValueError("transform is not strictly increasing on the membership values")


def check_scale_theorem(relations: Sequence[FuzzyRelation], transform: Callable[[Fraction], Fraction]
                        ) -> ScaleTheoremReport:
    """Compare verdict/level tables before and after mapping every membership through ``transform``.

    Mismatches are ``(i, l, before, after)`` with :class:`ComparisonOutcome` values.
    Degrees are not compared.
    """
    _check_transform(relations, transform)
    before = fuzzy_table(relations)
    after = fuzzy_table([r.map(lambda v: to_fraction(transform(v))) for r in relations])
    n = len(before)
    mismatches = [(i, l, before[i][l].outcome, after[i][l].outcome)
                  for i, l in product(range(n), repeat=2)
                  if before[i][l].outcome != after[i][l].outcome]
    return ScaleTheoremReport(mismatches)


TRANSFORMS: dict[str, Callable[[Fraction], Fraction]] = {
    "identity": lambda t: t,
    "square": lambda t: t * t,
    "halve": lambda t: t / 2,
}


def load_fuzzy(source: str | bytes | IO, format: str = "json") -> tuple[tuple[str, ...], list[FuzzyRelation]]:
    labels, blocks = read_stack(source, format)
    out = []
    for k, rows in enumerate(blocks, start=1):
        try:
            out.append(FuzzyRelation(tuple(tuple(to_fraction(c) for c in row) for row in rows)))
        except ValueError as exc:
            raise InputError(f"relation rank {k}: {exc}") from None
    return labels, out


def dump_fuzzy(alternatives: Sequence[str], relations: Sequence[FuzzyRelation]) -> str:
    return write_stack(alternatives, [r.membership for r in relations])
