"""Scalar representation of the lexicographic order by a weighted sum.

Two weight schemes are offered. ``mixed_radix`` builds place values the way
a positional numeral does: each criterion's weight exceeds the largest
swing all less important criteria can produce together, so the weighted
sum ranks alternatives exactly like the cascade. ``paper_literal`` is the
power rule ``d_j ** (j - 1)``; it puts the largest weight on the least
important criterion and carries no such guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .crisp import Ranking
from .model import DecisionMatrix, InputError, to_fraction

SCHEMES = ("mixed_radix", "paper_literal")
MODES = ("declared", "observed")


@dataclass(frozen=True)
class WeightVector:
    """Importance coefficients aligned with criterion ranks.

    ``diapasons`` and ``gaps`` record what the weights were built from so the
    dominance bound can be re-checked later.
    """

    weights: tuple[Fraction, ...]
    scheme: str
    diapasons: tuple[Fraction, ...] = ()
    gaps: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"weights must be positive, got {[str(w) for w in self.weights]}")

    def __len__(self):
        return len(self.weights)

    def dominance_holds(self) -> bool:
        """``λ_j·δ_j > Σ_{k>j} λ_k·d_k`` for every ``j``.

        With unit gaps this is the plain bound ``λ_j > Σ_{k>j} λ_k·d_k``.
        """
        if not self.diapasons:
            return False
        gaps = self.gaps or (Fraction(1),) * len(self.weights)
        tail = Fraction(0)
        for w, d, g in zip(reversed(self.weights), reversed(self.diapasons), reversed(gaps)):
            if w * g <= tail:
                return False
            tail += w * d
        return True


def _check_mode(mode: str):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def diapason(matrix: DecisionMatrix, j: int, mode: str = "declared") -> Fraction:
    """Range of criterion ``j`` (1-based): declared scale width or observed spread."""
    _check_mode(mode)
    if not 1 <= j <= matrix.m:
        raise IndexError(f"criterion index {j} outside 1..{matrix.m}")
    if mode == "declared":
        return matrix.criteria[j - 1].diapason
    col = matrix.column(j)
    return max(col) - min(col)


def min_gaps(matrix: DecisionMatrix) -> tuple[Fraction, ...]:
    """Smallest positive difference between two scores of each column.

    Columns with a single distinct value get a gap of 1.
    """
    out = []
    for j in range(1, matrix.m + 1):
        values = sorted(set(matrix.column(j)))
        diffs = [b - a for a, b in zip(values, values[1:])]
        out.append(min(diffs) if diffs else Fraction(1))
    return tuple(out)


@dataclass(frozen=True)
class LexConditionReport:
    holds: bool
    first_violation: tuple[int, Fraction, Fraction] | None = None


def _min_excluding_zero(values: Sequence[Fraction]) -> Fraction | None:
    nonzero = [v for v in values if v != 0]
    return min(nonzero) if nonzero else None


def check_lex_condition(matrix: DecisionMatrix, mode: str = "declared") -> LexConditionReport:
    """Check that every criterion's scale lies strictly above the next one's.

    Zero is left out when taking the minimum of a scale. In declared mode the
    scale ranks are taken as unit steps from ``scale_min``, so a scale starting
    at zero has effective minimum ``min(1, scale_max)``.
    """
    _check_mode(mode)
    lows, highs = [], []
    for j, c in enumerate(matrix.criteria, start=1):
        if mode == "declared":
            low = c.scale_min if c.scale_min != 0 else min(Fraction(1), c.scale_max)
            lows.append(low)
            highs.append(c.scale_max)
        else:
            col = matrix.column(j)
            low = _min_excluding_zero(col)
            lows.append(low if low is not None else Fraction(0))
            highs.append(max(col))
    for j in range(matrix.m - 1):
        if not lows[j] > highs[j + 1]:
            return LexConditionReport(False, (j + 1, lows[j], highs[j + 1]))
    return LexConditionReport(True)


def lex_weights(matrix: DecisionMatrix, scheme: str = "mixed_radix", mode: str = "declared",
                gaps: Sequence | str | None = None) -> WeightVector:
    """Lexicographic importance coefficients for ``matrix``.

    ``mixed_radix`` gives ``λ_m = 1`` and, with unit gaps,
    ``λ_j = Π_{k>j} (d_k + 1)``. For non-integer scores pass ``gaps`` (the
    minimum difference between distinct scores per criterion, or
    ``"observed"`` to measure it); the radix becomes ``d_k/δ_k + 1`` and each
    weight is divided by its own gap, rescaled so that ``λ_m`` stays 1.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    d = tuple(diapason(matrix, j, mode) for j in range(1, matrix.m + 1))
    if isinstance(gaps, str):
        if gaps != "observed":
            raise ValueError(f"gaps must be a sequence, None or 'observed', got {gaps!r}")
        gaps = min_gaps(matrix)
    g = tuple(to_fraction(x) for x in gaps) if gaps is not None else (Fraction(1),) * matrix.m
    if len(g) != matrix.m or any(x <= 0 for x in g):
        raise ValueError("gaps must be m positive values")

    if scheme == "paper_literal":
        weights = tuple(dj ** (j - 1) for j, dj in enumerate(d, start=1))
        if any(w <= 0 for w in weights):
            raise InputError(f"zero diapason makes paper_literal weights vanish: d = {[str(x) for x in d]}")
        return WeightVector(weights, scheme, d, g)

    if mode == "observed":
        flat = [j for j, dj in enumerate(d, start=1) if dj == 0]
        if flat and matrix.m > 1:
            raise InputError(f"criteria {flat} have zero observed diapason; the weight tower collapses")
    weights = [Fraction(0)] * matrix.m
    place = Fraction(1)
    for k in range(matrix.m - 1, -1, -1):
        weights[k] = place * g[-1] / g[k]
        place *= d[k] / g[k] + 1
    return WeightVector(tuple(weights), scheme, d, g)


def convolve(matrix: DecisionMatrix, weights: WeightVector | Sequence, i: str) -> Fraction:
    """Weighted sum of alternative ``i``'s scores."""
    w = weights.weights if isinstance(weights, WeightVector) else tuple(map(to_fraction, weights))
    if len(w) != matrix.m:
        raise ValueError(f"{len(w)} weights for {matrix.m} criteria")
    return sum((wj * s for wj, s in zip(w, matrix.row(i))), Fraction(0))


def convolution_scores(matrix: DecisionMatrix, weights) -> dict[str, Fraction]:
    return {a: convolve(matrix, weights, a) for a in matrix.alternatives}


def argmax_convolution(matrix: DecisionMatrix, weights) -> frozenset[str]:
    scores = convolution_scores(matrix, weights)
    top = max(scores.values())
    return frozenset(a for a, v in scores.items() if v == top)


def normalize(matrix: DecisionMatrix, a=10) -> DecisionMatrix:
    """Rescale each column so its largest score becomes ``a``; scales become ``[0, a]``.

    Scores must be non-negative, since a negative score would fall outside
    the new scale.
    """
    a = to_fraction(a)
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    factors = []
    for j, c in enumerate(matrix.criteria, start=1):
        col = matrix.column(j)
        if max(col) <= 0:
            raise InputError(f"criterion {c.name!r}: column maximum {max(col)} is not positive")
        if min(col) < 0:
            raise InputError(f"criterion {c.name!r}: negative score {min(col)} cannot be normalized to [0, {a}]")
        factors.append(a / max(col))
    criteria = [replace(c, scale_min=Fraction(0), scale_max=a) for c in matrix.criteria]
    scores = [[v * f for v, f in zip(row, factors)] for row in matrix.scores]
    return matrix.with_scores(scores, criteria)


def convolution_rank(matrix: DecisionMatrix, weights) -> Ranking:
    """Tiers of equal weighted sum, highest first. No superiority levels are attached."""
    scores = convolution_scores(matrix, weights)
    tiers: dict[Fraction, list[str]] = {}
    for a in matrix.alternatives:
        tiers.setdefault(scores[a], []).append(a)
    return Ranking(tuple(tuple(tiers[v]) for v in sorted(tiers, reverse=True)))
