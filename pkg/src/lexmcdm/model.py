"""Domain types, validation and file ingestion for decision matrices.

All scores are held as :class:`fractions.Fraction` so that the equality tests
performed by the lexicographic cascade are exact.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import IO, Iterable, Sequence


class InputError(ValueError):
    """Raised when a file or in-memory input cannot be turned into a valid object."""


class MatrixError(InputError):
    """A decision matrix failed validation; ``violations`` holds the details."""

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(v.message for v in self.violations))


class Verdict(enum.Enum):
    FIRST_PREFERRED = "first_preferred"
    SECOND_PREFERRED = "second_preferred"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"

    def mirrored(self) -> "Verdict":
        if self is Verdict.FIRST_PREFERRED:
            return Verdict.SECOND_PREFERRED
        if self is Verdict.SECOND_PREFERRED:
            return Verdict.FIRST_PREFERRED
        return self

    @property
    def is_strict(self) -> bool:
        return self in (Verdict.FIRST_PREFERRED, Verdict.SECOND_PREFERRED)


@dataclass(frozen=True)
class ComparisonOutcome:
    """Result of one pairwise comparison.

    ``level`` is the superiority degree: the 1-based index of the criterion
    (or relation) at which the comparison was decided. It is ``None`` for
    equivalent and incomparable pairs.
    """

    verdict: Verdict
    level: int | None = None

    def __post_init__(self):
        if self.verdict.is_strict != (self.level is not None):
            raise ValueError(f"level must be given iff verdict is strict, got {self}")
        if self.level is not None and self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")

    def mirrored(self) -> "ComparisonOutcome":
        return ComparisonOutcome(self.verdict.mirrored(), self.level)


def to_fraction(value) -> Fraction:
    """Parse ``value`` as an exact rational.

    Accepts ints, Fractions, and strings such as ``"3"``, ``"0.25"`` or
    ``"1/3"``. Floats are rejected because their binary expansion is rarely
    what the user meant.
    """
    if isinstance(value, bool):
        raise InputError(f"boolean is not a score: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(f"float {value!r} is not exact; pass scores as strings")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse {value!r} as a rational number") from exc


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    scale_min: Fraction
    scale_max: Fraction
    rank: int

    @property
    def diapason(self) -> Fraction:
        return self.scale_max - self.scale_min


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    location: tuple = ()


@dataclass(frozen=True)
class DecisionMatrix:
    """``n`` alternatives scored on ``m`` criteria, criteria in importance order.

    Columns are reordered by rank on construction. Construction does not
    otherwise validate; use :func:`validate` or build through
    :meth:`from_rows` / :func:`load_matrix`, which reject invalid input.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    scores: tuple[tuple[Fraction, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "scores", tuple(tuple(row) for row in self.scores))
        order = sorted(range(len(self.criteria)), key=lambda j: self.criteria[j].rank)
        if order != list(range(len(self.criteria))):
            object.__setattr__(self, "criteria", tuple(self.criteria[j] for j in order))
            object.__setattr__(self, "scores", tuple(
                tuple(row[j] for j in order) if len(row) == len(order) else row for row in self.scores))
        object.__setattr__(self, "_index", {a: k for k, a in enumerate(self.alternatives)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], scales=None, names=None,
                  alternatives=None, ranks=None) -> "DecisionMatrix":
        """Build and validate a matrix from plain rows of scores.

        Scales default to the observed column range; names default to
        ``K1..Km``, alternatives to ``x1..xn`` and ranks to column order.
        Columns are reordered by rank.
        """
        table = [[to_fraction(v) for v in row] for row in rows]
        m = len(table[0]) if table else (len(scales) if scales else 0)
        if scales is None:
            scales = [(min(r[j] for r in table), max(r[j] for r in table)) for j in range(m)]
            scales = [(lo, hi) if lo < hi else (lo, lo + 1) for lo, hi in scales]
        names = list(names) if names is not None else [f"K{j + 1}" for j in range(m)]
        alternatives = list(alternatives) if alternatives is not None else [f"x{i + 1}" for i in range(len(table))]
        ranks = list(ranks) if ranks is not None else list(range(1, m + 1))
        criteria = [CriterionSpec(names[j], to_fraction(scales[j][0]), to_fraction(scales[j][1]), ranks[j])
                    for j in range(m)]
        return _checked(cls(tuple(alternatives), tuple(criteria), tuple(map(tuple, table))))

    @property
    def n(self) -> int:
        return len(self.alternatives)

    @property
    def m(self) -> int:
        return len(self.criteria)

    def index(self, alternative: str) -> int:
        try:
            return self._index[alternative]
        except KeyError:
            raise KeyError(f"unknown alternative {alternative!r}") from None

    def row(self, alternative: str) -> tuple[Fraction, ...]:
        return self.scores[self.index(alternative)]

    def column(self, j: int) -> tuple[Fraction, ...]:
        """Scores on criterion ``j`` (1-based, in rank order)."""
        if not 1 <= j <= self.m:
            raise IndexError(f"criterion index {j} outside 1..{self.m}")
        return tuple(row[j - 1] for row in self.scores)

    def with_scores(self, scores, criteria=None) -> "DecisionMatrix":
        return replace(self, scores=tuple(map(tuple, scores)),
                       criteria=self.criteria if criteria is None else tuple(criteria))


def validate(matrix: DecisionMatrix) -> list[Violation]:
    """Return every invariant violation of ``matrix``; an empty list means valid."""
    out: list[Violation] = []
    if matrix.n < 1:
        out.append(Violation("empty_alternatives", "n >= 1 violated: no alternatives"))
    if matrix.m < 1:
        out.append(Violation("empty_criteria", "m >= 1 violated: no criteria"))

    seen: dict[str, int] = {}
    for k, alt in enumerate(matrix.alternatives):
        if alt in seen:
            out.append(Violation("duplicate_alternative",
                                 f"duplicate alternative id {alt!r} (rows {seen[alt] + 1} and {k + 1})",
                                 (alt,)))
        else:
            seen[alt] = k

    by_rank: dict[int, list[str]] = {}
    for c in matrix.criteria:
        if c.scale_min >= c.scale_max:
            out.append(Violation("bad_scale",
                                 f"criterion {c.name!r}: scale_min {c.scale_min} must be < scale_max {c.scale_max}",
                                 (c.name,)))
        by_rank.setdefault(c.rank, []).append(c.name)
    for rank, names in sorted(by_rank.items()):
        if len(names) > 1:
            out.append(Violation("duplicate_rank",
                                 f"rank {rank} shared by criteria {', '.join(map(repr, names))}",
                                 tuple(names)))
    # with every rank inside 1..m, a gap can only come from a duplicate
    outside = sorted(r for r in by_rank if not 1 <= r <= matrix.m)
    if outside:
        out.append(Violation("rank_range", f"ranks must be exactly 1..{matrix.m}; got out-of-range {outside}"))

    for i, row in enumerate(matrix.scores):
        alt = matrix.alternatives[i] if i < matrix.n else f"row {i + 1}"
        if len(row) != matrix.m:
            out.append(Violation("row_length", f"alternative {alt!r} has {len(row)} scores, expected {matrix.m}",
                                 (alt,)))
            continue
        for c, v in zip(matrix.criteria, row):
            if not c.scale_min <= v <= c.scale_max:
                out.append(Violation("out_of_scale",
                                     f"alternative {alt!r}, criterion {c.name!r}: score {v} "
                                     f"outside [{c.scale_min}, {c.scale_max}]",
                                     (alt, c.name)))
    if len(matrix.scores) != matrix.n:
        out.append(Violation("row_count", f"{len(matrix.scores)} score rows for {matrix.n} alternatives"))
    return out


def _checked(matrix: DecisionMatrix) -> DecisionMatrix:
    problems = validate(matrix)
    if problems:
        raise MatrixError(problems)
    return matrix


def negate_criteria(matrix: DecisionMatrix, names: Iterable[str]) -> DecisionMatrix:
    """Turn loss-type criteria into win-type ones by negating their columns."""
    names = set(names)
    unknown = names - {c.name for c in matrix.criteria}
    if unknown:
        raise InputError(f"unknown criteria: {', '.join(sorted(unknown))}")
    flip = [c.name in names for c in matrix.criteria]
    criteria = [replace(c, scale_min=-c.scale_max, scale_max=-c.scale_min) if f else c
                for c, f in zip(matrix.criteria, flip)]
    scores = [[-v if f else v for v, f in zip(row, flip)] for row in matrix.scores]
    return matrix.with_scores(scores, criteria)


# -- CSV ---------------------------------------------------------------------
#
# Layout (every row starts with a label cell):
#   criterion,<name_1>,...,<name_m>
#   scale,"<min_1>,<max_1>",...
#   rank,<rank_1>,...
#   <alternative_id>,<score_1>,...

def _parse_scale(cell: str, lineno: int, name: str) -> tuple[Fraction, Fraction]:
    parts = [p for p in cell.replace(";", ",").split(",")]
    if len(parts) != 2:
        raise InputError(f"line {lineno}: scale for {name!r} must be 'min,max', got {cell!r}")
    try:
        return to_fraction(parts[0]), to_fraction(parts[1])
    except InputError as exc:
        raise InputError(f"line {lineno}: {exc}") from None


def _read_csv(text: str) -> DecisionMatrix:
    rows = [(k, r) for k, r in enumerate(csv.reader(io.StringIO(text)), start=1)
            if r and any(cell.strip() for cell in r)]
    if len(rows) < 3:
        raise InputError("CSV needs a name row, a scale row and a rank row")
    (ln_names, names), (ln_scales, scales), (ln_ranks, ranks) = rows[:3]
    names = [c.strip() for c in names[1:]]
    m = len(names)
    for lineno, row, what in ((ln_scales, scales, "scale"), (ln_ranks, ranks, "rank")):
        if len(row) - 1 != m:
            raise InputError(f"line {lineno}: {what} row has {len(row) - 1} cells, expected {m}")
    criteria = []
    for j, name in enumerate(names):
        lo, hi = _parse_scale(scales[j + 1], ln_scales, name)
        cell = ranks[j + 1].strip()
        if not cell:
            raise InputError(f"line {ln_ranks}: missing rank for criterion {name!r}")
        try:
            rank = int(cell)
        except ValueError:
            raise InputError(f"line {ln_ranks}: rank for {name!r} is not an integer: {cell!r}") from None
        criteria.append(CriterionSpec(name, lo, hi, rank))
    alternatives, scores = [], []
    for lineno, row in rows[3:]:
        if len(row) - 1 != m:
            raise InputError(f"line {lineno}: expected {m} scores, got {len(row) - 1}")
        alternatives.append(row[0].strip())
        try:
            scores.append([to_fraction(c) for c in row[1:]])
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return DecisionMatrix(tuple(alternatives), tuple(criteria), tuple(map(tuple, scores)))


def _write_csv(matrix: DecisionMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["criterion", *(c.name for c in matrix.criteria)])
    w.writerow(["scale", *(f"{c.scale_min},{c.scale_max}" for c in matrix.criteria)])
    w.writerow(["rank", *(c.rank for c in matrix.criteria)])
    for alt, row in zip(matrix.alternatives, matrix.scores):
        w.writerow([alt, *(str(v) for v in row)])
    return buf.getvalue()


# -- JSON --------------------------------------------------------------------

def _read_json(text: str) -> DecisionMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or "criteria" not in doc or "alternatives" not in doc:
        raise InputError("JSON matrix needs 'criteria' and 'alternatives' keys")
    criteria = []
    for k, c in enumerate(doc["criteria"]):
        name = str(c.get("name", f"K{k + 1}"))
        if "rank" not in c or c["rank"] is None:
            raise InputError(f"criteria[{k}] ({name!r}): missing rank")
        for key in ("scale_min", "scale_max"):
            if key not in c:
                raise InputError(f"criteria[{k}] ({name!r}): missing {key}")
        criteria.append(CriterionSpec(name, to_fraction(c["scale_min"]), to_fraction(c["scale_max"]), int(c["rank"])))
    alternatives, scores = [], []
    for k, a in enumerate(doc["alternatives"]):
        if "id" not in a or "scores" not in a:
            raise InputError(f"alternatives[{k}]: needs 'id' and 'scores'")
        if len(a["scores"]) != len(criteria):
            raise InputError(f"alternatives[{k}] ({a['id']!r}): expected {len(criteria)} scores, "
                             f"got {len(a['scores'])}")
        alternatives.append(str(a["id"]))
        scores.append(tuple(to_fraction(v) for v in a["scores"]))
    return DecisionMatrix(tuple(alternatives), tuple(criteria), tuple(scores))


def _write_json(matrix: DecisionMatrix) -> str:
    doc = {
        "criteria": [{"name": c.name, "scale_min": str(c.scale_min), "scale_max": str(c.scale_max),
                      "rank": c.rank} for c in matrix.criteria],
        "alternatives": [{"id": a, "scores": [str(v) for v in row]}
                         for a, row in zip(matrix.alternatives, matrix.scores)],
    }
    return json.dumps(doc, indent=2) + "\n"


_READERS = {"csv": _read_csv, "json": _read_json}
_WRITERS = {"csv": _write_csv, "json": _write_json}


def parse_matrix(source: str | bytes | IO, format: str = "csv") -> DecisionMatrix:
    """Parse a decision matrix without checking its invariants."""
    if format not in _READERS:
        raise InputError(f"unknown format {format!r}; expected one of {sorted(_READERS)}")
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8-sig")
    return _READERS[format](source)


def load_matrix(source: str | bytes | IO, format: str = "csv") -> DecisionMatrix:
    """Parse and validate a decision matrix from text, bytes or a file object.

    Raises :class:`InputError` on parse failure and :class:`MatrixError`
    (a subclass) when the parsed matrix violates an invariant.
    """
    return _checked(parse_matrix(source, format))


def dump_matrix(matrix: DecisionMatrix, format: str = "csv") -> str:
    if format not in _WRITERS:
        raise InputError(f"unknown format {format!r}; expected one of {sorted(_WRITERS)}")
    return _WRITERS[format](matrix)


# -- relation stacks -----------------------------------------------------------
#
# JSON: {"n": 3, "alternatives": [...optional...],
#        "relations": [{"rank": 1, "rows": [[...], ...]}, ...]}
# CSV blocks (blank lines ignored):
#   alternatives,a,b,c        optional
#   relation,<rank>
#   <n rows of cells>

def _stack_labels(labels, n: int) -> tuple[str, ...]:
    if labels is None:
        return tuple(f"x{i + 1}" for i in range(n))
    labels = tuple(str(a) for a in labels)
    if len(labels) != n:
        raise InputError(f"{len(labels)} alternative labels for n = {n}")
    if len(set(labels)) != n:
        raise InputError("duplicate alternative labels")
    return labels


def _order_by_rank(blocks: list[tuple[int, list]]) -> list[list]:
    ranks = [r for r, _ in blocks]
    if sorted(ranks) != list(range(1, len(blocks) + 1)):
        raise InputError(f"relation ranks must be exactly 1..{len(blocks)}, got {ranks}")
    return [rows for _, rows in sorted(blocks, key=lambda b: b[0])]


def read_stack(source: str | bytes | IO, format: str = "json") -> tuple[tuple[str, ...], list[list[list[str]]]]:
    """Parse a stack of square matrices; returns labels and raw cell rows in rank order."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8-sig")
    if format == "json":
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
        if not isinstance(doc, dict) or "relations" not in doc:
            raise InputError("relation stack needs a 'relations' key")
        blocks = []
        for k, rel in enumerate(doc["relations"]):
            if "rank" not in rel or "rows" not in rel:
                raise InputError(f"relations[{k}]: needs 'rank' and 'rows'")
            blocks.append((int(rel["rank"]), [[str(c) for c in row] for row in rel["rows"]]))
        n = doc.get("n", len(blocks[0][1]) if blocks else 0)
        labels = doc.get("alternatives")
    elif format == "csv":
        labels, blocks, n = None, [], None
        for lineno, row in enumerate(csv.reader(io.StringIO(source)), start=1):
            row = [c.strip() for c in row]
            if not any(row):
                continue
            if row[0] == "alternatives":
                labels = row[1:]
            elif row[0] == "relation":
                try:
                    blocks.append((int(row[1]), []))
                except (IndexError, ValueError):
                    raise InputError(f"line {lineno}: expected 'relation,<rank>'") from None
            elif not blocks:
                raise InputError(f"line {lineno}: matrix row before any 'relation,<rank>' line")
            else:
                blocks[-1][1].append(row)
        n = len(blocks[0][1]) if blocks else 0
    else:
        raise InputError(f"unknown format {format!r}; expected 'json' or 'csv'")
    if not blocks:
        raise InputError("relation stack is empty")
    for rank, rows in blocks:
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"relation with rank {rank} is not {n}x{n}")
    return _stack_labels(labels, n), _order_by_rank(blocks)


def write_stack(alternatives: Sequence[str], matrices: Sequence[Sequence[Sequence]]) -> str:
    doc = {
        "n": len(alternatives),
        "alternatives": list(alternatives),
        "relations": [{"rank": k, "rows": [[str(v) for v in row] for row in mat]}
                      for k, mat in enumerate(matrices, start=1)],
    }
    return json.dumps(doc, indent=2) + "\n"
