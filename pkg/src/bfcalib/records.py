"""Trial-record ingestion, aggregation into count tables, and result export.

The input format is delimiter-separated text with the header
``examiner_id,pair_id,truth,response``, chosen so that desk-scale datasets
stay hand-editable.  Truth tokens are ``s``/``d`` (or ``same``/``different``)
and response tokens ``ID``/``IN``/``EX`` (or the long forms), all
case-insensitive.  Exports are byte-deterministic for identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .model import (
    CATEGORIES,
    TRUTHS,
    CountTable,
    ResponseCategory,
    TruthLabel,
    expected_theta,
)
from .reporting import format_bf, log2_bf

if TYPE_CHECKING:
    from .calibration import ExaminerModel

HEADER_FIELDS = ("examiner_id", "pair_id", "truth", "response")


class RecordParseError(ValueError):
    """A record stream violated the input contract.

    Carries the 1-based file row (header = row 1) and the offending column
    name where applicable, and embeds both in the message.
    """

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column!r}")
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.row = row
        self.column = column


@dataclass(frozen=True)
class ResponseRecord:
    """One examiner's response to one ground-truth-known mark-print pair."""

    examiner_id: str
    pair_id: str
    truth: TruthLabel
    response: ResponseCategory


@dataclass(frozen=True)
class Dataset:
    """A non-empty collection of records under one condition label."""

    records: tuple[ResponseRecord, ...]
    condition_label: str = ""

    def __post_init__(self) -> None:
        if not self.records:
            raise ValueError("dataset must contain at least one record")
        seen = set()
        for record in self.records:
            key = (record.examiner_id, record.pair_id)
            if key in seen:
                raise ValueError(
                    f"duplicate record for examiner {key[0]!r}, pair {key[1]!r}"
                )
            seen.add(key)


def parse_records(
    source: str | Iterable[str],
    delimiter: str = ",",
    condition_label: str = "",
) -> Dataset:
    """Parse delimiter-separated trial records into a validated dataset."""
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise RecordParseError("input is empty; expected a header row") from None
    header = [name.strip().lower() for name in header]
    positions = {}
    for name in HEADER_FIELDS:
        if name not in header:
            raise RecordParseError(f"missing column {name!r}", row=1)
        positions[name] = header.index(name)

    records: list[ResponseRecord] = []
    seen: set[tuple[str, str]] = set()
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not field.strip() for field in row):
            continue
        values = {}
        for name, position in positions.items():
            if position >= len(row) or not row[position].strip():
                raise RecordParseError("missing value", row=row_number, column=name)
            values[name] = row[position].strip()
        try:
            truth = TruthLabel.parse(values["truth"])
        except ValueError as exc:
            raise RecordParseError(str(exc), row=row_number, column="truth") from None
        try:
            response = ResponseCategory.parse(values["response"])
        except ValueError as exc:
            raise RecordParseError(str(exc), row=row_number, column="response") from None
        key = (values["examiner_id"], values["pair_id"])
        if key in seen:
            raise RecordParseError(
                f"duplicate record for examiner {key[0]!r}, pair {key[1]!r}",
                row=row_number,
                column="pair_id",
            )
        seen.add(key)
        records.append(ResponseRecord(key[0], key[1], truth, response))
    if not records:
        raise RecordParseError("no data rows found after the header")
    return Dataset(records=tuple(records), condition_label=condition_label)


def table_from_records(records: Sequence[ResponseRecord]) -> CountTable:
    """Tally a record collection (assumed to be one examiner's) into counts."""
    counts = {cell: 0 for cell in ((cat, t) for cat in CATEGORIES for t in TRUTHS)}
    n_same = 0
    n_diff = 0
    for record in records:
        counts[(record.response, record.truth)] += 1
        if record.truth is TruthLabel.SAME_SOURCE:
            n_same += 1
        else:
            n_diff += 1
    return CountTable(counts=counts, n_same=n_same, n_diff=n_diff)


def aggregate(dataset: Dataset) -> list[tuple[str, CountTable]]:
    """Per-examiner count tables, sorted by examiner id.

    Totals derive from each examiner's own records, so examiners who
    responded to different numbers of pairs get different totals.
    """
    by_examiner: dict[str, list[ResponseRecord]] = {}
    for record in dataset.records:
        by_examiner.setdefault(record.examiner_id, []).append(record)
    return [
        (examiner_id, table_from_records(by_examiner[examiner_id]))
        for examiner_id in sorted(by_examiner)
    ]


_SHORT = {
    ResponseCategory.IDENTIFICATION: "id",
    ResponseCategory.INCONCLUSIVE: "in",
    ResponseCategory.EXCLUSION: "ex",
    TruthLabel.SAME_SOURCE: "s",
    TruthLabel.DIFFERENT_SOURCE: "d",
}


def _tabular_header() -> list[str]:
    columns = ["examiner_id", "prior_mode", "n_same", "n_diff"]
    for truth in TRUTHS:
        for cat in CATEGORIES:
            columns.append(f"c_{_SHORT[cat]}_{_SHORT[truth]}")
    for stem in ("prior", "post"):
        for cat in CATEGORIES:
            for truth in TRUTHS:
                columns.append(f"{stem}_a_{_SHORT[cat]}_{_SHORT[truth]}")
                columns.append(f"{stem}_b_{_SHORT[cat]}_{_SHORT[truth]}")
    for cat in CATEGORIES:
        for truth in TRUTHS:
            columns.append(f"theta_{_SHORT[cat]}_{_SHORT[truth]}")
    for cat in CATEGORIES:
        columns.append(f"bf_{_SHORT[cat]}")
        columns.append(f"bf_{_SHORT[cat]}_display")
        columns.append(f"log2_bf_{_SHORT[cat]}")
    return columns


def _tabular_row(model: "ExaminerModel") -> list[str]:
    row: list[str] = [model.examiner_id, model.priors.mode.value,
                      str(model.table.n_same), str(model.table.n_diff)]
    for truth in TRUTHS:
        for cat in CATEGORIES:
            row.append(str(model.table.count(cat, truth)))
    for source in (model.priors, model.posteriors):
        for cat in CATEGORIES:
            for truth in TRUTHS:
                hyper = source.cell(cat, truth)
                row.append(repr(hyper.a))
                row.append(repr(hyper.b))
    for cat in CATEGORIES:
        for truth in TRUTHS:
            row.append(repr(expected_theta(model.posteriors.cell(cat, truth))))
    for cat in CATEGORIES:
        value = model.bayes_factors[cat]
        row.append(repr(value))
        row.append(format_bf(value))
        row.append(repr(log2_bf(value)))
    return row


def _structured_entry(model: "ExaminerModel") -> dict:
    entry: dict = {
        "examiner_id": model.examiner_id,
        "prior_mode": model.priors.mode.value,
        "counts": {
            "n_same": model.table.n_same,
            "n_diff": model.table.n_diff,
        },
        "priors": {},
        "posteriors": {},
        "expected_theta": {},
        "bayes_factors": {},
    }
    for truth in TRUTHS:
        entry["counts"][_SHORT[truth]] = {
            cat.value: model.table.count(cat, truth) for cat in CATEGORIES
        }
    for cat in CATEGORIES:
        entry["priors"][cat.value] = {}
        entry["posteriors"][cat.value] = {}
        entry["expected_theta"][cat.value] = {}
        for truth in TRUTHS:
            prior = model.priors.cell(cat, truth)
            post = model.posteriors.cell(cat, truth)
            entry["priors"][cat.value][truth.value] = {"a": prior.a, "b": prior.b}
            entry["posteriors"][cat.value][truth.value] = {"a": post.a, "b": post.b}
            entry["expected_theta"][cat.value][truth.value] = expected_theta(post)
        value = model.bayes_factors[cat]
        entry["bayes_factors"][cat.value] = {
            "value": value,
            "display": format_bf(value),
            "log2": log2_bf(value),
        }
    return entry


def export_results(models: Iterable["ExaminerModel"], format: str = "tabular") -> str:
    """Render fitted models as a deterministic character stream.

    ``tabular`` produces one delimiter-separated row per examiner with all
    prior/posterior shapes, expected values, and evidence values (raw,
    3-significant-figure display form, and base-2 log).  ``structured``
    produces the same content as a sorted-key JSON document.  Models are
    emitted sorted by examiner id regardless of input order.
    """
    ordered = sorted(models, key=lambda m: m.examiner_id)
    if format == "tabular":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(_tabular_header())
        for model in ordered:
            writer.writerow(_tabular_row(model))
        return out.getvalue()
    if format == "structured":
        document = {"results": [_structured_entry(model) for model in ordered]}
        return json.dumps(document, indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown export format {format!r}; expected tabular or structured")
