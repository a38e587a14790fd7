"""Display conventions and plot-ready data for fitted evidence values.

Evidence values are reported at 3 significant figures, with values below
one rendered in reciprocal form ("1/3.91") so the direction of support is
obvious at a glance.  Rounding follows the IEEE round-half-to-even rule of
Python's float formatting, so display strings are deterministic.  The
functions here emit data files for external plotting tools; nothing in
this package renders images.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import TYPE_CHECKING, Iterable

from .model import CATEGORIES, ResponseCategory, TruthLabel
from .numerics import DensityCurve

if TYPE_CHECKING:
    from .calibration import ExaminerModel


def _three_sig(value: float) -> str:
    """Round to 3 significant figures and render as plain decimal text."""
    text = f"{value:#.3g}"
    if "e" in text or "E" in text:
        text = format(Decimal(text), "f")
    return text


def format_bf(value: float) -> str:
    """Evidence value at 3 significant figures; reciprocal form below 1."""
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"value must be a real number, got {value!r}")
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"value must be finite and > 0, got {value!r}")
    if value >= 1.0:
        return _three_sig(value)
    return "1/" + _three_sig(1.0 / value)


def log2_bf(value: float) -> float:
    """Base-2 logarithm, the scale used for swarm plots of evidence values."""
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"value must be finite and > 0, got {value!r}")
    return math.log2(value)


def swarm_data(
    models: Iterable["ExaminerModel"],
) -> dict[ResponseCategory, tuple[tuple[str, float], ...]]:
    """Per-category (examiner_id, log2 evidence) lists, sorted by value.

    Layout and jitter are left to the external plotting tool.
    """
    models = list(models)
    if not models:
        raise ValueError("swarm data requires at least one fitted model")
    result = {}
    for cat in CATEGORIES:
        entries = [(m.examiner_id, log2_bf(m.bayes_factors[cat])) for m in models]
        entries.sort(key=lambda e: (e[1], e[0]))
        result[cat] = tuple(entries)
    return result


@dataclass(frozen=True)
class ConversionRow:
    """One lookup row: what one output from one examiner is worth."""

    label: str
    category: ResponseCategory
    bf_raw: float
    bf_display: str
    log2_bf: float


@dataclass(frozen=True)
class ConversionTable:
    """Casework lookup table for one condition set."""

    rows: tuple[ConversionRow, ...]
    condition_label: str = ""

    def __post_init__(self) -> None:
        for row in self.rows:
            if abs(row.log2_bf - math.log2(row.bf_raw)) > 1e-12:
                raise ValueError(
                    f"log2 entry for {row.label}/{row.category.value} does not "
                    "match the raw value"
                )

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["examiner_id", "category", "bf_raw", "bf_display", "log2_bf"])
        for row in self.rows:
            writer.writerow(
                [row.label, row.category.value, repr(row.bf_raw), row.bf_display,
                 repr(row.log2_bf)]
            )
        return out.getvalue()


def conversion_table(
    models: Iterable["ExaminerModel"], condition_label: str = ""
) -> ConversionTable:
    """Build the per-examiner conversion table, sorted by examiner then category."""
    rows = []
    for model in sorted(models, key=lambda m: m.examiner_id):
        for cat in CATEGORIES:
            value = model.bayes_factors[cat]
            rows.append(
                ConversionRow(
                    label=model.examiner_id,
                    category=cat,
                    bf_raw=value,
                    bf_display=format_bf(value),
                    log2_bf=log2_bf(value),
                )
            )
    return ConversionTable(rows=tuple(rows), condition_label=condition_label)


def curve_csv(
    curve: DensityCurve,
    examiner_id: str,
    category: ResponseCategory,
    truth: TruthLabel,
    kind: str,
) -> str:
    """Render a density curve as theta,density rows with a provenance comment."""
    if kind not in ("prior", "posterior"):
        raise ValueError(f"kind must be 'prior' or 'posterior', got {kind!r}")
    lines = [
        f"# examiner={examiner_id} category={category.value} truth={truth.value} "
        f"kind={kind} a={curve.hyper.a!r} b={curve.hyper.b!r}",
        "theta,density",
    ]
    for theta, density in curve.points:
        lines.append(f"{theta!r},{density!r}")
    return "\n".join(lines) + "\n"
