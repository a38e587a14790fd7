"""Synthetic examiner populations with known true response probabilities.

Used for property tests and for studying calibration behaviour when no
real response data are available.  Draws are fully deterministic given a
seed: each examiner gets an independent child generator derived by
SeedSequence spawning (PCG64), so serial and parallel generation agree,
and categorical outcomes come from inverse-CDF sampling over the fixed
category order (ID, IN, EX).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .calibration import fit_examiner
from .model import (
    CATEGORIES,
    Cell,
    ResponseCategory,
    TruthLabel,
    expected_theta,
    uninformative_priors,
)
from .records import Dataset, ResponseRecord, table_from_records

_SUM_TOLERANCE = 1e-12


def _check_simplex(name: str, triple: Sequence[float]) -> tuple[float, float, float]:
    values = tuple(float(v) for v in triple)
    if len(values) != 3:
        raise ValueError(f"{name} must have exactly 3 components, got {len(values)}")
    if any(not math.isfinite(v) or v < 0.0 for v in values):
        raise ValueError(f"{name} components must be finite and >= 0")
    if abs(math.fsum(values) - 1.0) > _SUM_TOLERANCE:
        raise ValueError(f"{name} components must sum to 1, got {math.fsum(values)!r}")
    return values


@dataclass(frozen=True)
class ExaminerProfile:
    """True response probabilities (ID, IN, EX) under each truth label."""

    theta_same: tuple[float, float, float]
    theta_diff: tuple[float, float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta_same", _check_simplex("theta_same", self.theta_same))
        object.__setattr__(self, "theta_diff", _check_simplex("theta_diff", self.theta_diff))

    def probability(self, cat: ResponseCategory, truth: TruthLabel) -> float:
        triple = self.theta_same if truth is TruthLabel.SAME_SOURCE else self.theta_diff
        return triple[CATEGORIES.index(cat)]


@dataclass(frozen=True)
class SimConfig:
    """A population to synthesise: profiles, trial counts, and a seed."""

    profiles: tuple[ExaminerProfile, ...]
    n_same: int
    n_diff: int
    seed: int
    condition_label: str = "simulated"

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError("config needs at least one profile")
        for name, value in (("n_same", self.n_same), ("n_diff", self.n_diff)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer")
        if self.n_same + self.n_diff < 1:
            raise ValueError("n_same + n_diff must be at least 1")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError("seed must be an integer")

    @classmethod
    def from_json(cls, text: str) -> "SimConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config is not valid JSON: {exc}") from None
        try:
            profiles = tuple(
                ExaminerProfile(tuple(p["theta_same"]), tuple(p["theta_diff"]))
                for p in raw["profiles"]
            )
            return cls(
                profiles=profiles,
                n_same=raw["n_same"],
                n_diff=raw["n_diff"],
                seed=raw["seed"],
                condition_label=raw.get("condition_label", "simulated"),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"config is missing or mistypes a field: {exc}") from None

    def to_json(self) -> str:
        document = {
            "condition_label": self.condition_label,
            "n_same": self.n_same,
            "n_diff": self.n_diff,
            "profiles": [
                {"theta_same": list(p.theta_same), "theta_diff": list(p.theta_diff)}
                for p in self.profiles
            ],
            "seed": self.seed,
        }
        return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _draw_category(triple: tuple[float, float, float], uniform: float) -> ResponseCategory:
    # Inverse CDF over the fixed order (ID, IN, EX); the order is part of
    # the format so seeds stay portable.
    if uniform < triple[0]:
        return CATEGORIES[0]
    if uniform < triple[0] + triple[1]:
        return CATEGORIES[1]
    return CATEGORIES[2]


def synthesize(config: SimConfig) -> Dataset:
    """Draw a full response dataset for the configured population."""
    children = np.random.SeedSequence(config.seed).spawn(len(config.profiles))
    records: list[ResponseRecord] = []
    for index, (profile, child) in enumerate(zip(config.profiles, children)):
        rng = np.random.Generator(np.random.PCG64(child))
        examiner_id = f"SIM{index:03d}"
        for j, u in enumerate(rng.random(config.n_same)):
            records.append(
                ResponseRecord(examiner_id, f"S{j + 1:04d}", TruthLabel.SAME_SOURCE,
                               _draw_category(profile.theta_same, float(u)))
            )
        for j, u in enumerate(rng.random(config.n_diff)):
            records.append(
                ResponseRecord(examiner_id, f"D{j + 1:04d}", TruthLabel.DIFFERENT_SOURCE,
                               _draw_category(profile.theta_diff, float(u)))
            )
    return Dataset(records=tuple(records), condition_label=config.condition_label)


@dataclass(frozen=True)
class ConvergencePoint:
    trials_per_truth: int
    cell_errors: Mapping[Cell, float]
    max_error: float


@dataclass(frozen=True)
class ConvergenceReport:
    profile: ExaminerProfile
    seed: int
    points: tuple[ConvergencePoint, ...]


def convergence_study(
    profile: ExaminerProfile, trial_schedule: Sequence[int], seed: int
) -> ConvergenceReport:
    """Track posterior-mean error against the true probabilities as data grow.

    Each schedule entry is the number of trials per truth label.  Every
    point fits the uninformative model to a fresh synthetic dataset drawn
    with a child seed, and records |posterior mean - true probability| for
    each (category, truth) cell.
    """
    schedule = [int(n) for n in trial_schedule]
    if not schedule:
        raise ValueError("trial schedule must not be empty")
    if any(n < 1 for n in schedule):
        raise ValueError("trial schedule entries must be >= 1")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("trial schedule must be strictly increasing")

    children = np.random.SeedSequence(seed).spawn(len(schedule))
    points = []
    for n, child in zip(schedule, children):
        config = SimConfig(
            profiles=(profile,),
            n_same=n,
            n_diff=n,
            seed=int(child.generate_state(1)[0]),
        )
        dataset = synthesize(config)
        table = table_from_records(dataset.records)
        model = fit_examiner("SIM000", table, uninformative_priors(n, n))
        errors = {
            cell: abs(expected_theta(model.posteriors.cell(*cell))
                      - profile.probability(*cell))
            for cell in model.posteriors.hypers
        }
        points.append(
            ConvergencePoint(
                trials_per_truth=n,
                cell_errors=errors,
                max_error=max(errors.values()),
            )
        )
    return ConvergenceReport(profile=profile, seed=seed, points=tuple(points))
