"""Full-pipeline runs and their serialized reports.

Reports are JSON objects with a fixed key order; every real number is
rounded to 12 significant digits before writing, so identical inputs give
byte-identical output and a report survives a load/dump round trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import Any, Optional

from . import __version__
from ._limits import ParameterError
from .dimensionality import closed_form_matrix, genuineness_report, overlap_matrix
from .ghz import GhzSpec, build_ghz, expected_residue, joint_distribution, sample_outcomes, verify_concurrency
from .lhv import Satisfiability, decide
from .observables import _validate_settings, concurrent_set

__all__ = [
    "VerificationReport",
    "SampleReport",
    "OverlapReport",
    "LhvReport",
    "run_verify",
    "run_sample",
    "run_overlap",
    "run_lhv",
    "dumps",
    "loads",
]

SIG_DIGITS = 12


def _round(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _lhv_is_decisive(d: int, N: int) -> bool:
    # the contradiction is claimed only for even d with odd N
    return d % 2 == 0 and N % 2 == 1


class _Report:
    kind: str = ""

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for f in fields(self):
            out[f.name] = getattr(self, f.name)
        return _round(out)

    @classmethod
    def from_dict(cls, data: dict):
        data = dict(data)
        kind = data.pop("kind", cls.kind)
        if kind != cls.kind:
            raise ParameterError(f"expected a {cls.kind!r} report, got {kind!r}")
        return cls(**data)


@dataclass
class VerificationReport(_Report):
    kind = "verify"

    d: int
    N: int
    tol: float
    eigen_residuals: dict[str, float]
    commutator_norms: dict[str, float]
    lhv_verdict: dict[str, Any]
    overlap_summary: dict[str, float]
    commutant_dim: int
    complementary: bool
    checks: dict[str, bool]
    pass_: bool
    tool_version: str
    seed: int

    def to_dict(self) -> dict:
        out = super().to_dict()
        # "pass" is a keyword; store it under its natural name
        return {("pass" if k == "pass_" else k): v for k, v in out.items()}

    @classmethod
    def from_dict(cls, data: dict) -> VerificationReport:
        data = {("pass_" if k == "pass" else k): v for k, v in data.items()}
        return super().from_dict(data)

    @property
    def passed(self) -> bool:
        return self.pass_


@dataclass
class SampleReport(_Report):
    kind = "sample"

    d: int
    N: int
    settings: str
    shots: int
    seed: int
    expected_residue: Optional[int]
    counts: dict[str, int]
    off_support_counts: int
    passed: bool
    tool_version: str


@dataclass
class OverlapReport(_Report):
    kind = "overlap"

    d: int
    N: int
    overlaps: list[list[float]]
    closed_form: list[list[float]]
    min_overlap: float
    max_overlap: float
    closed_form_deviation: float
    row_sum_deviation: float
    commutant_dim: int
    complementary: bool
    passed: bool
    tool_version: str


@dataclass
class LhvReport(_Report):
    kind = "lhv"

    d: int
    N: int
    status: str
    criterion: str
    agrees: bool
    decisive: bool
    assignment: Optional[dict[str, list[int]]]
    certificate: dict[str, Any]
    points_searched: int
    passed: bool
    tool_version: str


_KINDS = {cls.kind: cls for cls in (VerificationReport, SampleReport, OverlapReport, LhvReport)}


def dumps(report: _Report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def loads(text: str) -> _Report:
    data = json.loads(text)
    try:
        cls = _KINDS[data["kind"]]
    except KeyError as exc:
        raise ParameterError(f"unknown report kind {data.get('kind')!r}") from exc
    return cls.from_dict(data)


def _lhv_section(d: int, N: int, workers: int = 1) -> tuple[dict, bool]:
    verdict = decide(d, N, workers=workers)
    assignment = None
    if verdict.assignment is not None:
        x, y = verdict.assignment.as_ints()
        assignment = {"x": x, "y": y}
    ok = verdict.agrees
    if _lhv_is_decisive(d, N):
        ok = ok and verdict.status is Satisfiability.UNSAT
    section = {
        "status": verdict.status.value,
        "criterion": verdict.criterion.value,
        "agrees": verdict.agrees,
        "decisive": _lhv_is_decisive(d, N),
        "assignment": assignment,
        "certificate": verdict.certificate,
        "points_searched": verdict.points_searched,
    }
    return section, ok


def _fmt_outcome(outcome: tuple[int, ...]) -> str:
    return ",".join(str(v) for v in outcome)


def run_verify(d: int, N: int, tol: float = 1e-10, seed: int = 0, workers: int = 1) -> VerificationReport:
    """Concurrency, local-realism and genuine-dimensionality checks for one ``(d, N)``.

    The LHV verdict gates ``pass`` only for even d with odd N; elsewhere it
    is recorded for information, provided search and criterion agree.
    """
    spec = GhzSpec(d, N)
    obs = concurrent_set(d, N)
    conc = verify_concurrency(obs, build_ghz(spec), tol)
    labels = obs.setting_labels
    lhv, lhv_ok = _lhv_section(d, N, workers)
    gen = genuineness_report(d, N)
    checks = {
        "eigenrelations": all(r < tol for r in conc.eigen_residuals),
        "incompatibility": all(c > 1e-6 for c in conc.commutator_norms.values()),
        "lhv": lhv_ok,
        "overlaps_positive": gen.overlaps_positive,
        "closed_form": gen.closed_form_deviation < 1e-10,
        "irreducible": gen.irreducible,
    }
    return VerificationReport(
        d=d,
        N=N,
        tol=tol,
        eigen_residuals=dict(zip(labels, conc.eigen_residuals)),
        commutator_norms={f"{labels[i]}|{labels[j]}": v for (i, j), v in conc.commutator_norms.items()},
        lhv_verdict=lhv,
        overlap_summary={
            "min": gen.min_overlap,
            "max": gen.max_overlap,
            "closed_form_deviation": gen.closed_form_deviation,
            "row_sum_deviation": gen.row_sum_deviation,
        },
        commutant_dim=gen.commutant_dim,
        complementary=gen.complementary,
        checks=checks,
        pass_=all(checks.values()),
        tool_version=__version__,
        seed=seed,
    )


def run_sample(d: int, N: int, settings: str, shots: int, seed: int) -> SampleReport:
    """Sampled outcome counts plus the certain outcome-sum residue, if any."""
    settings = _validate_settings(settings, N)
    if shots < 0:
        raise ParameterError(f"shots must be non-negative, got {shots}")
    dist = joint_distribution(GhzSpec(d, N), settings)
    counts = sample_outcomes(dist, shots, seed)
    residue = expected_residue(settings, d)
    off = 0
    if residue is not None:
        off = sum(c for o, c in counts.items() if sum(o) % d != residue)
    return SampleReport(
        d=d,
        N=N,
        settings=settings,
        shots=shots,
        seed=seed,
        expected_residue=residue,
        counts={_fmt_outcome(o): c for o, c in sorted(counts.items())},
        off_support_counts=off,
        passed=off == 0,
        tool_version=__version__,
    )


def run_overlap(d: int, N: int) -> OverlapReport:
    gen = genuineness_report(d, N)
    return OverlapReport(
        d=d,
        N=N,
        overlaps=overlap_matrix(d, N).values.tolist(),
        closed_form=closed_form_matrix(d, N).tolist(),
        min_overlap=gen.min_overlap,
        max_overlap=gen.max_overlap,
        closed_form_deviation=gen.closed_form_deviation,
        row_sum_deviation=gen.row_sum_deviation,
        commutant_dim=gen.commutant_dim,
        complementary=gen.complementary,
        passed=gen.passed,
        tool_version=__version__,
    )


def run_lhv(d: int, N: int, workers: int = 1) -> LhvReport:
    section, ok = _lhv_section(d, N, workers)
    return LhvReport(d=d, N=N, **section, passed=ok, tool_version=__version__)

