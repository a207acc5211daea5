"""Per-trial verdict records shared by every checker."""

from dataclasses import dataclass, field, replace
from typing import Any

SLACK_REL = 1e-9


def slack_tol(lhs: float, rhs: float, rel: float = SLACK_REL) -> float:
    """Relative-plus-absolute tolerance ``rel * (1 + |lhs| + |rhs|)``."""
    return rel * (1.0 + abs(lhs) + abs(rhs))


@dataclass(frozen=True)
class TrialReport:
    """Outcome of one check.

    ``slack`` is ``rhs - lhs`` for an inequality ``lhs <= rhs`` (or a
    concavity margin), and ``-|lhs - rhs|`` for an identity.  A trial
    passes iff ``slack >= -tol``.
    """

    suite: str
    lhs: float
    rhs: float
    slack: float
    tol: float
    passed: bool
    dims: tuple = (0, 0, 0)
    trial_index: int = 0
    seed: int = 0
    kind: str = "inequality"
    extras: dict = field(default_factory=dict)

    def with_trial(self, suite: str, trial_index: int, seed: int) -> "TrialReport":
        return replace(self, suite=suite, trial_index=trial_index, seed=seed)

    def with_rel(self, rel: float) -> "TrialReport":
        """Re-judge an inequality report under ``slack_tol(..., rel)``."""
        if self.kind != "inequality":
            return self
        tol = slack_tol(self.lhs, self.rhs, rel)
        return replace(self, tol=tol, passed=self.slack >= -tol and self.passed_extra())

    def passed_extra(self) -> bool:
        return self.extras.get("route_deviation", 0.0) <= self.extras.get("route_tol", float("inf"))

    def to_dict(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "trial_index": self.trial_index,
            "seed": self.seed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tol": self.tol,
            "kind": self.kind,
            "pass": self.passed,
            "dims": list(self.dims),
        }
        if self.extras:
            out["extras"] = dict(sorted(self.extras.items()))
        return out


def inequality(suite, lhs, rhs, dims=(0, 0, 0), rel=SLACK_REL, **extras) -> TrialReport:
    """Report for ``lhs <= rhs`` under :func:`slack_tol`."""
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    tol = slack_tol(lhs, rhs, rel)
    return TrialReport(suite, lhs, rhs, slack, tol, slack >= -tol, tuple(dims), extras=extras)


def identity(suite, lhs, rhs, dims=(0, 0, 0), rel=1e-12, abs_tol=0.0, **extras) -> TrialReport:
    """Report for ``lhs == rhs`` to ``rel * max(|lhs|, |rhs|) + abs_tol``."""
    lhs, rhs = float(lhs), float(rhs)
    slack = -abs(lhs - rhs)
    tol = rel * max(abs(lhs), abs(rhs)) + abs_tol
    return TrialReport(suite, lhs, rhs, slack, tol, slack >= -tol, tuple(dims), kind="identity", extras=extras)


def bounded(suite, value, bound, dims=(0, 0, 0), **extras) -> TrialReport:
    """Report for ``value <= bound`` with no extra tolerance (tolerance folded into `bound`)."""
    value, bound = float(value), float(bound)
    slack = bound - value
    return TrialReport(suite, value, bound, slack, 0.0, slack >= 0.0, tuple(dims), kind="bound", extras=extras)
