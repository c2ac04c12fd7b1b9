"""Per-check inequality records and JSON-lines report emission."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-9


@dataclass
class BoundReport:
    """One verified inequality lhs <= rhs at one site.

    slack = rhs - lhs; the check passes when
    slack >= -(abs_tol + rel_tol * |rhs|).
    """

    check: str
    site: object
    lhs: float
    rhs: float
    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL
    extra: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack >= -(self.abs_tol + self.rel_tol * abs(self.rhs))

    def to_json_obj(self) -> dict:
        obj = {
            "check": self.check,
            "site": self.site,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.passed,
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
        }
        if self.extra:
            obj["extra"] = self.extra
        return obj


def all_pass(reports) -> bool:
    return all(r.passed for r in reports)


def summarize(reports) -> dict:
    """Pass counts and minimum slack grouped by check name."""
    summary = {}
    for r in reports:
        s = summary.setdefault(r.check, {"n": 0, "n_pass": 0, "min_slack": None})
        s["n"] += 1
        s["n_pass"] += int(r.passed)
        if s["min_slack"] is None or r.slack < s["min_slack"]:
            s["min_slack"] = r.slack
    return summary


def write_jsonl(path, reports, config=None) -> None:
    """Write one report per line, preceded by an optional config line and
    followed by a summary footer. Append-safe: every line is standalone JSON."""
    with open(path, "w", encoding="utf-8") as fh:
        if config is not None:
            fh.write(json.dumps({"config": config}) + "\n")
        for r in reports:
            fh.write(json.dumps(r.to_json_obj()) + "\n")
        fh.write(json.dumps({"summary": summarize(reports)}) + "\n")
