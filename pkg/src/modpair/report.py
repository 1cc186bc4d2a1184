"""Verification reports: flat ``module.check.metric`` names, each with its tolerance
and a pass/fail/indeterminate state.  Serialization is deterministic so that two
runs with the same config and seed produce identical bytes."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

SCHEMA_VERSION = 1

PASS, FAIL, INDETERMINATE = "pass", "fail", "indeterminate"
_RELATIONS = ("<=", ">=", "==", "info")


@dataclass(frozen=True)
class Metric:
    value: float
    tol: Optional[float] = None
    relation: str = "<="
    state: str = PASS

    def as_dict(self) -> dict:
        return {"value": _clean(self.value), "tol": _clean(self.tol),
                "relation": self.relation, "state": self.state}


def _clean(v):
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    f = float(v)
    if f != f:
        return "nan"
    if f in (float("inf"), float("-inf")):
        return "inf" if f > 0 else "-inf"
    return f


def _unclean(v):
    if isinstance(v, str):
        return float(v)
    return v


def judge(value: float, tol: Optional[float], relation: str = "<=") -> Metric:
    """Metric whose state is decided by a single comparison."""
    if relation not in _RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    v = float(value)
    if relation == "info":
        return Metric(v, None, "info", PASS)
    if v != v:
        ok = False
    elif relation == "<=":
        ok = v <= tol
    elif relation == ">=":
        ok = v >= tol
    else:
        ok = v == tol
    return Metric(v, tol, relation, PASS if ok else FAIL)


def verdict_metric(value: float, tol: float, verdict: Optional[bool], expected: bool) -> Metric:
    """Metric for a refinement-classified defect: passes when the verdict matches."""
    if verdict is None:
        state = INDETERMINATE
    else:
        state = PASS if verdict == expected else FAIL
    if expected:
        return Metric(float(value), tol, "<=", state)
    return Metric(float(value), float(f"{10 * tol:.12g}"), ">=", state)


@dataclass
class VerificationReport:
    case: str
    config: dict
    version: str
    metrics: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, name: str, metric: Metric) -> Metric:
        if name in self.metrics:
            raise KeyError(f"duplicate metric {name}")
        self.metrics[name] = metric
        return metric

    def check(self, name: str, value: float, tol: Optional[float], relation: str = "<=") -> Metric:
        return self.add(name, judge(value, tol, relation))

    def merge(self, other: "VerificationReport") -> None:
        for k, m in other.metrics.items():
            self.add(k, m)
        self.timings.update(other.timings)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(m.state == PASS for m in self.metrics.values())

    def failures(self) -> list[str]:
        return [k for k, m in sorted(self.metrics.items()) if m.state != PASS]

    def as_dict(self, include_timings: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "case": self.case,
            "version": self.version,
            "config": self.config,
            "passed": self.passed,
            "metrics": {k: self.metrics[k].as_dict() for k in sorted(self.metrics)},
            "notes": list(self.notes),
        }
        if include_timings:
            out["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.as_dict(include_timings), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        metrics = {k: Metric(_unclean(m["value"]), _unclean(m["tol"]), m["relation"], m["state"])
                   for k, m in d["metrics"].items()}
        return cls(d["case"], d["config"], d["version"], metrics, d.get("timings", {}), d["notes"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value", "tol", "relation", "state"])
        for k in sorted(self.metrics):
            m = self.metrics[k]
            w.writerow([k, repr(float(m.value)), "" if m.tol is None else repr(float(m.tol)),
                        m.relation, m.state])
        return buf.getvalue()

    def summary(self) -> str:
        lines = []
        for k in sorted(self.metrics):
            m = self.metrics[k]
            tol = "" if m.tol is None else f" (tol {m.relation} {m.tol:.3g})"
            lines.append(f"{m.state.upper():13s} {k} = {m.value:.4g}{tol}")
        lines.append(f"{'PASSED' if self.passed else 'FAILED'}: {self.case}")
        return "\n".join(lines)


def table_csv(header: list[str], rows: list[list]) -> str:
    """Plain CSV with floats written by repr (shortest round-tripping form)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x for x in r])
    return buf.getvalue()
