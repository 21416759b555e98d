"""Check records and suite reports shared by all verification routines."""
from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    """Outcome of one identity check.

    ``anchor`` is a short key naming the identity family the check belongs
    to (for example ``"ribbon.unitarity"``) or ``"plumbing"`` for internal
    consistency checks.  ``control`` marks negative or precondition controls
    whose outcome is informative but does not enter the suite verdict.
    """

    name: str
    anchor: str
    max_deviation: float
    passed: bool
    detail: str = ""
    control: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "max_deviation": float(self.max_deviation),
            "passed": bool(self.passed),
            "detail": self.detail,
            "control": bool(self.control),
        }


@dataclass
class SuiteReport:
    suite: str
    group: str
    patch: str = "-"
    seed: int = 0
    records: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0
    data: dict[str, Any] = field(default_factory=dict)
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, anchor: str, deviation: float, tol: float,
            detail: str = "", control: bool = False, expect_pass: bool = True) -> CheckRecord:
        """Record a check that passes when ``deviation <= tol``.

        With ``expect_pass=False`` the record passes when the deviation
        exceeds ``tol``, which is how negative controls are expressed.
        """
        dev = float(deviation)
        ok = dev <= tol if expect_pass else dev > tol
        rec = CheckRecord(name, anchor, dev, bool(ok), detail, control)
        self.records.append(rec)
        return rec

    def add_bool(self, name: str, anchor: str, ok: bool, detail: str = "",
                 control: bool = False) -> CheckRecord:
        rec = CheckRecord(name, anchor, 0.0 if ok else float("inf"), bool(ok), detail, control)
        self.records.append(rec)
        return rec

    def extend(self, other: "SuiteReport", prefix: str = "") -> None:
        for rec in other.records:
            self.records.append(CheckRecord(prefix + rec.name, rec.anchor, rec.max_deviation,
                                            rec.passed, rec.detail, rec.control))

    def finish(self) -> "SuiteReport":
        self.wall_time = time.perf_counter() - self._t0
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records if not r.control)

    @property
    def max_deviation(self) -> float:
        devs = [r.max_deviation for r in self.records if not r.control]
        return max(devs, default=0.0)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.control and not r.passed]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "group": self.group,
            "patch": self.patch,
            "seed": int(self.seed),
            "passed": self.passed,
            "records": [r.to_dict() for r in self.records],
            "data": _jsonable(self.data),
        }

    def summary(self) -> str:
        lines = [f"{self.suite} [{self.group}, {self.patch}, seed={self.seed}]: "
                 f"{'PASS' if self.passed else 'FAIL'} "
                 f"({sum(r.passed for r in self.records if not r.control)}"
                 f"/{sum(not r.control for r in self.records)} checks)"]
        for rec in self.records:
            tag = "control" if rec.control else ("ok" if rec.passed else "FAIL")
            lines.append(f"  [{tag:7s}] {rec.name}: max dev {rec.max_deviation:.3e}"
                         + (f"  ({rec.detail})" if rec.detail else ""))
        return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def write_atomic(path: Path | str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
