"""Machine-readable reports shared by the command line tools."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .bounds import CheckResult
from .exact_core import HighFloat

SCHEMA = "sincpow-report/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_DISCREPANCY = 3


def frac_str(q: Fraction) -> str:
    """Lossless ``p/q`` form, also for integers."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s: str) -> Fraction:
    p, q = s.split("/")
    return Fraction(int(p), int(q))


def float_obj(x: HighFloat, digits: int | None = None) -> dict:
    return {"value": x.to_decimal(digits), "precision_bits": x.precision}


def jsonable(obj):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, HighFloat):
        return float_obj(obj)
    if isinstance(obj, (mpmath.mpf,)):
        return mpmath.nstr(obj, 20)
    if isinstance(obj, CheckResult):
        return {"name": obj.name, "status": obj.status, "detail": jsonable(obj.detail)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    return obj


@dataclass
class Report:
    command: list[str]
    parameters: dict
    results: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return EXIT_FAILED
        if "discrepancy" in statuses:
            return EXIT_DISCREPANCY
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "parameters": jsonable(self.parameters),
            "results": jsonable(self.results),
            "checks": [jsonable(c) for c in self.checks],
            "exit_code": self.exit_code,
            "timings_s": {k: round(v, 6) for k, v in self.timings.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
