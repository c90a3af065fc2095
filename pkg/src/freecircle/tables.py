"""Bundled golden tables and their exact verification."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .invariants import InvariantError
from .search import make_witness

PLUMBING_HEADER = ["alpha1", "alpha2", "alpha3", "lambda", "mu", "s1_28", "s2_12", "s3t_2"]
CP2_HEADER = ["alpha", "lambda", "mu", "s1_28", "s2_12", "s3t_2"]

TABLES = {
    "table1": ("plumbing-det-minus-1", 252),
    "table2": ("plumbing-det-plus-1", 252),
    "table3": ("cp2", 63),
}

_EXPECTED_DET = {"plumbing-det-minus-1": -1, "plumbing-det-plus-1": 1, "cp2": -1}


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class GoldenTable:
    family: str
    rows: list[tuple[tuple[int, ...], tuple[int, int, int]]]

    @property
    def witness_family(self) -> str:
        return "cp2-bundle" if self.family == "cp2" else "plumbing"


def data_dir() -> Path:
    return Path(str(resources.files("freecircle") / "data"))


def load_table(path, family: str | None = None) -> GoldenTable:
    """Parse and validate a golden CSV.

    The family is taken from the file stem (``table1``..``table3``) unless
    given explicitly.
    """
    path = Path(path)
    if family is None:
        try:
            family = TABLES[path.stem][0]
        except KeyError:
            raise TableError(f"cannot infer table family from {path.name}") from None
    expected_rows = {fam: n for fam, n in TABLES.values()}.get(family)
    if expected_rows is None:
        raise TableError(f"unknown table family {family!r}")
    header = CP2_HEADER if family == "cp2" else PLUMBING_HEADER
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first != header:
            raise TableError(f"{path.name}: header {first} does not match {header}")
        rows, seen = [], set()
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != len(header):
                raise TableError(f"{path.name}:{lineno}: wrong column count {len(rec)}")
            try:
                values = [int(x) for x in rec]
            except ValueError:
                raise TableError(f"{path.name}:{lineno}: malformed row {rec}") from None
            params, triple = tuple(values[:-3]), tuple(values[-3:])
            if triple in seen:
                raise TableError(f"{path.name}:{lineno}: duplicate expected triple {triple}")
            seen.add(triple)
            rows.append((params, triple))
    if len(rows) != expected_rows:
        raise TableError(f"{path.name}: row count mismatch ({len(rows)} rows, expected {expected_rows})")
    return GoldenTable(family, rows)


def load_bundled(name: str) -> GoldenTable:
    return load_table(data_dir() / f"{name}.csv")


@dataclass(frozen=True)
class RowResult:
    params: tuple[int, ...]
    expected: tuple[int, int, int]
    computed: tuple[int, int, int] | None
    det: int | None
    ok: bool
    message: str = ""


@dataclass(frozen=True)
class VerificationReport:
    family: str
    results: list[RowResult]

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.results)

    def failures(self) -> list[RowResult]:
        return [r for r in self.results if not r.ok]

    def summary(self) -> str:
        return f"{self.family}: {self.passed}/{len(self.results)} rows verified"


def verify_table(t: GoldenTable) -> VerificationReport:
    want_det = _EXPECTED_DET[t.family]
    results = []
    for params, expected in t.rows:
        try:
            w = make_witness(t.witness_family, params)
        except InvariantError as exc:
            results.append(RowResult(params, expected, None, None, False, str(exc)))
            continue
        det = w.chardata.det
        msgs = []
        if w.triple != expected:
            msgs.append(f"computed {w.triple} != expected {expected}")
        if det != want_det:
            msgs.append(f"det {det} != {want_det}")
        results.append(RowResult(params, expected, w.triple, det, not msgs, "; ".join(msgs)))
    return VerificationReport(t.family, results)
