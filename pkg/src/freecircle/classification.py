"""The 672 oriented diffeomorphism classes and their existence predicates.

A class is the triple ``(i, j, k) = (28 s1, 12 s2, 2 s3t)`` reduced mod
``(28, 12, 2)``.  Counts are always obtained by iterating over all classes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .invariants import InvariantError, SInvariants

MODULI = (28, 12, 2)


@dataclass(frozen=True, order=True)
class DiffeoClass:
    i: int
    j: int
    k: int

    def __post_init__(self):
        for x, n in zip((self.i, self.j, self.k), MODULI):
            if not 0 <= x < n:
                raise ValueError(f"class entries must be reduced mod {MODULI}")

    @classmethod
    def reduce(cls, i: int, j: int, k: int) -> "DiffeoClass":
        return cls(i % 28, j % 12, k % 2)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def __str__(self):
        return f"({self.i},{self.j},{self.k})"


def all_classes() -> list[DiffeoClass]:
    return [DiffeoClass(*t) for t in itertools.product(*(range(n) for n in MODULI))]


def class_of(s: SInvariants) -> DiffeoClass:
    try:
        return DiffeoClass(*s.triple)
    except ValueError as exc:
        raise InvariantError(f"denominator violation: {exc}") from None


class Admits(NamedTuple):
    spin_quotient: bool
    nonspin_quotient: bool

    @property
    def any(self) -> bool:
        return self.spin_quotient or self.nonspin_quotient


def admits_free_action(c: DiffeoClass) -> Admits:
    spin = c.k == 1 or (c.k == 0 and c.j % 4 == 0)
    nonspin = c.k == 0 and c.i % 2 == 0 and c.j % 2 == 0
    return Admits(spin, nonspin)


def ricci_status(c: DiffeoClass) -> str:
    """``known_positive``, ``open`` or ``no_action``."""
    if c.k == 1 or c.j % 4 == 0 or (c.i % 4 == 2 and c.j % 4 == 2):
        return "known_positive"
    if admits_free_action(c).any:
        return "open"
    return "no_action"


def reversed_class(c: DiffeoClass) -> DiffeoClass:
    return DiffeoClass.reduce(-c.i, -c.j, -c.k)


def sum_sphere(c: DiffeoClass, r: int) -> DiffeoClass:
    return DiffeoClass.reduce(c.i + r, c.j, c.k)


def homeo_id(c: DiffeoClass) -> tuple[int, int]:
    return (c.j, c.k)


def homotopy_id(c: DiffeoClass) -> tuple[int, int]:
    return (c.j, 0) if c.k == 0 else (c.j % 6, 1)


@dataclass(frozen=True)
class ClassAttributes:
    pi4: str
    homeo_id: tuple[int, int]
    homotopy_id: tuple[int, int]
    reversed: DiffeoClass

    def sum_sphere(self, c: DiffeoClass, r: int) -> DiffeoClass:
        return sum_sphere(c, r)


def class_attributes(c: DiffeoClass) -> ClassAttributes:
    return ClassAttributes(
        pi4="Z/2" if c.k == 0 else "0",
        homeo_id=homeo_id(c),
        homotopy_id=homotopy_id(c),
        reversed=reversed_class(c),
    )


@dataclass(frozen=True)
class CensusReport:
    counts: dict[str, int]
    classes: list[dict] = field(repr=False)

    def to_json(self) -> str:
        return json.dumps({"counts": self.counts, "classes": self.classes}, indent=2)

    def to_text(self) -> str:
        width = max(map(len, self.counts))
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in self.counts.items())


def census() -> CensusReport:
    classes = all_classes()
    rows, admitting = [], set()
    counts = dict.fromkeys(
        ["total", "admitting", "spin_quotient", "nonspin_quotient", "nonspin_exclusive",
         "ricci_known", "open"], 0)
    homeo, homeo_adm, homot, homot_adm = set(), set(), set(), set()
    for c in classes:
        adm = admits_free_action(c)
        status = ricci_status(c)
        attrs = class_attributes(c)
        counts["total"] += 1
        counts["admitting"] += adm.any
        counts["spin_quotient"] += adm.spin_quotient
        counts["nonspin_quotient"] += adm.nonspin_quotient
        counts["nonspin_exclusive"] += adm.nonspin_quotient and not adm.spin_quotient
        counts["ricci_known"] += status == "known_positive"
        counts["open"] += status == "open"
        homeo.add(attrs.homeo_id)
        homot.add(attrs.homotopy_id)
        if adm.any:
            admitting.add(c)
            homeo_adm.add(attrs.homeo_id)
            homot_adm.add(attrs.homotopy_id)
        rows.append({
            "class": list(c.triple),
            "spin_quotient": adm.spin_quotient,
            "nonspin_quotient": adm.nonspin_quotient,
            "ricci": status,
            "pi4": attrs.pi4,
            "homeo_id": list(attrs.homeo_id),
            "homotopy_id": list(attrs.homotopy_id),
            "reversed": list(attrs.reversed.triple),
        })
    orbits = {min(c, reversed_class(c)) for c in classes}
    counts["homeo_classes"] = len(homeo)
    counts["homeo_admitting"] = len(homeo_adm)
    counts["homotopy_classes"] = len(homot)
    counts["homotopy_classes_k0"] = sum(1 for h in homot if h[1] == 0)
    counts["homotopy_classes_k1"] = sum(1 for h in homot if h[1] == 1)
    counts["homotopy_admitting"] = len(homot_adm)
    counts["reversal_fixed"] = sum(1 for c in classes if reversed_class(c) == c)
    counts["unoriented"] = len(orbits)
    counts["unoriented_admitting"] = sum(1 for o in orbits if o in admitting)
    return CensusReport(counts, rows)
