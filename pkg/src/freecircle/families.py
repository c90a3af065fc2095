"""Infinite families of witnesses sharing one set of s-invariants.

From a single witness the constructions below produce parameters that solve
the same determinant equation and are congruent to the base modulo ``T``.
Since every characteristic number is an integer polynomial in the
parameters and the s-invariants have denominators dividing 224 and 24, the
invariants do not change along the family.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from dataclasses import dataclass, field

from .search import Witness, make_witness
from .sixfolds import cubic_discriminant, equivalence_search, system_from_cp2_bundle, system_from_plumbing

log = logging.getLogger(__name__)

DEFAULT_MODULUS = 2 * math.lcm(224, 24, 2, 6, 4, 12)
DEFAULT_EQUIVALENCE_BOUND = 3


def plumbing_equation(a1: int, a2: int, a3: int, lam: int, mu: int) -> int:
    return lam * mu * a1 * a2 - lam * (lam + mu) * a1 * a3 - mu * (lam + mu) * a2 * a3


def plumbing_branch(params) -> str:
    a1, a2, a3, lam, mu = params
    if lam == 0:
        return "alpha1-free"
    if mu == 0:
        return "alpha2-free"
    if lam + mu == 0:
        return "alpha3-free"
    if a1 == 0 and a3 == 0:
        return "alpha2-free"
    return "generic"


def cp2_branch(params) -> str:
    return "alpha-free" if params[2] == 0 else "generic"


def plumbing_member(params, modulus: int, m: int) -> tuple[int, int, int, int, int]:
    """The ``m``-th member of the plumbing family through ``params``.

    Works for any value of the determinant equation, not only +-1.
    """
    a1, a2, a3, lam, mu = (int(x) for x in params)
    T = modulus
    branch = plumbing_branch((a1, a2, a3, lam, mu))
    if branch == "alpha1-free":
        return (a1 + m * T, a2, a3, lam, mu)
    if branch == "alpha2-free":
        return (a1, a2 + m * T, a3, lam, mu)
    if branch == "alpha3-free":
        return (a1, a2, a3 + m * T, lam, mu)
    A, C = lam * a1, (lam + mu) * a3
    n = m * lam * mu * (lam + mu) * T
    return (a1 + m * mu * (lam + mu) * (A - C) * T,
            a2 + m * lam * (lam + mu) * (2 * C + (n + 1) * (A - C)) * T,
            a3 + m * lam * mu * (A - C) * T,
            lam, mu)


def cp2_member(params, modulus: int, m: int) -> tuple[int, int, int]:
    """The ``m``-th member of the CP^2-bundle family through ``(alpha, lam, mu)``."""
    a, lam, mu = (int(x) for x in params)
    T = modulus
    if mu == 0:
        return (a + m * T, lam, mu)
    return (a + (2 * lam + mu * mu * m * T) * m * T, lam + mu * mu * m * T, mu)


@dataclass(frozen=True)
class FamilySpec:
    base: Witness
    modulus: int = DEFAULT_MODULUS
    branch: str = ""

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if self.base.family == "plumbing":
            branch = plumbing_branch(self.base.params)
        elif self.base.family == "cp2-bundle":
            branch = cp2_branch(self.base.params)
        else:
            raise ValueError(f"no family construction for {self.base.family}")
        if self.branch and self.branch != branch:
            raise ValueError(f"base lies on branch {branch}, not {self.branch}")
        object.__setattr__(self, "branch", branch)
        log.info("family through %s uses the %s branch", self.base.params, branch)

    @classmethod
    def from_params(cls, family: str, params, modulus: int = DEFAULT_MODULUS) -> "FamilySpec":
        return cls(make_witness(family, params), modulus)


def family_plumbing(spec: FamilySpec, m: int) -> tuple[int, ...]:
    if spec.base.family != "plumbing":
        raise ValueError("not a plumbing family")
    return plumbing_member(spec.base.params, spec.modulus, m)


def family_cp2(spec: FamilySpec, m: int) -> tuple[int, ...]:
    if spec.base.family != "cp2-bundle":
        raise ValueError("not a CP^2-bundle family")
    return cp2_member(spec.base.params, spec.modulus, m)


def member(spec: FamilySpec, m: int) -> tuple[int, ...]:
    return family_plumbing(spec, m) if spec.base.family == "plumbing" else family_cp2(spec, m)


def base_class(family: str, params) -> tuple[int, ...]:
    """Parameters of the base 6-manifold up to the obvious symmetries."""
    if family == "plumbing":
        t = params[:3]
        return min(tuple(sorted(t)), tuple(sorted(-x for x in t)))
    return (abs(params[0]),)


def _system(family: str, params):
    if family == "plumbing":
        return system_from_plumbing(*params[:3])
    return system_from_cp2_bundle(params[0], 0)


@dataclass(frozen=True)
class FamilyReport:
    spec: FamilySpec
    members: list[Witness]
    checks: dict[str, bool]
    pairs: list[tuple[int, int, str]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "family": self.spec.base.family,
            "base": list(self.spec.base.params),
            "modulus": self.spec.modulus,
            "branch": self.spec.branch,
            "invariants": list(self.spec.base.triple),
            "members": [{"m": m, "params": [str(p) if abs(p) >= 2 ** 53 else p for p in w.params],
                         "invariants": list(w.triple)} for m, w in enumerate(self.members)],
            "checks": self.checks,
            "inequivalence": [{"m1": a, "m2": b, "status": s} for a, b, s in self.pairs],
            "certified": self.ok,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def certify_family(spec: FamilySpec, count: int, bound: int = DEFAULT_EQUIVALENCE_BOUND) -> FamilyReport:
    """Generate members ``0..count-1`` and check the family's claims.

    Inequivalence of base manifolds is certified pairwise either by the cubic
    discriminant (a proof) or by :func:`equivalence_search` failing within
    ``bound`` (only evidence).
    """
    if count < 1:
        raise ValueError("count must be positive")
    family, base = spec.base.family, spec.base
    failures: list[str] = []
    members: list[Witness] = []
    for m in range(count):
        params = member(spec, m)
        try:
            members.append(make_witness(family, params))
        except ValueError as exc:
            failures.append(f"m={m}: {exc}")
    det_ok = len(members) == count and all(w.chardata.det == base.chardata.det for w in members)
    inv_ok = det_ok and all(w.invariants == base.invariants for w in members)
    for m, w in enumerate(members):
        if w.invariants != base.invariants:
            failures.append(f"m={m}: invariants {w.triple} differ from base {base.triple}")
    cong_ok = det_ok and all((p - q) % spec.modulus == 0
                             for w in members for p, q in zip(w.params, base.params))
    classes = [base_class(family, w.params) for w in members]
    distinct = det_ok and len(set(classes)) == len(classes)
    pairs = []
    if distinct:
        systems = [_system(family, w.params) for w in members]
        for a, b in itertools.combinations(range(count), 2):
            if cubic_discriminant(systems[a]) != cubic_discriminant(systems[b]):
                status = "inequivalent (cubic discriminant)"
            elif equivalence_search(systems[a], systems[b], bound) is None:
                status = f"distinct modulo oracle bound {bound}"
            else:
                status = "equivalent"
                distinct = False
                failures.append(f"members {a} and {b} have equivalent base manifolds")
            pairs.append((a, b, status))
    checks = {"determinant": det_ok, "invariants_constant": inv_ok,
              "congruent_mod_T": cong_ok, "bases_distinct": distinct}
    return FamilyReport(spec, members, checks, pairs, failures)
