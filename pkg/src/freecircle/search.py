"""Enumeration of admissible witnesses and realization of class triples.

Three families are searched:

``plumbing``        parameters ``(a1, a2, a3, lam, mu)``; spin orbit spaces.
``cp2-bundle``      parameters ``(alpha, lam, mu)``; the non-spin CP^2-bundles.
``direct-nonspin``  parameters ``(A, u)`` for the data ``(A, 1, 0, 1, u, 0)``.

The canonical order sorts by the size of the alpha part (``|a1|+|a2|+|a3|``,
``|alpha|`` or ``|A|+|u|``) and then lexicographically by the parameter tuple.
"First witness" always refers to this order, whatever the worker count.
"""

from __future__ import annotations

import heapq
from contextlib import nullcontext
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .classification import DiffeoClass, admits_free_action
from .invariants import (CharData, InvariantError, SInvariants, chardata_cp2, chardata_direct,
                         chardata_plumbing, plumbing_det, s_invariants)

FAMILIES = ("plumbing", "cp2-bundle", "direct-nonspin")

DEFAULT_PLUMBING_BOX = (500, 64)
DEFAULT_CP2_EULER = 3000
DEFAULT_DIRECT_BOX = (12, 27)
DEFAULT_NODE_BUDGET = 5_000_000


class RealizationError(Exception):
    pass


class NoFreeAction(RealizationError):
    """The class provably carries no free circle action."""


class BudgetExhausted(RealizationError):
    """The search stopped before finding a witness; nothing is proved."""


@dataclass(frozen=True)
class SearchBox:
    alpha_bound: int
    euler_bound: int
    family: str = "plumbing"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.alpha_bound < 1 or self.euler_bound < 1:
            raise ValueError("bounds must be at least 1")


@dataclass(frozen=True)
class Witness:
    family: str
    params: tuple[int, ...]
    chardata: CharData = field(compare=False)
    invariants: SInvariants = field(compare=False)

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.invariants.triple

    @property
    def key(self) -> tuple[int, ...]:
        return canonical_key(self.family, self.params)

    def revalidate(self) -> bool:
        """Recompute everything from the parameters and compare."""
        try:
            fresh = make_witness(self.family, self.params)
        except InvariantError:
            return False
        return fresh.chardata == self.chardata and fresh.invariants == self.invariants

    def row(self) -> tuple[int, ...]:
        return tuple(self.params) + self.triple


def canonical_key(family: str, params) -> tuple[int, ...]:
    params = tuple(int(p) for p in params)
    if family == "plumbing":
        return (sum(map(abs, params[:3])),) + params
    if family == "cp2-bundle":
        return (abs(params[0]),) + params
    return (abs(params[0]) + abs(params[1]),) + params


def _direct_chardata(A: int, u: int) -> CharData:
    if A % 4 != 2 or u % 2 != 1:
        raise InvariantError("direct construction needs A = 2 mod 4 and u odd")
    return chardata_direct(A, 1, 0, 1, u, 0, spin=False)


def make_witness(family: str, params) -> Witness:
    """Build a witness from parameters using the exact arithmetic path."""
    params = tuple(int(p) for p in params)
    if family == "plumbing":
        cd = chardata_plumbing(params[:3], params[3:])
    elif family == "cp2-bundle":
        cd = chardata_cp2(params[0], params[1:])
    elif family == "direct-nonspin":
        cd = _direct_chardata(*params)
    else:
        raise ValueError(f"unknown family {family!r}")
    return Witness(family, params, cd, s_invariants(cd))


# ---------------------------------------------------------------- blocks

def _split(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    n = hi - lo + 1
    if n <= 0:
        return []
    parts = max(1, min(parts, n))
    edges = [lo + (n * p) // parts for p in range(parts + 1)]
    return [(edges[p], edges[p + 1] - 1) for p in range(parts)]


def _sorted_rows(rows: np.ndarray, key_cols: list[np.ndarray]) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    return np.lexsort(tuple(reversed(key_cols)))


def _check_classes(cls: np.ndarray) -> None:
    if cls.size and (cls[:, 0].min() < 0 or cls[:, 1].min() < 0):
        raise RuntimeError("kernel produced a non-integral invariant; arithmetic fault")


def _shell_size(total: int, alpha_bound: int) -> int:
    """Number of alpha triples with ``|a1|+|a2|+|a3| = total`` in the box."""
    count = 0
    for a1 in range(-min(total, alpha_bound), min(total, alpha_bound) + 1):
        rem = total - abs(a1)
        if rem == 0:
            count += 1
            continue
        lo, hi = max(0, rem - alpha_bound), min(rem, alpha_bound)
        if lo > hi:
            continue
        count += 4 * (hi - lo + 1) - 2 * (lo == 0) - 2 * (hi == rem)
    return count


class _PlumbingShells:
    """Iterate over plumbing shells in order, each sorted canonically."""

    def __init__(self, box: SearchBox, jobs: int = 1, backend: str | None = None):
        if not _kernels.plumbing_fits(box.alpha_bound, box.euler_bound):
            raise ValueError("box too large for the int64 kernels")
        self.box = box
        self.jobs = max(1, int(jobs))
        self.kernels = _kernels.get_backend(backend)

    def _part(self, total: int, lo: int, hi: int) -> np.ndarray:
        b = self.box
        return _kernels.collect(self.kernels.plumbing_shell, total, b.alpha_bound, b.euler_bound, lo, hi)

    def shell(self, total: int, pool: ThreadPoolExecutor | None = None):
        """Return ``(rows, classes)`` of shell ``total`` in canonical order."""
        m = min(total, self.box.alpha_bound)
        parts = _split(-m, m, self.jobs)
        if pool is None or len(parts) == 1:
            chunks = [self._part(total, lo, hi) for lo, hi in parts]
        else:
            chunks = list(pool.map(lambda p: self._part(total, *p), parts))
        rows = np.concatenate(chunks) if chunks else np.empty((0, 5), dtype=np.int64)
        order = _sorted_rows(rows, [rows[:, c] for c in range(5)])
        rows = rows[order]
        cls = self.kernels.plumbing_classes(rows) if len(rows) else np.empty((0, 4), dtype=np.int64)
        _check_classes(cls)
        return rows, cls

    def __iter__(self):
        last = 3 * self.box.alpha_bound
        with ThreadPoolExecutor(self.jobs) if self.jobs > 1 else nullcontext() as pool:
            for total in range(last + 1):
                rows, cls = self.shell(total, pool)
                yield total, _shell_size(total, self.box.alpha_bound), rows, cls


def _cp2_core(box: SearchBox, jobs: int, backend: str | None) -> np.ndarray:
    """Witnesses with ``mu != 0``, in canonical order."""
    if not _kernels.cp2_fits(box.alpha_bound, box.euler_bound):
        raise ValueError("box too large for the int64 kernels")
    k = _kernels.get_backend(backend)
    E = box.euler_bound
    parts = _split(-E, E, max(1, jobs))
    run = lambda p: _kernels.collect(k.cp2_scan, box.alpha_bound, E, p[0], p[1])
    if jobs > 1 and len(parts) > 1:
        with ThreadPoolExecutor(jobs) as pool:
            chunks = list(pool.map(run, parts))
    else:
        chunks = [run(p) for p in parts]
    rows = np.concatenate(chunks) if chunks else np.empty((0, 3), dtype=np.int64)
    order = _sorted_rows(rows, [np.abs(rows[:, 0]), rows[:, 0], rows[:, 1], rows[:, 2]])
    return rows[order]


def _cp2_axis(alpha_lo: int, alpha_hi: int) -> np.ndarray:
    """The ``mu = 0`` witnesses ``(alpha, +-1, 0)`` with ``alpha_lo <= |alpha| <= alpha_hi``."""
    mags = np.arange(alpha_lo, alpha_hi + 1, dtype=np.int64)
    alphas = np.stack([-mags, mags], axis=1).reshape(-1)
    if alpha_lo == 0:
        alphas = alphas[1:]
    rows = np.empty((alphas.size * 2, 3), dtype=np.int64)
    rows[0::2, 0] = alphas
    rows[1::2, 0] = alphas
    rows[0::2, 1] = -1
    rows[1::2, 1] = 1
    rows[:, 2] = 0
    return rows


def _merge_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    rows = np.concatenate([a, b])
    order = _sorted_rows(rows, [np.abs(rows[:, 0]), rows[:, 0], rows[:, 1], rows[:, 2]])
    return rows[order]


def _direct_rows(box: SearchBox) -> np.ndarray:
    A = np.arange(-box.alpha_bound, box.alpha_bound + 1, dtype=np.int64)
    A = A[A % 4 == 2]
    u = np.arange(-box.euler_bound, box.euler_bound + 1, dtype=np.int64)
    u = u[u % 2 == 1]
    g = np.stack(np.meshgrid(A, u, indexing="ij"), axis=-1).reshape(-1, 2)
    order = _sorted_rows(g, [np.abs(g[:, 0]) + np.abs(g[:, 1]), g[:, 0], g[:, 1]])
    return g[order]


def _direct_classes(rows: np.ndarray) -> np.ndarray:
    out = np.empty((len(rows), 4), dtype=np.int64)
    for n, (A, u) in enumerate(rows):
        w = make_witness("direct-nonspin", (A, u))
        out[n, :3] = w.triple
        out[n, 3] = -1
    return out


# ---------------------------------------------------------------- public API

def enumerate_witnesses(box: SearchBox, jobs: int = 1, backend: str | None = None) -> Iterator[Witness]:
    """Yield every admissible witness in ``box`` once, in canonical order."""
    if box.family == "plumbing":
        for _, _, rows, _ in _PlumbingShells(box, jobs, backend):
            for r in rows:
                yield make_witness("plumbing", r)
    elif box.family == "cp2-bundle":
        core = _cp2_core(box, jobs, backend)
        axis = _lazy_axis(box)
        merged = heapq.merge((tuple(r) for r in core), axis,
                             key=lambda p: canonical_key("cp2-bundle", p))
        for p in merged:
            yield make_witness("cp2-bundle", p)
    else:
        for r in _direct_rows(box):
            yield make_witness("direct-nonspin", r)


def _lazy_axis(box: SearchBox) -> Iterator[tuple[int, int, int]]:
    if box.euler_bound < 1:
        return
    for mag in range(box.alpha_bound + 1):
        for a in ((0,) if mag == 0 else (-mag, mag)):
            yield (a, -1, 0)
            yield (a, 1, 0)


def naive_scan(box: SearchBox) -> list[Witness]:
    """Blind exhaustive scan over the whole box; the reference oracle for small boxes."""
    ab, E = box.alpha_bound, box.euler_bound
    rng_a, rng_e = range(-ab, ab + 1), range(-E, E + 1)
    out = []
    if box.family == "plumbing":
        for a1, a2, a3, lam, mu in itertools.product(rng_a, rng_a, rng_a, rng_e, rng_e):
            if math.gcd(lam, mu) == 1 and plumbing_det(a1, a2, a3, lam, mu) in (-1, 1):
                out.append(make_witness("plumbing", (a1, a2, a3, lam, mu)))
    elif box.family == "cp2-bundle":
        for a, lam, mu in itertools.product(rng_a, rng_e, rng_e):
            if lam % 2 and mu % 2 == 0 and math.gcd(lam, mu) == 1 and mu * mu * a - lam * lam == -1:
                out.append(make_witness("cp2-bundle", (a, lam, mu)))
    else:
        for A, u in itertools.product(rng_a, rng_e):
            if A % 4 == 2 and u % 2 == 1:
                out.append(make_witness("direct-nonspin", (A, u)))
    out.sort(key=lambda w: w.key)
    return out


@dataclass(frozen=True)
class CoverageReport:
    box: SearchBox
    hits: dict[tuple[int, int, int], Witness]
    unhit: frozenset[tuple[int, int, int]]
    nodes: int
    budget_exhausted: bool

    def to_rows(self) -> list[tuple]:
        return [t + w.params for t, w in sorted(self.hits.items())]


def _first_hits(rows: np.ndarray, cls: np.ndarray, remaining: set, family: str, found: dict) -> None:
    if not remaining or len(rows) == 0:
        return
    keys = cls[:, 0] * 1000 + cls[:, 1] * 10 + cls[:, 2]
    uniq, first = np.unique(keys, return_index=True)
    for key, idx in sorted(zip(uniq.tolist(), first.tolist()), key=lambda p: p[1]):
        t = (key // 1000, (key // 10) % 100, key % 10)
        if t in remaining:
            w = make_witness(family, rows[idx])
            if w.triple != t:
                raise RuntimeError(f"kernel class {t} disagrees with exact {w.triple} at {w.params}")
            found[t] = w
            remaining.discard(t)


def coverage(box: SearchBox, targets: Iterable, jobs: int = 1, budget: int | None = None,
             backend: str | None = None) -> CoverageReport:
    """First witness in canonical order for each target triple.

    ``budget`` caps the number of alpha triples examined (plumbing only); the
    search always stops at a shell boundary so the result does not depend on
    ``jobs``.
    """
    targets = {tuple(int(x) for x in t) for t in targets}
    remaining = set(targets)
    found: dict = {}
    nodes, exhausted = 0, False
    if not remaining:
        return CoverageReport(box, {}, frozenset(), 0, False)
    if box.family == "plumbing":
        for _, size, rows, cls in _PlumbingShells(box, jobs, backend):
            nodes += size
            _first_hits(rows, cls, remaining, "plumbing", found)
            if not remaining:
                break
            if budget is not None and nodes >= budget:
                exhausted = True
                break
    elif box.family == "cp2-bundle":
        k = _kernels.get_backend(backend)
        core = _cp2_core(box, jobs, backend)
        reach = int(np.abs(core[:, 0]).max()) if len(core) else 0
        reach = min(reach, box.alpha_bound)
        rows = _merge_rows(core, _cp2_axis(0, reach))
        nodes = len(rows)
        _first_hits(rows, k.cp2_classes(rows), remaining, "cp2-bundle", found)
        lo, step = reach + 1, 1 << 20
        while remaining and lo <= box.alpha_bound:
            hi = min(lo + step - 1, box.alpha_bound)
            rows = _cp2_axis(lo, hi)
            nodes += len(rows)
            _first_hits(rows, k.cp2_classes(rows), remaining, "cp2-bundle", found)
            lo = hi + 1
    else:
        rows = _direct_rows(box)
        nodes = len(rows)
        _first_hits(rows, _direct_classes(rows), remaining, "direct-nonspin", found)
    hits = {t: found[t] for t in sorted(found)}
    return CoverageReport(box, hits, frozenset(remaining), nodes, exhausted)


def family_for(triple) -> str:
    """The family searched by :func:`realize_target` for a class triple."""
    c = DiffeoClass.reduce(*triple)
    adm = admits_free_action(c)
    if not adm.any:
        raise NoFreeAction(f"no free circle action exists on class {c}")
    if adm.spin_quotient:
        return "plumbing"
    return "cp2-bundle" if c.i % 4 == 2 else "direct-nonspin"


def default_box(family: str) -> SearchBox:
    if family == "plumbing":
        return SearchBox(*DEFAULT_PLUMBING_BOX, "plumbing")
    if family == "cp2-bundle":
        E = DEFAULT_CP2_EULER
        return SearchBox((E * E - 1) // 4, E, "cp2-bundle")
    return SearchBox(*DEFAULT_DIRECT_BOX, "direct-nonspin")


def realize_target(triple, budget: int | None = DEFAULT_NODE_BUDGET, box: SearchBox | None = None,
                   jobs: int = 1, backend: str | None = None) -> Witness:
    """First witness realizing ``triple = (28 s1, 12 s2, 2 s3t)``.

    Raises :class:`NoFreeAction` when the class admits no free circle action
    and :class:`BudgetExhausted` when the search gave up.
    """
    c = DiffeoClass.reduce(*triple)
    family = family_for(c.triple)
    box = box or default_box(family)
    if box.family != family:
        raise ValueError(f"class {c} is searched in the {family} family, not {box.family}")
    rep = coverage(box, {c.triple}, jobs=jobs, budget=budget, backend=backend)
    if c.triple in rep.hits:
        return rep.hits[c.triple]
    why = "node budget" if rep.budget_exhausted else "search box"
    raise BudgetExhausted(f"{why} exhausted after {rep.nodes} nodes without a witness for {c}")
