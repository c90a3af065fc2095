"""Acceptance gates, one pass/fail line per criterion.

Each test records its verdict through the ``record`` fixture; the lines are
repeated in the terminal summary.  Timings use wall clock on this machine.
"""

import io
import itertools
import random
import time

import numpy as np
import pytest

from conftest import CP2_ROWS, PLUMBING_ROWS, cp2_pool, plumbing_pool
from freecircle.classification import census
from freecircle.cli import main
from freecircle.families import (FamilySpec, certify_family, cp2_member, plumbing_branch, plumbing_equation,
                                 plumbing_member)
from freecircle.invariants import (chardata_cp2, chardata_plumbing, s_invariants, value_set_check)
from freecircle.rational import ext_gcd
from freecircle.search import SearchBox, coverage, enumerate_witnesses, naive_scan, realize_target
from freecircle.sixfolds import (check_realizability, equivalence_search, pull_back, system_from_cp2_bundle,
                                 system_from_plumbing)

CASES = 200
ACCEPTANCE_BUDGET = 20_000_000


def _timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


def _admissible(rng):
    """Seeded admissible inputs: pools plus witnesses drawn from small boxes."""
    pl = plumbing_pool() + [w.params for w in enumerate_witnesses(SearchBox(6, 9, "plumbing"))]
    cp = cp2_pool() + [w.params for w in enumerate_witnesses(SearchBox(10 ** 5, 400, "cp2-bundle"))
                       if w.params[2] != 0]
    return rng.sample(pl, CASES), rng.sample(cp, CASES)


@pytest.fixture(scope="module")
def samples():
    return _admissible(random.Random(2024))


def test_criterion_1_golden_tables(record):
    out = io.StringIO()
    rc, dt = _timed(lambda: main(["verify-tables"], out))
    text = out.getvalue()
    ok = (rc == 0 and "252/252" in text.splitlines()[0] and "252/252" in text.splitlines()[1]
          and "63/63" in text.splitlines()[2] and dt < 2.0)
    record("1", ok, f"{' | '.join(text.splitlines())}; {dt:.2f}s (limit 2s)")
    assert ok


def test_criterion_2_census(record):
    rep, dt = _timed(census)
    c = rep.counts
    want = {"total": 672, "admitting": 462, "spin_quotient": 420, "nonspin_quotient": 84,
            "nonspin_exclusive": 42, "ricci_known": 441, "open": 21, "homeo_classes": 24,
            "homeo_admitting": 18, "homotopy_classes": 18, "homotopy_classes_k0": 12,
            "homotopy_classes_k1": 6, "homotopy_admitting": 12, "unoriented": 340,
            "unoriented_admitting": 235}
    bad = {k: c[k] for k in want if c[k] != want[k]}
    ok = not bad and dt < 0.1
    record("2", ok, f"{len(want) - len(bad)}/{len(want)} counts exact; {dt * 1000:.1f}ms (limit 100ms)")
    assert ok


def test_criterion_3_worked_examples(record):
    def run():
        zero = all(s_invariants(chardata_cp2(a, (1, 0))).triple == (0, 0, 0) for a in range(-10, 10))
        odd = [a for a in range(-19, 20, 2)]
        half = all(s_invariants(chardata_plumbing((-1, -1, a), (1, -1))).triple == (0, 0, 1) for a in odd)
        canon = ext_gcd(1, -1)
        return zero, half, (canon.s, canon.t) == (0, -1), len(odd)
    (zero, half, canon, n), dt = _timed(run)
    ok = zero and half and canon and dt < 0.1
    record("3", ok, f"S2xS5 over 20 alphas: {zero}; SU(3) value (0,0,1/2) over {n} odd alphas: {half}; "
                    f"{dt * 1000:.1f}ms (limit 100ms)")
    assert ok


@pytest.mark.slow
def test_criterion_4_coverage(record):
    cp2_targets = ({(i, j, 0) for i in range(0, 28, 2) for j in (0, 4, 8)}
                   | {(i, j, 0) for i in range(2, 28, 4) for j in (2, 6, 10)})
    k0 = {(i, j, 0) for i in range(28) for j in (0, 4, 8)}
    k1 = {(i, j, 1) for i in range(28) for j in range(12)}
    E = 3000
    cp2, dt_a = _timed(lambda: coverage(SearchBox((E * E - 1) // 4, E, "cp2-bundle"), cp2_targets, jobs=8))
    pl, dt_b = _timed(lambda: coverage(SearchBox(500, 64, "plumbing"), k0 | k1, jobs=8,
                                       budget=ACCEPTANCE_BUDGET))
    hit_a = len(cp2.hits)
    hit_k0 = sum(t in pl.hits for t in k0)
    hit_k1 = sum(t in pl.hits for t in k1)
    sound = all(w.revalidate() for w in itertools.chain(cp2.hits.values(), pl.hits.values()))
    ok = hit_a == 63 and hit_k0 == 84 and hit_k1 >= 150 and sound and dt_a + dt_b < 60
    record("4", ok, f"(a) cp2 lambda<=3000: {hit_a}/63 in {dt_a:.1f}s; (b) plumbing (500,64): "
                    f"k=0 {hit_k0}/84, k=1 {hit_k1}/336 (need 150), {pl.nodes} alpha-triples in {dt_b:.1f}s; "
                    f"total {dt_a + dt_b:.1f}s (limit 60s, 8 workers)")
    assert ok


def test_criterion_5_direct_gap_family(record):
    targets = [(i, j, 0) for i in range(0, 28, 4) for j in (2, 6, 10)]

    def run():
        return [realize_target(t) for t in targets]
    ws, dt = _timed(run)
    ok = (len(targets) == 21 and dt < 1.0
          and all(w.family == "direct-nonspin" and w.triple == t and w.revalidate()
                  and w.chardata.astuple()[1:4] == (1, 0, 1) and w.chardata.v == 0
                  for w, t in zip(ws, targets)))
    record("5", ok, f"{len(ws)}/21 targets realized by (A, 1, 0, 1, u, 0); {dt * 1000:.0f}ms (limit 1s)")
    assert ok


def _shift(lam, mu, m):
    bp = ext_gcd(lam, mu)
    return bp.s + m * mu, bp.t - m * lam


def test_criterion_6_1_bezout_plumbing(record, samples):
    rng = random.Random(61)
    n = bad = 0
    for p in samples[0]:
        m = rng.randint(-5, 5)
        n += 1
        bad += s_invariants(chardata_plumbing(p[:3], p[3:], _shift(p[3], p[4], m))) != \
            s_invariants(chardata_plumbing(p[:3], p[3:]))
    record("6.1", bad == 0 and n >= CASES, f"Bezout invariance, plumbing: {n - bad}/{n} cases")
    assert bad == 0


def test_criterion_6_2_bezout_cp2(record, samples):
    rng = random.Random(62)
    n = bad = 0
    first = None
    for p in samples[1]:
        m = rng.randint(-5, 5)
        n += 1
        a = s_invariants(chardata_cp2(p[0], p[1:], _shift(p[1], p[2], m)))
        b = s_invariants(chardata_cp2(p[0], p[1:]))
        if a != b:
            bad += 1
            first = first or (p, m, b.triple, a.triple)
    detail = f"Bezout invariance, cp2 (closed-form v): {n - bad}/{n} cases"
    if first:
        detail += f"; first counterexample {first[0]} m={first[1]}: {first[2]} -> {first[3]}"
    record("6.2", bad == 0 and n >= CASES, detail)
    assert bad == 0


def test_criterion_6_3_basis_swap(record, samples):
    bad = sum(s_invariants(chardata_plumbing(p[:3], p[3:]))
              != s_invariants(chardata_plumbing((p[1], p[0], p[2]), (p[4], p[3]))) for p in samples[0])
    n = len(samples[0])
    record("6.3", bad == 0 and n >= CASES, f"basis swap: {n - bad}/{n} cases")
    assert bad == 0


def test_criterion_6_4_value_set(record, samples):
    bad = n = 0
    for p in samples[0]:
        cd = chardata_plumbing(p[:3], p[3:])
        bad += not value_set_check(s_invariants(cd), True, cd.det)
        n += 1
    for p in samples[1]:
        bad += not value_set_check(s_invariants(chardata_cp2(p[0], p[1:])), False, -1)
        n += 1
    record("6.4", bad == 0 and n >= CASES, f"value sets: {n - bad}/{n} cases")
    assert bad == 0


def test_criterion_6_5_denominators(record, samples):
    bad = n = 0
    cds = [chardata_plumbing(p[:3], p[3:]) for p in samples[0]] + [chardata_cp2(p[0], p[1:]) for p in samples[1]]
    for cd in cds:
        s = s_invariants(cd)
        bad += bool(28 % s.s1.den or 12 % s.s2.den or 2 % s.s3t.den)
        n += 1
    record("6.5", bad == 0 and n >= CASES, f"denominators (28, 12, 2): {n - bad}/{n} cases")
    assert bad == 0


def test_criterion_6_6_realizability(record):
    rng = random.Random(66)
    big = 10 ** 12
    tallies = {}

    def tally(name, system):
        ok, n = tallies.get(name, (0, 0))
        tallies[name] = (ok + check_realizability(system), n + 1)
    for _ in range(CASES):
        tally("plumbing", system_from_plumbing(*(rng.randint(-big, big) for _ in range(3))))
        a = rng.randint(-big, big)
        for beta in (0, 1, -1):
            tally(f"cp2 beta={beta}", system_from_cp2_bundle(a, beta))
    ok = all(k == n for k, n in tallies.values())
    detail = "; ".join(f"{name}: {k}/{n}" for name, (k, n) in tallies.items())
    record("6.6", ok, f"Wall/Jupp congruence: {detail}")
    assert ok


def test_criterion_6_7_family_identities(record):
    rng = random.Random(67)
    n = bad = inj_n = inj_bad = 0
    while n < CASES:
        p = tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(3)) + (rng.randint(-99, 99), rng.randint(-99, 99))
        T, m = rng.choice([1, 2, 24, 1344, 2688]), rng.randint(-20, 20)
        q = plumbing_member(p, T, m)
        bad += plumbing_equation(*q) != plumbing_equation(*p) or any((x - y) % T for x, y in zip(p, q))
        c = (rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6), rng.randint(-99, 99))
        r = cp2_member(c, T, m)
        bad += (c[2] ** 2 * r[0] - r[1] ** 2 != c[2] ** 2 * c[0] - c[1] ** 2) or any((x - y) % T for x, y in zip(c, r))
        n += 1
        if plumbing_branch(p) == "generic":
            inj_n += 1
            inj_bad += len({plumbing_member(p, T, k) for k in range(21)}) != 21
        if c[2] != 0:
            inj_n += 1
            inj_bad += len({cp2_member(c, T, k) for k in range(21)}) != 21
    ok = bad == 0 and inj_bad == 0 and inj_n >= CASES
    record("6.7", ok, f"family identities for arbitrary S: {2 * n - bad}/{2 * n}; "
                      f"injectivity m in 0..20: {inj_n - inj_bad}/{inj_n}")
    assert ok


def test_criterion_6_8_certify(record):
    rng = random.Random(68)
    plumbing_rows = rng.sample(PLUMBING_ROWS, 5)
    cp2_rows = rng.sample(CP2_ROWS, 5)
    results = [certify_family(FamilySpec.from_params("plumbing", r[:5]), 10).ok for r in plumbing_rows]
    results += [certify_family(FamilySpec.from_params("cp2-bundle", r[:3]), 10).ok for r in cp2_rows]
    ok = all(results)
    record("6.8", ok, f"certify_family count=10: {sum(results[:5])}/5 plumbing rows, {sum(results[5:])}/5 cp2 rows")
    assert ok


def test_criterion_7_small_box_oracle(record):
    def run():
        mismatches, boxes = [], 0
        for family in ("plumbing", "cp2-bundle", "direct-nonspin"):
            for ab, eb in itertools.product(range(1, 4), repeat=2):
                box = SearchBox(ab, eb, family)
                boxes += 1
                want = {w.params for w in naive_scan(box)}
                got = [w.params for w in enumerate_witnesses(box, jobs=4)]
                if set(got) != want or len(got) != len(want):
                    mismatches.append(box)
        return mismatches, boxes
    (mismatches, boxes), dt = _timed(run)
    ok = not mismatches and dt < 5
    record("7", ok, f"{boxes - len(mismatches)}/{boxes} boxes identical to naive scan; {dt:.2f}s (limit 5s)")
    assert ok


def test_criterion_8_equivalence_oracle(record):
    def run():
        found = []
        for alpha in range(4):
            a, b = system_from_cp2_bundle(alpha, 1), system_from_plumbing(-1, -1, alpha)
            phi = equivalence_search(a, b, 5)
            found.append(phi is not None and pull_back(b, phi) == a
                         and abs(round(np.linalg.det(phi.astype(float)))) == 1)
        return found
    found, dt = _timed(run)
    ok = all(found) and dt < 5
    record("8", ok, f"basis change found for alpha in 0..3: {sum(found)}/4; {dt:.2f}s (limit 5s)")
    assert ok
