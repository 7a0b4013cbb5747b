"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``;
the summary lines are also printed at the end of every pytest session that collects this file.
"""
import random
import sys
import time
from functools import lru_cache

import pytest

from picard import cli
from picard import configurations as cfg
from picard import reference as ref
from picard import spine
from picard.cohomology import assemble, cohomology, h0_identity_check, h3_bounds
from picard.group import group_invariants
from picard.representations import Mode, permutation_rep, random_representation, standard_rep, symn_rep, trivial_rep

C = cfg.ConfigClass
RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def symn_data(n):
    rep = symn_rep(n)
    cx = assemble(rep)
    return rep, cx, cohomology(rep, cx)


def test_criterion_1_trivial_integral():
    start = time.perf_counter()
    got = str(cohomology(trivial_rep(Mode.LATTICE)))
    dt = time.perf_counter() - start
    record(1, got == "Z, 0, Z, 0" and dt < 1, f"H* = ({got}) in {dt:.2f}s")


def test_criterion_2_standard_integral():
    start = time.perf_counter()
    got = str(cohomology(standard_rep(Mode.LATTICE)))
    dt = time.perf_counter() - start
    record(2, got == "0, 0, Z^2, Z/2Z" and dt < 5, f"H* = ({got}) in {dt:.2f}s")


def test_criterion_3_symn_table():
    start = time.perf_counter()
    bad = []
    for n in range(1, 21):
        got = symn_data(n)[2].dims
        if got != ref.SYMN_TABLE[n]:
            bad.append(f"n={n} computed {got} tabulated {ref.SYMN_TABLE[n]}")
    dt = time.perf_counter() - start
    detail = f"20 degrees in {dt:.0f}s; " + ("all match" if not bad else "; ".join(bad))
    record(3, not bad and dt < 600, detail)


def test_criterion_4_stabilizers():
    start = time.perf_counter()
    orders, bad = [], []
    for tag in cfg.STRONGLY_ADMISSIBLE:
        inv = group_invariants(cfg.stabilizer(cfg.REPRESENTATIVES[tag]))
        orders.append(inv.order)
        if inv.order != ref.STABILIZER_ORDERS[tag] or not ref.structure_matches(tag, inv):
            bad.append(tag.value)
    dt = time.perf_counter() - start
    record(4, not bad and dt < 60, f"orders {orders} in {dt:.1f}s" + (f"; mismatched {bad}" if bad else ""))


def test_criterion_5_classification():
    start = time.perf_counter()
    census = cfg.order_two_census()
    closure = cfg.extension_closure()
    two_bounded = set(cfg.STRONGLY_ADMISSIBLE) - {C.J8}
    # classes reachable from the order-2 census by adding one 2-bounded line at a time
    seen = set(census)
    frontier = list(census)
    while frontier:
        for t in closure[frontier.pop()]:
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    a = set(census) == {C.J2_1, C.J2_2}
    b = seen == two_bounded and not closure[C.J5]
    c = cfg.enumerate_extensions(cfg.REPRESENTATIVES[C.J8], 4) == []
    dt = time.perf_counter() - start
    record(5, a and b and c and dt < 60,
           f"(a) order-2 classes {sorted(t.value for t in census)}; (b) closure {sorted(t.value for t in seen)}; "
           f"(c) J8 supersets none={c}; {dt:.1f}s")


def test_criterion_6_incidence():
    bad, notes = [], []
    for (r, c), text in ref.TEXT_COUNTS.items():
        got = cli._incidence_item((r.value, c.value))[1]
        if got != text:
            bad.append(f"{r.value}/{c.value} computed {got} text {text}")
        table = ref.INCIDENCE_TABLE.get((r, c))
        if table is not None and table != got:
            notes.append(f"{r.value}/{c.value} table {table} vs computed {got}")
    detail = f"{len(ref.TEXT_COUNTS)} corroborated entries" + (f"; mismatched {bad}" if bad else " match")
    if notes:
        detail += "; table discrepancy: " + ", ".join(notes)
    record(6, not bad, detail)


def test_criterion_7_strong_admissibility():
    start = time.perf_counter()
    margins, bad = [], []
    for tag in cfg.STRONGLY_ADMISSIBLE:
        rep = spine.admissibility_report(tag)
        gap = rep.value - rep.best_outside
        margins.append(gap)
        if not (rep.ok and gap >= 1e-6):
            bad.append(tag.value)
    dt = time.perf_counter() - start
    record(7, not bad and dt < 60, f"min margin {min(margins):.4f} over 9 constants in {dt:.1f}s"
           + (f"; failed {bad}" if bad else ""))


def test_criterion_8_properties():
    failures = []
    shipped = [trivial_rep(Mode.LATTICE), trivial_rep(Mode.FIELD), standard_rep(Mode.LATTICE), standard_rep(Mode.FIELD),
               permutation_rep()]
    rng = random.Random(2024)
    for rep in shipped + [random_representation(rng) for _ in range(50)]:
        cx = assemble(rep)
        if not (cx.composition_vanishes("ambient") and cx.composition_vanishes("matrix")):
            failures.append(f"D.D != 0 for {rep.name}")
    for rep in shipped:
        if not h0_identity_check(rep):
            failures.append(f"h0 identity fails for {rep.name}/{rep.mode.value}")
    for n in range(1, 21):
        rep, cx, res = symn_data(n)
        if not cx.composition_vanishes("ambient"):
            failures.append(f"D.D != 0 for symn:{n}")
        if not h0_identity_check(rep, cx):
            failures.append(f"h0 identity fails for symn:{n}")
        if not h3_bounds(rep, res).chain_holds:
            failures.append(f"h3 chain fails for symn:{n}")
    lower, sharp = 5 ** -0.25, 2 ** -0.5
    counts = []
    for k, tag in enumerate((C.J2_1, C.J2_2)):
        samples = spine.sample_cell_values(tag, 500, random.Random(2024 + k))
        counts.append(len(samples))
        for z, v in samples:
            if not lower < v <= 1 + spine.TIE_TOL or not sharp - spine.TIE_TOL <= v:
                failures.append(f"{tag.value} sample value {v} at {z.to_json()}")
                break
    record(8, not failures, f"55 reps D.D=0, h0 and h3 chain for symn 1..20, {sum(counts)} spine samples"
           + (f"; failures {failures}" if failures else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
