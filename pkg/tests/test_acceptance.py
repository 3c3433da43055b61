"""Acceptance criteria, one test each, at the stated tolerances (all exact)."""

from __future__ import annotations

import json
import logging
import os
import random
import time

from jointseries.canonical import parse_json, rat_equal
from jointseries.cli import main
from jointseries.multisection import phi_poly
from jointseries.oracle import dims, omega_count, truncated_omega
from jointseries.ring import RatFunc, ZPoly, bag_sum, expand_factors, reduce_bag, series_prefix
from jointseries.springer import (
    KINDS,
    closed_form_simple,
    partial_fractions,
    poincare_series,
    shifted_genfun,
)
from published_tables import COVARIANTS, INVARIANTS, fixture_value, parse_poly

PAIRS_5 = [(a, b) for a in range(1, 6) for b in range(a, 6)]
PAIRS_8 = [(a, b) for a in range(1, 9) for b in range(a, 9)]


def _table_check(kind: str, table: dict) -> tuple[list, list, list]:
    matched, errata, wrong = [], [], []
    for pair in sorted(table):
        value = poincare_series(pair, kind).value
        if rat_equal(value, fixture_value(kind, pair)):
            matched.append(pair)
            continue
        # a fixture disagreeing with both the computation and the oracle is a printing error
        fixture_ok = series_prefix(fixture_value(kind, pair), 40) == dims(pair, 40, kind)
        computed_ok = series_prefix(value, 40) == dims(pair, 40, kind)
        (errata if computed_ok and not fixture_ok else wrong).append(pair)
    return matched, errata, wrong


def _numerator_over(value: RatFunc, factors: dict) -> ZPoly:
    scaled = value * RatFunc(expand_factors(factors))
    assert scaled.den == ZPoly.const(1)
    return scaled.num


def test_criterion_1_invariant_tables(criterion):
    t0 = time.perf_counter()
    matched, errata, wrong = _table_check("invariants", INVARIANTS)
    elapsed = time.perf_counter() - t0
    criterion(f"{len(matched)}/15 tables equal, errata={errata}, wrong={wrong}, {elapsed:.2f}s")
    assert len(INVARIANTS) == 15
    assert not wrong
    assert len(matched) + len(errata) == 15
    pi25 = _numerator_over(poincare_series((2, 5), "invariants").value, INVARIANTS[(2, 5)][1])
    assert [pi25[e] for e in (24, 22, 20, 18, 17, 16)] == [1, 1, 1, 1, 2, 3]
    assert elapsed < 10


def test_criterion_2_covariant_tables(criterion):
    t0 = time.perf_counter()
    matched, errata, wrong = _table_check("covariants", COVARIANTS)
    pc45 = _numerator_over(poincare_series((4, 5), "covariants").value, COVARIANTS[(4, 5)][1])
    pc55 = _numerator_over(poincare_series((5, 5), "covariants").value, COVARIANTS[(5, 5)][1])
    # the one pair without a printed table is held to both oracles instead
    missing = [p for p in PAIRS_5 if p not in COVARIANTS]
    oracle_only = all(
        series_prefix(poincare_series(p, "covariants").value, 40) == dims(p, 40, "covariants") for p in missing
    )
    elapsed = time.perf_counter() - t0
    criterion(
        f"{len(matched)}/{len(COVARIANTS)} printed tables equal, no printed table for {missing} "
        f"(oracle-checked: {oracle_only}), errata={errata}, wrong={wrong}, {elapsed:.2f}s"
    )
    assert not wrong
    assert len(matched) + len(errata) == len(COVARIANTS)
    assert pc45[19] == pc45[18] == 4909
    assert pc55[22] == pc55[20] == 19791 and pc55[21] == 19578
    assert oracle_only
    assert elapsed < 10


def test_criterion_3_worked_example(criterion):
    terms = {(t.e, t.order): t.coeff for t in partial_fractions(shifted_genfun((1, 3)))}
    om = lambda k: ZPoly.const(1) - ZPoly.monomial(k)  # noqa: E731
    a1 = RatFunc(parse_poly("3z^6 + z^4 - z^2"), om(4) ** 2 * om(2) ** 3)
    b1 = RatFunc(parse_poly("z^2"), om(2) ** 3 * om(4))
    c0 = RatFunc(1, om(2) ** 2 * om(4) ** 2 * om(6))
    got = {"A_1": terms[(2, 1)] == a1, "B_1": terms[(2, 2)] == b1, "C_0": terms[(0, 1)] == c0}
    note = ", ".join(f"{k} {'equal' if v else 'differs'}" for k, v in got.items())
    if not got["B_1"]:
        note += f" (computed B_1 = {terms[(2, 2)]}; printed value has the opposite sign)"
    criterion(note)
    assert got["A_1"], "A_1"
    assert got["C_0"], "C_0"
    assert got["B_1"], (
        "B_1 printed as +z^2/((1-z^2)^3(1-z^4)); the decomposition forces -z^2/(...), "
        "which is also what the printed next step -(5z^4+4z^2+3)z^2/... requires"
    )


def test_criterion_4_dual_oracle(criterion):
    t0 = time.perf_counter()
    bad_series, bad_omega = [], []
    for pair in PAIRS_8:
        for kind in KINDS:
            if series_prefix(poincare_series(pair, kind).value, 30) != dims(pair, 30, kind):
                bad_series.append((pair, kind))
        table = {(w.n, w.i): w.value for w in truncated_omega(pair, 30)}
        d2 = max(pair)
        for n in range(31):
            if any(table.get((n, i), 0) != omega_count(pair, n, i) for i in range(-n * d2, n * d2 + 1)):
                bad_omega.append((pair, n))
    elapsed = time.perf_counter() - t0
    criterion(f"{len(PAIRS_8)} pairs x 2 kinds x n<=30, series mismatches={bad_series}, omega mismatches={bad_omega[:5]}, {elapsed:.1f}s")
    assert not bad_series and not bad_omega
    assert elapsed < 120


def test_criterion_5_closed_forms(criterion):
    checked_a = checked_b = 0
    bad, case_two = [], []
    for d2 in range(2, 8):
        for d1 in range(1, d2):
            if (d2 - d1) % 2 == 0:
                continue
            res = {(t.e, t.order): t.coeff for t in partial_fractions(shifted_genfun((d1, d2)))}
            for k in range(d1 + 1):
                checked_a += 1
                if closed_form_simple((d1, d2), "A", k) != res[(d1 + d2 - 2 * k, 1)]:
                    bad.append(("A", d1, d2, k))
            for k in range(d2 + 1):
                if 2 * k < d2 - d1:
                    checked_b += 1
                    if closed_form_simple((d1, d2), "B", k) != res[(2 * k, 1)]:
                        bad.append(("B", d1, d2, k))
                elif closed_form_simple((d1, d2), "B", k) != res[(2 * k, 1)]:
                    case_two.append((d1, d2, k))
    criterion(
        f"family A {checked_a} residues, family B first case {checked_b}, mismatches={bad}; "
        f"second-case B formula differs from the residue at {len(case_two)} (d1,d2,k) points (reported)"
    )
    assert not bad


def test_criterion_6_table_to_20(criterion, tmp_path, caplog):
    out = tmp_path / "table"
    jobs = max(1, os.cpu_count() or 1)
    caplog.set_level(logging.INFO, logger="jointseries")
    t0 = time.perf_counter()
    status = main(["table", "--max", "20", "--out", str(out), "--jobs", str(jobs)])
    elapsed = time.perf_counter() - t0
    files = sorted(out.glob("*.json"))
    bad = []
    for path in files:
        r = parse_json(path.read_text())
        if series_prefix(r.value, 10) != dims(r.pair, 10, r.kind) or list(r.series) != dims(r.pair, 10, r.kind):
            bad.append(path.name)
    timed = [rec for rec in caplog.records if " in " in rec.getMessage() and rec.getMessage().endswith(("s ", "s"))]
    criterion(f"exit {status}, {len(files)} files, prefix failures={bad}, {len(timed)} timing lines, {elapsed:.1f}s with {jobs} job(s)")
    assert status == 0
    assert len(files) == 420 and not bad
    assert len(timed) >= 420
    assert elapsed < 30 * 60


def _reconstructs(pair) -> bool:
    f = shifted_genfun(pair)
    terms = partial_fractions(f)
    for s in range(sum(f.mult.values()) + 1):
        parts = [t.bag.scale(1 if t.order == 1 else s + 1, t.e * s) for t in terms]
        if reduce_bag(bag_sum(parts)) != RatFunc(f.t_coefficient(s)):
            return False
    return True


def test_criterion_7_property_suites(criterion):
    rng = random.Random(20261016)
    failures = []
    for _ in range(300):
        n = rng.randint(1, 6)
        G = ZPoly(rng.randint(-9, 9) for _ in range(rng.randint(0, 15)))
        H = ZPoly(rng.randint(-9, 9) for _ in range(rng.randint(0, 6)))
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        if phi_poly(n, G * H.compose_power(n)) != phi_poly(n, G) * H:
            failures.append(("homomorphism", n))
        if phi_poly(n, G * a + H * b) != phi_poly(n, G) * a + phi_poly(n, H) * b:
            failures.append(("linearity", n))
    for pair in PAIRS_8:
        if not _reconstructs(pair):
            failures.append(("reconstruction", pair))
    for d1 in range(1, 11):
        for d2 in range(1, 11):
            inv = poincare_series((d1, d2), "invariants").value
            cov = poincare_series((d1, d2), "covariants").value
            if inv != poincare_series((d2, d1), "invariants").value or cov != poincare_series((d2, d1), "covariants").value:
                failures.append(("symmetry", d1, d2))
            si, sc = series_prefix(inv, 40), series_prefix(cov, 40)
            if not all(isinstance(x, int) and x >= 0 for x in si + sc):
                failures.append(("nonnegative integers", d1, d2))
            if si[1] != 0 or sc[1] != 2:
                failures.append(("degree one", d1, d2))
            if any(c < i for c, i in zip(sc, si)):
                failures.append(("dominance", d1, d2))
    criterion(f"homomorphism/linearity 300 draws, reconstruction {len(PAIRS_8)} pairs, series checks 100 ordered pairs; failures={failures[:5]}")
    assert not failures
