"""End-to-end acceptance suite: one PASS/FAIL line per criterion.

Run on its own with ``python3 -m pytest tests/test_acceptance.py -s`` to see
the lines as they are produced; they are also repeated in the terminal
summary of any pytest run that includes this file.
"""

import math
import random
import time
from fractions import Fraction

import pytest

import oracles
from cobstab import base as B
from cobstab.errors import BadKappa, ParallelDirections
from cobstab.hn import check_local_finiteness, hn_of_spec, verify_axioms, window_sample
from cobstab.k0 import (check_assumptions, euler_radical, k0_presentation, omega_lag_presentation,
                        sample_classes, theta_map)
from cobstab.lift import (base_charge_of_expr, central_charge_lifted, cone_decomposition,
                          lifted_k0_of_expr, lifted_phase, restrict, validate_kappa)
from cobstab.phase import Charge
from cobstab.sampling import random_generator, random_spec

RESULTS = []
KAPPA = 4


def report(n, name, ok, detail):
    line = f"criterion {n:2d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    RESULTS.append(line)
    return ok


@pytest.fixture(scope="module")
def axiom_sample():
    rng = random.Random(20240603)
    gens = [random_generator(rng) for _ in range(1000)]
    specs = [random_spec(rng) for _ in range(200)]
    return gens, specs


@pytest.fixture(scope="module")
def normal_forms():
    """Criterion 4 data: 500 specs, their filtrations, traces and oracle answers."""
    rng = random.Random(4242)
    out = []
    t0 = time.perf_counter()
    for _ in range(500):
        spec = random_spec(rng, max_ends=6, max_height=8, size=4)
        filt, trace = hn_of_spec(spec, KAPPA)
        expected = oracles.oracle_hn(spec, KAPPA)
        out.append((spec, filt, trace, expected))
    return out, time.perf_counter() - t0


def test_criterion_01_charge_exactness():
    O, K = B.Atom(B.STRUCTURE_SHEAF), B.Atom(B.SKYSCRAPER)
    rng = random.Random(1)
    objs = [B.BaseObject([B.Atom(B.Brick(r, d), j, s)])
            for r, d, j, s in [(1, 0, 1, 0), (0, 1, 2, 3), (2, -3, 1, -1), (3, 1, 2, 5)]]
    objs += [B.BaseObject([B.Atom(B.Brick(1, rng.randint(-5, 5)), 1, rng.randint(-4, 4))])
             for _ in range(8)]
    timings = []
    for _ in range(5):  # best of five, so scheduler noise does not decide the verdict
        t0 = time.perf_counter()
        ok = B.central_charge(O) == Charge(0, 1) and B.central_charge(K) == Charge(-1, 0)
        ok = ok and all(B.central_charge(x.shifted(1)) == -B.central_charge(x) for x in objs)
        timings.append(time.perf_counter() - t0)
    elapsed = min(timings)
    assert report(1, "charge exactness", ok and elapsed < 1e-3, f"{elapsed * 1e3:.3f} ms")


def test_criterion_02_hom_table():
    t0 = time.perf_counter()
    slopes = [(0, 1)] + [(r, d) for r in range(1, 6) for d in range(-5, 6) if math.gcd(r, d) == 1]
    bad, pairs = [], 0
    for x in slopes:
        for y in slopes:
            if x == y:
                continue
            a, b = B.Atom(B.Brick(*x)), B.Atom(B.Brick(*y))
            lo, hi = (a, b) if B.atom_phase(a) < B.atom_phase(b) else (b, a)
            want = abs(x[0] * y[1] - y[0] * x[1])
            pairs += 1
            if B.hom_dim(lo, hi, 0) != want or B.hom_dim(hi, lo, 0) != 0:
                bad.append((x, y))
    K = B.Atom(B.SKYSCRAPER)
    for r, d in slopes[1:]:
        if B.hom_dim(B.Atom(B.Brick(r, d)), K, 0) != r:
            bad.append(((r, d), "skyscraper"))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1
    assert report(2, "hom-dimension table", ok, f"{pairs} ordered pairs, {len(bad)} bad, {elapsed:.3f} s")


def test_criterion_03_axioms(axiom_sample):
    gens, specs = axiom_sample
    t0 = time.perf_counter()
    rep = verify_axioms(gens + specs, validate_kappa(KAPPA))
    rejected = []
    for k in (2, 3, 5):
        try:
            validate_kappa(k)
        except BadKappa:
            rejected.append(k)
    elapsed = time.perf_counter() - t0
    fails = {k: len(rep[k]) for k in ("A1", "A2", "A3", "A4", "gap")}
    ok = rep["ok"] and rejected == [2, 3, 5] and elapsed < 30
    assert report(3, "axiom suite", ok, f"failures {fails}, rejected kappa {rejected}, {elapsed:.1f} s")


def _mine(filt):
    return [(oracles.mpmath.nstr(oracles.angle_value(p), 30), tuple(sorted(g)))
            for p, g in filt.factors]


def test_criterion_04_normalize_vs_oracle(normal_forms):
    data, elapsed = normal_forms
    bad = sum(1 for _, filt, _, expected in data if _mine(filt) != expected)
    steps = sum(len(tr.steps) for _, _, tr, _ in data)
    ok = bad == 0 and elapsed < 60
    assert report(4, "HN normalization vs oracle", ok,
                  f"{len(data)} specs, {bad} mismatches, {steps} rewrite steps, {elapsed:.1f} s")


def test_criterion_05_conservation(normal_forms):
    data, _ = normal_forms
    bad, states = 0, 0
    for spec, filt, trace, _ in data:
        e = cone_decomposition(spec)
        k0, z = lifted_k0_of_expr(e), central_charge_lifted(e)
        for st in trace.states():
            states += 1
            if st.k0() != k0 or st.charge() != z:
                bad += 1
        if filt.k0() != k0 or filt.charge() != z:
            bad += 1
    assert report(5, "conservation", bad == 0, f"{states} states checked, {bad} violations")


def test_criterion_06_bottom_charge():
    rng = random.Random(66)
    bad = 0
    for _ in range(100):
        spec = random_spec(rng, bottom=False)
        if not central_charge_lifted(cone_decomposition(spec)).is_zero():
            bad += 1
    for _ in range(100):
        spec = random_spec(rng, bottom=True)
        e = cone_decomposition(spec)
        z1 = B.central_charge(spec.bottom().obj)
        if central_charge_lifted(e) != -z1 or base_charge_of_expr(restrict(e, 1, 0)) != z1:
            bad += 1
    assert report(6, "bottom-end charge", bad == 0, f"200 specs, {bad} bad")


def test_criterion_07_kappa_gap(normal_forms):
    data, _ = normal_forms
    checks = [g for _, _, tr, _ in data for g in tr.gaps.values()]
    bad = [g for g in checks if not g.ok]
    assert report(7, "kappa gap", not bad, f"{len(checks)} nonzero cross-height pairs, {len(bad)} bad")


@pytest.fixture(scope="module")
def theta_data():
    t0 = time.perf_counter()
    out = {}
    for N in (2, 3, 5):
        sat = [k0_presentation(N, b).invariants() for b in (3, 4)]
        h = theta_map(omega_lag_presentation(N, 4), k0_presentation(N, 4))
        rep = check_assumptions(N, 4)
        broken = check_assumptions(N, 4, drop_omega=("local_system",))
        out[N] = (sat, h, rep, broken)
    return out, time.perf_counter() - t0


def test_criterion_08_theta(theta_data):
    data, elapsed = theta_data
    bad = []
    for N, (sat, h, rep, broken) in data.items():
        target = [0, 0, N, N]
        if sat[0] != sat[1] or sat[1] != target:
            bad.append((N, "invariants", sat))
        if not h.iso or h.src_invariants != target:
            bad.append((N, "theta"))
        if not rep["ok"]:
            bad.append((N, "assumptions"))
        if broken["S3"]["ok"] or not broken["S3"]["witness"]:
            bad.append((N, "S3 witness"))
    witness = data[2][3]["S3"]["witness"]
    ok = not bad and elapsed < 120
    assert report(8, "theta at desk scale", ok,
                  f"N in (2, 3, 5), problems {bad}, S3 witness {witness}, {elapsed:.1f} s")


def test_criterion_09_euler_radical():
    bad = []
    for N in (2, 3, 5):
        rep = euler_radical(sample_classes(N, 4, 40, seed=N))
        if not rep["equal"] or rep["quotient_rank"] != 2:
            bad.append(N)
    assert report(9, "Euler radical", not bad, f"bad moduli {bad}")


def test_criterion_10_degree_formula():
    rng = random.Random(10)
    done, bad = 0, 0
    while done < 1000:
        d1 = (rng.randint(-9, 9), rng.randint(-9, 9))
        d2 = (rng.randint(-9, 9), rng.randint(-9, 9))
        if d1 == (0, 0) or d2 == (0, 0) or math.gcd(*d1) != 1 or math.gcd(*d2) != 1:
            continue
        g1 = B.Grading(rng.randint(-5, 5), d1)
        g2 = B.Grading(rng.randint(-5, 5), d2)
        try:
            d12 = B.degree_at_intersection(g1, g2)
        except ParallelDirections:
            continue
        done += 1
        d21 = B.degree_at_intersection(g2, g1)
        up1 = B.degree_at_intersection(B.Grading(g1.winding + 1, d1), g2)
        up2 = B.degree_at_intersection(g1, B.Grading(g2.winding + 1, d2))
        if d12 + d21 != 1 or up1 != d12 - 1 or up2 != d12 + 1:
            bad += 1
    assert report(10, "degree formula", bad == 0, f"{done} transverse pairs, {bad} bad")


def test_criterion_11_local_finiteness(axiom_sample):
    gens, _ = axiom_sample
    t0 = time.perf_counter()
    ws = window_sample(gens, KAPPA)
    centers = sorted({lifted_phase(g, KAPPA) for g in gens})
    bad, widest = 0, 0
    for c in centers:
        rep = check_local_finiteness(c, Fraction(1, 4), ws, KAPPA)
        widest = max(widest, rep["in_window"])
        if not rep["ok"] or not rep["exact_window"] or rep["in_window"] == 0 or not rep["basis"]:
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 10
    assert report(11, "local finiteness", ok,
                  f"{len(centers)} windows, {bad} bad, up to {widest} objects per window, {elapsed:.2f} s")
