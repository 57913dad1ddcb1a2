"""The ten acceptance criteria, each checked exactly (integer equality).

Every test records one ``PASS``/``FAIL`` line; ``conftest.py`` prints them at
the end of the run.  ``python tests/test_acceptance.py`` prints them directly.
"""

import random
import time
from itertools import product

import pytest

from dwmcg.cocycles import TwoCochain, coboundary, cyclic_cocycle, trivial_cocycle, verify_cocycle
from dwmcg.groups import builtin_group, make_cyclic
from dwmcg.mcg import build_generator_set
from dwmcg.monomial import check_relation, closure, is_permutation, multiply, permutation_closure_order
from dwmcg.phases import (_contract_pair, canonical_simple, contract_phase_fast, z_phase, z_phase_fast,
                          z_power_phase)
from dwmcg.planar import normal_form_phase, random_planar_graph
from dwmcg.surfaces import (SurfaceSpec, brute_force_spanning, conjugation_map, enumerate_spanning,
                            relation_value)

RESULTS = []

Z2, Z3 = make_cyclic(2), make_cyclic(3)


def record(n, name, ok, detail, t0):
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'} {name}: {detail} ({time.perf_counter() - t0:.1f}s)"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _signatures(order, max_len):
    for n in range(1, max_len + 1):
        for labels in product(range(order), repeat=n):
            for signs in product((1, -1), repeat=n):
                yield tuple(zip(labels, signs))


def test_criterion_01_cocycle_validity():
    t0 = time.perf_counter()
    bad = [(n, p) for n in range(1, 9) for p in range(n) if not verify_cocycle(cyclic_cocycle(n, p))]
    groups = [make_cyclic(4), make_cyclic(6), builtin_group("S3")]
    checked = 0
    for seed in range(100):
        for g in groups:
            if not verify_cocycle(coboundary(TwoCochain.random(g, rng=seed))):
                bad.append((g.name, seed))
            checked += 1
    record(1, "cocycle validity", not bad, f"36 cyclic + {checked} coboundaries, failures {bad}", t0)


def test_criterion_02_z_periodicity():
    t0 = time.perf_counter()
    z22 = builtin_group("Z2xZ2")
    cases = [cyclic_cocycle(2, 1), cyclic_cocycle(4, 1), cyclic_cocycle(4, 2), cyclic_cocycle(4, 3)]
    cases += [coboundary(TwoCochain.random(z22, rng=s)) for s in range(3)]
    count, bad = 0, []
    for w in cases:
        g = w.group
        for sig in _signatures(g.order, 5):
            if canonical_simple(sig, g).is_zero:
                continue
            count += 1
            if z_power_phase(w, sig, len(sig), fast=False) != 0:
                bad.append(sig)
    record(2, "z^n = id", not bad, f"{count} nonzero signatures, failures {len(bad)}", t0)


def test_criterion_03_confluence():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    ws = [cyclic_cocycle(n, p) for n in (2, 3, 4) for p in range(1, n)]
    ws.append(coboundary(TwoCochain.random(builtin_group("S3"), rng=5)))
    bad = 0
    for i in range(200):
        w = ws[i % len(ws)]
        g = random_planar_graph(w, rng, max_vertices=6)
        s1, s2 = rng.randrange(10 ** 9), rng.randrange(10 ** 9)
        if normal_form_phase(g, s1) != normal_form_phase(g, s2):
            bad += 1
    record(3, "evaluator confluence", bad == 0, f"200 graphs x 2 move orders, disagreements {bad}", t0)


UNTWISTED = [(Z2, SurfaceSpec(1)), (Z2, SurfaceSpec(2)), (builtin_group("S3"), SurfaceSpec(1)),
             (Z2, SurfaceSpec(1, (0,)))]


def test_criterion_04_untwisted_permutations():
    t0 = time.perf_counter()
    bad, n = [], 0
    for g, surface in UNTWISTED:
        for act in build_generator_set(surface, g, trivial_cocycle(g)):
            n += 1
            if not is_permutation(act.matrix):
                bad.append((g.name, surface, act.name))
    record(4, "untwisted permutation property", not bad, f"{n} generators, nonzero phases in {bad}", t0)


def test_criterion_05_spanning_counts():
    t0 = time.perf_counter()
    s3 = builtin_group("S3")
    checks = [len(enumerate_spanning(SurfaceSpec(1), Z2)) == 4]
    for g in (Z2, Z3, make_cyclic(4), builtin_group("Z2xZ2")):
        for genus in (1, 2):
            checks.append(len(enumerate_spanning(SurfaceSpec(genus), g)) == g.order ** (2 * genus))
    n_s3 = len(enumerate_spanning(SurfaceSpec(1), s3))
    checks.append(n_s3 == len(brute_force_spanning(SurfaceSpec(1), s3)))
    record(5, "spanning-set counts", all(checks), f"{sum(checks)}/{len(checks)} counts, S3 torus {n_s3}", t0)


CLOSURE_CASES = [("Z2 torus trivial", Z2, trivial_cocycle(Z2), SurfaceSpec(1)),
                 ("Z2 torus cyclic1", Z2, cyclic_cocycle(Z2, 1), SurfaceSpec(1)),
                 ("Z3 torus trivial", Z3, trivial_cocycle(Z3), SurfaceSpec(1)),
                 ("Z3 torus cyclic1", Z3, cyclic_cocycle(Z3, 1), SurfaceSpec(1)),
                 ("Z2 genus2 trivial", Z2, trivial_cocycle(Z2), SurfaceSpec(2))]


def test_criterion_06_finite_closure():
    t0 = time.perf_counter()
    ok, parts = True, []
    for name, g, w, surface in CLOSURE_CASES:
        mats = [a.matrix for a in build_generator_set(surface, g, w)]
        res = closure(mats, cap=10 ** 6)
        ok &= not res.cap_exceeded
        if not w.table.any():
            oracle = permutation_closure_order([m.perm for m in mats])
            ok &= res.order == oracle
            parts.append(f"{name} {res.order}={oracle}")
        else:
            parts.append(f"{name} {res.order}")
    record(6, "finite closure", ok, ", ".join(parts), t0)


def test_criterion_07_projective_relations():
    t0 = time.perf_counter()
    bad = []
    for g in (Z2, Z3):
        for w in (trivial_cocycle(g), cyclic_cocycle(g, 1)):
            acts = {a.name: a.matrix for a in build_generator_set(SurfaceSpec(1), g, w)}
            for lhs, rhs in (("alpha1 beta1 alpha1", "beta1 alpha1 beta1"), ("(alpha1 beta1)^6", "()")):
                if not check_relation(lhs, rhs, acts, "up-to-scalar"):
                    bad.append((g.name, w.digest()[:6], lhs))
    record(7, "braid and (ab)^6 up to scalar", not bad, f"4 configurations, failures {bad}", t0)


def test_criterion_08_equivariance():
    t0 = time.perf_counter()
    s3 = builtin_group("S3")
    s = enumerate_spanning(SurfaceSpec(1), s3)
    acts = build_generator_set(s.surface, s3, trivial_cocycle(s3), s)
    bad = [(a.name, x) for a in acts for x in range(s3.order)
           if multiply(a.matrix, conjugation_map(s, x)) != multiply(conjugation_map(s, x), a.matrix)]
    record(8, "equivariance", not bad, f"{len(acts)} generators x {s3.order} conjugations, failures {bad}", t0)


def test_criterion_09_well_defined():
    t0 = time.perf_counter()
    configs = [(g, trivial_cocycle(g), sf) for g, sf in UNTWISTED]
    configs += [(g, w, sf) for _, g, w, sf in CLOSURE_CASES]
    configs += [(g, w, SurfaceSpec(1)) for g in (Z2, Z3) for w in (trivial_cocycle(g), cyclic_cocycle(g, 1))]
    bad, n = [], 0
    for g, w, surface in configs:
        s = enumerate_spanning(surface, g)
        for act in build_generator_set(surface, g, w, s):
            n += 1
            rel = all(relation_value(g, im.loops, im.legs) == 0 for im in act.images)
            bij = sorted(act.matrix.perm) == list(range(len(s)))
            if not (rel and bij):
                bad.append((g.name, surface, act.name))
    record(9, "generator well-definedness", not bad, f"{n} generator matrices, failures {bad}", t0)


def test_criterion_10_oracle_agreement():
    t0 = time.perf_counter()
    rng = random.Random(10)
    ws = [cyclic_cocycle(n, p) for n in (2, 3, 4, 6) for p in range(1, n)]
    ws += [coboundary(TwoCochain.random(builtin_group(n), rng=s)) for n in ("S3", "Q8") for s in range(2)]
    bad = 0
    for _ in range(500):
        w = rng.choice(ws)
        g = w.group
        # z-map closed form vs word machine
        labels = [rng.randrange(g.order) for _ in range(rng.randint(1, 5))]
        labels.append(g.inv[g.prod(*labels)])
        sig = tuple((x, 1) for x in labels)
        bad += z_phase_fast(w, sig) != z_phase(w, sig)
        # contraction closed form vs word machine
        V = tuple(rng.randrange(g.order) for _ in range(rng.randint(0, 3)))
        W = tuple(rng.randrange(g.order) for _ in range(rng.randint(0, 3)))
        x = g.inv[g.prod(*V)] if V else 0
        W = W[:-1] + (g.inv[g.prod(g.inv[x], *W[:-1])],) if W else W
        bad += contract_phase_fast(w, V, x, W) != _contract_pair(w, V, x, W)
    record(10, "closed forms vs word machine", bad == 0, f"500 x 2 comparisons, mismatches {bad}", t0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
