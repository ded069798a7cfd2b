"""Acceptance criteria 1-9, each timed against its budget.

Every criterion records one PASS/FAIL line; conftest prints them at the end
of the run (they also go to stdout under ``pytest -s``).
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from equires.cochain import subdivide, subdivide_space
from equires.errors import LocalizationObstruction
from equires.groups import torus
from equires.resolution import BUILDERS, Borel, Rep, build_free_action, build_trivial_action, validate_resolution
from equires.theories import (
    ab_pushforward,
    assemble,
    chern_rank,
    chern_triangle_check,
    delocalized_cohomology,
    equivariant_cohomology,
    k_theory,
)
from equires.cochain import relative_les

import data_gen
from conftest import SEED
from spaces import betti_oracle, les_chains, random_simplices, s3, simplicial_complex, two_strata, z2

RESULTS = []


@contextmanager
def criterion(n, title, budget=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if ok and budget is not None and dt >= budget:
            ok = False
            title += f" (over budget {budget}s)"
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  [{dt:.2f}s]"
        RESULTS.append(line)
        print(line)
    if budget is not None:
        assert dt < budget, f"criterion {n} took {dt:.2f}s, budget {budget}s"


def sphere():
    return BUILDERS["appendix-sphere"]()


def appendix_dims(s):
    hg = equivariant_cohomology(s, 6)
    hdl = delocalized_cohomology(s, 2)
    return hg.dims, hdl.dims


def check_appendix(s):
    hg, hdl = appendix_dims(s)
    assert hg[0] == 1 and all(hg[q] == 0 for q in (1, 3, 5))
    assert all(hg[2 * k] == 2 for k in (1, 2, 3))
    assert hdl[1] == 0
    K = k_theory(s, 2)
    assert K.dims[0] == 9 and set(K.invariant_factors) == {1}
    assert chern_triangle_check(s, 6, 2).ok


def test_criterion_1_appendix():
    with criterion(1, "appendix sphere: H_G, H_dl odd, K0 rank 9 torsion-free, Chern triangle", 1.0):
        check_appendix(sphere())


GROUPS = {"Z2": z2, "S3": s3, "T1": lambda: torus(1, "S1")}


def complexes():
    rng = random.Random(SEED)
    return [random_simplices(rng) for _ in range(10)]


def convolution(g, b, D):
    inv = lambda j: 1 if (g.rank == 1 or j == 0) else 0
    return tuple(sum(inv(j) * (b[q - 2 * j] if q - 2 * j < len(b) else 0) for j in range(q // 2 + 1)) for q in range(D + 1))


def test_criterion_2_trivial_action():
    D = 6
    sims = complexes()
    oracle = [betti_oracle(sim) for sim in sims]
    with criterion(2, "trivial actions: H_G is the convolution of invariants and Betti numbers", 5.0):
        for sim, b in zip(sims, oracle):
            for gname, g in GROUPS.items():
                G = g()
                s = build_trivial_action(G, simplicial_complex(sim))
                assert equivariant_cohomology(s, D).dims == convolution(G, b, D), (sim, gname)


def test_criterion_3_free_action():
    D = 4
    sims = complexes()
    oracle = [betti_oracle(sim) for sim in sims]
    with criterion(3, "free actions: H_G equals the Betti numbers of the quotient", 5.0):
        for sim, b in zip(sims, oracle):
            for gname, g in GROUPS.items():
                s = build_free_action(g(), simplicial_complex(sim))
                want = tuple(b[q] if q < len(b) else 0 for q in range(D + 1))
                assert equivariant_cohomology(s, D).dims == want, (sim, gname)


def test_criterion_4_mobius():
    with criterion(4, "Mobius: H_G 1,1,0,0,1,1 and H_dl(W=2) = (3, 3)", 1.0):
        s = BUILDERS["mobius"]()
        assert equivariant_cohomology(s, 5).dims == (1, 1, 0, 0, 1, 1)
        assert delocalized_cohomology(s, 2).dims == (3, 3)


def test_criterion_5_rank_identity():
    with criterion(5, "rank identity: K0 rank = rank Ch = dim H_dl even, W = 1, 2, 3"):
        for name in ("appendix-sphere", "appendix-sphere-z2", "trivial-point"):
            s = BUILDERS[name]()
            for W in (1, 2, 3):
                ch, even = chern_rank(s, W)
                assert k_theory(s, W).dims[0] == ch == even, (name, W)


def test_criterion_6_long_exact_sequences():
    with criterion(6, "long exact sequences for every upward-closed chain (sphere + 5 fuzzed spaces)"):
        rng = random.Random(SEED)
        spaces = [sphere()] + [two_strata(rng, i) for i in range(5)]
        checked = 0
        for s in spaces:
            assert validate_resolution(s).ok, s.name
            for coeff in (Borel(0), Borel(1), Borel(2), Rep(1), Rep(2)):
                x = assemble(s, coeff)
                for B, b in les_chains(list(x.names), x.order):
                    rep = relative_les(x, B, b)
                    assert rep, f"{s.name} {coeff.tag} {sorted(B)}+{b}\n{rep}"
                    checked += 1
        assert checked > 0


def test_criterion_7_subdivision():
    with criterion(7, "one subdivision leaves the dimensions of criteria 1-4 unchanged"):
        s = sphere()
        t = subdivide_space(s)
        assert appendix_dims(t) == appendix_dims(s)
        assert k_theory(t, 2).dims == k_theory(s, 2).dims
        m = BUILDERS["mobius"]()
        tm = subdivide_space(m)
        assert equivariant_cohomology(tm, 5).dims == equivariant_cohomology(m, 5).dims
        assert delocalized_cohomology(tm, 2).dims == delocalized_cohomology(m, 2).dims
        for sim in complexes():
            c = simplicial_complex(sim)
            sc = subdivide(c)
            for g in GROUPS.values():
                G = g()
                a = equivariant_cohomology(build_trivial_action(G, c), 6).dims
                assert equivariant_cohomology(build_trivial_action(G, sc), 6).dims == a
                a = equivariant_cohomology(build_free_action(G, c), 4).dims
                assert equivariant_cohomology(build_free_action(G, sc), 4).dims == a


def test_criterion_8_pushforward():
    with criterion(8, "push-forward: (1,1),(1,-1) -> 0; f_N - f_S = c x -> c/w; obstruction raised"):
        assert ab_pushforward([(1, 1), (1, -1)], 4).to_poly() == {}
        for w in (1, 2, -3):
            for c in (1, -2, 5):
                for c0 in (0, 1, 7):
                    out = ab_pushforward([([c0, c], w), ([c0], -w)], 4).to_poly()
                    assert out == {(0,): Fraction(c, w)}
        with pytest.raises(LocalizationObstruction):
            ab_pushforward([(1, 1), (2, -1)], 4)


EXPECTED_CELLS = {"boundary-squared": {"f"}, "triangle": {"v1"}, "equal-dimension": {"n"}}
EXPECTED_CODES = {"boundary-squared": "boundary-squared", "triangle": "ifs-triangle", "equal-dimension": "ifs-equal-base-dimension"}


def test_criterion_9_validation_negatives():
    from equires.cli import load_space

    with criterion(9, "every shipped corruption fixture is caught with its cell named"):
        assert set(EXPECTED_CELLS) == set(data_gen.FIXTURES)
        for name in data_gen.FIXTURES:
            rep = validate_resolution(load_space(data_gen.DATA / "fixtures" / f"{name}.json"))
            assert not rep.ok
            hits = [i for i in rep.issues if i.code == EXPECTED_CODES[name]]
            assert hits, name
            assert EXPECTED_CELLS[name] <= {c for i in hits for c in i.cells}, name
