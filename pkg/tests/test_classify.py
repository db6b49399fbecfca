import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dgh_waves import (
    ModelParams,
    NoPole,
    TravelingWaveProblem,
    WaveKind,
    classify,
    classify_dgh,
    classify_kdv,
    classify_roots,
    composite_compatible,
    make_problem,
    problem_from_roots,
    sign_oracle,
    stumpon_constant,
    sweep,
)

from oracles import brute_force_waves, random_root_problem

CH = ModelParams(1.0, 0.0, 0.0)


def _kdv(gamma):
    return ModelParams(0.0, 0.0, gamma)


@pytest.mark.parametrize("params,c,A,B,kind,case,interval", [
    (CH, 3.0, 0.0, 0.0, WaveKind.PeakonDecay, "Thm2(iv)", (0.0, 3.0)),
    (_kdv(1.0), 1.0, 0.0, 0.0, WaveKind.SmoothDecayDown, "Thm1(ii)", (0.0, 1.0)),
    (CH, 1.0, 1.75, 0.5, WaveKind.CusponDecay, "Thm2(vi)", (-0.5, 1.0)),
    (_kdv(1.0), 0.0, 1.0, 0.0, WaveKind.SmoothPeriodic, "Thm1(i)", (0.0, 1.0)),
    # -phi (phi - 1)**2 with gamma < 0
    (_kdv(-1.0), 2.0, -1.0, 0.0, WaveKind.SmoothDecayUp, "Thm1(iv)", (0.0, 1.0)),
    (CH, 3.0, -2.0, 0.0, WaveKind.SmoothPeriodic, "Thm2(i)", (1.0, 2.0)),
    # mirror of the cuspon: roots {1/2 (double), -2}, pole -1
    (CH, -1.0, 1.75, -0.5, WaveKind.AntiCusponDecay, "Thm2(vi')", (-1.0, 0.5)),
])
def test_classify_examples(params, c, A, B, kind, case, interval):
    wc = classify(make_problem(params, c, A, B))
    assert wc.kind is kind
    assert wc.theorem_case == case
    assert wc.interval == pytest.approx(interval, abs=1e-12)


def test_periodic_peakon_from_roots():
    wc = classify(problem_from_roots(CH, 3.0, 1.0, 3.0))
    assert (wc.kind, wc.theorem_case) == (WaveKind.PeriodicPeakon, "Thm2(iii)")
    assert wc.z0 == pytest.approx(-1.0)


def test_single_real_root_is_unbounded(ch):
    assert classify(make_problem(ch, 0.0, 0.0, -1.0)).kind is WaveKind.NoBoundedWave


def test_sign_incompatible_ordering_is_unbounded():
    # m < z0 < M for a KdV problem with gamma > 0
    wc = classify_roots(_kdv(1.0), 1.5, -1.0, 2.0)
    assert wc.z0 == 0.5
    assert wc.kind is WaveKind.NoBoundedWave


def test_specialised_entry_points(kdv, cnoidal_problem, peakon_problem):
    assert classify_kdv(cnoidal_problem).kind is WaveKind.SmoothPeriodic
    assert classify_dgh(peakon_problem).kind is WaveKind.PeakonDecay


_MIRROR_KDV = {"Thm1(i)": "Thm1(iii)", "Thm1(ii)": "Thm1(iv)"}
_MIRROR_KDV.update({v: k for k, v in _MIRROR_KDV.items()})


def _mirror_case(case):
    if case in _MIRROR_KDV:
        return _MIRROR_KDV[case]
    if case.endswith("')"):
        return case[:-2] + ")"
    if case.startswith("Thm2"):
        return case[:-1] + "')"
    return case


def _mirror(p):
    prm = p.params
    return TravelingWaveProblem(ModelParams(prm.alpha, -prm.c0, -prm.gamma), -p.c, p.A, -p.B)


def test_mirror_symmetry(rng):
    seen = set()
    for i in range(3000):
        kw, _ = random_root_problem(rng, pole_at_root=(i % 4 == 0))
        p = TravelingWaveProblem(ModelParams(kw["alpha"], kw["c0"], kw["gamma"]), kw["c"], kw["A"], kw["B"])
        a, b = classify(p), classify(_mirror(p))
        assert b.theorem_case == _mirror_case(a.theorem_case)
        if a.interval is not None:
            assert b.interval == pytest.approx((-a.interval[1], -a.interval[0]), abs=1e-9)
        seen.add(a.theorem_case)
    # the random family reaches every periodic case on both sides
    for case in ("Thm2(i)", "Thm2(iii)", "Thm2(v)", "Thm2(i')", "Thm2(iii')", "Thm2(v')", "Thm1(i)", "Thm1(iii)"):
        assert case in seen


def test_mirror_symmetry_on_decay_cases():
    for c, A, B in [(3.0, 0.0, 0.0), (1.0, 1.75, 0.5)]:
        a = classify(make_problem(CH, c, A, B))
        b = classify(_mirror(make_problem(CH, c, A, B)))
        assert b.theorem_case == _mirror_case(a.theorem_case)


def test_role_assignments_are_exclusive(rng):
    for _ in range(3000):
        kw, roots = random_root_problem(rng, pole_at_root=bool(rng.integers(2)))
        prm = ModelParams(kw["alpha"], kw["c0"], kw["gamma"])
        r1, r2, r3 = (v for v, _ in roots)
        hits = [wc for wc in (classify_roots(prm, kw["c"], r2, r3), classify_roots(prm, kw["c"], r1, r2))
                if wc.nontrivial]
        assert len(hits) <= 1


def test_intervals_pass_the_sign_oracle(rng):
    for _ in range(1000):
        kw, _ = random_root_problem(rng)
        p = TravelingWaveProblem(ModelParams(kw["alpha"], kw["c0"], kw["gamma"]), kw["c"], kw["A"], kw["B"])
        wc = classify(p)
        if wc.nontrivial:
            assert sign_oracle(p, *wc.interval, 256)


def test_agrees_with_brute_force(rng):
    for i in range(2000):
        kw, roots = random_root_problem(rng, pole_at_root=(i % 5 == 0))
        p = TravelingWaveProblem(ModelParams(kw["alpha"], kw["c0"], kw["gamma"]), kw["c"], kw["A"], kw["B"])
        wc = classify(p)
        waves = brute_force_waves(kw["alpha"], kw["c0"], kw["gamma"], kw["c"], roots)
        if not waves:
            assert wc.kind is WaveKind.NoBoundedWave
        else:
            assert len(waves) == 1
            kind, lo, hi = waves[0]
            assert wc.kind.value == kind
            assert wc.interval == pytest.approx((lo, hi), abs=1e-8)


@settings(max_examples=200, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_classification_is_total(c0, c, A, B):
    wc = classify(TravelingWaveProblem(ModelParams(1.0, c0, 0.3), c, A, B))
    assert isinstance(wc.kind, WaveKind)
    if wc.nontrivial:
        lo, hi = wc.interval
        assert lo < hi


def test_stumpon_constant_examples():
    assert stumpon_constant(CH, 3.0) == 9.0
    assert stumpon_constant(ModelParams(1.0, 2.5, 0.0), 2.5) == pytest.approx(3 * 2.5 ** 2)
    assert stumpon_constant(ModelParams(1.0, 0.0, -1.0), 1.0) == 0.0
    with pytest.raises(NoPole):
        stumpon_constant(_kdv(1.0), 1.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.2, 3), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_stumpon_constant_makes_pole_critical(alpha, gamma, c0, c):
    prm = ModelParams(alpha, c0, gamma)
    ct = c + gamma / alpha ** 2
    A = stumpon_constant(prm, c)
    dP = -3 * ct ** 2 + 2 * (c - c0) * ct + A
    assert abs(dP) <= 1e-9 * max(1.0, ct * ct, abs(c - c0) * abs(ct))


def test_composite_compatible_examples(cuspon_problem, ch):
    cusp = classify(cuspon_problem)
    peak = classify(make_problem(ch, 1.0, 0.0, 0.0))
    assert composite_compatible([cuspon_problem, cuspon_problem], [cusp, cusp])
    assert not composite_compatible([cuspon_problem, make_problem(ch, 1.0, 0.0, 0.0)], [cusp, peak])
    p3 = make_problem(ch, 3.0, 0.0, 0.0)
    assert composite_compatible([p3], [classify(p3)])
    assert not composite_compatible([], [])


def test_sweep_examples():
    pd = sweep(CH, 3.0, "mM", ((-1.0, 4.0, 6), (-1.0, 4.0, 6)))
    i, j = list(pd.x).index(0.0), list(pd.y).index(3.0)
    assert pd.kinds[i, j] is WaveKind.PeakonDecay
    assert pd.cases[i, j] == "Thm2(iv)"
    for k in range(6):
        assert pd.kinds[k, k] is WaveKind.Constant
    for a in range(6):
        for b in range(a):
            assert pd.kinds[a, b] is WaveKind.NoBoundedWave
    pd = sweep(CH, 3.0, "mM", ((1.0, 2.0, 2), (1.0, 2.0, 2)))
    assert pd.kinds[0, 1] is WaveKind.SmoothPeriodic
    assert len(list(pd.rows())) == 4


def test_sweep_matches_scalar_classifier(rng):
    prm = ModelParams(1.3, 0.4, -0.7)
    pd = sweep(prm, 1.1, "AB", ((-3.0, 3.0, 13), (-3.0, 3.0, 11)))
    for a, b, kind, case in pd.rows():
        wc = classify(TravelingWaveProblem(prm, 1.1, a, b))
        assert (wc.kind, wc.theorem_case) == (kind, case)


@pytest.mark.parametrize("spec,axes", [
    (((0.0, 0.0, 3), (0.0, 1.0, 3)), "mM"),
    (((0.0, 1.0, 0), (0.0, 1.0, 3)), "mM"),
    (((0.0, math.inf, 3), (0.0, 1.0, 3)), "mM"),
    (((0.0, 1.0, 3), (0.0, 1.0, 3)), "xy"),
])
def test_sweep_rejects_bad_grids(spec, axes):
    with pytest.raises(ValueError):
        sweep(CH, 3.0, axes, spec)


def test_sign_oracle_examples(peakon_problem):
    assert sign_oracle(peakon_problem, 0.0, 3.0, 64)
    assert not sign_oracle(make_problem(CH, 3.0, -2.0, 0.0), 0.0, 1.0, 64)
    with pytest.raises(ValueError):
        sign_oracle(peakon_problem, 1.0, 1.0, 64)
