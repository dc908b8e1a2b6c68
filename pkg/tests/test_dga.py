from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from masseysg import _kernels
from masseysg.dga import (
    SWEEP, BiDegree, HomogeneityError, ParamSet, bimodule_duality_check, build_Q, build_R,
    d_squared_violations, expected_homology, homology_dims, homotopy_violations, hopf_checks,
)
from masseysg.exactlin import prime_field


def P(a, b, h, l):
    return ParamSet(a, b, h, l)


def test_paramset_validation():
    with pytest.raises(ValueError):
        ParamSet(1, 1, 3, 3)
    with pytest.raises(ValueError):
        ParamSet(0, -1, 3, 1)
    assert ParamSet.parse("3,2,5,7") == P(3, 2, 5, 7)
    assert P(1, 1, 3, 2).swap() == P(-1, -1, 2, 3)


def test_generator_degrees():
    Q = build_Q(P(3, 2, 5, 7))
    assert Q.gen_degree(1) == BiDegree(5, 7)
    assert Q.gen_degree(0) == BiDegree(4, 5)


def test_h3_relations():
    Q = build_Q(P(1, 1, 3, 2))
    assert Q.normalize((2, 2)) == {}
    assert Q.normalize((1, 2)) == {(2, ()): -1, (0, (2, 1)): -1}
    assert Q.diff({(0, (2,)): 1}) == {(0, (1, 1)): 1}


def test_h4_relations():
    Q = build_Q(P(1, 1, 4, 3))
    s = {}
    for raw in [(1, 3), (2, 2), (3, 1)]:
        for k, c in Q.normalize(raw).items():
            s[k] = s.get(k, 0) + c
    assert {k: c for k, c in s.items() if c} == {(3, ()): -1}
    t = {}
    for raw in [(2, 3), (3, 2)]:
        for k, c in Q.normalize(raw).items():
            t[k] = t.get(k, 0) + c
    assert not {k: c for k, c in t.items() if c}
    assert Q.normalize((3, 3)) == {}


def test_h2_is_formal():
    Q = build_Q(P(2, 1, 2, 3))
    assert Q.normalize((1, 1)) == {(3, ()): -1}
    assert Q.diff({(0, (1,)): 1}) == {}


def test_relation_list():
    for p in SWEEP:
        for i, lhs, rhs in build_Q(p).relations():
            assert lhs == rhs, (p, i)


def test_tau_is_central():
    Q = build_Q(P(1, 1, 4, 3))
    assert Q.normalize((0, 1)) == Q.normalize((1, 0)) == {(1, (1,)): 1}


def test_diff_rejects_mixed_degrees():
    Q = build_Q(P(1, 1, 3, 2))
    with pytest.raises(HomogeneityError):
        Q.diff({(0, (1,)): 1, (0, (2,)): 1})


def test_diff_h4_xi1xi2():
    Q = build_Q(P(1, 1, 4, 3))
    d = Q.diff({(0, (1, 2)): 1})
    assert d == {(0, (1, 1, 1)): -1}
    assert Q.diff(d) == {}


def test_delta_examples():
    Q = build_Q(P(1, 1, 4, 3))
    assert Q.delta({(0, (1, 1)): 1}) == {(0, (2,)): 1}
    assert Q.delta({(0, (2, 1)): 1}) == {}
    assert Q.delta({(5, ()): 1}) == {}


def _elements(Q, max_wt):
    words = [w for n in range(max_wt + 1) for w in Q.words_of_weight(n)]
    mono = st.tuples(st.integers(0, 2), st.sampled_from(words))
    return st.dictionaries(mono, st.integers(-3, 3), max_size=3)


@pytest.mark.parametrize("p", [P(1, 1, 3, 2), P(1, 1, 4, 3), P(3, 2, 5, 7), P(6, 5, 6, 7)])
def test_associativity_random(p):
    Q = build_Q(p)

    @settings(max_examples=40, deadline=None)
    @given(_elements(Q, 2 * p.h), _elements(Q, 2 * p.h), _elements(Q, 2 * p.h))
    def check(x, y, z):
        assert Q.mul(Q.mul(x, y), z) == Q.mul(x, Q.mul(y, z))

    check()


@pytest.mark.parametrize("p", [P(1, 1, 4, 3), P(6, 5, 6, 7)])
def test_normalize_idempotent_and_leibniz(p):
    Q = build_Q(p)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(0, p.h - 1), max_size=6), st.lists(st.integers(0, p.h - 1), max_size=6))
    def check(r1, r2):
        x, y = Q.normalize(tuple(r1)), Q.normalize(tuple(r2))
        for mono in x:
            assert Q.is_standard(mono[1])
        assert Q.mul(x, {(0, ()): 1}) == x
        if x and y:
            # Leibniz on the normal forms: d(xy) = dx y + (-1)^|x| x dy
            sign = -1 if len(r1) - r1.count(0) & 1 else 1
            lhs = Q.diff(Q.mul(x, y)) if Q.mul(x, y) else {}
            rhs = Q.mul(Q.diff(x), y)
            for k, c in Q.mul(x, Q.diff(y)).items():
                rhs[k] = rhs.get(k, 0) + sign * c
            assert lhs == {k: c for k, c in rhs.items() if c}

    check()


@pytest.mark.parametrize("p", SWEEP)
def test_d_squared_and_homotopy_python(p):
    Q = build_Q(p)
    monos = Q.monomials(2 * p.h * p.l)
    assert d_squared_violations(Q, monos) == []
    assert homotopy_violations(Q, monos) == []


@pytest.mark.parametrize("p", SWEEP)
def test_kernel_agrees_with_python(p):
    Q = build_Q(p)
    max_wt = min(2 * p.h, 10)
    arrays = _kernels.enumerate_words(p.h, max_wt)
    for wt in range(max_wt + 1):
        got = sorted(_kernels.decode_word(int(c), p.h) for c in arrays[wt])
        assert got == sorted(Q.words_of_weight(wt))
        assert _kernels.d_squared_sweep(arrays[wt], p.h) == (0, -1)
        assert _kernels.homotopy_sweep(arrays[wt], p.h) == (0, -1)


def test_kernel_encoding_roundtrip():
    for w in [(1,), (3, 1, 2), (5, 4, 4, 1)]:
        assert _kernels.decode_word(_kernels.encode_word(w, 6), 6) == w
    assert _kernels.word_lengths(np.array([0, 1, 7, 13]), 6) == [0, 1, 2]


def test_kernel_negative_control():
    arr = _kernels.enumerate_words(4, 8)[8]
    bad, first = _kernels.d_squared_sweep(arr, 4, 1)
    assert bad > 0 and first >= 0
    assert _kernels.homotopy_sweep(arr, 4, 1)[0] > 0


def test_python_negative_control():
    # a wrong delta must break the homotopy identity
    Q = build_Q(P(1, 1, 4, 3))

    class Broken:
        def __getattr__(self, name):
            return getattr(Q, name)

        def delta(self, e):
            return {}

    assert homotopy_violations(Broken(), Q.monomials(12))


@pytest.mark.parametrize("p", SWEEP)
def test_homology_matches_expected(p):
    W = 2 * p.h * p.l
    got = {k: v for k, v in homology_dims(build_Q(p), W).items() if v}
    assert got == expected_homology(p, W)
    assert got[BiDegree(0, 0)] == 1


def test_homology_h3_explicit():
    p = P(1, 1, 3, 2)
    got = homology_dims(build_Q(p), 12)
    for deg, dim in got.items():
        ok = any(deg == (2 * m, 3 * m) or deg == (2 * m + 1, 3 * m + 2) for m in range(5))
        assert dim == (1 if ok else 0), deg


def test_homology_contraction_route():
    p = P(3, 2, 5, 7)
    report = {}
    got = {k: v for k, v in homology_dims(build_Q(p), 105, max_exact=500, report=report).items() if v}
    assert got == expected_homology(p, 105)
    assert any(r[0] == "contraction" for r in report.values())


def test_R_homology_is_exterior():
    R = build_R(1, 6)
    got = {k: v for k, v in homology_dims(R, 6).items() if v}
    assert got == {BiDegree(0, 0): 1, BiDegree(1, 1): 1}


def test_R_examples():
    R = build_R(1, 6)
    assert R.diff({(2,): 1}) == {(1, 1): 1}
    assert R.diff({(3,): 1}) == {(1, 2): 1, (2, 1): 1}
    assert R.diff({(1,): 1}) == {}
    with pytest.raises(ValueError):
        build_R(1, 1)


def test_R_weight_height_and_mu():
    R = build_R(2, 7)
    for w in R.words():
        for w2 in R.diff({w: 1}):
            assert R.weight(w2) == R.weight(w) and R.height(w2) == R.height(w) + 1
        assert R.diff(R.diff({w: 1})) == {}
    mu = R.mu(5)
    assert all(max(w) <= 4 for w in mu)
    assert R.diff(mu) == {}
    assert homotopy_violations(R, R.words()) == []


def test_comultiply_examples():
    Q = build_Q(P(1, 1, 3, 2))
    one = (0, ())
    x1 = (0, (1,))
    assert Q.comultiply({x1: 1}) == {(x1, one): 1, (one, x1): 1}
    x11 = (0, (1, 1))
    assert Q.comultiply({x11: 1}) == {(x11, one): 1, (one, x11): 1}
    sq = Q.tensor_mul(Q.comultiply({x1: 1}), Q.comultiply({x1: 1}))
    assert sq == Q.comultiply({x11: 1})
    assert Q.antipode({(2, ()): 1}) == {(2, ()): 1}
    assert Q.antipode({x1: 1}) == {x1: -1}


@pytest.mark.parametrize("p", SWEEP)
def test_hopf_over_fp(p):
    # every l in the sweep is prime, so Delta is well defined over F_l
    r = hopf_checks(build_Q(p), min(2 * p.h * p.l, 40), prime_field(p.l))
    assert r["ok"], r


def test_hopf_multiplicativity_fails_over_rationals():
    # tau^l is not primitive in characteristic zero
    r = hopf_checks(build_Q(P(1, 1, 3, 2)), 12)
    assert r["d_delta"] == [] and r["antipode"] == [] and r["cocommutative"] == []
    assert r["multiplicative"] and not r["ok"]


def test_bimodule_duality_h2_passes():
    r = bimodule_duality_check(P(2, 1, 2, 3), 12)
    assert r["ok"] and r["checked"] > 0


def test_bimodule_duality_stated_map_not_linear():
    # phi(xi_1 xi_2) = phi(-tau^l - xi_2 xi_1) = -tau^l xi_1*, but xi_1 . phi(xi_2) = 0
    r = bimodule_duality_check(P(1, 1, 3, 2), 12)
    assert r["homology_bijective"]
    assert r["failures"] and all(f["sign_independent"] for f in r["failures"])
    assert {f["kind"] for f in r["failures"]} <= {"left", "right"}
    assert any(f["monomial"] == (2,) and f["generator"] == (0, (1,)) for f in r["failures"])
