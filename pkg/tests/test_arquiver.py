from __future__ import annotations

from collections import Counter

import pytest

from masseysg.arquiver import (
    HomMatrix, IntervalObject, ar_translate, build_bar_quiver, build_stable_quiver, check_duality, db_hom,
    graded_end_dims, hom_from, hom_matrix, mesh_hom, oracle_isomorphism, orbit_oracle,
    path_vanishing, sigma_orbits, sorted_spectrum, to_dict, to_dot, wrap_map,
)
from masseysg.dga import SWEEP, ParamSet
from masseysg.extcalc import end_report


def P(a, b, h, l):
    return ParamSet(a, b, h, l)


@pytest.fixture(scope="module")
def homs():
    return {p: (build_stable_quiver(p), hom_matrix(build_stable_quiver(p))) for p in SWEEP}


@pytest.mark.parametrize("p", SWEEP)
def test_counts_and_orbits(p):
    q = build_stable_quiver(p)
    assert len(q.vertices) == abs(p.b) * (p.h - 1)
    assert len(q.arrows) == 2 * (p.h - 2) * abs(p.b)
    orbits = sigma_orbits(q)
    assert len(orbits) == p.h // 2
    lengths = sorted(len(o) for o in orbits)
    want = [2 * abs(p.b)] * (p.h // 2)
    if p.h % 2 == 0:
        want[0] = abs(p.b)
    assert lengths == sorted(want)


def test_examples():
    q = build_stable_quiver(P(6, 5, 6, 7))
    assert len(q.vertices) == 25
    coords = q.cylinder_coords()
    assert {r for r, _ in coords} == set(range(1, 6)) and {k for _, k in coords} == set(range(5))
    assert len(build_stable_quiver(P(2, 1, 2, 3)).vertices) == 1
    q = build_stable_quiver(P(1, 1, 4, 3))
    assert len(q.vertices) == 3
    assert sorted(len(o) for o in sigma_orbits(q)) == [1, 2]


@pytest.mark.parametrize("p", SWEEP)
def test_permutations_and_periodicity(p):
    q = build_stable_quiver(p)
    assert sorted(q.sigma.values()) == q.vertices
    assert sorted(q.translate.values()) == q.vertices
    for v in q.vertices:
        assert q.shift(v, 2 * p.b) == v
        assert q.translate[v] == q.shift(v, -2 * p.a)
    # the arrow set is T-stable
    arrows = Counter(q.arrows)
    assert Counter((q.translate[s], q.translate[t]) for s, t in q.arrows) == arrows


@pytest.mark.parametrize("p", SWEEP)
def test_cylinder_coordinates_and_reflection(p):
    q = build_stable_quiver(p)
    coords = q.cylinder_coords()
    assert sorted(coords.values()) == q.vertices  # ZA_{h-1}/T^{|b|} is the whole quiver
    where = {v: rc for rc, v in coords.items()}
    for (r, k), v in coords.items():
        # Sigma^{|b|} is the reflection r <-> h - r when |b| is odd; for even |b|
        # it keeps the parity of j and so rotates the cylinder instead
        assert where[q.shift(v, abs(p.b))][0] == (p.h - r if p.b % 2 else r)
        # arrows (r+1, k) -> (r, k) and (r, k) -> (r+1, k+1)
        if r + 1 < p.h:
            cols = abs(p.b)
            assert (coords[r + 1, k], v) in q.arrows
            assert (v, coords[r + 1, (k + 1) % cols]) in q.arrows


@pytest.mark.parametrize("p", SWEEP)
def test_mesh_shape(p):
    q = build_stable_quiver(p)
    for v in q.vertices:
        n = len(q.mesh_relation(v))
        boundary = v[0] == 1 or v[0] == p.h - 1
        assert n == (0 if p.h == 2 else 1 if boundary else 2)


@pytest.mark.parametrize("p", SWEEP)
def test_length_h_paths_vanish(p, homs):
    q, H = homs[p]
    r = path_vanishing(q)
    assert r["ok"] and r["max_nonzero_path_len"] < p.h
    assert H.length_h_vanishes
    for v in q.vertices:
        dims, _ = hom_from(q, v, max_len=p.h)
        assert not any(L == p.h for _, L in dims)


@pytest.mark.parametrize("p", SWEEP)
def test_duality(p, homs):
    q, H = homs[p]
    r = check_duality(q, H)
    assert r["ok"] and r["violations"] == [] and r["checked"] == len(q.vertices) ** 2


@pytest.mark.parametrize("p", SWEEP)
def test_graded_end_matches_end_report(p, homs):
    q, H = homs[p]
    for i in range(1, p.h):
        assert graded_end_dims(q, i, H) == end_report(p, i).total_K_dim == 2 * min(i, p.h - i)
        assert graded_end_dims(q, i) == graded_end_dims(q, i, H)


def test_mesh_hom_examples():
    q = build_stable_quiver(P(1, 1, 3, 2))
    v = q.canon(1, 0)
    assert mesh_hom(q, v, v) >= 1
    assert sum(mesh_hom(q, v, q.canon(1, j)) for j in range(2)) == 2
    assert graded_end_dims(build_stable_quiver(P(6, 5, 6, 7)), 3) == 6
    assert graded_end_dims(build_stable_quiver(P(6, 5, 6, 7)), 5) == 2
    with pytest.raises(ValueError):
        graded_end_dims(q, 3)


def test_interval_homs():
    # A_2, orientation 1 -> 2
    assert db_hom(IntervalObject(1, 2, 0), IntervalObject(1, 1, 0), 2) == 1
    assert db_hom(IntervalObject(1, 1, 0), IntervalObject(2, 2, 1), 2) == 1
    assert db_hom(IntervalObject(2, 2, 0), IntervalObject(1, 1, 0), 2) == 0
    assert db_hom(IntervalObject(1, 1, 0), IntervalObject(1, 1, 2), 2) == 0
    for s in range(1, 4):
        for e in range(s, 4):
            assert db_hom(IntervalObject(s, e, 0), IntervalObject(s, e, 0), 3) >= 1


def test_ar_translate_inverse_and_serre_period():
    size = 4
    for s in range(1, size + 1):
        for e in range(s, size + 1):
            x = IntervalObject(s, e, 0)
            assert ar_translate(ar_translate(x, size, 1), size, -1) == x
            # T^{n+1} = Sigma^{-2} on D^b(kA_n)
            assert ar_translate(x, size, size + 1) == IntervalObject(s, e, -2)


@pytest.mark.parametrize("p", SWEEP)
def test_oracle_isomorphism(p, homs):
    q, H = homs[p]
    oracle = orbit_oracle(p)
    assert sorted_spectrum(oracle) == sorted_spectrum(H.dims)
    iso = oracle_isomorphism(q, H)
    assert iso is not None
    assert sorted(iso["map"].values()) == q.vertices


def test_oracle_detects_wrong_matrix(homs):
    q, H = homs[P(3, 2, 5, 7)]
    bad = dict(H.dims)
    v = q.vertices[0]
    bad[v, v] += 1
    assert oracle_isomorphism(q, HomMatrix(H.vertices, bad, H.max_nonzero_path_len)) is None


@pytest.mark.parametrize("p", SWEEP)
def test_bar_quiver_wraps_l_times(p):
    q, bar = build_stable_quiver(p), build_bar_quiver(p)
    assert len(bar.vertices) == p.l * abs(p.b) * (p.h - 1)
    for v in bar.vertices:
        assert bar.shift(v, 2 * p.l * p.b) == v
    w = wrap_map(bar, q)
    assert set(w.values()) == set(q.vertices)
    assert set(Counter(w.values()).values()) == {p.l}
    stable_arrows = set(q.arrows)
    assert all((w[s], w[t]) in stable_arrows for s, t in bar.arrows)


def test_bar_example():
    assert len(build_bar_quiver(P(6, 5, 6, 7)).vertices) == 175
    assert len(build_bar_quiver(P(2, 1, 2, 3)).vertices) == 3


def test_export():
    q = build_stable_quiver(P(1, 1, 4, 3))
    dot = to_dot(q)
    assert dot.startswith("digraph") and '"X1@S0"' in dot and "->" in dot
    d = to_dict(q, hom_matrix(q))
    assert set(d) == {"params", "vertices", "arrows", "sigma", "translate", "hom_dims"}
    assert len(d["hom_dims"]) == 3
