"""Acceptance criteria 1-11, one test each, swept over the parameter set S."""
from __future__ import annotations

import subprocess
import sys
import time
from collections import Counter

import pytest

from masseysg import _kernels
from masseysg.ainfty import TransferredAlgebra, stasheff_defect, transfer
from masseysg.apps import params_from_brauer_tree, params_from_group, params_from_hecke, summarize
from masseysg.arquiver import (
    build_bar_quiver, build_stable_quiver, check_duality, graded_end_dims, hom_matrix,
    oracle_isomorphism, orbit_oracle, path_vanishing, sigma_orbits, sorted_spectrum, wrap_map,
)
from masseysg.dga import (
    SWEEP, BiDegree, ParamSet, build_Q, build_R, d_squared_violations, expected_homology,
    homology_dims, homotopy_violations, hopf_checks,
)
from masseysg.exactlin import prime_field
from masseysg.extcalc import dsg_hom_dims, end_report, expected_degree_zero, ext_dims, presentation_dims

XI = (0, 1)
SWEEP_LIMIT_S = 60  # per parameter set, criteria 1-2
TRANSFER_LIMIT_S = 60
VERIFY_LIMIT_S = 600


def _words(p):
    return _kernels.enumerate_words(p.h, 4 * p.h)  # tau-free words of internal degree <= 4hl


@pytest.mark.criterion(1, "d^2 = 0 on Q to internal degree 4hl for all of S and on R (a=1) to weight 8")
def test_criterion_01_d_squared():
    for p in SWEEP:
        t0 = time.perf_counter()
        bad = sum(int(_kernels.d_squared_sweep(w, p.h)[0]) for w in _words(p))
        assert bad == 0, p
        assert time.perf_counter() - t0 < SWEEP_LIMIT_S, p
    R = build_R(1, 8)
    assert d_squared_violations(R, R.words()) == []


@pytest.mark.criterion(2, "homotopy identity and homology k[tau] (x) Lambda(xi) in the same window")
def test_criterion_02_homotopy_and_homology():
    for p in SWEEP:
        t0 = time.perf_counter()
        assert sum(int(_kernels.homotopy_sweep(w, p.h)[0]) for w in _words(p)) == 0, p
        window = 4 * p.h * p.l
        got = {k: v for k, v in homology_dims(build_Q(p), window).items() if v}
        assert got == expected_homology(p, window), p
        assert time.perf_counter() - t0 < SWEEP_LIMIT_S, p
    R = build_R(1, 8)
    assert homotopy_violations(R, R.words()) == []


@pytest.mark.criterion(3, "Hopf identities on every monomial in the window (over F_l)")
def test_criterion_03_hopf():
    for p in SWEEP:
        r = hopf_checks(build_Q(p), min(2 * p.h * p.l, 40), prime_field(p.l))
        assert r["monomials"] > 0
        assert (r["d_delta"], r["cocommutative"], r["antipode"], r["multiplicative"]) == ([], [], [], []), p


@pytest.mark.criterion(4, "transfer: m_n = 0 for 2 < n < h, m_h = +-tau^l, Stasheff to arity h+2, under a minute")
def test_criterion_04_transfer():
    for p in (ParamSet(1, 1, 3, 2), ParamSet(1, 1, 4, 3)):
        t0 = time.perf_counter()
        r = transfer(build_Q(p), p.h + 2, (p.h + 2) * (p.l + p.h))
        assert r.mismatches == []
        assert not any(2 < n < p.h for n, _ in r.ops)
        assert r.global_sign in (1, -1)
        assert r.ops[p.h, (XI,) * p.h] == {(p.l, 0): (-1) ** (p.h * (p.h - 1) // 2) * r.global_sign}
        T = TransferredAlgebra(r)
        assert T.multilinearity_violations() == []
        assert stasheff_defect(T, p.h + 2) == []
        assert time.perf_counter() - t0 < TRANSFER_LIMIT_S


@pytest.mark.criterion(5, "Ext tables match the presentation for all 1 <= i,j <= h-1; X_h vanishes after inverting tau")
def test_criterion_05_ext_presentation():
    for p in SWEEP:
        for i in range(1, p.h):
            for j in range(1, p.h):
                t = ext_dims(p, i, j)
                assert t.dims and t.dims == presentation_dims(p, i, j), (p, i, j)
        assert dsg_hom_dims(p, p.h, p.h) == {}, p
    assert {p.l == 2 for p in SWEEP} == {True, False}  # both branches exercised


@pytest.mark.criterion(6, "End reports: total 2 min(i,h-i), degree-zero dims, socle (2a-1, l)")
def test_criterion_06_end_reports():
    for p in SWEEP:
        for i in range(1, p.h):
            r = end_report(p, i)
            assert r.total_K_dim == 2 * min(i, p.h - i), (p, i)
            assert r.degree_zero_dims == expected_degree_zero(p, i), (p, i)
            assert r.socle_bidegree == BiDegree(2 * p.a - 1, p.l), (p, i)


@pytest.mark.criterion(7, "quiver: |b|(h-1) vertices, [h/2] Sigma-orbits; 25 classes on a 5x5 cylinder for (6,5,6,7)")
def test_criterion_07_quiver_counts():
    for p in SWEEP:
        q = build_stable_quiver(p)
        assert len(q.vertices) == abs(p.b) * (p.h - 1), p
        assert len(sigma_orbits(q)) == p.h // 2, p
    q = build_stable_quiver(ParamSet(6, 5, 6, 7))
    coords = q.cylinder_coords()
    assert len(q.vertices) == 25 and len(coords) == 25
    assert {r for r, _ in coords} == set(range(1, 6)) and {k for _, k in coords} == set(range(5))


@pytest.mark.criterion(8, "mesh category: length-h paths vanish, duality, graded_end_dims = end_report")
def test_criterion_08_mesh_category():
    for p in SWEEP:
        q = build_stable_quiver(p)
        H = hom_matrix(q)
        r = path_vanishing(q)
        assert r["ok"] and r["max_nonzero_path_len"] < p.h and H.length_h_vanishes, p
        d = check_duality(q, H)
        assert d["ok"] and d["violations"] == [] and d["checked"] == len(q.vertices) ** 2, p
        for i in range(1, p.h):
            assert graded_end_dims(q, i, H) == end_report(p, i).total_K_dim, (p, i)


@pytest.mark.criterion(9, "oracle isomorphism for all of S; bar quiver has l|b|(h-1) vertices with an l-to-1 wrap")
def test_criterion_09_oracle_and_bar():
    for p in SWEEP:
        q = build_stable_quiver(p)
        H = hom_matrix(q)
        assert sorted_spectrum(orbit_oracle(p)) == sorted_spectrum(H.dims), p
        iso = oracle_isomorphism(q, H)
        assert iso is not None and sorted(iso["map"].values()) == q.vertices, p
        bar = build_bar_quiver(p)
        assert len(bar.vertices) == p.l * abs(p.b) * (p.h - 1), p
        fibers = Counter(wrap_map(bar, q).values())
        assert set(fibers) == set(q.vertices) and set(fibers.values()) == {p.l}, p


@pytest.mark.criterion(10, "applications: group (3,1,2) -> 1, 4; Hecke 5 -> 9, 16; Brauer (2,3) -> 3; ah - bl = 1")
def test_criterion_10_applications():
    g = summarize(params_from_group(3, 1, 2))
    assert (g.sing_count, g.cosing_count) == (1, 4)
    hk = summarize(params_from_hecke(5))
    assert (hk.sing_count, hk.cosing_count) == (9, 16)
    assert summarize(params_from_brauer_tree(2, 3)).sing_count == 3
    made = [params_from_group(3, 1, 2), params_from_hecke(5), params_from_brauer_tree(2, 3)]
    made += [params_from_brauer_tree(e, lam) for e in range(2, 8) for lam in range(1, 5)]
    assert all(p.a * p.h - p.b * p.l == 1 for p in made)


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "masseysg.cli", *argv], capture_output=True, text=True)


@pytest.mark.criterion(11, "verify over S exits 0 in under 10 minutes; a corrupted structure constant exits 1")
def test_criterion_11_verify_sweep():
    t0 = time.perf_counter()
    for p in SWEEP:
        r = _cli("verify", "--params", str(p), "--format", "text")
        assert r.returncode == 0, (p, r.stdout, r.stderr)
    assert time.perf_counter() - t0 < VERIFY_LIMIT_S
    for p in SWEEP:
        assert _cli("verify", "--params", str(p), "--corrupt").returncode == 1, p
    assert _cli("verify", "--params", "1,1,3,2", "--corrupt", "mesh").returncode == 1
    assert _cli("verify", "--params", "1,1,4,3", "--corrupt", "differential").returncode == 1
