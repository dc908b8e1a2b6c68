"""The stable translation quiver ZA_{h-1}/T^{|b|} of the objects Sigma^j X_i, its mesh
category, and an independent orbit-category oracle built from interval modules over A_{h-1}.

Vertices are pairs (i, j) = Sigma^j X_i with 1 <= i <= h-1, reduced by tau-periodicity
(j ~ j + 2b) and the identification X_i ~ Sigma^{1-2ia} X_{h-i}; canonical form has
i <= h - i and 0 <= j < 2|b| (0 <= j < |b| on the middle row, where the two combine).
Arrows come from the triangles Sigma^{-2a} X_i -> Sigma^{-2a} X_{i-1} + X_{i+1} -> X_i:
X_{i+1}@j -> X_i@j and X_i@j -> X_{i+1}@(j+2a); translation T = Sigma^{-2a}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .dga import ParamSet
from .exactlin import RATIONALS, FieldSpec, SparseMatrix, rank


@dataclass
class StableQuiver:
    params: ParamSet
    period: int  # 2|b| for D_sg(B), 2 l |b| for the B-bar quiver
    vertices: list = field(default_factory=list)
    arrows: list = field(default_factory=list)  # (source, target), indexed by arrow id
    sigma: dict = field(default_factory=dict)  # Sigma as a vertex permutation
    translate: dict = field(default_factory=dict)  # T = Sigma^{-2a}
    arrow_keys: dict = field(default_factory=dict)  # (row, j mod period) -> arrow id

    @property
    def h(self) -> int:
        return self.params.h

    def canon(self, i: int, j: int) -> tuple:
        p, h = self.params, self.params.h
        if not 1 <= i <= h - 1:
            raise ValueError(f"row {i} outside 1..{h - 1}")
        if i > h - i:
            i, j = h - i, j + 1 - 2 * i * p.a
        mod = self.period // 2 if 2 * i == h else self.period
        return (i, j % mod)

    def shift(self, v: tuple, n: int) -> tuple:
        return self.canon(v[0], v[1] + n)

    def arrow_id(self, src: tuple, tgt: tuple) -> int:
        """Id of a lifted arrow of ZA_{h-1}; every arrow is stored as its type-1 form."""
        (i1, j1), (i2, j2) = src, tgt
        if i1 == i2 + 1 and j1 == j2:
            return self.arrow_keys[i2, j2 % self.period]
        if i2 == i1 + 1 and j2 == j1 + 2 * self.params.a:
            # the reflection turns X_i@j -> X_{i+1}@(j+2a) into X_{h-i}@J -> X_{h-i-1}@J
            return self.arrow_keys[self.h - i1 - 1, (j1 + 1 - 2 * i1 * self.params.a) % self.period]
        raise ValueError(f"no arrow {src} -> {tgt}")

    def mesh_middles(self, v: tuple) -> list:
        """Lifted middle vertices of the mesh ending at v (lift with v's canonical coordinates)."""
        i, j = v
        a = self.params.a
        out = []
        if i - 1 >= 1:
            out.append((i - 1, j - 2 * a))
        if i + 1 <= self.h - 1:
            out.append((i + 1, j))
        return out

    def mesh_relation(self, v: tuple) -> list:
        """Arrow-id pairs (first, second) whose sum is the mesh relation T v -> v."""
        i, j = v
        start = (i, j - 2 * self.params.a)
        return [(self.arrow_id(start, m), self.arrow_id(m, v)) for m in self.mesh_middles(v)]

    def cylinder_coords(self) -> dict:
        """(row, column mod period/2) -> vertex, from the ZA_{h-1} component through X_1@0."""
        a, cols = self.params.a, self.period // 2
        return {(i, k): self.canon(i, 2 * a * k) for i in range(1, self.h) for k in range(cols)}


def _cylinder(p: ParamSet, period: int) -> StableQuiver:
    q = StableQuiver(p, period)
    seen = []
    for i in range(1, p.h):
        for j in range(period):
            v = q.canon(i, j)
            if v not in seen:
                seen.append(v)
    q.vertices = sorted(seen)
    for i in range(1, p.h - 1):
        for j in range(period):
            q.arrow_keys[i, j] = len(q.arrows)
            q.arrows.append((q.canon(i + 1, j), q.canon(i, j)))
    q.sigma = {v: q.shift(v, 1) for v in q.vertices}
    q.translate = {v: q.shift(v, -2 * p.a) for v in q.vertices}
    return q


def build_stable_quiver(p: ParamSet) -> StableQuiver:
    return _cylinder(p, 2 * abs(p.b))


def build_bar_quiver(p: ParamSet) -> StableQuiver:
    """Quiver of the objects Sigma^j M_i over B-bar = k[x]/(x^h): circumference l|b|."""
    return _cylinder(p, 2 * p.l * abs(p.b))


def wrap_map(bar: StableQuiver, stable: StableQuiver) -> dict:
    """M_i@j -> Sigma X_i@j = X_i@(j+1): wraps the bar cylinder l times round the stable one."""
    return {v: stable.canon(v[0], v[1] + 1) for v in bar.vertices}


def sigma_orbits(q: StableQuiver) -> list:
    left = set(q.vertices)
    out = []
    while left:
        v = min(left)
        orbit = [v]
        w = q.sigma[v]
        while w != v:
            orbit.append(w)
            w = q.sigma[w]
        left -= set(orbit)
        out.append(orbit)
    return out


# mesh category ----------------------------------------------------------------------------

@dataclass
class HomMatrix:
    vertices: list
    dims: dict  # (v, w) -> dim
    max_nonzero_path_len: int
    length_h_vanishes: bool = True


def _paths_from(q: StableQuiver, v: tuple, length: int) -> list:
    """All arrow-id sequences of the given length starting at v, with their end vertices."""
    out_arrows: dict = {}
    for n, (s, t) in enumerate(q.arrows):
        out_arrows.setdefault(s, []).append((n, t))
    layer = [((), v)]
    for _ in range(length):
        layer = [(path + (n,), t) for path, end in layer for n, t in out_arrows.get(end, [])]
    return layer


def hom_from(q: StableQuiver, v: tuple, fld: FieldSpec = RATIONALS, max_len: int | None = None) -> tuple:
    """({(w, L): dim} for paths of length L from v modulo the mesh ideal, last nonzero L).

    Grows L until every path of length L lies in the mesh ideal (never beyond
    max_len, default h + 1, so a failure of that bound is reported, not looped on).
    """
    max_len = max_len if max_len is not None else q.h + 1
    out: dict = {}
    last = 0
    meshes = {u: q.mesh_relation(u) for u in q.vertices}
    start_of = {}
    for u in q.vertices:
        start_of.setdefault(q.translate[u], []).append(u)
    for L in range(max_len + 1):
        paths = _paths_from(q, v, L)
        if not paths:
            break
        index = {path: n for n, (path, _) in enumerate(paths)}
        ends = {path: end for path, end in paths}
        gens = []
        for r in range(L - 1):
            for pre, u in _paths_from(q, v, r):
                for x in start_of.get(u, []):
                    rel = meshes[x]
                    if not rel:
                        continue
                    for post, _ in _paths_from(q, x, L - 2 - r):
                        gens.append({index[pre + pair + post]: 1 for pair in rel})
        nonzero = False
        by_end: dict = {}
        for path, end in paths:
            by_end.setdefault(end, []).append(index[path])
        for w, cols in by_end.items():
            pos = {c: n for n, c in enumerate(cols)}
            rows = [{pos[c]: x for c, x in g.items() if c in pos} for g in gens]
            rows = [r for r in rows if r]
            m = SparseMatrix(len(rows), len(cols), {(r, c): x for r, row in enumerate(rows) for c, x in row.items()}, fld)
            dim = len(cols) - rank(m)
            if dim:
                out[w, L] = dim
                nonzero = True
        if nonzero:
            last = L
        else:
            break
    return out, last


def mesh_hom(q: StableQuiver, v: tuple, w: tuple, fld: FieldSpec = RATIONALS) -> int:
    dims, _ = hom_from(q, v, fld)
    return sum(d for (u, _), d in dims.items() if u == w)


def hom_matrix(q: StableQuiver, fld: FieldSpec = RATIONALS) -> HomMatrix:
    dims = {}
    top = 0
    for v in q.vertices:
        by_len, last = hom_from(q, v, fld)
        top = max(top, last)
        for w in q.vertices:
            dims[v, w] = sum(d for (u, _), d in by_len.items() if u == w)
    return HomMatrix(list(q.vertices), dims, top, top < q.h)


def path_vanishing(q: StableQuiver, fld: FieldSpec = RATIONALS) -> dict:
    """Harada-Sai type bound: every composite of h arrows lies in the mesh ideal."""
    worst = 0
    for v in q.vertices:
        _, last = hom_from(q, v, fld)
        worst = max(worst, last)
    return {"max_nonzero_path_len": worst, "ok": worst < q.h}


def check_duality(q: StableQuiver, hom: HomMatrix) -> dict:
    """dim Hom(v, w) = dim Hom(w, Sigma^{1-2a} v) for every pair."""
    s = 1 - 2 * q.params.a
    bad = [(v, w, hom.dims[v, w], hom.dims[w, q.shift(v, s)])
           for v, w in product(q.vertices, repeat=2) if hom.dims[v, w] != hom.dims[w, q.shift(v, s)]]
    return {"checked": len(q.vertices) ** 2, "violations": bad, "ok": not bad}


def graded_end_dims(q: StableQuiver, i: int, hom: HomMatrix | None = None) -> int:
    """sum over j in one 2|b|-period of dim Hom(X_i, Sigma^j X_i)."""
    if not 1 <= i <= q.h - 1:
        raise ValueError(f"need 1 <= i <= h-1 = {q.h - 1}")
    v = q.canon(i, 0)
    if hom is None:
        by_len, _ = hom_from(q, v)
        return sum(sum(d for (u, _), d in by_len.items() if u == q.canon(i, j)) for j in range(q.period))
    return sum(hom.dims[v, q.canon(i, j)] for j in range(q.period))


# orbit-category oracle -----------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalObject:
    """Sigma^n M[s, e] in D^b(k A_{h-1}), linear orientation 1 -> 2 -> ... -> h-1."""
    s: int
    e: int
    n: int


def _interval_hom(m: tuple, nn: tuple, size: int) -> int:
    """dim Hom_A(M[s,e], M[s',e']) by solving the commuting-square equations."""
    (s, e), (s2, e2) = m, nn
    common = [v for v in range(1, size + 1) if s <= v <= e and s2 <= v <= e2]
    # one unknown per common vertex; arrow v -> v+1 forces f_{v+1} = f_v when both sides
    # are nonzero there, and f_v = 0 when M continues but N stops (or vice versa)
    idx = {v: n for n, v in enumerate(common)}
    rows = []
    for v in range(1, size):
        m_src, m_tgt = s <= v <= e, s <= v + 1 <= e
        n_src, n_tgt = s2 <= v <= e2, s2 <= v + 1 <= e2
        # square: N(v->v+1) f_v = f_{v+1} M(v->v+1)
        lhs = {idx[v]: 1} if (n_src and n_tgt and v in idx) else {}
        rhs = {idx[v + 1]: 1} if (m_src and m_tgt and v + 1 in idx) else {}
        row = dict(lhs)
        for c, x in rhs.items():
            row[c] = row.get(c, 0) - x
        row = {c: x for c, x in row.items() if x}
        if row:
            rows.append(row)
    mat = SparseMatrix(len(rows), len(common), {(r, c): x for r, row in enumerate(rows) for c, x in row.items()})
    return len(common) - rank(mat)


def _euler(m: tuple, nn: tuple, size: int) -> int:
    (s, e), (s2, e2) = m, nn
    dm = [1 if s <= v <= e else 0 for v in range(size + 2)]
    dn = [1 if s2 <= v <= e2 else 0 for v in range(size + 2)]
    return sum(dm[v] * dn[v] for v in range(1, size + 1)) - sum(dm[v] * dn[v + 1] for v in range(1, size))


def db_hom(x: IntervalObject, y: IntervalObject, size: int) -> int:
    """dim Hom_{D^b(kA)}(x, y): Hom in shift difference 0, Ext^1 (via the Euler form) in 1."""
    d = y.n - x.n
    hom = _interval_hom((x.s, x.e), (y.s, y.e), size)
    if d == 0:
        return hom
    if d == 1:
        return hom - _euler((x.s, x.e), (y.s, y.e), size)
    return 0


def ar_translate(x: IntervalObject, size: int, power: int = 1) -> IntervalObject:
    """T^power: T M[s,e] = M[s+1,e+1] off the projectives, T P_s = Sigma^{-1} I_s."""
    for _ in range(abs(power)):
        if power > 0:
            x = IntervalObject(x.s + 1, x.e + 1, x.n) if x.e < size else IntervalObject(1, x.s, x.n - 1)
        else:
            x = IntervalObject(x.s - 1, x.e - 1, x.n) if x.s > 1 else IntervalObject(x.e, size, x.n + 1)
    return x


def orbit_objects(p: ParamSet) -> dict:
    """(row, column) -> T^{-column} P_row for columns mod |b|."""
    size = p.h - 1
    return {(i, k): ar_translate(IntervalObject(i, size, 0), size, -k)
            for i in range(1, p.h) for k in range(abs(p.b))}


def orbit_oracle(p: ParamSet) -> dict:
    """{(x, y): dim} over cylinder coordinates: sum_n Hom_{D^b}(x, T^{n|b|} y), T^h = Sigma^{-2}."""
    size, period = p.h - 1, abs(p.b)
    objs = orbit_objects(p)
    reach = 2 * p.h // period + 3  # beyond this, the shift difference leaves {0, 1}
    out = {}
    for (cx, x), (cy, y) in product(objs.items(), repeat=2):
        total = 0
        for n in range(-reach, reach + 1):
            total += db_hom(x, ar_translate(y, size, n * period), size)
        out[cx, cy] = total
    return out


def oracle_isomorphism(q: StableQuiver, hom: HomMatrix) -> dict | None:
    """A cylinder automorphism (column shift c, optional reflection) carrying the oracle to the mesh matrix.

    Returns {"shift": c, "reflect": bool, "map": {coords: vertex}} or None.
    """
    p = q.params
    oracle = orbit_oracle(p)
    coords = q.cylinder_coords()
    if sorted(coords.values()) != sorted(q.vertices):
        return None
    cols = q.period // 2
    for reflect in (False, True):
        for c in range(cols):
            def phi(rc):
                r, k = rc
                return (p.h - r, k + c) if reflect else (r, k + c)

            def vert(rc):
                r, k = phi(rc)
                return coords[r, k % cols]

            if all(oracle[x, y] == hom.dims[vert(x), vert(y)] for x, y in oracle):
                return {"shift": c, "reflect": reflect, "map": {x: vert(x) for x, _ in coords.items()}}
    return None


def sorted_spectrum(dims: dict) -> list:
    return sorted(dims.values())


# export --------------------------------------------------------------------------------------

def vertex_label(v: tuple) -> str:
    return f"X{v[0]}@S{v[1]}"


def to_dot(q: StableQuiver) -> str:
    lines = ["digraph stable {"]
    for v in q.vertices:
        lines.append(f'  "{vertex_label(v)}";')
    for s, t in q.arrows:
        lines.append(f'  "{vertex_label(s)}" -> "{vertex_label(t)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dict(q: StableQuiver, hom: HomMatrix | None = None) -> dict:
    vs = q.vertices
    index = {v: n for n, v in enumerate(vs)}
    out = {
        "params": list(q.params.astuple()),
        "vertices": [vertex_label(v) for v in vs],
        "arrows": [[index[s], index[t]] for s, t in q.arrows],
        "sigma": [index[q.sigma[v]] for v in vs],
        "translate": [index[q.translate[v]] for v in vs],
    }
    if hom is not None:
        out["hom_dims"] = [[hom.dims[v, w] for w in vs] for v in vs]
    return out
