"""Ext tables of the modules X_i over H_*B, tau-inversion, and End-ring reports.

Two independent routes:
  * E2: Hom from the 2-periodic matrix-factorization resolution of H_*X_i
    into H_*X_j, reduced slice by slice (the E2 page of the spectral
    sequence converging to Hom in D^b(B));
  * D_sg: the same Hom computed in the Koszul-dual world, as a twisted Hom
    complex between semifree Q-modules P_i, with tau inverted. The
    perturbation lemma shrinks it to a finite complex over K = k[tau, 1/tau].
After inverting tau the two routes agree exactly when i + j <= h (or l = 2);
otherwise the spectral sequence has further differentials and E2 is larger.

Degrees: x = (-2a, -l), t = (-2b-1, -h), tau = (2b, h). An E2 entry is keyed
by (s, (v, w)): resolution step s, map bidegree (v, w); its total degree in
D^b is (v - s, w), and tau moves (s, v, w) by (1, 2b+1, h).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil

from .dga import BiDegree, ParamSet, QAlgebra, _add, build_Q
from .exactlin import RATIONALS, FieldSpec, SparseMatrix, rank_kernel, solve_in_span, subquotient_dim


class NotStabilized(ValueError):
    """tau-multiplication has not become bijective inside the computed window."""


# ground ring H_*B ------------------------------------------------------------------

class GroundRing:
    """H_*B = k[x] (x) Lambda(t), or k[x,t]/(t^2 + x^h) when l = 2. Basis x^q t^e."""

    def __init__(self, p: ParamSet):
        self.params = p
        self.x = BiDegree(-2 * p.a, -p.l)
        self.t = BiDegree(-2 * p.b - 1, -p.h)

    def degree(self, mono: tuple) -> BiDegree:
        q, e = mono
        return BiDegree(q * self.x[0] + e * self.t[0], q * self.x[1] + e * self.t[1])

    def mul_mono(self, u: tuple, v: tuple) -> dict:
        (q1, e1), (q2, e2) = u, v
        if e1 + e2 <= 1:
            return {(q1 + q2, e1 + e2): 1}
        if self.params.l == 2:
            return {(q1 + q2 + self.params.h, 0): -1}
        return {}

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, c in x.items():
            for v, d in y.items():
                for w, e in self.mul_mono(u, v).items():
                    _add(out, w, c * d * e)
        return out


@dataclass
class MFResolution:
    """2-periodic resolution of H_*X_i: F_s = H_*B e_s + H_*B f_s.

    d(e_{s+1}) = t e_s (+ x^{h-i} f_s when l = 2), d(f_{s+1}) = x^i e_s - t f_s,
    and F_0 -> H_*X_i sends e_0 -> t, f_0 -> x^i.
    """
    params: ParamSet
    i: int
    period_matrix: list  # 2x2 of ring elements, columns = images of e_{s+1}, f_{s+1}
    ring: GroundRing

    def gen_degrees(self, s: int) -> tuple:
        p = self.params
        step = (-2 * p.b - 1) * s, -p.h * s
        e = BiDegree(-2 * p.b - 1 + step[0], -p.h + step[1])
        f = BiDegree(-2 * self.i * p.a + step[0], -self.i * p.l + step[1])
        return e, f

    def squared(self) -> list:
        M, R = self.period_matrix, self.ring
        out = [[{}, {}], [{}, {}]]
        for r in range(2):
            for c in range(2):
                acc: dict = {}
                for k in range(2):
                    for mono, v in R.mul(M[r][k], M[k][c]).items():
                        _add(acc, mono, v)
                out[r][c] = acc
        return out

    def relation(self) -> dict:
        """The element the matrix factorizes: t^2 (which is 0 when l > 2), or t^2 + x^h."""
        return self.ring.mul({(0, 1): 1}, {(0, 1): 1}) if self.params.l > 2 else {}

    def augmentation_is_zero(self) -> bool:
        """(t, x^i) composed with the period matrix vanishes."""
        R, M, i = self.ring, self.period_matrix, self.i
        for c in range(2):
            acc: dict = {}
            for k, g in enumerate(({(0, 1): 1}, {(i, 0): 1})):
                for mono, v in R.mul(g, M[k][c]).items():
                    _add(acc, mono, v)
            if acc:
                return False
        return True


def mf_resolution(p: ParamSet, i: int) -> MFResolution:
    if not 1 <= i <= p.h:
        raise ValueError(f"need 1 <= i <= h = {p.h}, got {i}")
    R = GroundRing(p)
    t = {(0, 1): 1}
    lower_left = {(p.h - i, 0): 1} if p.l == 2 else {}
    M = [[t, {(i, 0): 1}], [lower_left, {(0, 1): -1}]]
    return MFResolution(p, i, M, R)


# E2 tables ------------------------------------------------------------------------------

@dataclass
class ExtTable:
    params: ParamSet
    i: int
    j: int
    hom_steps: int
    window: int
    dims: dict = field(default_factory=dict)  # (s, BiDegree(v, w)) -> dim, nonzero only

    @property
    def tau_degree(self) -> tuple:
        """Tridegree (u, v, w) = (-s, v, w) of the periodicity operator."""
        return (-1, 2 * self.params.b + 1, self.params.h)

    def tau_image(self, key: tuple) -> tuple:
        s, (v, w) = key
        return s + 1, BiDegree(v + 2 * self.params.b + 1, w + self.params.h)

    def get(self, s: int, v: int, w: int) -> int:
        return self.dims.get((s, BiDegree(v, w)), 0)


def _module_basis(p: ParamSet, j: int, internal: int) -> list:
    """Basis monomials of H_*X_j = (t, x^j) with the given internal degree."""
    out = []
    for e in (0, 1):
        num = -(internal + e * p.h)
        if num < 0 or num % p.l:
            continue
        q = num // p.l
        if e == 1 or q >= j:
            out.append((q, e))
    return out


def ext_dims(p: ParamSet, i: int, j: int, hom_steps: int | None = None, window: int | None = None,
             fld: FieldSpec = RATIONALS) -> ExtTable:
    """Dimensions of Ext^s_{H_*B}(H_*X_i, H_*X_j) in each map bidegree (v, w).

    Computed for 0 <= s < hom_steps and |w - s h| <= window (the internal
    degree measured relative to tau^s, so every tau level is covered alike).
    """
    if not (1 <= i <= p.h and 1 <= j <= p.h):
        raise ValueError("need 1 <= i, j <= h")
    hom_steps = hom_steps if hom_steps is not None else 2 * p.l + 4
    window = window if window is not None else default_window(p)
    res = mf_resolution(p, i)
    R = res.ring

    @lru_cache(maxsize=None)
    def cochains(s: int, w: int) -> dict:
        """{v: [(component, monomial), ...]} spanning Hom^{(v, w)}(F_s, H_*X_j)."""
        if s < 0:
            return {}
        out: dict = {}
        for comp, g in enumerate(res.gen_degrees(s)):
            for mono in _module_basis(p, j, w + g[1]):
                v = R.degree(mono)[0] - g[0]
                out.setdefault(v, []).append((comp, mono))
        return out

    def coboundary(s: int, w: int, v: int) -> SparseMatrix:
        src = cochains(s, w).get(v, [])
        tgt = cochains(s + 1, w).get(v, [])
        index = {b: n for n, b in enumerate(tgt)}
        M = res.period_matrix
        cols = []
        for comp, mono in src:
            col: dict = {}
            # (phi o d)(gen_{s+1}^c) = sum_k M[k][c] phi(gen_s^k); phi is nonzero on gen_s^comp only
            for c in range(2):
                for m2, val in R.mul(M[comp][c], {mono: 1}).items():
                    if (c, m2) not in index:
                        raise ArithmeticError(f"coboundary leaves the module basis: {m2}")
                    r = index[c, m2]
                    col[r] = col.get(r, 0) + val
            cols.append(col)
        return SparseMatrix.from_columns(len(tgt), cols, fld)

    table = ExtTable(p, i, j, hom_steps, window)
    for s in range(hom_steps):
        for rel in range(-window, window + 1):
            w = rel + s * p.h
            for v, basis in cochains(s, w).items():
                d_out = coboundary(s, w, v)
                d_in = coboundary(s - 1, w, v) if s > 0 else SparseMatrix(len(basis), 0, {}, fld)
                dim = subquotient_dim(d_in, d_out)
                if dim:
                    table.dims[s, BiDegree(v, w)] = dim
    return table


def default_window(p: ParamSet) -> int:
    """Internal-degree half width covering every generator, relation and x-tower in the presentations."""
    return (p.h + 2) * p.l + 2 * p.h


def presentation_dims(p: ParamSet, i: int, j: int, hom_steps: int | None = None,
                      window: int | None = None, literal: bool = False) -> dict | None:
    """Dims of the two-generator presentation of Ext_{H_*B}(H_*X_i, H_*X_j).

    Monomial basis: x^c beta and x^c alpha at tau^0 (all c), and
    x^c tau^s beta (c < cap_beta), x^c tau^s alpha (c < cap_alpha) for s >= 1.
    Degrees: beta at (j-i)|x| when j >= i, else 0; alpha at |t| - k|x|.

    l > 2: k = i. The relations (t alpha, x^M alpha - t beta, t tau beta,
    x^m tau beta) give cap_beta = m, cap_alpha = M (m, M = min, max of i, j);
    with literal=False the relation x^m tau alpha = 0, which holds on E2
    (x^i alpha bounds t e, and x^j alpha bounds x^j f), is added, so cap_alpha = m.
    l = 2: k = min(i, h-j) and both caps are min(i, j, h-i, h-j); with
    literal=True only the diagonal i = j <= h/2 is stated and other pairs
    return None.
    """
    if p.l == 2:
        if literal and not (i == j and 2 * i <= p.h):
            return None
        cap_b = cap_a = min(i, j, p.h - i, p.h - j)
        k = min(i, p.h - j)
    else:
        cap_b = min(i, j)
        cap_a = max(i, j) if literal else min(i, j)
        k = i
    hom_steps = hom_steps if hom_steps is not None else 2 * p.l + 4
    window = window if window is not None else default_window(p)
    x = (-2 * p.a, -p.l)
    t = (-2 * p.b - 1, -p.h)
    beta = (max(j - i, 0) * x[0], max(j - i, 0) * x[1])
    alpha = (t[0] - k * x[0], t[1] - k * x[1])
    out: dict = {}
    for s in range(hom_steps):
        for g, cap in ((beta, cap_b), (alpha, cap_a)):
            c = 0
            while not (s >= 1 and c >= cap):
                v = g[0] + c * x[0] + s * (2 * p.b + 1)
                w = g[1] + c * x[1] + s * p.h
                rel = w - s * p.h
                if rel < -window:
                    break
                if rel <= window:
                    key = (s, BiDegree(v, w))
                    out[key] = out.get(key, 0) + 1
                c += 1
    return out


# tau inversion ----------------------------------------------------------------------------

def _normalize_class(p: ParamSet, n: int, w: int) -> BiDegree:
    """Representative of (n, w) modulo tau = (2b, h) with 0 <= w < h."""
    q = w // p.h
    return BiDegree(n - 2 * p.b * q, w - p.h * q)


def invert_tau(table: ExtTable) -> dict:
    """K-dimension per degree class (total degree mod tau) of the tau-localized table.

    Compares the last two computed steps along tau-orbits; unequal dims mean
    tau-multiplication has not stabilized and NotStabilized is raised.
    """
    p = table.params
    if table.hom_steps < 3:
        raise ValueError("need at least 3 tau-periods (hom_steps >= 3)")
    s1 = table.hom_steps - 1
    s0 = s1 - 1
    last: dict = {}
    prev: dict = {}
    for (s, (v, w)), dim in table.dims.items():
        if s in (s0, s1):
            key = _normalize_class(p, v - s, w)
            bucket = last if s == s1 else prev
            bucket[key] = bucket.get(key, 0) + dim
    if last != prev:
        diff = {k: (prev.get(k, 0), last.get(k, 0)) for k in set(last) | set(prev) if prev.get(k, 0) != last.get(k, 0)}
        raise NotStabilized(f"tau not bijective between steps {s0} and {s1}: {diff}")
    return last


# D_sg route: twisted Hom between semifree Q-modules ----------------------------------------

def _cell_degree(p: ParamSet, k: int) -> BiDegree:
    """|e_k| in P_i, where d(e_k) = sum_{r=1}^k xi_r e_{k-r}."""
    return BiDegree(2 * p.a * k, p.l * k)


class HomModel:
    """Hom_Q(P_i, P_j) with its differential split as d0 (d_Q on every entry) + rho.

    A map f is stored as {(k, k', mono): coef}: f(e_k) = sum q_{k,k'} e_{k'}.
    Small model over K: basis (k, k', e) meaning q_{k,k'} = xi_1^e, after the
    contraction (i, pi, -delta) of Q onto k[tau] + xi_1 k[tau] is perturbed by rho.
    """

    def __init__(self, p: ParamSet, i: int, j: int, Q: QAlgebra | None = None):
        if not (1 <= i <= p.h and 1 <= j <= p.h):
            raise ValueError("need 1 <= i, j <= h")
        self.p, self.i, self.j = p, i, j
        self.Q = Q if Q is not None else build_Q(p)
        self._xi = {r: {(0, (r,)): 1} for r in range(1, p.h)}

    def degree(self, k: int, k2: int, mono: tuple) -> BiDegree:
        q = self.Q.degree(mono)
        e1, e2 = _cell_degree(self.p, k), _cell_degree(self.p, k2)
        return BiDegree(q[0] + e2[0] - e1[0], q[1] + e2[1] - e1[1])

    def rho(self, f: dict) -> dict:
        out: dict = {}
        Q = self.Q
        for (k, k2, mono), c in f.items():
            sign = -1 if Q.parity(mono) else 1
            for r in range(1, k2 + 1):
                # q_{k,k2} xi_r e_{k2-r}: contributes to component (k, k2 - r)
                for m2, c2 in Q.mul({mono: 1}, self._xi[r]).items():
                    _add(out, (k, k2 - r, m2), sign * c * c2)
            for r in range(1, self.i - k):
                # -xi_r q_{k,k2}: contributes to component (k + r, k2)
                for m2, c2 in Q.mul(self._xi[r], {mono: 1}).items():
                    _add(out, (k + r, k2, m2), -c * c2)
        return out

    def d0(self, f: dict) -> dict:
        out: dict = {}
        for (k, k2, mono), c in f.items():
            for m2, c2 in self.Q.diff_mono(mono).items():
                _add(out, (k, k2, m2), c * c2)
        return out

    def full_d(self, f: dict) -> dict:
        out = self.d0(f)
        for key, c in self.rho(f).items():
            _add(out, key, c)
        return out

    def htpy(self, f: dict) -> dict:
        """-delta on every entry; i pi - 1 = d0 htpy + htpy d0."""
        out: dict = {}
        for (k, k2, mono), c in f.items():
            for m2, c2 in self.Q.delta_mono(mono).items():
                _add(out, (k, k2, m2), -c * c2)
        return out

    def proj(self, f: dict) -> dict:
        return {key: c for key, c in f.items() if key[2][1] in ((), (1,))}

    def small_basis(self) -> list:
        return [(k, k2, e) for k in range(self.i) for k2 in range(self.j) for e in (0, 1)]

    def incl(self, g: tuple) -> dict:
        k, k2, e = g
        return {(k, k2, (0, (1,) * e)): 1}

    def _A(self, f: dict) -> dict:
        """sum_{n >= 0} (rho htpy)^n rho (f); terminates since rho raises k - k'."""
        x = self.rho(f)
        total = dict(x)
        while x:
            x = self.rho(self.htpy(x))
            for key, c in x.items():
                _add(total, key, c)
        return total

    def small_d(self, g: tuple) -> dict:
        """Perturbed differential on a small basis element: {(k, k', e, m): coef} for tau^m."""
        out: dict = {}
        for (k, k2, (m, w)), c in self.proj(self._A(self.incl(g))).items():
            _add(out, (k, k2, len(w), m), c)
        return out

    def big_incl(self, g: tuple) -> dict:
        """Perturbed inclusion i + htpy A i: a cycle of the full complex."""
        f = self.incl(g)
        out = dict(f)
        for key, c in self.htpy(self._A(f)).items():
            _add(out, key, c)
        return out

    def big_proj(self, f: dict) -> dict:
        """Perturbed projection pi + pi A htpy, as {(k, k', e, m): coef}."""
        g = self.proj(f)
        for key, c in self.proj(self._A(self.htpy(f))).items():
            _add(g, key, c)
        out: dict = {}
        for (k, k2, (m, w)), c in g.items():
            _add(out, (k, k2, len(w), m), c)
        return out

    def small_degree(self, g: tuple) -> BiDegree:
        k, k2, e = g
        return self.degree(k, k2, (0, (1,) * e))


class SmallComplex:
    """The perturbed small complex over K, split by degree class mod tau."""

    def __init__(self, model: HomModel, fld: FieldSpec = RATIONALS):
        self.model, self.field = model, fld
        p = model.p
        self.classes: dict = {}
        for g in model.small_basis():
            n, w = model.small_degree(g)
            self.classes.setdefault(_normalize_class(p, n, w), []).append(g)
        self.index = {g: (cls, n) for cls, gs in self.classes.items() for n, g in enumerate(gs)}
        self._cols: dict = {}  # class -> {column: {row: coef}} for d: class -> class - (1, 0)
        for g in model.small_basis():
            cls, col = self.index[g]
            entries = self._cols.setdefault(cls, {}).setdefault(col, {})
            for (k, k2, e, m), c in model.small_d(g).items():
                tgt_cls, row = self.index[k, k2, e]
                if tgt_cls != BiDegree(cls[0] - 1, cls[1]):
                    raise ArithmeticError(f"perturbed differential has wrong degree at {g}")
                entries[row] = entries.get(row, 0) + c

    def d(self, cls: BiDegree) -> SparseMatrix:
        """d out of a class (an empty matrix if the class has no basis)."""
        tgt = BiDegree(cls[0] - 1, cls[1])
        cols = [self._cols.get(cls, {}).get(c, {}) for c in range(len(self.classes.get(cls, [])))]
        return SparseMatrix.from_columns(len(self.classes.get(tgt, [])), cols, self.field)

    def d_into(self, cls: BiDegree) -> SparseMatrix:
        return self.d(BiDegree(cls[0] + 1, cls[1]))

    def homology_dims(self) -> dict:
        out = {}
        for cls in self.classes:
            dim = subquotient_dim(self.d_into(cls), self.d(cls))
            if dim:
                out[cls] = dim
        return out


def dsg_hom_dims(p: ParamSet, i: int, j: int, fld: FieldSpec = RATIONALS) -> dict:
    """K-dimension of Hom_{D_sg(B)}(X_i, X_j) in each degree class mod tau (0 <= w < h).

    P_i models X_i up to the shift by i|x|, so Hom(P_i, P_j) degrees are moved
    by (j - i)|x| to land in the same convention as the E2 tables.
    """
    out = {}
    for (n, w), dim in SmallComplex(HomModel(p, i, j), fld).homology_dims().items():
        out[_normalize_class(p, n - 2 * p.a * (j - i), w - p.l * (j - i))] = dim
    return out


# End rings ----------------------------------------------------------------------------------

def _compose(M: HomModel, f: dict, g: dict) -> dict:
    """f o g for Q-linear maps P -> P: (f g)(e_k) = sum (-1)^{|f||q|} q_{k,k'} f(e_{k'})."""
    if not f or not g:
        return {}
    fpar = M.degree(*next(iter(f)))[0] & 1
    by_row: dict = {}
    for (k2, k3, mono), c in f.items():
        by_row.setdefault(k2, []).append((k3, mono, c))
    out: dict = {}
    for (k, k2, mono), c in g.items():
        sign = -1 if fpar and M.Q.parity(mono) else 1
        for k3, mono_f, cf in by_row.get(k2, ()):
            for m2, c2 in M.Q.mul_mono(mono, mono_f).items():
                _add(out, (k, k3, m2), sign * c * cf * c2)
    return out


class EndAlgebra:
    """End_{D_sg}(X_i) over K: a homology basis per degree class and its multiplication."""

    def __init__(self, p: ParamSet, i: int, fld: FieldSpec = RATIONALS):
        self.params, self.i, self.field = p, i, fld
        self.model = HomModel(p, i, i)
        self.cx = SmallComplex(self.model, fld)
        self.basis: list = []  # (class, vector over the class basis)
        self._bounds: dict = {}
        for cls, gs in self.cx.classes.items():
            d_in = self.cx.d_into(cls)
            bounds = [dict() for _ in range(d_in.cols)]
            for (r, c), v in d_in.entries.items():
                bounds[c][r] = v
            self._bounds[cls] = bounds
            chosen: list = []
            _, kernel = rank_kernel(self.cx.d(cls))
            for z in kernel:
                if solve_in_span(bounds + chosen, z, len(gs), fld) is None:
                    chosen.append(z)
            self.basis.extend((cls, z) for z in chosen)

    def classes_of(self, cls: BiDegree) -> list:
        return [n for n, (c, _) in enumerate(self.basis) if c == cls]

    def _lift(self, n: int) -> dict:
        """A cycle of the full Hom complex representing basis element n, in one actual degree."""
        p, M = self.params, self.model
        cls, vec = self.basis[n]
        gs = self.cx.classes[cls]
        ws = {r: M.small_degree(gs[r])[1] for r in vec}
        top = max(ws.values())
        out: dict = {}
        for r, c in vec.items():
            shift = (top - ws[r]) // p.h
            for (k, k2, (m, w)), c2 in M.big_incl(gs[r]).items():
                _add(out, (k, k2, (m + shift, w)), c * c2)
        return out

    def express(self, f: dict) -> tuple:
        """(class, {basis index: coef}) of a cycle of the full complex."""
        if not f:
            return None, {}
        small = self.model.big_proj(f)
        if not small:
            return None, {}
        vec: dict = {}
        cls = None
        for (k, k2, e, m), c in small.items():
            c_cls, row = self.cx.index[k, k2, e]
            if cls is not None and c_cls != cls:
                raise ArithmeticError("composite is not homogeneous")
            cls = c_cls
            vec[row] = vec.get(row, 0) + c
        idx = self.classes_of(cls)
        bounds = self._bounds[cls]
        coefs = solve_in_span(bounds + [self.basis[n][1] for n in idx], vec, len(self.cx.classes[cls]), self.field)
        if coefs is None:
            raise ArithmeticError("composite is not a cycle")
        return cls, {n: c for n, c in zip(idx, coefs[len(bounds):]) if c}

    def mul(self, x: int, y: int) -> dict:
        """x o y in the basis."""
        return self.express(_compose(self.model, self._lift(x), self._lift(y)))[1]

    def mul_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for x, c in u.items():
            for y, d in v.items():
                for z, e in self.mul(x, y).items():
                    out[z] = self.field.reduce(out.get(z, 0) + c * d * e)
        return {z: c for z, c in out.items() if c}

    def unit_class(self) -> BiDegree:
        return BiDegree(0, 0)

    def is_nilpotent(self, n: int) -> bool:
        power = {n: 1}
        for _ in range(len(self.basis)):
            power = self.mul_vec(power, {n: 1})
            if not power:
                return True
        return False

    def socle(self) -> list:
        """[(class, kernel vectors)] for {s : r s = s r = 0 for every nilpotent homogeneous r}.

        Homogeneous elements of a graded-local ring are units or nilpotent; when
        2i = h, alpha is a unit (alpha^2 is a multiple of tau^{l-2}), so the
        radical is not simply the span of the non-unit classes.
        """
        rad = [n for n in range(len(self.basis)) if self.is_nilpotent(n)]
        out = []
        for cls in sorted({c for c, _ in self.basis}):
            idx = self.classes_of(cls)
            rows: dict = {}
            r_i = 0
            for r in rad:
                for side in (0, 1):
                    prods = [self.mul(r, s) if side == 0 else self.mul(s, r) for s in idx]
                    for z in sorted({z for pr in prods for z in pr}):
                        for col, pr in enumerate(prods):
                            if pr.get(z):
                                rows[r_i, col] = pr[z]
                        r_i += 1
            _, kernel = rank_kernel(SparseMatrix(r_i, len(idx), rows, self.field))
            if kernel:
                out.append((cls, [{idx[c]: v for c, v in z.items()} for z in kernel]))
        return out


@dataclass
class EndReport:
    i: int
    total_K_dim: int
    degree_zero_dims: dict  # internal degree -> dim, homological degree 0
    socle_bidegree: BiDegree | None
    alpha_squared_coeff: object  # observed lambda, or None when x^{h-2i} vanishes
    details: dict = field(default_factory=dict)


def _lift_to_homological(p: ParamSet, cls: tuple, n: int) -> BiDegree | None:
    """The degree (n, w) in the tau-orbit of cls, if there is one."""
    n0, w0 = cls
    if p.b == 0:
        return BiDegree(n0, w0) if n0 == n else None
    if (n - n0) % (2 * p.b):
        return None
    q = (n - n0) // (2 * p.b)
    return BiDegree(n, w0 + p.h * q)


def expected_degree_zero(p: ParamSet, i: int) -> dict:
    """Dims of k[z]/(z^N), z = x^{|b|} tau^{|a|} of internal degree sign(a), N = ceil(min(i, h-i)/|b|)."""
    sgn = 1 if p.a > 0 else -1
    return {sgn * k: 1 for k in range(ceil(min(i, p.h - i) / abs(p.b)))}


def end_report(p: ParamSet, i: int, fld: FieldSpec = RATIONALS) -> EndReport:
    if not 1 <= i <= p.h - 1:
        raise ValueError(f"need 1 <= i <= h-1 = {p.h - 1}")
    E = EndAlgebra(p, i, fld)
    dims: dict = {}
    for cls, _ in E.basis:
        dims[cls] = dims.get(cls, 0) + 1
    deg0: dict = {}
    for cls, dim in dims.items():
        lifted = _lift_to_homological(p, cls, 0)
        if lifted is not None:
            deg0[lifted[1]] = deg0.get(lifted[1], 0) + dim
    soc = E.socle()
    lifts = [d for d in (_lift_to_homological(p, c, 2 * p.a - 1) for c, _ in soc) if d is not None]
    socle_deg = lifts[0] if len(lifts) == 1 else None
    # alpha at |t| - i|x|, x at |x|; alpha^2 = -lambda x^{h-2i} tau^{l-2}
    x_cls = _normalize_class(p, -2 * p.a, -p.l)
    a_cls = _normalize_class(p, 2 * i * p.a - 2 * p.b - 1, i * p.l - p.h)
    xs, als = E.classes_of(x_cls), E.classes_of(a_cls)
    lam = None
    details: dict = {"socle_classes": [c for c, _ in soc]}
    if len(als) == 1 and (i == 1 or len(xs) == 1):
        alpha = {als[0]: 1}
        unit = {E.classes_of(E.unit_class())[0]: 1}
        power, top = unit, alpha
        for _ in range(p.h - 2 * i):
            power = E.mul_vec(power, {xs[0]: 1}) if xs else {}
        for _ in range(i - 1):
            top = E.mul_vec(top, {xs[0]: 1})
        sq = E.mul_vec(alpha, alpha)
        if len(power) == 1:
            (z, c), = power.items()
            if set(sq) <= {z}:
                lam = fld.reduce(-fld(sq.get(z, 0)) * fld.inv(fld(c)))
        details["alpha_x_power_class"] = sorted({E.basis[n][0] for n in top})
    return EndReport(i, sum(dims.values()), deg0, socle_deg, lam, details)
