"""The DG algebras R and Q on their standard-monomial bases.

Elements are dicts {monomial: int}. A Q-monomial is (m, word): tau^m times a
word in the odd generators xi_1..xi_{h-1}, given as a tuple of subscripts.
Standard words have xi_{h-1} at most once and only in front.

Sign convention: homological grading, d of degree -1 and
d(fg) = d(f) g + (-1)^{|f|} f d(g). Every xi_i is odd, tau is even.
"""
from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactlin import RATIONALS, FieldSpec, SparseMatrix, prime_field, rank, subquotient_dim

BiDegree = namedtuple("BiDegree", "homological internal")

TAU = 0  # letter used for tau in raw generator sequences


@dataclass(frozen=True)
class ParamSet:
    a: int
    b: int
    h: int
    l: int

    def __post_init__(self):
        if self.h < 2 or self.l < 2:
            raise ValueError(f"need h, l >= 2, got h={self.h}, l={self.l}")
        if self.a == 0:
            raise ValueError("a must be nonzero")
        if self.a * self.h - self.b * self.l != 1:
            raise ValueError(f"ah - bl = {self.a * self.h - self.b * self.l}, must be 1")

    @classmethod
    def parse(cls, text: str) -> "ParamSet":
        parts = [int(x) for x in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError("expected a,b,h,l")
        return cls(*parts)

    def swap(self) -> "ParamSet":
        """Roles of A and B reversed: (a,b,h,l) -> (-b,-a,l,h)."""
        return ParamSet(-self.b, -self.a, self.l, self.h)

    def astuple(self) -> tuple:
        return (self.a, self.b, self.h, self.l)

    def __str__(self):
        return ",".join(map(str, self.astuple()))


SWEEP = [ParamSet(*p) for p in [(1, 1, 3, 2), (2, 1, 2, 3), (1, 1, 4, 3), (3, 2, 5, 7), (4, 3, 4, 5), (6, 5, 6, 7)]]


def _add(acc: dict, key, c: int):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _word_d(word: tuple) -> dict:
    """d of a product of odd generators, by the derivation rule.

    Only used on words whose d-images are already standard (true for
    every standard Q-word and every R-word).
    """
    out: dict = {}
    for p, i in enumerate(word):
        sign = -1 if p % 2 else 1
        pre, post = word[:p], word[p + 1:]
        for j in range(1, i):
            _add(out, pre + (j, i - j) + post, sign)
    return out


class HomogeneityError(ValueError):
    pass


class QAlgebra:
    """Q = Q_{h,l}: generators xi_1..xi_{h-1} (odd) and central tau (even)."""

    def __init__(self, p: ParamSet):
        self.p = p
        self.h, self.l = p.h, p.l
        self.top = p.h - 1
        self._times_letter = lru_cache(maxsize=None)(self._times_letter_raw)
        self._push = lru_cache(maxsize=None)(self._push_raw)

    # gradings -----------------------------------------------------------
    def gen_degree(self, i: int) -> BiDegree:
        if i == TAU:
            return BiDegree(2 * self.p.b, self.h)
        return BiDegree(2 * i * self.p.a - 1, i * self.l)

    def degree(self, mono: tuple) -> BiDegree:
        m, word = mono
        wt = sum(word)
        return BiDegree(2 * self.p.b * m + 2 * self.p.a * wt - len(word), self.h * m + self.l * wt)

    def parity(self, mono: tuple) -> int:
        return len(mono[1]) % 2

    def is_standard(self, word: tuple) -> bool:
        return all(1 <= x <= self.top for x in word) and self.top not in word[1:]

    def weight(self, mono: tuple) -> int:
        return sum(mono[1])

    # relations ------------------------------------------------------------
    def relation_rhs(self, i: int) -> dict:
        """Right-hand side of sum_{j+k=i} xi_j xi_k, 2 <= i <= 2h-2."""
        if i <= self.top:
            return {(0, (j, i - j)): 1 for j in range(1, i)}
        if i == self.h:
            return {(self.l, ()): -1}
        return {}

    def relations(self) -> list:
        """(i, lhs, rhs) for every defining relation, as elements."""
        out = []
        for i in range(2, 2 * self.h - 1):
            lhs: dict = {}
            for j in range(max(1, i - self.top), min(self.top, i - 1) + 1):
                for mono, c in self.normalize((j, i - j)).items():
                    _add(lhs, mono, c)
            out.append((i, lhs, self.relation_rhs(i) if i > self.top else self.diff({(0, (i,)): 1})))
        return out

    # normal form ----------------------------------------------------------
    def _push_raw(self, f: tuple) -> tuple:
        """Normal form of f * xi_{h-1} for f a word over xi_1..xi_{h-2}."""
        if not f:
            return (((0, (self.top,)), 1),)
        top, h, l = self.top, self.h, self.l
        pre, s = f[:-1], f[-1]
        out: dict = {}
        # xi_s xi_top = rhs - xi_top xi_s - sum_{j+k=top+s, s<j,k<top} xi_j xi_k
        if s == 1 and top + s == h:
            _add(out, (l, pre), -1)
        for (m, g), c in self._push(pre):
            _add(out, (m, g + (s,)), -c)
        for j in range(s + 1, top):
            k = top + s - j
            if s < k < top:
                _add(out, (0, pre + (j, k)), -1)
        return tuple(out.items())

    def _times_letter_raw(self, word: tuple, x: int) -> tuple:
        """Normal form of (standard word) * xi_x."""
        top = self.top
        if x != top:
            if x < 1 or x > top:
                raise ValueError(f"no generator xi_{x}")
            return (((0, word + (x,)), 1),)
        if not word:
            return (((0, (top,)), 1),)
        if word[0] != top:
            return self._push(word)
        out: dict = {}
        for (m, g), c in self._push(word[1:]):
            if g and g[0] == top:
                # xi_top^2 = rhs of i = 2h-2, which is -tau^l when h = 2
                if self.h == 2:
                    _add(out, (m + self.l, g[1:]), -c)
            else:
                _add(out, (m, (top,) + g), c)
        return tuple(out.items())

    def normalize(self, raw) -> dict:
        """Standard form of a raw product of generators (TAU = 0 for tau)."""
        m0 = sum(1 for x in raw if x == TAU)
        acc = {(m0, ()): 1}
        for x in raw:
            if x == TAU:
                continue
            nxt: dict = {}
            for (m, w), c in acc.items():
                for (dm, w2), c2 in self._times_letter(w, x):
                    _add(nxt, (m + dm, w2), c * c2)
            acc = nxt
        return acc

    def mul_mono(self, u: tuple, v: tuple) -> dict:
        (m1, w1), (m2, w2) = u, v
        acc = {(m1 + m2, w1): 1}
        for x in w2:
            nxt: dict = {}
            for (m, w), c in acc.items():
                for (dm, w3), c2 in self._times_letter(w, x):
                    _add(nxt, (m + dm, w3), c * c2)
            acc = nxt
        return acc

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, c in x.items():
            for v, d in y.items():
                for mono, e in self.mul_mono(u, v).items():
                    _add(out, mono, c * d * e)
        return out

    # differential and homotopy -----------------------------------------------
    def check_homogeneous(self, e: dict) -> BiDegree | None:
        degs = {self.degree(mono) for mono in e}
        if len(degs) > 1:
            raise HomogeneityError(f"mixed bidegrees {sorted(degs)}")
        return degs.pop() if degs else None

    def diff_mono(self, mono: tuple) -> dict:
        m, word = mono
        if self.h == 2:
            return {}
        return {(m, w): c for w, c in _word_d(word).items()}

    def diff(self, e: dict) -> dict:
        self.check_homogeneous(e)
        out: dict = {}
        for mono, c in e.items():
            for m2, c2 in self.diff_mono(mono).items():
                _add(out, m2, c * c2)
        return out

    def delta_mono(self, mono: tuple) -> dict:
        m, w = mono
        if len(w) >= 2 and w[0] == 1 and w[1] <= self.h - 2:
            return {(m, (w[1] + 1,) + w[2:]): 1}
        return {}

    def delta(self, e: dict) -> dict:
        self.check_homogeneous(e)
        out: dict = {}
        for mono, c in e.items():
            for m2, c2 in self.delta_mono(mono).items():
                _add(out, m2, c * c2)
        return out

    def pi_mono(self, mono: tuple) -> dict:
        """i o pi: projection onto k[tau] + xi_1 k[tau]."""
        return {mono: 1} if mono[1] in ((), (1,)) else {}

    # enumeration -------------------------------------------------------------
    def words_of_weight(self, n: int) -> list:
        """All standard tau-free words of weight n."""
        low = _compositions(n, self.top - 1)
        out = list(low)
        if n >= self.top:
            out += [(self.top,) + w for w in _compositions(n - self.top, self.top - 1)]
        return out

    def monomials(self, max_internal: int) -> list:
        out = []
        for m in range(max_internal // self.h + 1):
            rest = max_internal - self.h * m
            for wt in range(rest // self.l + 1):
                out += [(m, w) for w in self.words_of_weight(wt)]
        return out


    # Hopf structure ------------------------------------------------------------
    def comultiply_mono(self, mono: tuple) -> dict:
        """Delta of a standard monomial as {(left, right): coeff}.

        Delta is the product of the primitive generator images, so a word
        splits over all subwords with the Koszul shuffle sign; subwords of a
        standard word are standard, so nothing needs normalizing.
        """
        m, word = mono
        n = len(word)
        out: dict = {}
        for mask in range(1 << n):
            left, right, sign, passed = [], [], 1, 0
            for p, x in enumerate(word):
                if mask >> p & 1:
                    left.append(x)
                    if passed % 2:
                        sign = -sign
                else:
                    right.append(x)
                    passed += 1
            for k in range(m + 1):
                _add(out, ((k, tuple(left)), (m - k, tuple(right))), sign * comb(m, k))
        return out

    def comultiply(self, e: dict) -> dict:
        out: dict = {}
        for mono, c in e.items():
            for key, c2 in self.comultiply_mono(mono).items():
                _add(out, key, c * c2)
        return out

    def antipode_mono(self, mono: tuple) -> dict:
        """S is the graded anti-automorphism with S(xi_i) = -xi_i, S(tau) = -tau."""
        m, word = mono
        n = len(word)
        sign = (-1) ** (m + n + n * (n - 1) // 2)
        return {(m + dm, w): sign * c for (dm, w), c in self.normalize(tuple(reversed(word))).items()}

    def antipode(self, e: dict) -> dict:
        out: dict = {}
        for mono, c in e.items():
            for m2, c2 in self.antipode_mono(mono).items():
                _add(out, m2, c * c2)
        return out

    def tensor_mul(self, x: dict, y: dict) -> dict:
        """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd."""
        out: dict = {}
        for (a, b), c1 in x.items():
            for (c, d), c2 in y.items():
                sign = -1 if self.parity(b) and self.parity(c) else 1
                for l, e1 in self.mul_mono(a, c).items():
                    for r, e2 in self.mul_mono(b, d).items():
                        _add(out, (l, r), sign * c1 * c2 * e1 * e2)
        return out

    def tensor_diff(self, x: dict) -> dict:
        out: dict = {}
        for (a, b), c in x.items():
            for a2, c2 in self.diff_mono(a).items():
                _add(out, (a2, b), c * c2)
            sign = -1 if self.parity(a) else 1
            for b2, c2 in self.diff_mono(b).items():
                _add(out, (a, b2), sign * c * c2)
        return out


@lru_cache(maxsize=None)
def _compositions_cached(n: int, maxpart: int) -> tuple:
    if n == 0:
        return ((),)
    if maxpart < 1:
        return ()
    out = []
    for first in range(1, min(n, maxpart) + 1):
        out += [(first,) + w for w in _compositions_cached(n - first, maxpart)]
    return tuple(out)


def _compositions(n: int, maxpart: int) -> list:
    return list(_compositions_cached(n, maxpart))


def build_Q(p: ParamSet) -> QAlgebra:
    return QAlgebra(p)


class RAlgebra:
    """R: free on odd xi_1, xi_2, ... with d(xi_i) = sum_{j+k=i} xi_j xi_k, cut at a weight cap."""

    def __init__(self, a: int, weight_cap: int):
        if a == 0:
            raise ValueError("a must be nonzero")
        if weight_cap < 2:
            raise ValueError("weight cap must be at least 2")
        self.a = a
        self.cap = weight_cap

    def degree(self, word: tuple) -> BiDegree:
        """(homological degree, weight)."""
        wt = sum(word)
        return BiDegree(2 * self.a * wt - len(word), wt)

    def weight(self, word: tuple) -> int:
        return sum(word)

    def height(self, word: tuple) -> int:
        return len(word)

    def diff(self, e: dict) -> dict:
        out: dict = {}
        for w, c in e.items():
            if sum(w) > self.cap:
                raise ValueError(f"{w} exceeds the weight cap {self.cap}")
            for w2, c2 in _word_d(w).items():
                _add(out, w2, c * c2)
        return out

    def delta(self, e: dict) -> dict:
        out: dict = {}
        for w, c in e.items():
            if len(w) >= 2 and w[0] == 1:
                _add(out, (w[1] + 1,) + w[2:], c)
        return out

    def pi_mono(self, w: tuple) -> dict:
        return {w: 1} if w in ((), (1,)) else {}

    def mu(self, h: int) -> dict:
        """The Massey-power representative mu_h = d(xi_h)."""
        if not 2 <= h <= self.cap:
            raise ValueError(f"need 2 <= h <= {self.cap}")
        return self.diff({(h,): 1})

    def words_of_weight(self, n: int) -> list:
        return _compositions(n, n)

    def words(self) -> list:
        return [w for n in range(self.cap + 1) for w in self.words_of_weight(n)]


def build_R(a: int, weight_cap: int) -> RAlgebra:
    return RAlgebra(a, weight_cap)


# homology ------------------------------------------------------------------

def _word_homology(words: list, d_word, fld: FieldSpec) -> dict:
    """Homology, by word length, of a complex spanned by words; d raises length by 1."""
    by_len: dict = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    index = {L: {w: n for n, w in enumerate(ws)} for L, ws in by_len.items()}
    maps = {}
    for L, ws in by_len.items():
        tgt = index.get(L + 1, {})
        cols = []
        for w in ws:
            col = {}
            for w2, c in d_word(w).items():
                col[tgt[w2]] = c
            cols.append(col)
        maps[L] = SparseMatrix.from_columns(len(tgt), cols, fld)
    out = {}
    for L, ws in by_len.items():
        d_out = maps[L]
        prev = by_len.get(L - 1, [])
        d_in = maps[L - 1] if prev else SparseMatrix(len(ws), 0, {}, fld)
        out[L] = subquotient_dim(d_in, d_out)
    return out


def homotopy_violations(alg, monos) -> list:
    """Monomials where (delta d + d delta)(x) != x - i pi(x)."""
    bad = []
    for mono in monos:
        one = {mono: 1}
        lhs: dict = {}
        for part in (alg.delta(alg.diff(one)), alg.diff(alg.delta(one))):
            for k, c in part.items():
                _add(lhs, k, c)
        rhs = dict(one)
        for k, c in alg.pi_mono(mono).items():
            _add(rhs, k, -c)
        if lhs != rhs:
            bad.append(mono)
    return bad


def d_squared_violations(alg, monos) -> list:
    bad = []
    for mono in monos:
        dd = alg.diff(alg.diff({mono: 1}))
        if dd:
            bad.append(mono)
    return bad


def homology_dims(alg, window: int, fld: FieldSpec = RATIONALS, max_exact: int = 4000, report: dict | None = None) -> dict:
    """Bigraded homology dimensions in the window.

    For Q the window bounds the internal degree; for R it is a weight cap
    (at most alg.cap). Every bidegree with a nonzero chain group appears
    as a key. The complex splits over tau-exponent and weight, so each
    weight slice of tau-free words is reduced once. Slices with more than
    max_exact words are not row-reduced: the homotopy identity is checked
    on every word of the slice instead (compiled sweep), which makes i pi a
    homotopy inverse, so the homology is the image of pi. The optional
    report dict records the route taken per weight.
    """
    is_q = isinstance(alg, QAlgebra)
    max_wt = window // alg.l if is_q else min(window, alg.cap)
    d_word = (lambda w: _word_d(w) if alg.h > 2 else {}) if is_q else _word_d
    per_weight = {}
    big = None
    for wt in range(max_wt + 1):
        size = len(alg.words_of_weight(wt)) if not is_q or wt < 8 else None
        if size is None:
            if big is None:
                from ._kernels import enumerate_words
                big = enumerate_words(alg.h, max_wt)
            size = len(big[wt])
        if size <= max_exact or not is_q:
            per_weight[wt] = _word_homology(alg.words_of_weight(wt), d_word, fld)
            route = "exact"
        else:
            from ._kernels import homotopy_sweep, word_lengths
            nbad, first = homotopy_sweep(big[wt], alg.h)
            if nbad:
                raise ArithmeticError(f"homotopy identity fails in weight {wt} ({nbad} words)")
            crit = {0: 1} if wt == 0 else ({1: 1} if wt == 1 else {})
            per_weight[wt] = {L: crit.get(L, 0) for L in word_lengths(big[wt], alg.h)}
            route = "contraction"
        if report is not None:
            report[wt] = (route, size)
    out: dict = {}
    for wt, hl in per_weight.items():
        for L, dim in hl.items():
            if is_q:
                for m in range((window - alg.l * wt) // alg.h + 1):
                    deg = BiDegree(2 * alg.p.b * m + 2 * alg.p.a * wt - L, alg.h * m + alg.l * wt)
                    out[deg] = out.get(deg, 0) + dim
            else:
                deg = BiDegree(2 * alg.a * wt - L, wt)
                out[deg] = out.get(deg, 0) + dim
    return out


def expected_homology(p: ParamSet, window: int) -> dict:
    """Dims of k[tau] (x) Lambda(xi), or k[tau,xi]/(xi^2 + tau^l) when h = 2, in the window."""
    out = {}
    for m in range(window // p.h + 1):
        out[BiDegree(2 * p.b * m, p.h * m)] = out.get(BiDegree(2 * p.b * m, p.h * m), 0) + 1
        if p.h * m + p.l <= window:
            d = BiDegree(2 * p.b * m + 2 * p.a - 1, p.h * m + p.l)
            out[d] = out.get(d, 0) + 1
    return out


# Hopf checks -----------------------------------------------------------------

def _reduce(e: dict, p: int) -> dict:
    return {k: v % p for k, v in e.items() if v % p} if p else {k: v for k, v in e.items() if v}


def _minus(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, c in y.items():
        _add(out, k, -c)
    return out


def hopf_checks(alg: QAlgebra, window: int, fld: FieldSpec = RATIONALS) -> dict:
    """Check the Hopf identities on every standard monomial of internal degree <= window.

    Returns counts of failures for d Delta = Delta d, cocommutativity on
    generators, the antipode identity S(x_(1)) x_(2) = 0 in nonzero degree,
    and Delta(uv) = Delta(u) Delta(v) on pairs of generators. The last one
    only holds when char k = p and l is a power of p.
    """
    p = fld.characteristic
    monos = alg.monomials(window)
    out = {"monomials": len(monos), "d_delta": [], "cocommutative": [], "antipode": [], "multiplicative": []}
    for mono in monos:
        one = {mono: 1}
        cop = alg.comultiply(one)
        if _reduce(_minus(alg.tensor_diff(cop), alg.comultiply(alg.diff(one))), p):
            out["d_delta"].append(mono)
        if mono == (0, ()):
            continue
        acc: dict = {}
        for (a, b), c in cop.items():
            for x, c2 in alg.mul(alg.antipode_mono(a), {b: 1}).items():
                _add(acc, x, c * c2)
        if _reduce(acc, p):
            out["antipode"].append(mono)
    gens = [(0, (i,)) for i in range(1, alg.h)] + [(1, ())]
    for g in gens:
        cop = alg.comultiply_mono(g)
        flipped = {(b, a): c for (a, b), c in cop.items()}
        if _reduce(_minus(cop, flipped), p):
            out["cocommutative"].append(g)
        for g2 in gens:
            lhs = alg.comultiply(alg.mul_mono(g, g2))
            rhs = alg.tensor_mul(alg.comultiply_mono(g), alg.comultiply_mono(g2))
            if _reduce(_minus(lhs, rhs), p):
                out["multiplicative"].append((g, g2))
    out["ok"] = not any(out[k] for k in ("d_delta", "cocommutative", "antipode", "multiplicative"))
    return out


def comultiply(alg: QAlgebra, e: dict) -> dict:
    return alg.comultiply(e)


def antipode(alg: QAlgebra, e: dict) -> dict:
    return alg.antipode(e)


def normalize(alg: QAlgebra, raw) -> dict:
    return alg.normalize(raw)


def diff(alg, e: dict) -> dict:
    return alg.diff(e)


def delta(alg, e: dict) -> dict:
    return alg.delta(e)


# bimodule duality -------------------------------------------------------------
# Elements of Q[tau^-1] are dicts {(m, word): c} with m any integer. A
# functional tau^m word* sends word to tau^m and the other standard words to 0;
# functionals are compared by their values on test words.

def _evaluate(f: dict, z: dict) -> dict:
    """Value of the functional f on the element z, as {tau exponent: coeff}."""
    out: dict = {}
    for (m, u), c in f.items():
        for (m2, w), c2 in z.items():
            if w == u:
                _add(out, m + m2, c * c2)
    return out


def _phi(alg: QAlgebra, w: dict) -> dict:
    """The map 1 -> xi_1*, xi_1 -> 1*, other standard words -> 0."""
    out: dict = {}
    for (m, word), c in w.items():
        if word == ():
            _add(out, (m, (1,)), c)
        elif word == (1,):
            _add(out, (m, ()), c)
    return out


def bimodule_duality_check(p: ParamSet, window: int) -> dict:
    """Test Q[tau^-1] -> shifted dual for bimodule linearity, d-linearity and homology.

    Conventions: phi has odd degree, phi(xw) = (-1)^{|x|} x.phi(w),
    phi(wx) = phi(w).x, (x.f)(z) = (-1)^{|x|(|f|+|z|)} f(zx), (f.y)(z) = f(yz),
    (df)(z) = -(-1)^{|f|} f(dz). Each failure records whether the two sides
    differ by more than a sign (then no sign convention can repair it).
    """
    alg = build_Q(p)
    h, l = p.h, p.l
    max_wt = window // l
    words = [w for wt in range(max_wt + 1) for w in alg.words_of_weight(wt)]
    gens = [(0, (i,)) for i in range(1, h)] + [(1, ())]
    failures = []

    def par(word):
        return len(word) % 2

    def record(kind, w, g, z, lhs, rhs):
        if lhs != rhs:
            failures.append({"kind": kind, "monomial": w, "generator": g, "test": z,
                             "lhs": lhs, "rhs": rhs,
                             "sign_independent": lhs != {k: -c for k, c in rhs.items()}})

    checked = 0
    for w in words:
        wm = (0, w)
        fw = _phi(alg, {wm: 1})
        fpar = (par(w) + 1) % 2
        for g in gens:
            gpar = par(g[1])
            left = alg.mul_mono(g, wm)
            right = alg.mul_mono(wm, g)
            f_left = _phi(alg, left)
            f_right = _phi(alg, right)
            for z in words:
                zm = (0, z)
                s = (-1) ** gpar
                lhs = {k: s * c for k, c in _evaluate(f_left, {zm: 1}).items()}
                s2 = (-1) ** (gpar * (fpar + par(z)))
                rhs = {k: s2 * c for k, c in _evaluate(fw, alg.mul_mono(zm, g)).items()}
                record("left", w, g, z, lhs, rhs)
                record("right", w, g, z, _evaluate(f_right, {zm: 1}), _evaluate(fw, alg.mul_mono(g, zm)))
                checked += 2
        # phi(dw) = d phi(w), with (d phi(w))(z) = -(-1)^{|phi(w)|} phi(w)(dz)
        dw = alg.diff({wm: 1}) if w else {}
        for z in words:
            zm = (0, z)
            lhs = _evaluate(_phi(alg, dw), {zm: 1})
            s = -((-1) ** fpar)
            rhs = {k: s * c for k, c in _evaluate(fw, alg.diff({zm: 1}) if z else {}).items()}
            record("d", w, None, z, lhs, rhs)
            checked += 1
    # homology: H = k[tau^+-1]{1, xi_1}; the images pair nondegenerately with the cycles
    reps = [(0, ()), (0, (1,))]
    pairing = [[_evaluate(_phi(alg, {r: 1}), {s: 1}).get(0, 0) for s in reps] for r in reps]
    det = pairing[0][0] * pairing[1][1] - pairing[0][1] * pairing[1][0]
    cycles = all(not _evaluate(_phi(alg, {r: 1}), alg.diff({(0, z): 1}) if z else {}) for r in reps for z in words)
    return {"params": str(p), "window": window, "checked": checked, "failures": failures,
            "homology_bijective": det != 0 and cycles, "ok": not failures and det != 0 and cycles}
