"""The minimal A-infinity algebras A and B, their small modules, and transfer from Q.

Basis elements of A and B are pairs (j, e) meaning P^j Q^e, where P is the
even generator (tau for A, x for B) and Q the odd one (xi for A, t for B),
e in {0, 1}. Elements are dicts {basis: int}.

Sign convention (Keller): m_n has degree n-2 and
  sum_{r+s+t=n} (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0,
with the Koszul sign (-1)^{s (|a_1|+...+|a_r|)} when m_s jumps over a_1..a_r.
In bar form b_n(sa_1..sa_n) = (-1)^{sum_k (n-k)(|a_k|+1)} s m_n(a_1..a_n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .dga import BiDegree, ParamSet, QAlgebra, _add


def _scale(e: dict, c: int) -> dict:
    return {k: c * v for k, v in e.items() if c * v}


def _bd_add(x: BiDegree, y: BiDegree, k: int = 1) -> BiDegree:
    return BiDegree(x[0] + k * y[0], x[1] + k * y[1])


class AInftyAlgebra:
    """k[P] (x) Lambda(Q) with m_2 and one higher family m_{n0}(P^j Q, ...) = sign P^{N + sum j}.

    When n0 = 2 the algebra is formal with Q^2 = -P^N.
    corrupt=True flips the sign of the single entry m_{n0}(PQ, Q, ..., Q)
    (negative control).
    """

    def __init__(self, params: ParamSet, name: str, even_deg: BiDegree, odd_deg: BiDegree,
                 n0: int, N: int, corrupt: bool = False):
        self.params = params
        self.name = name
        self.even_deg = BiDegree(*even_deg)
        self.odd_deg = BiDegree(*odd_deg)
        self.n0 = n0
        self.N = N
        self.sign = (-1) ** (n0 * (n0 - 1) // 2)
        self.corrupt = corrupt
        self.arities = {2, n0}

    def degree(self, x: tuple) -> BiDegree:
        j, e = x
        return BiDegree(j * self.even_deg[0] + e * self.odd_deg[0], j * self.even_deg[1] + e * self.odd_deg[1])

    def parity(self, x: tuple) -> int:
        return x[1]

    def basis(self, max_power: int) -> list:
        return [(j, e) for j in range(max_power + 1) for e in (0, 1)]

    def m(self, n: int, args: tuple) -> dict:
        if n == 2:
            (j1, e1), (j2, e2) = args
            if e1 + e2 <= 1:
                return {(j1 + j2, e1 + e2): 1}
            if self.n0 == 2:
                return {(j1 + j2 + self.N, 0): 1 if self.corrupt and args == ((1, 1), (0, 1)) else -1}
            return {}
        if n == self.n0 and all(e == 1 for _, e in args):
            c = self.sign
            if self.corrupt and args[0] == (1, 1) and all(x == (0, 1) for x in args[1:]):
                c = -c
            return {(self.N + sum(j for j, _ in args), 0): c}
        return {}

    def ops(self, max_power: int = 1) -> dict:
        """Sparse table {(n, args): value} of the nonzero higher operations on small inputs."""
        out = {}
        if self.n0 > 2:
            for args in product(range(max_power + 1), repeat=self.n0):
                t = tuple((j, 1) for j in args)
                out[self.n0, t] = self.m(self.n0, t)
        return out


def build_A(p: ParamSet, corrupt: bool = False) -> AInftyAlgebra:
    """A = k[tau] (x) Lambda(xi) with m_h(xi,...,xi) = (-1)^{h(h-1)/2} tau^l."""
    return AInftyAlgebra(p, "A", BiDegree(2 * p.b, p.h), BiDegree(2 * p.a - 1, p.l), p.h, p.l, corrupt)


def build_B(p: ParamSet, corrupt: bool = False) -> AInftyAlgebra:
    """B = k[x] (x) Lambda(t) with m_l(t,...,t) = (-1)^{l(l-1)/2} x^h."""
    return AInftyAlgebra(p, "B", BiDegree(-2 * p.a, -p.l), BiDegree(-2 * p.b - 1, -p.h), p.l, p.h, corrupt)


# Stasheff identities ------------------------------------------------------------

def _stasheff_terms(n: int, args: tuple, inner, outer, parity, inner_arities, outer_arities) -> dict:
    """sum (-1)^{r+st} outer(1^r (x) inner_s (x) 1^t) on one argument tuple.

    inner(s, r, sub) computes m_s on args[r:r+s]; outer(k, tup) the outer op.
    """
    out: dict = {}
    for s in range(1, n + 1):
        if s not in inner_arities:
            continue
        u = n - s + 1
        if u not in outer_arities:
            continue
        pre_par = 0
        for r in range(0, n - s + 1):
            if r:
                pre_par += parity(args[r - 1])
            t = n - r - s
            inner_val = inner(s, r, args[r:r + s])
            if not inner_val:
                continue
            sign = (-1) ** (r + s * t + s * pre_par)
            for y, c in inner_val.items():
                for z, c2 in outer(u, args[:r] + (y,) + args[r + s:]).items():
                    _add(out, z, sign * c * c2)
    return out


def stasheff_defect(alg: AInftyAlgebra, max_arity: int, window: int = 1) -> list:
    """Violations (args, defect) of the Stasheff identities.

    Inputs run over basis elements P^j Q^e with j <= window and arity <= max_arity.
    All operations are k[P]-multilinear, so window = 1 already exercises the
    P-dependence of every entry.
    """
    basis = alg.basis(window)
    ar = alg.arities
    bad = []
    for n in range(1, max_arity + 1):
        if not any(s in ar and n - s + 1 in ar for s in range(1, n + 1)):
            continue
        for args in product(basis, repeat=n):
            val = _stasheff_terms(n, args, lambda s, r, sub: alg.m(s, sub), alg.m, alg.parity, ar, ar)
            if val:
                bad.append((args, val))
    return bad


# modules ----------------------------------------------------------------------------

class AInftyModule:
    """A right-justified A-infinity module: ops m_n(a_1..a_{n-1}, y) with y in the module.

    Module basis elements are (j, g): P^j times the generator g.
    """

    def __init__(self, over: AInftyAlgebra, name: str, gens: dict, ops, arities: set,
                 truncate: int | None = None):
        self.over = over
        self.name = name
        self.gens = gens  # generator -> BiDegree
        self._ops = ops
        self.arities = set(arities)
        self.truncate = truncate  # P^truncate acts as zero

    def degree(self, y: tuple) -> BiDegree:
        j, g = y
        return _bd_add(self.gens[g], self.over.even_deg, j)

    def parity(self, y: tuple) -> int:
        return self.degree(y)[0] % 2

    def basis(self, max_power: int) -> list:
        top = max_power + 1 if self.truncate is None else min(max_power + 1, self.truncate)
        return [(j, g) for j in range(top) for g in self.gens]

    def m(self, n: int, args: tuple, y: tuple) -> dict:
        out = self._ops(n, args, y)
        if self.truncate is not None:
            out = {k: c for k, c in out.items() if k[0] < self.truncate}
        return out


def module_stasheff_defect(mod: AInftyModule, max_arity: int, window: int = 1) -> list:
    """Violations of the module Stasheff identities on basis tuples up to arity max_arity."""
    alg = mod.over
    abasis = alg.basis(window)
    mbasis = mod.basis(window)
    bad = []

    def parity(x):
        return mod.parity(x) if isinstance(x[1], str) else alg.parity(x)

    inner_ar = alg.arities | mod.arities
    for n in range(1, max_arity + 1):
        if not any(s in inner_ar and n - s + 1 in mod.arities for s in range(1, n + 1)):
            continue
        for algs in product(abasis, repeat=n - 1):
            for y in mbasis:
                args = algs + (y,)

                def inner(s, r, sub, n=n):
                    if r + s == n:
                        return mod.m(s, sub[:-1], sub[-1])
                    return alg.m(s, sub)

                def outer(u, tup):
                    return mod.m(u, tup[:-1], tup[-1])

                val = _stasheff_terms(n, args, inner, outer, parity, inner_ar, mod.arities)
                if val:
                    bad.append((args, val))
    return bad


def _two_generator_ops(alg: AInftyAlgebra, i: int, top: int, sign: int, corrupt: bool):
    """Ops of a free k[P]-module on u, v with m_{i+1}(Q^i, u) = v, m_{top-i+1}(Q^{top-i}, v) = sign P^N u."""
    c2 = -sign if corrupt else sign

    def ops(n, args, y):
        j0, g = y
        if n == 2 and args[0][1] == 0:
            return {(j0 + args[0][0], g): 1}
        if not all(e == 1 for _, e in args):
            return {}
        js = sum(j for j, _ in args) + j0
        if g == "u" and n == i + 1:
            return {(js, "v"): 1}
        if g == "v" and n == top - i + 1:
            return {(js + alg.N, "u"): c2}
        return {}

    return ops, {2, i + 1, top - i + 1}


def build_W(p: ParamSet, i: int, corrupt: bool = False) -> AInftyModule:
    """The B-module W_i, 1 <= i <= l. W_l is k[x]/(x^h) u with zero higher ops."""
    B = build_B(p)
    if not 1 <= i <= p.l:
        raise ValueError(f"need 1 <= i <= l = {p.l}")
    if i == p.l:
        def ops(n, args, y):
            if n == 2 and args[0][1] == 0:
                return {(y[0] + args[0][0], y[1]): 1}
            return {}
        return AInftyModule(B, f"W_{i}", {"u": BiDegree(0, 0)}, ops, {2}, truncate=p.h)
    sign = (-1) ** ((p.l - 2 * i + 2) * (p.l - 1) // 2)
    ops, ar = _two_generator_ops(B, i, p.l, sign, corrupt)
    gens = {"u": BiDegree(0, 0), "v": BiDegree(-2 * i * p.b - 1, -i * p.h)}
    return AInftyModule(B, f"W_{i}", gens, ops, ar)


def build_Y(p: ParamSet, i: int, corrupt: bool = False) -> AInftyModule:
    """The A-module Y_i, 1 <= i <= h-1, free over k[tau] on u (degree of xi) and v.

    |v| is forced by m_{i+1}(xi^i, u) = v having degree i - 1.
    """
    A = build_A(p)
    if not 1 <= i <= p.h - 1:
        raise ValueError(f"need 1 <= i <= h-1 = {p.h - 1}")
    sign = (-1) ** ((p.h - 2 * i + 2) * (p.h - 1) // 2)
    ops, ar = _two_generator_ops(A, i, p.h, sign, corrupt)
    u = A.odd_deg
    v = BiDegree((i + 1) * u[0] + i - 1, (i + 1) * u[1])
    return AInftyModule(A, f"Y_{i}", {"u": u, "v": v}, ops, ar)


def build_X(p: ParamSet, i: int) -> AInftyModule:
    """X_i = the ideal (t, x^i) of B with the restricted operations, 1 <= i <= h."""
    B = build_B(p)
    if not 1 <= i <= p.h:
        raise ValueError(f"need 1 <= i <= h = {p.h}")

    def ops(n, args, y):
        # module basis (j, "t") = x^j t, (j, "1") = x^{j+i}
        j, g = y
        elem = (j, 1) if g == "t" else (j + i, 0)
        out = {}
        for (k, e), c in B.m(n, args + (elem,)).items():
            out[(k, "t") if e else (k - i, "1")] = c
        return out

    gens = {"t": B.odd_deg, "1": BiDegree(i * B.even_deg[0], i * B.even_deg[1])}
    return AInftyModule(B, f"X_{i}", gens, ops, B.arities)


# homotopy transfer -------------------------------------------------------------------

@dataclass
class TransferResult:
    params: ParamSet
    ops: dict = field(default_factory=dict)  # (n, args) -> element of H, args over (j, e)
    global_sign: int = 1
    mismatches: list = field(default_factory=list)  # entries differing from build_A


def transfer(q: QAlgebra, max_arity: int, window: int) -> TransferResult:
    """Transferred A-infinity operations on H_*Q = k[tau]{1, xi_1}.

    Bar-form perturbation recursion: q_1 = i, q_n = sum_k b_2(Q_k, Q_{n-k}) with
    Q_1 = i and Q_k = h q_k, h = s delta s^{-1}; then b_n = pi q_n. Every
    partial tree has bar degree 0, so no further signs enter. Inputs run over
    1, xi, tau, tau xi (the ops are k[tau]-multilinear) with total internal
    degree <= window.
    """
    p = q.p
    if max_arity < p.h:
        raise ValueError(f"max_arity must be at least h = {p.h}")
    if window < p.h * p.l:
        raise ValueError(f"window {window} does not reach tau^l (internal degree {p.h * p.l})")

    def incl(x):
        j, e = x
        return {(j, (1,) if e else ()): 1}

    def b2(x: dict, y: dict) -> dict:
        out: dict = {}
        for u, c in x.items():
            s = 1 if len(u[1]) % 2 else -1  # (-1)^{|u|+1}
            for v, d in y.items():
                for w, e in q.mul_mono(u, v).items():
                    _add(out, w, s * c * d * e)
        return out

    @lru_cache(maxsize=None)
    def qn(args: tuple) -> tuple:
        n = len(args)
        if n == 1:
            return tuple(incl(args[0]).items())
        out: dict = {}
        for k in range(1, n):
            left = dict(qn(args[:k]))
            right = dict(qn(args[k:]))
            if k > 1:
                left = q.delta(left) if left else {}
            if n - k > 1:
                right = q.delta(right) if right else {}
            for w, c in b2(left, right).items():
                _add(out, w, c)
        return tuple(out.items())

    def proj(x: dict) -> dict:
        out = {}
        for (j, w), c in x.items():
            if w == ():
                out[j, 0] = c
            elif w == (1,):
                out[j, 1] = c
        return out

    A = build_A(p)
    basis = [(0, 0), (0, 1), (1, 0), (1, 1)]
    res = TransferResult(p)
    for n in range(2, max_arity + 1):
        for args in product(basis, repeat=n):
            if sum(A.degree(x)[1] for x in args) > window:
                continue
            sign = (-1) ** sum((n - k) * (x[1] + 1) for k, x in enumerate(args, 1))
            val = _scale(proj(dict(qn(args))), sign)
            if val:
                res.ops[n, args] = val
    key = (p.h, ((0, 1),) * p.h)
    got = res.ops.get(key, {})
    want = A.m(p.h, key[1])
    if got == want:
        res.global_sign = 1
    elif got == _scale(want, -1):
        res.global_sign = -1
    else:
        raise ArithmeticError(f"m_{p.h}(xi,...,xi) = {got}, expected +-{want}")
    for n in range(2, max_arity + 1):
        for args in product(basis, repeat=n):
            if sum(A.degree(x)[1] for x in args) > window:
                continue
            want = A.m(n, args)
            if n == p.h and n > 2:
                want = _scale(want, res.global_sign)
            if res.ops.get((n, args), {}) != want:
                res.mismatches.append((n, args, res.ops.get((n, args), {}), want))
    return res


class TransferredAlgebra:
    """The transferred operations as an A-infinity algebra on k[tau] (x) Lambda(xi).

    Entries are read from the table on tau-free inputs and extended
    k[tau]-multilinearly; multilinearity_violations compares that extension
    with the entries the table holds for tau inputs.
    """

    def __init__(self, result: TransferResult):
        self.params = result.params
        self.table = result.ops
        self.arities = {n for n, _ in result.ops}

    def parity(self, x: tuple) -> int:
        return x[1]

    def basis(self, max_power: int) -> list:
        return [(j, e) for j in range(max_power + 1) for e in (0, 1)]

    def m(self, n: int, args: tuple) -> dict:
        shift = sum(j for j, _ in args)
        base = self.table.get((n, tuple((0, e) for _, e in args)), {})
        return {(j + shift, e): c for (j, e), c in base.items()}

    def multilinearity_violations(self) -> list:
        return [(n, args) for (n, args), v in self.table.items() if self.m(n, args) != v]
