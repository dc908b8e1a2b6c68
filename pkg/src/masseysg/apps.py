"""Parameter sets of the application families and the headline object counts."""
from __future__ import annotations

from dataclasses import dataclass

from .arquiver import build_stable_quiver, sigma_orbits
from .dga import ParamSet
from .exactlin import _is_prime


@dataclass
class SummaryReport:
    params: ParamSet
    sing_count: int  # |b|(h-1) indecomposables Sigma^j X_i in D_sg(B)
    sing_orbits: int  # [h/2] Sigma-orbits
    cosing_count: int  # |a|(l-1) on the reversed side
    cosing_orbits: int  # [l/2]
    ar_shape: tuple  # (height h-1, circumference |b|)

    def as_dict(self) -> dict:
        return {
            "params": list(self.params.astuple()),
            "sing_count": self.sing_count,
            "sing_orbits": self.sing_orbits,
            "cosing_count": self.cosing_count,
            "cosing_orbits": self.cosing_orbits,
            "ar_shape": list(self.ar_shape),
        }


def params_from_group(p_prime: int, n: int, q: int) -> ParamSet:
    """Cyclic Sylow p-subgroup of order p^n with inertial index q: (q, q-1, p^n - (p^n-1)/q, p^n)."""
    if p_prime % 2 == 0 or not _is_prime(p_prime):
        raise ValueError(f"p must be an odd prime, got {p_prime}")
    if n < 1:
        raise ValueError("need n >= 1")
    if q <= 1:
        raise ValueError("need inertial index q > 1")
    if (p_prime - 1) % q:
        raise ValueError(f"q = {q} must divide p - 1 = {p_prime - 1}")
    pn = p_prime ** n
    if (pn - 1) % q:
        raise ValueError("h is not an integer")
    return ParamSet(q, q - 1, pn - (pn - 1) // q, pn)


def params_from_brauer_tree(e: int, mult: int) -> ParamSet:
    """Brauer tree with e edges and exceptional multiplicity mult: (e, e-1, mult(e-1)+1, mult e+1)."""
    if e <= 1:
        raise ValueError("need e > 1 (e = 1 gives a truncated polynomial algebra)")
    if mult < 1:
        raise ValueError("need multiplicity >= 1")
    return ParamSet(e, e - 1, mult * (e - 1) + 1, mult * e + 1)


def params_from_hecke(n: int) -> ParamSet:
    """Hecke algebra at an n-th root of unity: (n-1, n-2, n-1, n)."""
    if n <= 2:
        raise ValueError("need n > 2")
    return ParamSet(n - 1, n - 2, n - 1, n)


def summarize(p: ParamSet, cross_check: bool = True) -> SummaryReport:
    r = SummaryReport(p, abs(p.b) * (p.h - 1), p.h // 2, abs(p.a) * (p.l - 1), p.l // 2, (p.h - 1, abs(p.b)))
    if cross_check:
        q, dual = build_stable_quiver(p), build_stable_quiver(p.swap())
        got = (len(q.vertices), len(sigma_orbits(q)), len(dual.vertices), len(sigma_orbits(dual)))
        if got != (r.sing_count, r.sing_orbits, r.cosing_count, r.cosing_orbits):
            raise ArithmeticError(f"quiver counts {got} disagree with the formulas")
    return r
