"""Exact scalars and sparse linear algebra over Q or a prime field.

Matrices are dicts keyed by (row, col). Elimination is plain Gaussian
elimination on sparse rows; nothing here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime_field":
            if not _is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # scalars are Fractions (char 0) or ints in [0, p)
    def __call__(self, x):
        if self.characteristic == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.characteristic) % self.characteristic
        return int(x) % self.characteristic

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.characteristic == 0:
            return 1 / x
        return pow(x, -1, self.characteristic)

    def reduce(self, x):
        return x if self.characteristic == 0 else x % self.characteristic

    def __str__(self):
        return "rat" if self.characteristic == 0 else f"fp:{self.characteristic}"


RATIONALS = FieldSpec()


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("prime_field", p)


def parse_field(text: str) -> FieldSpec:
    """Parse 'rat' or 'fp:<p>'."""
    if text in ("rat", "rationals", "Q"):
        return RATIONALS
    if text.startswith("fp:"):
        return prime_field(int(text[3:]))
    raise ValueError(f"bad field spec {text!r}; use rat or fp:<p>")


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry {(r, c)} outside {self.rows}x{self.cols}")
            v = self.field(v)
            if v != 0:
                clean[r, c] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: list, fld: FieldSpec = RATIONALS) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ents = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v}
        return cls(nr, nc, ents, fld)

    @classmethod
    def from_columns(cls, nrows: int, columns: list, fld: FieldSpec = RATIONALS) -> "SparseMatrix":
        """Build from a list of {row: value} dicts, one per column."""
        ents = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                ents[r, c] = ents.get((r, c), 0) + v
        return cls(nrows, len(columns), ents, fld)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.field)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[r, c] = out.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, out, self.field)

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector {col: value}."""
        out = {}
        for (r, c), v in self.entries.items():
            if c in vec:
                out[r] = self.field.reduce(out.get(r, 0) + v * vec[c])
        return {r: v for r, v in out.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> list:
        m = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            m[r][c] = v
        return m


def _row_dicts(m: SparseMatrix) -> list:
    rows = [dict() for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    return [r for r in rows if r]


def _echelon(rows: list, fld: FieldSpec) -> dict:
    """Reduce a list of sparse rows; return {pivot_col: normalized row}.

    Rows are fully reduced against each other (reduced echelon form).
    """
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        # pivot rows are fully reduced, so one pass per hit column suffices,
        # but a sweep can still expose columns of later pivots: loop until clean
        hit = [c for c in row if c in pivots]
        while hit:
            for pc in hit:
                if pc not in row:
                    continue
                f = row[pc]
                for c, v in pivots[pc].items():
                    nv = fld.reduce(row.get(c, 0) - f * v)
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            hit = [c for c in row if c in pivots]
        if not row:
            continue
        pc = min(row)
        inv = fld.inv(row[pc])
        row = {c: fld.reduce(v * inv) for c, v in row.items()}
        # back-substitute into the existing pivot rows
        for oc, orow in pivots.items():
            if pc in orow:
                f = orow[pc]
                for c, v in row.items():
                    nv = fld.reduce(orow.get(c, 0) - f * v)
                    if nv:
                        orow[c] = nv
                    else:
                        orow.pop(c, None)
        pivots[pc] = row
    return pivots


def rank(m: SparseMatrix) -> int:
    """Rank only; cheaper than rank_kernel (no back-substitution)."""
    fld = m.field
    pivots: dict = {}
    for row in _row_dicts(m):
        while row:
            pc = min(row)
            if pc not in pivots:
                inv = fld.inv(row[pc])
                pivots[pc] = {c: fld.reduce(v * inv) for c, v in row.items()}
                break
            f = row[pc]
            for c, v in pivots[pc].items():
                nv = fld.reduce(row.get(c, 0) - f * v)
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def rank_kernel(m: SparseMatrix) -> tuple:
    """Return (rank, kernel basis) with kernel vectors as {col: value}."""
    fld = m.field
    pivots = _echelon(_row_dicts(m), fld)
    free = [c for c in range(m.cols) if c not in pivots]
    kernel = []
    for f in free:
        vec = {f: fld.one}
        for pc, row in pivots.items():
            if f in row:
                vec[pc] = fld.reduce(-row[f])
        kernel.append(vec)
    return len(pivots), kernel


class NotAComplex(ValueError):
    pass


def subquotient_dim(d_in: SparseMatrix, d_out: SparseMatrix) -> int:
    """dim ker(d_out) / im(d_in) for a two-step complex  . -d_in-> V -d_out-> ."""
    if d_out.cols != d_in.rows:
        raise ValueError(f"not composable: {d_out.rows}x{d_out.cols} after {d_in.rows}x{d_in.cols}")
    if d_out.rows and d_in.cols and not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out . d_in != 0")
    return d_out.cols - rank(d_out) - rank(d_in)


def homology_from_maps(dims: dict, maps: dict, fld: FieldSpec = RATIONALS) -> dict:
    """Homology of a chain complex given by {deg: dim} and {deg: d_deg}.

    d_deg maps degree deg to deg-1 and is a SparseMatrix (rows = dim[deg-1]).
    Missing maps are zero.
    """
    out = {}
    for n, dim in dims.items():
        d_out = maps.get(n) or SparseMatrix(dims.get(n - 1, 0), dim, {}, fld)
        d_in = maps.get(n + 1) or SparseMatrix(dim, dims.get(n + 1, 0), {}, fld)
        out[n] = subquotient_dim(d_in, d_out)
    return out


def vectors_independent(vectors: Iterable[dict], ncols: int, fld: FieldSpec = RATIONALS) -> bool:
    vs = list(vectors)
    m = SparseMatrix(len(vs), ncols, {(i, c): v for i, vec in enumerate(vs) for c, v in vec.items()}, fld)
    return rank(m) == len(vs)


def solve_in_span(vectors: list, target: dict, ncoords: int, fld: FieldSpec = RATIONALS) -> list | None:
    """Coefficients c with sum c_k vectors[k] = target, or None if target is not in the span."""
    n = len(vectors)
    entries = {(r, k): v for k, vec in enumerate(vectors) for r, v in vec.items()}
    entries.update({(r, n): v for r, v in target.items()})
    _, kernel = rank_kernel(SparseMatrix(ncoords, n + 1, entries, fld))
    for vec in kernel:
        if vec.get(n):
            inv = fld.inv(vec[n])
            return [fld.reduce(-vec.get(k, 0) * inv) for k in range(n)]
    return None
