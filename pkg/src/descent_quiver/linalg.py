"""Exact rank and kernel computations over the rationals.

Rows are scaled to integers and eliminated without division except by row
content, which keeps entries small.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _content(row: list) -> int:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _integral(row) -> list:
    dens = [x.denominator for x in row if isinstance(x, Fraction) and x]
    m = lcm(*dens) if dens else 1
    return [int(x * m) for x in row]


def _primitive(row: list) -> list:
    g = _content(row)
    if g > 1:
        row = [x // g for x in row]
    for x in row:
        if x:
            if x < 0:
                row = [-y for y in row]
            break
    return row


class RatMatrix:
    """Dense matrix of exact rationals."""

    def __init__(self, rows, ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_columns(cls, columns: list, row_keys: list | None = None):
        """Build from sparse columns (dicts); returns (matrix, row keys)."""
        if row_keys is None:
            seen: dict = {}
            for col in columns:
                for k in col:
                    seen.setdefault(k, None)
            try:
                row_keys = sorted(seen)
            except TypeError:
                row_keys = list(seen)
        index = {k: i for i, k in enumerate(row_keys)}
        rows = [[0] * len(columns) for _ in row_keys]
        for j, col in enumerate(columns):
            for k, v in col.items():
                rows[index[k]][j] = v
        return cls(rows, len(columns)), row_keys

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols})"


def echelon(rows: list, ncols: int) -> tuple[list, list]:
    """Reduced echelon form with primitive integer rows; returns (rows, pivots)."""
    work = [_primitive(_integral(r)) for r in rows if any(r)]
    out: list = []
    pivots: list = []
    col = 0
    while work and col < ncols:
        k = next((i for i, r in enumerate(work) if r[col]), None)
        if k is None:
            col += 1
            continue
        p = work.pop(k)
        a = p[col]
        nxt = []
        for r in work:
            b = r[col]
            if b:
                r = _primitive([a * x - b * y for x, y in zip(r, p)])
            if any(r):
                nxt.append(r)
        work = nxt
        for i, r in enumerate(out):
            b = r[col]
            if b:
                out[i] = _primitive([a * x - b * y for x, y in zip(r, p)])
        out.append(p)
        pivots.append(col)
        col += 1
    return out, pivots


def rank_kernel(m: RatMatrix) -> tuple[int, list]:
    """Exact rank and a kernel basis of primitive integer vectors."""
    rows, pivots = echelon(m.rows, m.ncols)
    pset = set(pivots)
    kernel = []
    for f in range(m.ncols):
        if f in pset:
            continue
        scale = 1
        for r, p in zip(rows, pivots):
            if r[f]:
                scale = lcm(scale, r[p])
        v = [0] * m.ncols
        v[f] = scale
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = -scale * r[f] // r[p]
        kernel.append(_primitive(v))
    return len(pivots), kernel


def rank(m: RatMatrix) -> int:
    return len(echelon(m.rows, m.ncols)[1])


class SparseBasis:
    """Incremental echelon basis of sparse vectors (dict index -> int)."""

    def __init__(self):
        self.rows: dict = {}  # pivot index -> primitive row dict

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {k: c for k, c in v.items() if c}
        dens = [c.denominator for c in v.values() if isinstance(c, Fraction)]
        if dens:
            den = lcm(*dens)
            v = {k: int(c * den) for k, c in v.items()}
        changed = True
        while changed and v:
            changed = False
            for k in sorted(v):
                row = self.rows.get(k)
                if row is None:
                    continue
                a, b = row[k], v[k]
                out = {i: a * c for i, c in v.items()}
                for i, c in row.items():
                    x = out.get(i, 0) - b * c
                    if x:
                        out[i] = x
                    else:
                        out.pop(i, None)
                g = 0
                for c in out.values():
                    g = gcd(g, c)
                v = {i: c // g for i, c in out.items()} if g > 1 else out
                changed = True
                break
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        piv = min(r)
        if r[piv] < 0:
            r = {i: -c for i, c in r.items()}
        self.rows[piv] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)
