"""Exact dense linear algebra over the prime field F_p.

Everything downstream (homology, Tor tables, spectral sequence pages) reduces
to rank/kernel/subquotient computations done here.  Pivoting is deterministic
(leftmost nonzero column, topmost row), so every basis produced by the package
is reproducible bit for bit.

Vectors are 1-d numpy int64 arrays with entries in [0, p); matrices are 2-d
arrays of the same kind.  p stays small, so int64 arithmetic never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SubquotientError(ValueError):
    """Boundaries do not lie in the span of the cycles."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FpMatrix:
    """Dense matrix over F_p, entries stored as residues in [0, p)."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("entries must be a 2-d array")
        object.__setattr__(self, "entries", np.mod(a, self.p))

    @classmethod
    def from_rows(cls, p: int, rows, cols: int | None = None) -> "FpMatrix":
        rows = list(rows)
        if rows:
            return cls(p, np.array(rows, dtype=np.int64))
        return cls(p, np.zeros((0, cols or 0), dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.p, self.entries.shape, self.entries.tobytes()))


def _rref_inplace(a: np.ndarray, p: int) -> list[int]:
    """Row reduce `a` mod p in place; return the pivot column list."""
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    """Reduced row-echelon form and its strictly increasing pivot columns."""
    a = m.entries.copy()
    pivots = _rref_inplace(a, m.p)
    return FpMatrix(m.p, a), pivots


def rank(m: FpMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: FpMatrix) -> list[np.ndarray]:
    """Columns spanning ker(m), one per free column of the rref.

    The basis vector for free column f has a 1 in position f and the
    negated rref entries in the pivot positions; vectors are ordered by
    increasing free column, which makes the result deterministic.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = np.zeros(m.cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-int(red.entries[i, f])) % m.p
        basis.append(v)
    return basis


def solve(m: FpMatrix, b: np.ndarray) -> np.ndarray | None:
    """One solution x of m @ x = b, or None when the system is inconsistent."""
    b = np.mod(np.asarray(b, dtype=np.int64), m.p)
    aug = np.concatenate([m.entries, b.reshape(-1, 1)], axis=1)
    pivots = _rref_inplace(aug, m.p)
    if m.cols in pivots:
        return None
    x = np.zeros(m.cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = aug[i, m.cols]
    return x


class RowSpan:
    """Incrementally built row space in echelon form.

    Used wherever vectors must be reduced against an accumulating span
    (subquotient representatives, boundary spaces, page reductions).
    """

    def __init__(self, p: int, dim: int):
        self.p = p
        self.dim = dim
        self.rows: list[np.ndarray] = []   # echelon rows, pivot entry 1
        self.pivots: list[int] = []        # pivot column of each row

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residue of v modulo the current span."""
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Insert v; return True when it enlarged the span."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        # keep existing rows reduced against the new one
        for i, row in enumerate(self.rows):
            if row[c]:
                self.rows[i] = (row - row[c] * v) % self.p
        k = 0
        while k < len(self.pivots) and self.pivots[k] < c:
            k += 1
        self.rows.insert(k, v)
        self.pivots.insert(k, c)
        return True

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v))

    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "RowSpan":
        out = RowSpan(self.p, self.dim)
        out.rows = [r.copy() for r in self.rows]
        out.pivots = list(self.pivots)
        return out


def subquotient_basis(
    ambient_dim: int,
    cycles: list[np.ndarray],
    boundaries: list[np.ndarray],
    p: int,
) -> list[np.ndarray]:
    """Representatives of span(cycles)/span(boundaries).

    Raises SubquotientError when some boundary is not a combination of the
    cycles (the signature of an inconsistent differential).  Representatives
    are picked greedily from the cycle list in order, so they are a subset of
    the vectors handed in and the choice is reproducible.
    """
    cyc_span = RowSpan(p, ambient_dim)
    for v in cycles:
        cyc_span.add(v)
    span = RowSpan(p, ambient_dim)
    for v in boundaries:
        if not cyc_span.contains(v):
            raise SubquotientError("boundary outside the span of the cycles")
        span.add(v)
    reps = []
    for v in cycles:
        if span.add(v):
            reps.append(np.mod(np.asarray(v, dtype=np.int64), p))
    return reps
