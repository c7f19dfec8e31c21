"""Finite filtered F_p chain complexes and their spectral sequence.

This is the oracle side of the engine: a filtered complex is stored in a
filtration-adapted basis (level s vectors first, so F_s is a coordinate
slice), and the pages come straight out of the classical cycle subspaces

    Z^r(n, d) = { x in F_n C_d : dx in F_{n-r} C_{d-1} },

which is the derived exact couple made explicit.  The induced differential
carries the boundary sign (-1)^{degree}; all dimension data is independent of
that sign choice.

Pages of a finite complex stabilize once r exceeds the top filtration level,
which gives E-infinity and the strong-convergence comparison against the
homology of the total complex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .dga import Derivation, d_monomial
from .linfp import FpMatrix, RowSpan, kernel_basis, rank, solve, subquotient_basis


@dataclass
class FilteredComplex:
    """Chain complex with an exhaustive filtration in an adapted basis.

    dims[d] is the dimension of C_d; boundary[d] maps C_d to C_{d-1};
    levels[d][i] is the filtration level of the i-th basis vector, and must be
    nondecreasing so that F_s C_d is spanned by a prefix of the basis.
    """

    p: int
    dims: dict
    boundary: dict
    levels: dict

    def __post_init__(self):
        for d, dim in self.dims.items():
            lv = self.levels.get(d, [])
            if len(lv) != dim:
                raise ValueError(f"degree {d}: {len(lv)} levels for dimension {dim}")
            if any(s < 0 for s in lv):
                raise ValueError(f"degree {d}: negative filtration level")
            if list(lv) != sorted(lv):
                raise ValueError(f"degree {d}: basis not filtration-adapted")
        for d, mat in self.boundary.items():
            mat = np.mod(np.asarray(mat, dtype=np.int64), self.p)
            self.boundary[d] = mat
            if mat.shape != (self.dims.get(d - 1, 0), self.dims.get(d, 0)):
                raise ValueError(f"degree {d}: boundary shape {mat.shape} is wrong")
            # filtration preserved: target level <= source level entrywise
            for j in range(mat.shape[1]):
                for i in np.nonzero(mat[:, j])[0]:
                    if self.levels[d - 1][int(i)] > self.levels[d][j]:
                        raise ValueError(
                            f"degree {d}: boundary raises filtration at ({i}, {j})"
                        )
        for d in self.dims:
            lower = self.bmat(d)
            upper = self.bmat(d + 1)
            if lower.size and upper.size and np.any((lower @ upper) % self.p):
                raise ValueError(f"not a complex: d^2 != 0 out of degree {d + 1}")

    def bmat(self, d) -> np.ndarray:
        if d in self.boundary:
            return self.boundary[d]
        return np.zeros((self.dims.get(d - 1, 0), self.dims.get(d, 0)), dtype=np.int64)

    @property
    def degrees(self) -> list:
        return sorted(self.dims)

    @property
    def top_level(self) -> int:
        return max((max(lv) for lv in self.levels.values() if lv), default=0)

    def filtration_dim(self, s: int, d: int) -> int:
        """dim F_s C_d; levels are sorted so this is a prefix length."""
        if s < 0:
            return 0
        lv = self.levels.get(d, [])
        return sum(1 for x in lv if x <= s)

    def total_homology(self) -> dict:
        out = {}
        for d in self.degrees:
            dim = self.dims[d]
            cycles = dim - rank(FpMatrix(self.p, self.bmat(d)))
            boundaries = rank(FpMatrix(self.p, self.bmat(d + 1)))
            h = cycles - boundaries
            if h:
                out[d] = h
        return out


def _cycle_space(fc: FilteredComplex, n: int, r: int, d: int) -> list:
    """Basis of Z^r(n, d) as vectors in C_d."""
    dim = fc.dims.get(d, 0)
    fn = fc.filtration_dim(n, d)
    if fn == 0:
        return []
    target_cut = fc.filtration_dim(n - r, d - 1)
    mat = fc.bmat(d)[target_cut:, :fn]
    ker = kernel_basis(FpMatrix(fc.p, mat))
    out = []
    for v in ker:
        w = np.zeros(dim, dtype=np.int64)
        w[:fn] = v
        out.append(w)
    return out


@dataclass
class SSRun:
    """Page dimension tables and differentials of a filtered complex."""

    p: int
    pages: list          # (r, {(n, m): dim})
    differentials: list  # (r, {(n, m): signed matrix of d_r})
    einf: dict           # {(n, m): dim}
    stable_page: int

    def page_dims(self, r: int) -> dict:
        for rr, dims in self.pages:
            if rr == r:
                return dims
        raise KeyError(r)

    def einf_total(self, d: int) -> int:
        return sum(v for (n, m), v in self.einf.items() if n + m == d)


def exact_couple_run(fc: FilteredComplex, r_max: int | None = None) -> SSRun:
    """Pages E^1, E^2, ... of the filtered complex, up to stabilization.

    E^r(n, m) = Z^r(n, d) / (Z^{r-1}(n-1, d) + d Z^{r-1}(n+r-1, d+1)) with
    d = n + m; the finite filtration forces E^{S+1} = E-infinity for S the
    top level.
    """
    stable = fc.top_level + 1
    if r_max is None:
        r_max = stable
    r_max = max(r_max, stable)
    pages = []
    diffs = []
    for r in range(1, r_max + 1):
        dims = {}
        reps = {}
        spans = {}
        for d in fc.degrees:
            for n in range(0, fc.top_level + 1):
                m = d - n
                z = _cycle_space(fc, n, r, d)
                if not z:
                    continue
                dead = _cycle_space(fc, n - 1, r - 1, d)
                for v in _cycle_space(fc, n + r - 1, r - 1, d + 1):
                    dead.append(fc.bmat(d + 1) @ v % fc.p)
                rep = subquotient_basis(fc.dims[d], z, dead, fc.p)
                if rep:
                    dims[(n, m)] = len(rep)
                    reps[(n, m)] = rep
                span = RowSpan(fc.p, fc.dims[d])
                for v in dead:
                    span.add(v)
                spans[(n, m)] = span
        # induced differential with the (-1)^{degree} boundary sign
        dmat = {}
        for (n, m), rep in reps.items():
            target = (n - r, m + r - 1)
            if target not in reps:
                continue
            d = n + m
            tgt_reps = reps[target]
            tgt_span = spans[target]
            cols = []
            basis_mat = np.stack(
                [tgt_span.reduce(v) for v in tgt_reps], axis=1
            )
            for v in rep:
                w = fc.bmat(d) @ v % fc.p
                w = tgt_span.reduce(w)
                x = solve(FpMatrix(fc.p, basis_mat), w)
                if x is None:
                    raise AssertionError("differential image outside the page")
                cols.append(((-1) ** d * x) % fc.p)
            dmat[(n, m)] = np.stack(cols, axis=1)
        pages.append((r, dims))
        diffs.append((r, dmat))
    einf = pages[stable - 1][1]
    return SSRun(fc.p, pages, diffs, dict(einf), stable)


def compare_with_total_homology(fc: FilteredComplex, run: SSRun) -> dict:
    """Per total degree: (sum of E-infinity dims, total homology dim, equal?)."""
    h = fc.total_homology()
    degrees = sorted(set(h) | {n + m for (n, m) in run.einf})
    out = {}
    for d in degrees:
        got = run.einf_total(d)
        want = h.get(d, 0)
        out[d] = (got, want, got == want)
    return out


def realize_filtered_dga(pres, derivation: Derivation, n_max: int) -> FilteredComplex:
    """Filtered complex of a presented DGA, filtered by column degree.

    Basis of C_d: monomials of total degree d ordered by (column, exponents);
    the derivation strictly drops the column, so the filtration is preserved.
    """
    table = alg.monomial_table(pres)
    basis = {}
    for (n, m), monos in sorted(table.items()):
        if n + m > n_max:
            continue
        basis.setdefault(n + m, []).extend((n, mono) for mono in monos)
    for d in basis:
        basis[d].sort()
    dims = {d: len(b) for d, b in basis.items()}
    levels = {d: [n for n, _ in b] for d, b in basis.items()}
    index = {
        d: {mono: i for i, (_, mono) in enumerate(b)} for d, b in basis.items()
    }
    boundary = {}
    for d, b in basis.items():
        if d - 1 not in basis:
            continue
        mat = np.zeros((dims[d - 1], dims[d]), dtype=np.int64)
        for j, (_, mono) in enumerate(b):
            img = d_monomial(derivation, mono)
            for mm, c in img.items():
                mat[index[d - 1][mm], j] = c
        boundary[d] = mat
    return FilteredComplex(pres.p, dims, boundary, levels)


def random_filtered_complex(
    rng, p: int = 5, max_steps: int = 5, max_degree: int = 4, max_total_dim: int = 40
) -> FilteredComplex:
    """Seeded random filtered complex, built level-compatibly with d^2 = 0.

    The boundary of each basis vector is sampled from the kernel of the
    previous boundary intersected with the vector's filtration stage, so the
    result is a complex by construction.
    """
    steps = rng.randint(1, max_steps)
    top_degree = rng.randint(1, max_degree)
    dims = {}
    levels = {}
    budget = max_total_dim
    for d in range(top_degree + 1):
        dim = rng.randint(0, min(5, budget))
        budget -= dim
        if dim == 0:
            continue
        dims[d] = dim
        levels[d] = sorted(rng.randint(0, steps - 1) for _ in range(dim))
    boundary = {}
    prev = None  # boundary out of degree d - 1
    for d in sorted(dims):
        if d - 1 not in dims:
            prev = None
            continue
        rows = dims[d - 1]
        mat = np.zeros((rows, dims[d]), dtype=np.int64)
        below = prev if prev is not None else np.zeros((0, rows), dtype=np.int64)
        for j in range(dims[d]):
            cut = sum(1 for s in levels[d - 1] if s <= levels[d][j])
            if cut == 0:
                continue
            ker = kernel_basis(FpMatrix(p, below[:, :cut]))
            if not ker:
                continue
            v = np.zeros(rows, dtype=np.int64)
            for kv in ker:
                c = rng.randint(0, p - 1)
                if c:
                    v[:cut] = (v[:cut] + c * kv) % p
            mat[:, j] = v
        boundary[d] = mat
        prev = mat
    return FilteredComplex(p, dims, boundary, levels)
