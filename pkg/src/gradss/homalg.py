"""Tor over single-variable graded base rings, and Hochschild homology.

Tor is computed from small explicit free resolutions (Koszul complexes for
regular elements/sequences, the periodic resolution over a truncated ring)
tensored with a p-torsion left module.  The p-adic coefficient ring is never
represented as such: resolution entries are kept as integer-coefficient
u-powers, and tensoring with a p-torsion module reduces everything to F_p.

Hochschild homology uses the normalized cyclic bar complex with the Koszul
sign on the rotating face, so HH_0 of a graded-commutative algebra is the
algebra itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import EXTERIOR, Presentation, ext, poly
from .linfp import FpMatrix, kernel_basis, rank


class ResourceLimit(RuntimeError):
    """The bar complex grew past the configured size cap."""


@dataclass(frozen=True)
class BaseRing:
    """k[u] or k[u]/(u^height), k the prime field or the p-adic integers.

    coefficients is "fp" or "zp"; "zp" is purely symbolic and only legal in
    Tor computations whose left module is p-torsion.
    """

    coefficients: str
    p: int
    var_degree: int = 2
    height: int | None = None

    def __post_init__(self):
        if self.coefficients not in ("fp", "zp"):
            raise ValueError(f"unknown coefficient kind {self.coefficients!r}")
        if self.coefficients == "zp" and self.height is not None:
            raise ValueError("truncation is only supported over fp coefficients")
        if self.var_degree <= 0 or self.var_degree % 2:
            raise ValueError("the polynomial variable must have positive even degree")
        if self.height is not None and self.height < 2:
            raise ValueError("truncation height must be >= 2")


@dataclass(frozen=True)
class TorTable:
    """Bigraded dimensions Tor_{n,m} up to internal degree max_internal."""

    p: int
    max_internal: int
    dims: dict

    def dim(self, n: int, m: int) -> int:
        return self.dims.get((n, m), 0)

    def total_series(self, d_max: int) -> list[int]:
        out = [0] * (d_max + 1)
        for (n, m), v in self.dims.items():
            if n + m <= d_max:
                out[n + m] += v
        return out

    def nonzero(self) -> list:
        return sorted((nm, v) for nm, v in self.dims.items() if v)


# A resolution is (levels, diffs): levels[n] lists the internal degrees of the
# free generators in homological degree n; diffs[n] maps level n+1 to level n,
# entries (c, k) standing for c * u^k with c a plain integer (p survives in c).
def _resolution(base: BaseRing, right: str, n_internal: int):
    du = base.var_degree
    if base.coefficients == "zp":
        if right == "zp":
            return [[0], [du]], [[[(1, 1)]]]
        if right == "fpu":
            return [[0], [0]], [[[(base.p, 0)]]]
        if right == "fp":
            # Koszul complex on the regular sequence (p, u)
            levels = [[0], [0, du], [du]]
            d1 = [[(base.p, 0), (1, 1)]]
            d2 = [[(-1, 1)], [(base.p, 0)]]
            return levels, [d1, d2]
        raise ValueError(f"unsupported right module {right!r} over zp[u]")
    # fp coefficients
    if right == "zp":
        raise ValueError("the p-adic module only makes sense over zp coefficients")
    if base.height is None:
        if right == "fpu":
            return [[0]], []
        if right == "fp":
            return [[0], [du]], [[[(1, 1)]]]
        raise ValueError(f"unsupported right module {right!r} over fp[u]")
    # truncated base: periodic resolution of fp, alternating u and u^{h-1}
    if right == "fpu":
        return [[0]], []
    if right != "fp":
        raise ValueError(f"unsupported right module {right!r} over truncated base")
    h = base.height
    levels = [[0]]
    diffs = []
    k = 0
    while True:
        k += 1
        if k % 2:
            deg = ((k // 2) * h + 1) * du
            entry = (1, 1)
        else:
            deg = (k // 2) * h * du
            entry = (1, h - 1)
        if deg > n_internal:
            break
        levels.append([deg])
        diffs.append([[entry]])
    return levels, diffs


def _left_module_degrees(base: BaseRing, left: str, n_internal: int) -> list[int]:
    """Internal degrees carrying a basis vector of the left module."""
    if left == "fp":
        return [0]
    if left == "fpu":
        du = base.var_degree
        top = n_internal // du
        if base.coefficients == "fp" and base.height is not None:
            top = min(top, base.height - 1)
        return [k * du for k in range(top + 1)]
    raise ValueError(f"unsupported left module {left!r}")


def _left_multiplication(base: BaseRing, left: str, c: int, k: int, deg: int):
    """(target_degree, coefficient) of u^k * c acting on the degree-deg line."""
    c %= base.p
    if c == 0:
        return None
    if left == "fp":
        return (deg, c) if k == 0 else None
    du = base.var_degree
    j = deg // du + k
    if base.coefficients == "fp" and base.height is not None and j >= base.height:
        return None
    return (deg + k * du, c)


def koszul_tor(base: BaseRing, left: str, right: str, n_internal: int) -> TorTable:
    """Tor_{n,m}(left, right) over the base ring, for internal degrees m <= N.

    The left module must be p-torsion so the tensored complex is an
    F_p-complex; anything else is rejected.
    """
    if left not in ("fp", "fpu"):
        raise ValueError(f"left module {left!r} is not p-torsion")
    levels, diffs = _resolution(base, right, n_internal)
    left_degrees = _left_module_degrees(base, left, n_internal)

    # basis of the tensored complex at homological degree n, internal degree t:
    # one vector per (generator of degree a, left line of degree t - a)
    def basis(n, t):
        out = []
        for gi, a in enumerate(levels[n]):
            if t - a in left_degrees:
                out.append((gi, t - a))
        return out

    p = base.p
    dims: dict = {}
    for t in range(n_internal + 1):
        spaces = [basis(n, t) for n in range(len(levels))]
        mats = []
        for n in range(len(levels) - 1):
            rows = {b: i for i, b in enumerate(spaces[n])}
            m = np.zeros((len(spaces[n]), len(spaces[n + 1])), dtype=np.int64)
            for j, (gj, deg) in enumerate(spaces[n + 1]):
                for gi in range(len(levels[n])):
                    for (c, k) in _entries(diffs[n], gi, gj):
                        hit = _left_multiplication(base, left, c, k, deg)
                        if hit is None:
                            continue
                        tdeg, coeff = hit
                        key = (gi, tdeg)
                        if key in rows:
                            m[rows[key], j] = (m[rows[key], j] + coeff) % p
            mats.append(m)
        for n in range(len(levels)):
            dim_n = len(spaces[n])
            if dim_n == 0:
                continue
            if n < len(mats):
                incoming = rank(FpMatrix(p, mats[n]))
            else:
                incoming = 0
            if n > 0:
                cycles = len(kernel_basis(FpMatrix(p, mats[n - 1])))
            else:
                cycles = dim_n
            h = cycles - incoming
            if h:
                dims[(n, t)] = h
    return TorTable(p, n_internal, dims)


def _entries(diff, gi, gj):
    """Entries of a resolution differential at (row gi, column gj)."""
    if gi < len(diff) and gj < len(diff[gi]):
        e = diff[gi][gj]
        return [e] if isinstance(e, tuple) else list(e)
    return []


@dataclass(frozen=True)
class Recognition:
    presentation: Presentation | None
    forced: bool
    note: str


def recognize_free_presentation(series: list[int], p: int) -> Recognition:
    """Match a dimension series against a free graded-commutative algebra.

    Odd-degree generators are exterior, even-degree polynomial.  Returns the
    tensor presentation whose series reproduces the input exactly, or refuses.
    Uniqueness of the algebra structure is only asserted (forced=True) for a
    single exterior generator whose square lands in a zero degree.
    """
    n_max = len(series) - 1
    if n_max < 0 or series[0] != 1:
        return Recognition(None, False, "series does not start with 1")
    resid = list(series)
    gens = []
    for d in range(1, n_max + 1):
        while resid[d] > 0:
            same = sum(1 for g in gens if g.bidegree == (d, 0))
            name = f"x{d}" if same == 0 else f"x{d}_{same}"
            if d % 2:
                gens.append(ext(name, (d, 0)))
                # divide the series by (1 + x^d)
                for k in range(d, n_max + 1):
                    resid[k] -= resid[k - d]
            else:
                gens.append(poly(name, (d, 0)))
                # divide by 1/(1 - x^d): multiply by (1 - x^d)
                for k in range(n_max, d - 1, -1):
                    resid[k] -= resid[k - d]
            if any(c < 0 for c in resid):
                return Recognition(None, False, f"negative residual at degree {d}")
    if resid != [1] + [0] * n_max:
        return Recognition(None, False, "residual series is not 1")
    pres = Presentation(p, tuple(gens), n_max)
    forced = (
        len(gens) == 1
        and gens[0].kind == EXTERIOR
        and (2 * gens[0].total_degree > n_max or series[2 * gens[0].total_degree] == 0)
    )
    note = "structure forced" if forced else "series match only"
    return Recognition(pres, forced, note)


def hochschild_homology(
    pres: Presentation, s_max: int, t_max: int, cap: int = 200_000
) -> dict:
    """HH_{s,t} of the presented algebra via the normalized cyclic bar complex.

    Chains in simplicial degree s are A (x) Abar^{(x) s} with Abar the
    positive-degree part; the rotating face carries the Koszul sign for
    moving the last tensor factor to the front.  Refuses past the size cap.
    """
    if t_max > pres.max_degree:
        raise alg.BeyondTruncation(t_max, pres.max_degree)
    table = alg.monomial_table(pres)
    monos = []
    for (n, m), ms in sorted(table.items()):
        if n + m <= t_max:
            monos.extend((mono, n + m) for mono in ms)
    monos.sort(key=lambda t: (t[1], t[0]))
    positive = [(mono, d) for mono, d in monos if d > 0]

    # chains[s]: list of tuples (m0, m1, ..., ms) with total degree <= t_max
    chains: list[list[tuple]] = []
    total = 0
    for s in range(s_max + 2):
        level = []

        def build(prefix, deg, remaining):
            if remaining == 0:
                level.append(tuple(prefix))
                return
            for mono, d in positive:
                if deg + d > t_max:
                    continue
                prefix.append(mono)
                build(prefix, deg + d, remaining - 1)
                prefix.pop()

        for m0, d0 in monos:
            build([m0], d0, s)
        total += len(level)
        if total > cap:
            raise ResourceLimit(
                f"bar complex size {total} exceeds the cap {cap}"
            )
        chains.append(level)

    def chain_degree(c):
        return sum(alg.total_degree(pres, m) for m in c)

    index = [
        {c: i for i, c in enumerate(level)} for level in chains
    ]

    def boundary(s):
        """Matrix of d_s: chains[s] -> chains[s-1]."""
        rows, cols = len(chains[s - 1]), len(chains[s])
        mat = np.zeros((rows, cols), dtype=np.int64)
        for j, c in enumerate(chains[s]):

            def emit(prod, tail, sign):
                for mono, coeff in prod.items():
                    key = (mono,) + tail
                    if key in index[s - 1]:
                        mat[index[s - 1][key], j] = (
                            mat[index[s - 1][key], j] + sign * coeff
                        ) % pres.p

            # inner faces: merge slots i and i+1; products of positive
            # factors stay positive, so no degeneracies appear
            for i in range(s):
                prod = alg.multiply(
                    pres,
                    alg.element(pres, {c[i]: 1}),
                    alg.element(pres, {c[i + 1]: 1}),
                )
                if not prod:
                    continue
                sign = (-1) ** i
                for mono, coeff in prod.items():
                    key = c[:i] + (mono,) + c[i + 2 :]
                    if key in index[s - 1]:
                        mat[index[s - 1][key], j] = (
                            mat[index[s - 1][key], j] + sign * coeff
                        ) % pres.p
            # rotating face: move the last factor to the front, with the
            # Koszul sign for passing everything before it
            last = c[s]
            koszul = alg.total_degree(pres, last) * (
                chain_degree(c) - alg.total_degree(pres, last)
            )
            sign = (-1) ** (s + koszul)
            prod = alg.multiply(
                pres, alg.element(pres, {last: 1}), alg.element(pres, {c[0]: 1})
            )
            emit(prod, c[1:s], sign)
        return mat

    mats = [boundary(s) for s in range(1, s_max + 2)]
    dims: dict = {}
    for s in range(s_max + 1):
        by_degree: dict = {}
        for i, c in enumerate(chains[s]):
            by_degree.setdefault(chain_degree(c), []).append(i)
        for t, idxs in by_degree.items():
            if t > t_max:
                continue
            sel = np.array(idxs)
            if s == 0:
                cycles = len(idxs)
            else:
                sub = mats[s - 1][:, sel]
                cycles = len(kernel_basis(FpMatrix(pres.p, sub)))
            nxt = [
                i for i, c in enumerate(chains[s + 1]) if chain_degree(c) == t
            ]
            if nxt:
                img = mats[s][:, np.array(nxt)]
                # restrict rows to this degree block for a clean rank
                incoming = rank(FpMatrix(pres.p, img))
            else:
                incoming = 0
            h = cycles - incoming
            if h:
                dims[(s, t)] = h
    return dims
