"""Derivations on presented algebras and their degreewise homology.

A derivation is declared on generators and extended to monomials by the
signed Leibniz rule d(xy) = d(x) y + (-1)^{|x|} x d(y), with |x| the total
degree.  The bidegree shift is (-r, r-1) for a declared page r >= 1, so the
total degree always drops by one and homology at total degree d is certified
once every monomial of degree d + 1 is enumerated: the certified bound is
N - 1.

verify_presentation_iso checks a candidate presentation-with-relations
against a computed homology: relations must become boundaries, the induced
algebra map must be surjective, and the candidate quotient must have the same
dimensions.  Together these certify an isomorphism degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg
from .algebra import EXTERIOR, TRUNCATED, Element, Presentation, ZERO
from .linfp import FpMatrix, RowSpan, kernel_basis, solve, subquotient_basis


class DifferentialError(ValueError):
    """A generator image violates the declared bidegree shift."""


@dataclass
class Derivation:
    """Degree -1 derivation with bidegree shift (-page, page - 1)."""

    base: Presentation
    page: int
    images: dict  # generator name -> Element (missing means zero)

    @property
    def shift(self):
        return (-self.page, self.page - 1)


def extend_derivation(pres: Presentation, gen_images: dict, page: int) -> Derivation:
    """Validate generator images and package them as a derivation.

    Every image must be homogeneous of bidegree = generator bidegree plus
    (-page, page - 1); zero images may simply be omitted.
    """
    if page < 1:
        raise DifferentialError(f"page {page} must be >= 1")
    shift = (-page, page - 1)
    images = {}
    for name, img in gen_images.items():
        g = pres.gen(name)
        if not img:
            continue
        bd = alg.bidegree_of(pres, img)
        want = (g.bidegree[0] + shift[0], g.bidegree[1] + shift[1])
        if bd != want:
            raise DifferentialError(
                f"d({name}) has bidegree {bd}, expected {want}"
            )
        images[name] = img
    return Derivation(pres, page, images)


def d_monomial(d: Derivation, mono) -> Element:
    """Leibniz expansion of d on one monomial.

    For m = g_1^{e_1} ... g_k^{e_k} the i-th term is
    (-1)^{|prefix|} e_i (prefix g_i^{e_i - 1}) d(g_i) suffix; the image is
    multiplied in place between the two halves so no extra reordering sign
    is needed.
    """
    pres = d.base
    out = ZERO
    prefix_degree = 0
    for i, (e, g) in enumerate(zip(mono, pres.generators)):
        if e and g.name in d.images:
            img = d.images[g.name]
            left = list(mono[: i + 1]) + [0] * (len(mono) - i - 1)
            left[i] = e - 1
            right = [0] * (i + 1) + list(mono[i + 1 :])
            term = alg.multiply(pres, alg.element(pres, {tuple(left): e}), img)
            term = alg.multiply(pres, term, alg.element(pres, {tuple(right): 1}))
            out = alg.add(pres, out, alg.scale(pres, (-1) ** prefix_degree, term))
        prefix_degree += e * g.total_degree
    return out


def d_element(d: Derivation, el: Element) -> Element:
    pres = d.base
    out = ZERO
    for mono, c in el.items():
        out = alg.add(pres, out, alg.scale(pres, c, d_monomial(d, mono)))
    return out


def check_d_squared(d: Derivation, n_max: int) -> list:
    """All (monomial, d(d(monomial))) pairs that fail d^2 = 0 up to degree n_max."""
    pres = d.base
    violations = []
    for (n, m), monos in sorted(alg.monomial_table(pres).items()):
        if n + m > n_max:
            continue
        for mono in monos:
            v = d_element(d, d_monomial(d, mono))
            if v:
                violations.append((mono, v))
    return violations


def coords(pres: Presentation, bd, el: Element) -> np.ndarray:
    """Coordinate vector of el in the monomial basis of bidegree bd."""
    basis = alg.basis_in_bidegree(pres, bd)
    index = {m: i for i, m in enumerate(basis)}
    v = np.zeros(len(basis), dtype=np.int64)
    for mono, c in el.items():
        v[index[mono]] = c % pres.p
    return v


def element_from_coords(pres: Presentation, bd, v) -> Element:
    basis = alg.basis_in_bidegree(pres, bd)
    return alg.element(pres, {m: int(c) for m, c in zip(basis, v)})


@dataclass
class HomologyResult:
    """Degreewise homology of (presentation, derivation).

    representatives[bd] are actual cycles in the monomial basis; boundaries[bd]
    spans the image of d.  Results are certified up to total degree cert_bound
    = N - 1, since boundaries out of degree N + 1 are invisible.
    """

    pres: Presentation
    derivation: Derivation
    max_degree: int
    cert_bound: int
    representatives: dict
    boundaries: dict
    _solvers: dict = field(default_factory=dict, repr=False)

    def dim(self, bd) -> int:
        return len(self.representatives.get(bd, []))

    def dims_by_bidegree(self) -> dict:
        return {bd: len(reps) for bd, reps in sorted(self.representatives.items()) if reps}

    def dim_total(self, d: int) -> int:
        return sum(
            len(reps) for (n, m), reps in self.representatives.items() if n + m == d
        )

    def _solver(self, bd):
        """Echelon data for [representatives | boundaries] at one bidegree."""
        if bd not in self._solvers:
            cols = [coords(self.pres, bd, r) for r in self.representatives.get(bd, [])]
            cols += [coords(self.pres, bd, b) for b in self.boundaries.get(bd, [])]
            dim = len(alg.basis_in_bidegree(self.pres, bd))
            if cols:
                mat = FpMatrix(self.pres.p, np.stack(cols, axis=1))
            else:
                mat = FpMatrix.zeros(self.pres.p, dim, 0)
            self._solvers[bd] = mat
        return self._solvers[bd]

    def homology_coords(self, el: Element) -> np.ndarray:
        """Coordinates of a cycle in the homology basis of its bidegree.

        Raises ValueError when el is not a cycle modulo the boundaries.
        """
        bd = alg.bidegree_of(self.pres, el)
        if bd is None:
            return np.zeros(0, dtype=np.int64)
        mat = self._solver(bd)
        x = solve(mat, coords(self.pres, bd, el))
        if x is None:
            raise ValueError("element does not represent a homology class")
        return x[: len(self.representatives.get(bd, []))]

    def is_zero_class(self, el: Element) -> bool:
        if not el:
            return True
        return not np.any(self.homology_coords(el))


def homology(pres: Presentation, d: Derivation, n_max: int) -> HomologyResult:
    """Per-bidegree homology via kernel/image subquotients.

    Requires d^2 = 0 on the enumerated monomials; violations propagate as
    DifferentialError.
    """
    if n_max > pres.max_degree:
        raise alg.BeyondTruncation(n_max, pres.max_degree)
    bad = check_d_squared(d, n_max)
    if bad:
        mono, img = bad[0]
        raise DifferentialError(
            f"d^2 != 0 on {alg.monomial_str(pres, mono)}: {alg.element_str(pres, img)}"
        )
    table = alg.monomial_table(pres)
    shift = d.shift
    reps: dict = {}
    bnds: dict = {}
    for bd in sorted(table):
        n, m = bd
        if n + m > n_max:
            continue
        basis = table[bd]
        # kernel of d restricted to this bidegree
        target = (n + shift[0], m + shift[1])
        if target in table:
            cols = [coords(pres, target, d_monomial(d, mono)) for mono in basis]
            mat = FpMatrix(pres.p, np.stack(cols, axis=1))
            cycles = kernel_basis(mat)
        else:
            cycles = [v for v in np.eye(len(basis), dtype=np.int64)]
        # boundaries arriving from one shift up
        source = (n - shift[0], m - shift[1])
        bvecs = []
        if source in table and sum(source) <= pres.max_degree:
            for mono in table[source]:
                v = coords(pres, bd, d_monomial(d, mono))
                if np.any(v):
                    bvecs.append(v)
        rep_vecs = subquotient_basis(len(basis), cycles, bvecs, pres.p)
        reps[bd] = [element_from_coords(pres, bd, v) for v in rep_vecs]
        bnds[bd] = [element_from_coords(pres, bd, v) for v in bvecs]
    return HomologyResult(pres, d, n_max, n_max - 1, reps, bnds)


@dataclass
class IsoReport:
    """Outcome of checking a candidate presentation against a homology."""

    bound: int
    generator_failures: list
    kind_failures: list
    relation_failures: list
    surjectivity_failures: list
    dimension_mismatches: list
    skipped_relations: list

    @property
    def ok(self) -> bool:
        return not (
            self.generator_failures
            or self.kind_failures
            or self.relation_failures
            or self.surjectivity_failures
            or self.dimension_mismatches
        )

    def summary(self) -> str:
        if self.ok:
            return f"isomorphism verified up to total degree {self.bound}"
        lines = [f"verification failed (bound {self.bound}):"]
        for tag, items in [
            ("generator", self.generator_failures),
            ("kind", self.kind_failures),
            ("relation", self.relation_failures),
            ("surjectivity", self.surjectivity_failures),
            ("dimension", self.dimension_mismatches),
        ]:
            for it in items:
                lines.append(f"  {tag}: {it}")
        return "\n".join(lines)


def verify_presentation_iso(
    H: HomologyResult,
    candidate: Presentation,
    gen_reps: dict,
    extra_relations: list,
    n_max: int,
) -> IsoReport:
    """Certify H = candidate/(relations) as bigraded algebras up to degree bound.

    Three checks, itemized on failure: (a) every relation and every kind-bound
    power maps to a boundary; (b) the candidate monomials surject onto the
    homology in every bidegree; (c) the candidate quotient by the relation
    ideal has the homology's dimensions.  (a) makes the algebra map factor
    through the quotient, and (b) + (c) force it to be bijective.
    """
    pres = H.pres
    bound = min(H.cert_bound, n_max, candidate.max_degree)
    gen_failures = []
    kind_failures = []

    # (pre) generator representatives: right bidegree, honest cycles
    images = {}
    for g in candidate.generators:
        if g.total_degree > pres.max_degree:
            gen_failures.append(f"{g.name}: generator lives outside the box")
            continue
        rep = gen_reps.get(g.name)
        if rep is None or not rep:
            gen_failures.append(f"{g.name}: no representative")
            continue
        bd = alg.bidegree_of(pres, rep)
        if bd != g.bidegree:
            gen_failures.append(f"{g.name}: representative bidegree {bd} != {g.bidegree}")
            continue
        if d_element(H.derivation, rep):
            gen_failures.append(f"{g.name}: representative is not a cycle")
            continue
        images[g.name] = rep
    if gen_failures:
        return IsoReport(bound, gen_failures, [], [], [], [], [])

    # kind-bound relations: exterior squares and truncated powers must die
    for g in candidate.generators:
        if g.kind == EXTERIOR:
            k = 2
        elif g.kind == TRUNCATED:
            k = g.height
        else:
            continue
        if k * g.total_degree > pres.max_degree:
            continue  # power lives past the box; nothing to check there
        pw = alg.power(pres, images[g.name], k)
        if pw and not H.is_zero_class(pw):
            kind_failures.append(f"{g.name}^{k} survives in homology")

    # induced map on monomials, per bidegree
    def f_of(mono) -> Element:
        out = alg.element(pres, {pres.unit_monomial: 1})
        for e, g in zip(mono, candidate.generators):
            for _ in range(e):
                out = alg.multiply(pres, out, images[g.name])
        return out

    cand_table = alg.monomial_table(candidate)
    hom_bds = {bd for bd, reps in H.representatives.items() if reps}
    all_bds = sorted(
        bd for bd in (set(cand_table) | hom_bds) if sum(bd) <= bound
    )

    surj_failures = []
    f_cache = {}
    for bd in all_bds:
        monos = cand_table.get(bd, [])
        want = H.dim(bd)
        got = 0
        vecs = []
        for mono in monos:
            img = f_of(mono)
            f_cache[mono] = img
            if img:
                vecs.append(H.homology_coords(img))
        if want:
            span = RowSpan(pres.p, want)
            for v in vecs:
                span.add(v)
            got = span.rank()
        if got < want:
            surj_failures.append((bd, got, want))

    # relations must evaluate to boundaries
    relation_failures = []
    skipped = []
    live_relations = []
    for i, rel in enumerate(extra_relations):
        if not rel:
            continue
        rbd = alg.bidegree_of(candidate, rel)
        if sum(rbd) > bound:
            skipped.append((i, rbd))
            continue
        live_relations.append((i, rbd, rel))
        val = ZERO
        for mono, c in rel.items():
            val = alg.add(pres, val, alg.scale(pres, c, f_cache.get(mono) or f_of(mono)))
        if val and not H.is_zero_class(val):
            relation_failures.append(
                (i, rbd, f"image {alg.element_str(pres, val)} survives")
            )

    # quotient dimensions: candidate dim minus the relation ideal, bidegreewise
    dim_mismatches = []
    for bd in all_bds:
        free_dim = len(cand_table.get(bd, []))
        basis = cand_table.get(bd, [])
        index = {m: i for i, m in enumerate(basis)}
        ideal = RowSpan(candidate.p, max(free_dim, 1))
        for _, rbd, rel in live_relations:
            cbd = (bd[0] - rbd[0], bd[1] - rbd[1])
            if cbd[0] < 0 or cbd[1] < 0:
                continue
            for mono in cand_table.get(cbd, []):
                prod = alg.multiply(
                    candidate, alg.element(candidate, {mono: 1}), rel
                )
                if not prod:
                    continue
                v = np.zeros(free_dim, dtype=np.int64)
                for mm, c in prod.items():
                    v[index[mm]] = c
                ideal.add(v)
        quotient = free_dim - (ideal.rank() if free_dim else 0)
        if quotient != H.dim(bd):
            dim_mismatches.append((bd, quotient, H.dim(bd)))

    return IsoReport(
        bound,
        gen_failures,
        kind_failures,
        relation_failures,
        surj_failures,
        dim_mismatches,
        skipped,
    )
