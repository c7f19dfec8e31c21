"""Finite-type bigraded graded-commutative F_p-algebra presentations.

A presentation is an ordered list of generators, each polynomial, exterior or
truncated, with a first-quadrant bidegree (n, m) and a weight residue mod p-1.
Monomials are exponent tuples in generator order; elements are homogeneous
F_p-combinations of monomials.  Enumeration is bounded by the presentation's
max total degree N, and any product that would land past N raises
BeyondTruncation rather than being dropped silently.

Conventions: column n is the filtration degree, row m the coefficient degree.
Koszul signs use the total degree n + m.  p is an odd prime >= 5, so exterior
generators are exactly the odd-degree ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linfp import is_prime

POLYNOMIAL = "polynomial"
EXTERIOR = "exterior"
TRUNCATED = "truncated"

Monomial = tuple  # exponent tuple aligned with Presentation.generators
Bidegree = tuple  # (n, m)


class BeyondTruncation(Exception):
    """A product landed beyond the presentation's enumeration bound."""

    def __init__(self, total_degree, bound):
        super().__init__(
            f"product of total degree {total_degree} exceeds the bound {bound}"
        )
        self.total_degree = total_degree
        self.bound = bound


@dataclass(frozen=True)
class GeneratorSpec:
    """One algebra generator: name, kind, bidegree (n, m), weight mod p-1."""

    name: str
    kind: str
    bidegree: Bidegree
    weight: int = 0
    height: int | None = None  # truncation height, only for kind "truncated"

    def __post_init__(self):
        n, m = self.bidegree
        if n < 0 or m < 0:
            raise ValueError(f"generator {self.name}: bidegree outside first quadrant")
        if n + m == 0:
            raise ValueError(f"generator {self.name}: total degree must be positive")
        if self.kind == EXTERIOR:
            if (n + m) % 2 == 0:
                raise ValueError(
                    f"generator {self.name}: exterior generator of even total degree"
                )
            if self.height is not None:
                raise ValueError(f"generator {self.name}: exterior has no height")
        elif self.kind in (POLYNOMIAL, TRUNCATED):
            if (n + m) % 2 == 1:
                raise ValueError(
                    f"generator {self.name}: even-kind generator of odd total degree"
                )
            if self.kind == TRUNCATED:
                if self.height is None or self.height < 2:
                    raise ValueError(
                        f"generator {self.name}: truncation height must be >= 2"
                    )
            elif self.height is not None:
                raise ValueError(f"generator {self.name}: polynomial has no height")
        else:
            raise ValueError(f"generator {self.name}: unknown kind {self.kind!r}")

    @property
    def total_degree(self) -> int:
        return self.bidegree[0] + self.bidegree[1]

    @property
    def odd(self) -> bool:
        return self.total_degree % 2 == 1


def poly(name, bidegree, weight=0):
    return GeneratorSpec(name, POLYNOMIAL, tuple(bidegree), weight)


def ext(name, bidegree, weight=0):
    return GeneratorSpec(name, EXTERIOR, tuple(bidegree), weight)


def trunc(name, height, bidegree, weight=0):
    return GeneratorSpec(name, TRUNCATED, tuple(bidegree), weight, height)


@dataclass(frozen=True)
class Presentation:
    """Bigraded graded-commutative F_p-algebra, enumerated up to degree N."""

    p: int
    generators: tuple
    max_degree: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 5:
            raise ValueError(f"p = {self.p}: need a prime >= 5")
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if self.max_degree < 0:
            raise ValueError("max_degree must be non-negative")

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def gen(self, name: str) -> GeneratorSpec:
        return self.generators[self.index(name)]

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def monomial(self, exponents: dict) -> Monomial:
        """Monomial from a name -> exponent mapping; bounds are checked."""
        e = [0] * len(self.generators)
        for name, k in exponents.items():
            i = self.index(name)
            g = self.generators[i]
            if k < 0 or (g.kind == EXTERIOR and k > 1) or (
                g.kind == TRUNCATED and k >= g.height
            ):
                raise ValueError(f"exponent {k} out of range for {name}")
            e[i] = k
        return tuple(e)


class Element:
    """Homogeneous F_p-linear combination of monomials of one bidegree.

    Zero coefficients are never stored; the zero element has no monomials and
    belongs to every bidegree.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = dict(coeffs) if coeffs else {}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"Element({self.coeffs!r})"

    def items(self):
        return self.coeffs.items()

    def monomials(self):
        return sorted(self.coeffs)


ZERO = Element()


def element(pres: Presentation, pairs) -> Element:
    """Build an Element, normalizing coefficients mod p and checking homogeneity."""
    coeffs = {}
    for mono, c in dict(pairs).items():
        c %= pres.p
        if c:
            coeffs[tuple(mono)] = c
    el = Element(coeffs)
    bidegree_of(pres, el)  # homogeneity check
    return el


def monomial_element(pres: Presentation, exponents: dict, coeff: int = 1) -> Element:
    return element(pres, {pres.monomial(exponents): coeff})


def bidegree(pres: Presentation, mono: Monomial) -> Bidegree:
    n = m = 0
    for e, g in zip(mono, pres.generators):
        n += e * g.bidegree[0]
        m += e * g.bidegree[1]
    return (n, m)


def total_degree(pres: Presentation, mono: Monomial) -> int:
    return sum(e * g.total_degree for e, g in zip(mono, pres.generators))


def bidegree_of(pres: Presentation, el: Element) -> Bidegree | None:
    """Common bidegree of a nonzero element, None for zero; raises if mixed."""
    bd = None
    for mono in el.coeffs:
        b = bidegree(pres, mono)
        if bd is None:
            bd = b
        elif bd != b:
            raise ValueError(f"inhomogeneous element: bidegrees {bd} and {b}")
    return bd


def weight_of(pres: Presentation, mono: Monomial) -> int:
    """Weight of a monomial in Z/(p-1): sum of exponent * generator weight."""
    return sum(e * g.weight for e, g in zip(mono, pres.generators)) % (pres.p - 1)


def weight_of_element(pres: Presentation, el: Element) -> int | None:
    """Common weight of the monomials of el, or None if they disagree."""
    w = None
    for mono in el.coeffs:
        wm = weight_of(pres, mono)
        if w is None:
            w = wm
        elif w != wm:
            return None
    return w


def multiply_monomials(pres: Presentation, a: Monomial, b: Monomial):
    """(sign, monomial) for a*b, or (0, None) when the product vanishes.

    The sign is the Koszul sign from moving the odd-degree factors of b past
    the later odd-degree factors of a into generator order.
    """
    gens = pres.generators
    swaps = 0
    # odd_suffix[i]: odd-degree factors of a in slots i and later
    odd_suffix = [0] * (len(gens) + 1)
    for i in range(len(gens) - 1, -1, -1):
        odd_suffix[i] = odd_suffix[i + 1] + (a[i] if gens[i].odd else 0)
    out = []
    for i, g in enumerate(gens):
        e = a[i] + b[i]
        if g.kind == EXTERIOR and e > 1:
            return 0, None
        if g.kind == TRUNCATED and e >= g.height:
            return 0, None
        if g.odd and b[i]:
            swaps += b[i] * odd_suffix[i + 1]
        out.append(e)
    return (-1) ** (swaps % 2), tuple(out)


def multiply(pres: Presentation, a: Element, b: Element) -> Element:
    """Product in the presented algebra.

    Raises BeyondTruncation when the target degree exceeds the bound, so a
    vanishing product past the bound is never mistaken for a real zero.
    """
    if not a or not b:
        return ZERO
    da = total_degree(pres, next(iter(a.coeffs)))
    db = total_degree(pres, next(iter(b.coeffs)))
    if da + db > pres.max_degree:
        raise BeyondTruncation(da + db, pres.max_degree)
    coeffs: dict = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            sign, mono = multiply_monomials(pres, ma, mb)
            if sign == 0:
                continue
            coeffs[mono] = (coeffs.get(mono, 0) + sign * ca * cb) % pres.p
    return Element({m: c for m, c in coeffs.items() if c})


def add(pres: Presentation, a: Element, b: Element) -> Element:
    coeffs = dict(a.coeffs)
    for mono, c in b.coeffs.items():
        coeffs[mono] = (coeffs.get(mono, 0) + c) % pres.p
    el = Element({m: c for m, c in coeffs.items() if c})
    bidegree_of(pres, el)
    return el


def scale(pres: Presentation, c: int, a: Element) -> Element:
    c %= pres.p
    if c == 0:
        return ZERO
    return Element({m: (c * v) % pres.p for m, v in a.coeffs.items()})


def sub(pres: Presentation, a: Element, b: Element) -> Element:
    return add(pres, a, scale(pres, -1, b))


def power(pres: Presentation, a: Element, k: int) -> Element:
    out = element(pres, {pres.unit_monomial: 1})
    for _ in range(k):
        out = multiply(pres, out, a)
    return out


@lru_cache(maxsize=None)
def monomial_table(pres: Presentation):
    """All admissible monomials of total degree <= N, grouped by bidegree.

    Within a bidegree the order is lexicographic on exponent tuples, which is
    graded-lex here since all monomials of one bidegree share a total degree.
    """
    gens = pres.generators
    table: dict = {}

    def rec(i, expo, n, m):
        if i == len(gens):
            table.setdefault((n, m), []).append(tuple(expo))
            return
        g = gens[i]
        dn, dm = g.bidegree
        d = dn + dm
        if g.kind == EXTERIOR:
            emax = 1
        elif g.kind == TRUNCATED:
            emax = g.height - 1
        else:
            emax = (pres.max_degree - n - m) // d
        for e in range(emax + 1):
            if n + m + e * d > pres.max_degree:
                break
            expo.append(e)
            rec(i + 1, expo, n + e * dn, m + e * dm)
            expo.pop()

    rec(0, [], 0, 0)
    for key in table:
        table[key].sort()
    return table


def basis_in_bidegree(pres: Presentation, bd: Bidegree) -> list:
    """Admissible monomials of the given bidegree, in the fixed order."""
    n, m = bd
    if n + m > pres.max_degree:
        raise BeyondTruncation(n + m, pres.max_degree)
    return list(monomial_table(pres).get((n, m), []))


def bidegrees(pres: Presentation) -> list:
    """All bidegrees carrying at least one monomial, sorted."""
    return sorted(monomial_table(pres))


def basis_in_total_degree(pres: Presentation, d: int) -> list:
    out = []
    for (n, m), monos in sorted(monomial_table(pres).items()):
        if n + m == d:
            out.extend(monos)
    return out


def dimension_series(pres: Presentation, n_max: int) -> list[int]:
    """Dimensions of the algebra per total degree 0..n_max."""
    if n_max > pres.max_degree:
        raise BeyondTruncation(n_max, pres.max_degree)
    dims = [0] * (n_max + 1)
    for (n, m), monos in monomial_table(pres).items():
        if n + m <= n_max:
            dims[n + m] += len(monos)
    return dims


def monomial_str(pres: Presentation, mono: Monomial) -> str:
    parts = []
    for e, g in zip(mono, pres.generators):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return " ".join(parts) if parts else "1"


def element_str(pres: Presentation, el: Element) -> str:
    if not el:
        return "0"
    terms = []
    for mono in sorted(el.coeffs):
        c = el.coeffs[mono] % pres.p
        ms = monomial_str(pres, mono)
        if c == 1 and ms != "1":
            terms.append(ms)
        elif ms == "1":
            terms.append(str(c))
        else:
            terms.append(f"{c} {ms}")
    return " + ".join(terms)
