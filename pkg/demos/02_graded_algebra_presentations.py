"""Bigraded graded-commutative F_p-algebras from generator lists.

A presentation names its generators (polynomial, exterior, or truncated),
places them in the first quadrant, and optionally gives them weights in
Z/(p-1).  Monomial bases, Koszul-signed products and dimension series all
come along for free, bounded by an explicit max total degree.
"""

from gradss import algebra as alg
from gradss.algebra import Presentation, ext, monomial_element, poly, trunc

p = 5
pres = Presentation(
    p,
    (
        trunc("u", p - 1, (0, 2), weight=1),   # u^4 = 0
        ext("su", (3, 0), weight=1),           # su^2 = 0
        ext("l1", (2 * p - 1, 0)),
        poly("m1", (2 * p, 0)),
    ),
    60,
)

print("dimension series through degree 13:", alg.dimension_series(pres, 13))
print("basis in bidegree (3, 6):",
      [alg.monomial_str(pres, m) for m in alg.basis_in_bidegree(pres, (3, 6))])

su = monomial_element(pres, {"su": 1})
l1 = monomial_element(pres, {"l1": 1})
u3 = monomial_element(pres, {"u": 3})
u = monomial_element(pres, {"u": 1})

print()
print("su * su =", alg.element_str(pres, alg.multiply(pres, su, su)))
print("u^3 * u =", alg.element_str(pres, alg.multiply(pres, u3, u)), "(truncation)")
print("l1 * su =", alg.element_str(pres, alg.multiply(pres, l1, su)),
      "   su * l1 =", alg.element_str(pres, alg.multiply(pres, su, l1)),
      "(odd classes anticommute)")

mono = pres.monomial({"l1": 1, "u": 3, "m1": 2})
print()
print("weight of", alg.monomial_str(pres, mono), "is",
      alg.weight_of(pres, mono), "in Z/4")
