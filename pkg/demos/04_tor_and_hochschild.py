"""Tor over one-variable base rings, and Hochschild homology.

Tor comes from small explicit free resolutions tensored down to F_p; the
p-adic base ring is symbolic and only ever meets p-torsion modules.  The
flagship instance resolves Z_p over Z_p[u] by multiplication by u; its Tor
table is F_p at (0,0) and (1,2) and nothing else, which is forced to be an
exterior algebra on one degree-3 class.
"""

from gradss.algebra import Presentation, trunc
from gradss.homalg import (
    BaseRing,
    hochschild_homology,
    koszul_tor,
    recognize_free_presentation,
)

p = 5
table = koszul_tor(BaseRing("zp", p), "fp", "zp", 40)
print("Tor over Z_p[u] of (F_p, Z_p):", table.nonzero())
rec = recognize_free_presentation(table.total_series(12), p)
(g,) = rec.presentation.generators
print(f"recognized: {g.kind} algebra on one class of degree {g.total_degree},",
      "structure forced" if rec.forced else "series match only")

print()
print("Tor over the truncated ring F_p[u]/(u^3) of (F_p, F_p), periodic:")
table = koszul_tor(BaseRing("fp", p, height=3), "fp", "fp", 16)
for (n, m), v in table.nonzero():
    print(f"  Tor_({n},{m}) = F_p^{v}")

print()
print("Hochschild homology of P_4(u) via the normalized cyclic bar complex:")
pres = Presentation(p, (trunc("u", 4, (0, 2)),), 16)
dims = hochschild_homology(pres, 2, 12)
for (s, t) in sorted(dims):
    print(f"  HH_({s},{t}) = F_p^{dims[(s, t)]}")
