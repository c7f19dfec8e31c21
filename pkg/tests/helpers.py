"""Shared builders for the two first-quadrant runs and the target algebra."""

from gradss import thhku
from gradss.algebra import Presentation, ext, monomial_element, poly, trunc
from gradss.dga import extend_derivation
from gradss.specseq import DifferentialSpec


def brunku1_presentation(p=5, N=60):
    """E(su) (row 3) tensor E(l1), P(m1) (columns 2p-1, 2p)."""
    return Presentation(
        p,
        (ext("su", (0, 3)), ext("l1", (2 * p - 1, 0)), poly("m1", (2 * p, 0))),
        N,
    )


def brunku2_presentation(p=5, N=60):
    """P_{p-1}(u) (row 2) tensor E(su, l1), P(m1) (columns 3, 2p-1, 2p)."""
    return Presentation(
        p,
        (
            trunc("u", p - 1, (0, 2), weight=1),
            ext("su", (3, 0), weight=1),
            ext("l1", (2 * p - 1, 0)),
            poly("m1", (2 * p, 0)),
        ),
        N,
    )


def intro_dga(p=5, N=60):
    pres = brunku2_presentation(p, N)
    img = monomial_element(pres, {"u": p - 2, "su": 1})
    return pres, extend_derivation(pres, {"m1": img}, 2 * p - 3)


def brunku2_spec(pres, p):
    """The one nonzero differential: d_{2p-3}(m1) = u^{p-2} su."""
    return DifferentialSpec(
        2 * p - 3,
        monomial_element(pres, {"m1": 1}),
        monomial_element(pres, {"u": p - 2, "su": 1}),
        provenance="forced by the vanishing of u^{p-2} su in the abutment",
    )


def omega_candidate(p=5, N=60):
    return thhku.omega_candidate(p, N)


def omega_relations(cand, p):
    return thhku.omega_relations(cand, p)


def omega_reps(pres, p):
    return thhku.omega_reps(pres, p)


def random_dga_instance(rng, with_extra_factor=None):
    """Seeded small DGA in the shipped-run shape: d(m) = u^j s on page 2j + 1.

    Randomizes the prime, the truncation height and the degrees; optionally
    tensors on an extra exterior generator that the differential kills.
    """
    p = rng.choice([5, 7])
    h = rng.randint(2, 4)
    j = rng.randint(1, h - 1)
    k = rng.randint(j + 1, j + 3)
    r = 2 * j + 1
    sigma = 2 * k - r  # odd and positive since k > j
    gens = [trunc("u", h, (0, 2)), ext("s", (sigma, 0)), poly("m", (2 * k, 0))]
    if with_extra_factor is None:
        with_extra_factor = rng.random() < 0.5
    if with_extra_factor:
        gens.append(ext("y", (2 * k + 1, 0)))
    N = rng.randint(6 * k, 8 * k)
    pres = Presentation(p, tuple(gens), N)
    image = monomial_element(pres, {"u": j, "s": 1})
    spec = DifferentialSpec(r, monomial_element(pres, {"m": 1}), image)
    return pres, [spec]
