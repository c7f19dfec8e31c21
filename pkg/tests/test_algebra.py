import pytest
from hypothesis import given, settings, strategies as st

from gradss import algebra as alg
from gradss.algebra import (
    BeyondTruncation,
    Presentation,
    basis_in_bidegree,
    dimension_series,
    element,
    ext,
    monomial_element,
    monomial_str,
    multiply,
    poly,
    trunc,
    weight_of,
)


def brunku1(p=5, N=60):
    # E(su) x E(l1) x P(m1): su in row 3, l1 and m1 in columns 2p-1 and 2p
    return Presentation(
        p,
        (ext("su", (0, 3)), ext("l1", (2 * p - 1, 0)), poly("m1", (2 * p, 0))),
        N,
    )


def brunku2(p=5, N=60):
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


def test_basis_sigma_u_in_column_zero():
    pres = brunku1()
    monos = basis_in_bidegree(pres, (0, 3))
    assert [monomial_str(pres, m) for m in monos] == ["su"]


def test_truncated_power_bidegree_empty():
    pres = Presentation(5, (trunc("u", 4, (0, 2)),), 20)
    assert basis_in_bidegree(pres, (0, 8)) == []  # u^4 = 0


def test_unit_monomial_in_degree_zero():
    pres = brunku2()
    monos = basis_in_bidegree(pres, (0, 0))
    assert monos == [pres.unit_monomial]


def test_exterior_square_vanishes():
    pres = brunku2()
    su = monomial_element(pres, {"su": 1})
    assert not multiply(pres, su, su)


def test_truncation_relation():
    pres = brunku2()
    u3 = monomial_element(pres, {"u": 3})
    u = monomial_element(pres, {"u": 1})
    assert not multiply(pres, u3, u)  # u^4 = 0 for p = 5


def test_koszul_sign_on_odd_swap():
    pres = brunku1()
    l1 = monomial_element(pres, {"l1": 1})
    su = monomial_element(pres, {"su": 1})
    lhs = multiply(pres, l1, su)
    rhs = multiply(pres, su, l1)
    assert lhs == alg.scale(pres, -1, rhs)
    assert rhs == monomial_element(pres, {"su": 1, "l1": 1})


def test_weight_examples():
    pres = brunku2()
    assert weight_of(pres, pres.monomial({"u": 2})) == 2
    assert weight_of(pres, pres.unit_monomial) == 0
    # l1 u^2 b2 with b2 = u m1^2 standing in the E2 algebra: l1 u^3 m1^2
    mono = pres.monomial({"l1": 1, "u": 3, "m1": 2})
    assert weight_of(pres, mono) == 3


def test_dimension_series_exterior_tensor_poly():
    pres = Presentation(5, (ext("l1", (9, 0)), poly("m1", (10, 0))), 12)
    assert dimension_series(pres, 10) == [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1]


def test_dimension_series_truncated():
    pres = Presentation(5, (trunc("u", 4, (0, 2)),), 10)
    assert dimension_series(pres, 8) == [1, 0, 1, 0, 1, 0, 1, 0, 0]


def test_dimension_series_empty_presentation():
    pres = Presentation(5, (), 6)
    assert dimension_series(pres, 4) == [1, 0, 0, 0, 0]


def test_multiply_beyond_truncation_raises():
    pres = Presentation(5, (poly("m1", (10, 0)),), 25)
    m2 = monomial_element(pres, {"m1": 2})
    with pytest.raises(BeyondTruncation):
        multiply(pres, m2, m2)


def test_exterior_even_degree_rejected():
    with pytest.raises(ValueError):
        ext("x", (2, 0))


def test_small_primes_rejected():
    with pytest.raises(ValueError):
        Presentation(3, (), 10)


def random_presentations(max_gens=3, N=24):
    kinds = st.sampled_from(["poly", "ext", "trunc"])

    def build(draws):
        gens = []
        for i, (kind, d_half, w, h) in enumerate(draws):
            name = f"g{i}"
            if kind == "ext":
                gens.append(ext(name, (2 * d_half + 1, 0), weight=w))
            elif kind == "trunc":
                gens.append(trunc(name, h, (2 * d_half, 2), weight=w))
            else:
                gens.append(poly(name, (2 * d_half + 2, 0), weight=w))
        return Presentation(5, tuple(gens), N)

    gen_data = st.tuples(kinds, st.integers(0, 3), st.integers(0, 3), st.integers(2, 4))
    return st.lists(gen_data, min_size=1, max_size=max_gens).map(build)


def random_element(draw, pres, max_terms=3):
    table = alg.monomial_table(pres)
    monos = sorted(m for ms in table.values() for m in ms)
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms))
    bd = alg.bidegree(pres, picks[0])
    picks = [m for m in picks if alg.bidegree(pres, m) == bd]
    coeffs = draw(
        st.lists(st.integers(1, 4), min_size=len(picks), max_size=len(picks))
    )
    return element(pres, dict(zip(picks, coeffs)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_graded_commutativity(data):
    pres = data.draw(random_presentations())
    a = random_element(data.draw, pres)
    b = random_element(data.draw, pres)
    try:
        ab = multiply(pres, a, b)
        ba = multiply(pres, b, a)
    except BeyondTruncation:
        return
    da = alg.total_degree(pres, next(iter(a.coeffs))) if a else 0
    db = alg.total_degree(pres, next(iter(b.coeffs))) if b else 0
    sign = (-1) ** (da * db)
    assert ab == alg.scale(pres, sign, ba)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_associativity_and_unit(data):
    pres = data.draw(random_presentations())
    one = element(pres, {pres.unit_monomial: 1})
    a = random_element(data.draw, pres)
    b = random_element(data.draw, pres)
    c = random_element(data.draw, pres)
    assert multiply(pres, one, a) == a
    assert multiply(pres, a, one) == a
    try:
        left = multiply(pres, multiply(pres, a, b), c)
        right = multiply(pres, a, multiply(pres, b, c))
    except BeyondTruncation:
        return
    assert left == right


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_basis_partitions_dimension_series(data):
    pres = data.draw(random_presentations())
    dims = dimension_series(pres, pres.max_degree)
    by_degree = [0] * (pres.max_degree + 1)
    for (n, m), monos in alg.monomial_table(pres).items():
        by_degree[n + m] += len(monos)
    assert by_degree == dims


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_weight_multiplicative(data):
    pres = data.draw(random_presentations())
    table = alg.monomial_table(pres)
    monos = sorted(m for ms in table.values() for m in ms)
    m1 = data.draw(st.sampled_from(monos))
    m2 = data.draw(st.sampled_from(monos))
    sign, prod = alg.multiply_monomials(pres, m1, m2)
    if sign == 0 or alg.total_degree(pres, prod) > pres.max_degree:
        return
    assert weight_of(pres, prod) == (
        weight_of(pres, m1) + weight_of(pres, m2)
    ) % (pres.p - 1)
