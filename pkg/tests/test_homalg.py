import pytest

from gradss.algebra import Presentation, ext, trunc
from gradss.homalg import (
    BaseRing,
    ResourceLimit,
    hochschild_homology,
    koszul_tor,
    recognize_free_presentation,
)

from oracles import bar_tor_fp_fp, dense_hochschild


def test_tor_zp_base_fp_zp():
    # resolution 0 -> S^2 R -u-> R -> Z_p -> 0, tensored over a p-torsion module
    table = koszul_tor(BaseRing("zp", 5), "fp", "zp", 40)
    assert table.nonzero() == [((0, 0), 1), ((1, 2), 1)]


def test_tor_fp_base_free_right_module():
    table = koszul_tor(BaseRing("fp", 5), "fp", "fpu", 20)
    assert table.nonzero() == [((0, 0), 1)]


def test_tor_fp_base_fp_fp():
    # tensored Koszul differential is multiplication by u = 0
    table = koszul_tor(BaseRing("fp", 5), "fp", "fp", 20)
    assert table.nonzero() == [((0, 0), 1), ((1, 2), 1)]


def test_tor_left_module_must_be_p_torsion():
    with pytest.raises(ValueError):
        koszul_tor(BaseRing("zp", 5), "zp", "zp", 10)


def test_tor_zero_column_is_tensor_product():
    # Tor_0(F_p, Z_p) = F_p in degree 0 over Z_p[u]
    table = koszul_tor(BaseRing("zp", 5), "fp", "zp", 20)
    assert [table.dim(0, m) for m in range(6)] == [1, 0, 0, 0, 0, 0]
    # F_p[u] (x) Z_p[u]/(u) = F_p, and u acts injectively so Tor_1 vanishes
    table2 = koszul_tor(BaseRing("zp", 7), "fpu", "zp", 20)
    assert table2.nonzero() == [((0, 0), 1)]


def test_tor_koszul_matches_bar_resolution_over_truncated_base():
    for h in (2, 3):
        base = BaseRing("fp", 5, height=h)
        table = koszul_tor(base, "fp", "fp", 16)
        oracle = bar_tor_fp_fp(5, h, 2, n_max=6, t_max=16)
        got = {nm: v for nm, v in table.dims.items() if nm[0] <= 6 and nm[1] <= 16}
        assert got == oracle, (h, got, oracle)


def test_recognize_exterior_on_degree_three():
    rec = recognize_free_presentation([1, 0, 0, 1, 0, 0, 0], 5)
    assert rec.presentation is not None
    gens = rec.presentation.generators
    assert len(gens) == 1 and gens[0].kind == "exterior"
    assert gens[0].total_degree == 3
    assert rec.forced


def test_recognize_polynomial_on_degree_two():
    rec = recognize_free_presentation([1, 0, 1, 0, 1, 0, 1], 5)
    gens = rec.presentation.generators
    assert len(gens) == 1 and gens[0].kind == "polynomial"
    assert gens[0].total_degree == 2
    assert not rec.forced  # a truncated tensor factorization has the same series


def test_recognize_refuses_non_free_series():
    rec = recognize_free_presentation([1, 0, 2, 0, 2], 5)
    assert rec.presentation is None


def test_hh0_is_the_algebra():
    pres = Presentation(5, (trunc("u", 4, (0, 2)),), 16)
    dims = hochschild_homology(pres, 0, 12)
    assert {t: v for (s, t), v in dims.items() if s == 0} == {0: 1, 2: 1, 4: 1, 6: 1}


def test_hh_of_unit_algebra():
    pres = Presentation(5, (), 10)
    dims = hochschild_homology(pres, 3, 8)
    assert dims == {(0, 0): 1}


def test_hh_truncated_polynomial_matches_dense_oracle():
    pres = Presentation(5, (trunc("u", 4, (0, 2)),), 16)
    dims = hochschild_homology(pres, 2, 12)
    oracle = dense_hochschild(5, 4, 2, s_max=2, t_max=12)
    assert dims == oracle


def test_hh_exterior_is_divided_power_pattern():
    # HH of E(z), |z| = 3: one class at (s, 3s) and one at (s, 3s + 3)
    pres = Presentation(5, (ext("z", (3, 0)),), 16)
    dims = hochschild_homology(pres, 3, 12)
    expected = {}
    for s in range(4):
        if 3 * s <= 12:
            expected[(s, 3 * s)] = 1
        if 3 * s + 3 <= 12:
            expected[(s, 3 * s + 3)] = 1
    assert dims == expected


def test_hh_connectivity_bound():
    pres = Presentation(5, (trunc("u", 4, (0, 2)),), 16)
    dims = hochschild_homology(pres, 3, 14)
    for (s, t), v in dims.items():
        assert t >= 2 * s or v == 0


def test_hh_resource_cap():
    pres = Presentation(5, (trunc("u", 4, (0, 2)),), 16)
    with pytest.raises(ResourceLimit):
        hochschild_homology(pres, 3, 14, cap=5)
