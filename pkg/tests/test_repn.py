from fractions import Fraction

import pytest

from superkon.exactnum import GaussRat, I, Scalar, UsageError
from superkon.linalg import mat_add, mat_apply, mat_scale
from superkon.repn import (build_so2, build_so3_vm, check_so_relations,
                           rep_from_config)

P = ("a", "b", "c")


def gr(x):
    if isinstance(x, str):
        return Scalar.parse(P, x)
    return Scalar.const(P, x)


def test_build_so2_direct():
    rep = build_so2(1, 0, P)
    assert rep.dim == 1
    assert rep.gen[(1, 2)][0][0] == gr(1)
    assert rep.z_scalar == gr(0)


def test_build_so2_trivial():
    rep = build_so2(0, 0, P)
    assert rep.gen[(1, 2)][0][0].is_zero()


def test_build_so2_degenerate_locus():
    rep = build_so2(1, -I, P)
    b = rep.gen[(1, 2)][0][0]
    c = rep.z_scalar
    assert (b * b + c * c).is_zero()


def lowering(rep):
    # F_13 + i F_23
    return mat_add(rep.gen[(1, 3)], mat_scale(rep.gen[(2, 3)], I))


def raising(rep):
    # -F_13 + i F_23
    return mat_add(mat_scale(rep.gen[(1, 3)], -1), mat_scale(rep.gen[(2, 3)], I))


def test_vm_lowering_line():
    rep = build_so3_vm(1, gr("c"), P)
    # lowering on v_1 gives 1 * v_0
    col = mat_apply(lowering(rep), 1)
    assert col[0] == gr(1)
    assert col[1].is_zero()


def test_vm_raising_line():
    rep = build_so3_vm(1, gr("c"), P)
    # raising on v_0 gives (2m - 0) v_1 = 1 * v_1
    col = mat_apply(raising(rep), 0)
    assert col[1] == gr(1)
    assert col[0].is_zero()


def test_vm_trivial():
    rep = build_so3_vm(0, gr(0), P)
    assert rep.dim == 1
    assert all(rep.gen[k][0][0].is_zero() for k in rep.gen)


@pytest.mark.parametrize("two_m", [0, 1, 2, 3, 4])
def test_vm_relations(two_m):
    rep = build_so3_vm(two_m, gr("c"), P)
    assert check_so_relations(rep).status == "pass"


def test_so2_relations_trivially_pass():
    assert check_so_relations(build_so2(1, 1, P)).status == "pass"


def test_perturbed_matrix_fails():
    rep = build_so3_vm(2, gr(0), P)
    rep.gen[(1, 2)][0][1] = rep.gen[(1, 2)][0][1] + gr(1)
    rpt = check_so_relations(rep)
    assert rpt.status == "fail"
    assert rpt.violations


def test_ladder_roundtrip_on_top():
    # lowering after raising on v_0 scales by 2m
    for two_m in (1, 2, 3):
        rep = build_so3_vm(two_m, gr(0), P)
        up = mat_apply(raising(rep), 0)
        acc = [Scalar.zero(P) for _ in range(rep.dim)]
        low = lowering(rep)
        for j, cj in enumerate(up):
            if not cj.is_zero():
                for i in range(rep.dim):
                    acc[i] = acc[i] + low[i][j] * cj
        assert acc[0] == gr(two_m)
        assert all(acc[i].is_zero() for i in range(1, rep.dim))


def test_weight_spectrum():
    two_m = 3
    rep = build_so3_vm(two_m, gr(0), P)
    w = mat_scale(rep.gen[(1, 2)], GaussRat(0, 2))  # 2i F_12
    for j in range(rep.dim):
        assert w[j][j] == gr(two_m - 2 * j)
        for i in range(rep.dim):
            if i != j:
                assert w[i][j].is_zero()


def test_rep_from_config_so2():
    rep = rep_from_config({"kind": "so2", "b": "1", "c": "0"}, P)
    assert rep.dim == 1 and rep.gen[(1, 2)][0][0] == gr(1)


def test_rep_from_config_so3():
    rep = rep_from_config({"kind": "so3_Vm", "two_m": 1, "c": "-1/2"}, P)
    assert rep.dim == 2
    assert rep.z_scalar == gr(Fraction(-1, 2))


def test_rep_from_config_matrices_gatekeeper():
    good = {"kind": "matrices", "c": "0",
            "gen": {"1,2": [["0", "1"], ["-1", "0"]]}}
    rep = rep_from_config(good, P)
    assert rep.N == 2 and rep.dim == 2

    ladder = build_so3_vm(1, gr(0), P)
    good3 = {"kind": "matrices", "c": "0",
             "gen": {f"{i},{j}": [[str(x) for x in row] for row in m]
                     for (i, j), m in ladder.gen.items()}}
    rep3 = rep_from_config(good3, P)
    assert rep3.N == 3 and rep3.dim == 2

    # zero ladder generators with nonzero F_12 break [F_13, F_23] = F_12
    bad = {"kind": "matrices", "c": "0",
           "gen": {"1,2": [["0", "1"], ["-1", "0"]],
                   "1,3": [["0", "0"], ["0", "0"]],
                   "2,3": [["0", "0"], ["0", "0"]]}}
    with pytest.raises(UsageError):
        rep_from_config(bad, P)


def test_generator_antisymmetry():
    rep = build_so3_vm(2, gr(0), P)
    g = rep.generator(3, 1)
    assert g == mat_scale(rep.gen[(1, 3)], -1)
