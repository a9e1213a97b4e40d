from fractions import Fraction

import pytest

from superkon.algebra import AlgebraConfig, AlgebraElement, bracket
from superkon.exactnum import GaussRat, Scalar, UsageError
from superkon.grassmann import EpsilonConfig, iset
from superkon.repn import build_so2, build_so3_vm
from superkon.report import Window
from superkon.submod import iso_check_map, iso_target, named_submodule
from superkon.tables import N2Table, N3Table, TableVec, compare_table
from superkon.tensmod import (ModBasisVec, ModVec, TensorModule,
                              module_from_config, parity_change)

P = ("a", "b", "c")
A = Scalar.var(P, "a")
B = Scalar.var(P, "b")
C = Scalar.var(P, "c")


def n3_module(two_m=1, eps=1, c=None):
    cc = C if c is None else Scalar.const(P, c)
    return TensorModule(EpsilonConfig(3, (eps,) * 3), build_so3_vm(two_m, cc, P),
                        A, sector_delta=(0 if eps == 0 else None))


def n2_module(eps=(1, 1), b=None, c=None, a=None, sector=None):
    bb = B if b is None else Scalar.const(P, b)
    cc = C if c is None else Scalar.const(P, c)
    aa = A if a is None else Scalar.const(P, a)
    return TensorModule(EpsilonConfig(2, eps), build_so2(bb, cc, P), aa, sector)


def test_plain_series_action():
    M = n3_module()
    got = M.act_basis_d(2, 0, ModBasisVec(0, 0, 0))
    assert got == {ModBasisVec(2, 0, 0): A + C + 2}


def test_three_xi_kills():
    M = n3_module()
    assert M.act_basis_d(1, iset(1, 2, 3), ModBasisVec(0, 0, 0)) == {}


def test_function_strips_prefix_with_sign():
    M = n3_module()
    res = M.act_function(0, iset(1), ModBasisVec(0, iset(1), 0))
    assert res == (-1, ModBasisVec(0, 0, 0))


def test_two_xi_uses_generator_image():
    M = n3_module(two_m=1)
    got = M.act_basis_d(1, iset(1, 2), ModBasisVec(0, 0, 0))
    assert got == {ModBasisVec(0, 0, 0):
                   Scalar.const(P, GaussRat(0, Fraction(-1, 2)))}


def test_central_rejected():
    M = n2_module()
    with pytest.raises(UsageError):
        M.act(AlgebraElement.central_element(P), ModVec.basis(P, ModBasisVec(0, 0, 0)))


def test_weight_shift_exact():
    # a D-symbol moves the t-exponent by exactly 2k + sum(1 - eps_i)
    M = n2_module(eps=(1, 0))
    for p in range(-2, 3):
        for im in range(4):
            sh = M.weight_shift(p, im)
            for bv in M.basis_at(0) + M.basis_at(1):
                for bv2 in M.act_basis_d(p, im, bv):
                    assert bv2.l == bv.l + sh, (p, im, bv)


def test_parity_of_action():
    M = n2_module()
    for p in range(-1, 3):
        for im in range(4):
            op_par = im.bit_count() & 1
            for bv in M.basis_at(0):
                for bv2 in M.act_basis_d(p, im, bv):
                    assert bv2.parity == (bv.parity + op_par) % 2


@pytest.mark.parametrize("eps,sector", [((1, 1), None), ((1, 0), None),
                                        ((0, 0), 0), ((0, 0), 1)])
def test_module_axiom_symbolic(eps, sector):
    M = n2_module(eps=eps, sector=sector)
    acfg = AlgebraConfig(M.cfg)
    syms = [(p, im, True) for p in range(-1, 3) for im in range(4)]
    syms += [(k, im, False) for k in range(-1, 2) for im in range(4)]
    vecs = [bv for l in (0, 1) for bv in M.basis_at(l)]
    for i, (p1, i1, d1) in enumerate(syms):
        for (p2, i2, d2) in syms[i:]:
            x = (AlgebraElement.d_symbol(P, p1, i1) if d1
                 else AlgebraElement.a_monomial(P, p1, i1))
            y = (AlgebraElement.d_symbol(P, p2, i2) if d2
                 else AlgebraElement.a_monomial(P, p2, i2))
            br = bracket(acfg, x, y)
            sgn = -1 if ((i1.bit_count() & 1) and (i2.bit_count() & 1)) else 1
            for bv in vecs:
                v = ModVec.basis(P, bv)
                lhs = M.act(br, v)
                rhs = M.act(x, M.act(y, v)) - M.act(y, M.act(x, v)).scale(sgn)
                assert (lhs - rhs).is_zero(), ((p1, i1, d1), (p2, i2, d2), bv)


def test_a_associativity():
    M = n3_module(two_m=1)
    monos = [(k, im) for k in range(-1, 2) for im in range(8)]
    vecs = [bv for bv in M.basis_at(0)]
    from superkon.grassmann import xi_mul
    for (k1, i1) in monos:
        for (k2, i2) in monos:
            f = AlgebraElement.a_monomial(P, k1, i1)
            g = AlgebraElement.a_monomial(P, k2, i2)
            sm = xi_mul(i1, i2)
            for bv in vecs:
                v = ModVec.basis(P, bv)
                lhs = M.act(f, M.act(g, v))
                if sm is None:
                    assert lhs.is_zero()
                else:
                    sign, union = sm
                    fg = AlgebraElement.a_monomial(P, k1 + k2, union,
                                                   Scalar.const(P, sign))
                    assert (lhs - M.act(fg, v)).is_zero(), ((k1, i1), (k2, i2), bv)


def test_table_agreement_n2():
    for eps in ((1, 1), (1, 0)):
        M = n2_module(eps=eps)
        disc, n = compare_table(M, N2Table(M), range(-2, 3), range(-1, 2))
        assert disc == [] and n > 0


def test_table_agreement_n3():
    for e in (1, 0):
        M = n3_module(two_m=1, eps=e)
        disc, n = compare_table(M, N3Table(M), range(-1, 2), range(-1, 1))
        assert disc == [] and n > 0


def test_table_example_lines():
    # b-multiplication line, untwisted and twisted
    M = n2_module()
    t = N2Table(M)
    out = t.act("xi12", 2, TableVec("v", 0, 0))
    assert out == {TableVec("v", 0, 2): B}
    Mt = n2_module(eps=(1, 0))
    tt = N2Table(Mt)
    out = tt.act("xi12", 2, TableVec("v", 0, 0))
    assert out == {TableVec("v", 0, 5): B}
    # annihilation line
    out = t.act("P+", 1, TableVec("vp", 0, 0))
    assert out == {}


def test_table_example_lines_n3():
    M = n3_module(two_m=1, eps=1)
    t = N3Table(M)
    assert t.act("xi123", 0, TableVec("v", 0, 0)) == {}
    assert t.act("xi3", 0, TableVec("v", 1, 0)) == {TableVec("w", 1, 0):
                                                    Scalar.const(P, 1)}
    out = t.act("xi12", 0, TableVec("w", 0, 0))
    assert out == {TableVec("w", 0, 0):
                   Scalar.const(P, GaussRat(0, Fraction(-1, 2)))}


def test_parity_change_involution():
    v = ModVec.basis(P, ModBasisVec(0, iset(1), 0))
    w = parity_change(v)
    assert w.flipped and w.terms == v.terms
    assert parity_change(w) == v
    assert parity_change(ModVec(P, {})).is_zero()


def test_named_submodule_w_generators():
    M = n2_module()
    gens = named_submodule(M, "W_plus", range(0, 1))
    # at weight 0: v+_0 and (a/2) v_0 - i w_0
    assert len(gens) == 2
    g2 = gens[1]
    coeff_v = g2.terms[ModBasisVec(0, 0, 0)]
    assert coeff_v == A.scale_raw(1, 0, 2)
    assert g2.terms[ModBasisVec(0, iset(1, 2), 0)] == \
        Scalar.const(P, GaussRat(0, -1))


def test_named_submodule_cw():
    M = n2_module(eps=(1, 0), b=0, c=0, a=1, sector=0)
    gens = named_submodule(M, "Cw_minus1", range(-2, 2))
    assert len(gens) == 1
    assert gens[0].terms == {ModBasisVec(-1, iset(1, 2), 0):
                             Scalar.const(P, 1)}
    with pytest.raises(UsageError):
        named_submodule(n2_module(eps=(1, 0), b=0, c=0, a=2, sector=0),
                        "Cw_minus1", range(0, 1))


def test_named_submodule_fprime_example():
    # the r=0 v-bold generator is (2m+2)(2m+1) v+ with 2m = 1
    M = n3_module(two_m=1, eps=1, c=Fraction(-1, 2))
    gens = named_submodule(M, "F_prime", range(0, 1))
    tab = N3Table(M)
    target = tab.to_modvec(TableVec("vp", 0, 0)).scale(Scalar.const(P, 6))
    assert any((g - target).is_zero() for g in gens)


def test_fprime_requires_matching_scalar():
    with pytest.raises(UsageError):
        named_submodule(n3_module(two_m=1, eps=1, c=1), "F_prime", range(0, 1))


def test_sector_shift_symbolic():
    M = TensorModule(EpsilonConfig(2, (0, 0)), build_so2(B, C, P), A,
                     sector_delta=1)
    rpt = iso_check_map(M, "sector_shift", Window(-2, 2, -7, 7, 4))
    assert rpt.status == "pass"


def test_quotient_map_passes():
    M = TensorModule(EpsilonConfig(2, (1, 1)), build_so2(GaussRat(0, 1), 1, P), A)
    rpt = iso_check_map(M, "quotient_wplus", Window(-2, 2, -8, 8, 4),
                        params={"a": Fraction(5, 7)})
    assert rpt.status == "pass"
    assert rpt.details["relations_derived"] > 0


def test_quotient_map_wminus():
    M = TensorModule(EpsilonConfig(2, (1, 1)), build_so2(GaussRat(0, -1), 1, P), A)
    rpt = iso_check_map(M, "quotient_wminus", Window(-2, 2, -8, 8, 4),
                        params={"a": Fraction(5, 7)})
    assert rpt.status == "pass"


def test_identity_map_wrong_c_fails():
    M1 = n2_module(b=1, c=1, a=Fraction(5, 7))
    M2 = n2_module(b=1, c=2, a=Fraction(5, 7))
    rpt = iso_check_map(M1, "identity", Window(-2, 2, -6, 6, 4), target=M2)
    assert rpt.status == "fail"
    assert any("D" in v["inputs"] for v in rpt.violations)


def test_basis_vec_text_round_trip():
    for bv in (ModBasisVec(-1, iset(1, 3), 2), ModBasisVec(0, 0, 0)):
        assert ModBasisVec.parse(bv.text()) == bv


def test_module_from_config():
    cfg = {"algebra": {"N": 2, "eps": [1, 0]},
           "rep": {"kind": "so2", "b": "0", "c": "0"},
           "a": "1", "sector_delta": 0}
    M = module_from_config(cfg, P)
    assert M.cfg.eps == (1, 0) and M.sector_delta == 0
    assert M.a == Scalar.const(P, 1)


def test_module_rejects_n4():
    from superkon.repn import SoRep
    from superkon.linalg import mat_zeros
    rep = SoRep(N=4, dim=1, gen={}, z_scalar=Scalar.zero(P), params=P)
    with pytest.raises(UsageError):
        TensorModule(EpsilonConfig(4, (1, 1, 1, 1)), rep, A)


def test_sector_lattice():
    M = n2_module(eps=(1, 0), sector=0)
    at0 = M.basis_at(0)
    # sector 0 at even weight: prefix sets with even (1-eps)-sum
    assert {bv.J for bv in at0} == {0, iset(1)}
    at1 = M.basis_at(1)
    assert {bv.J for bv in at1} == {iset(2), iset(1, 2)}
