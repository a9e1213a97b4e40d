from fractions import Fraction
from itertools import product

import pytest

from superkon.algebra import (AlgebraConfig, AlgebraElement, a_action,
                              apply_d, bracket, bracket_basis, eps_shift_map,
                              in_ideal_i, in_k_ell, k_ell_valuation, phi,
                              project_k0, tm1_power_d)
from superkon.exactnum import Scalar, UsageError
from superkon.grassmann import EpsilonConfig, SuperFunction, contact_bracket, iset

P = ()


def D(k, imask, coeff=1):
    return AlgebraElement.d_symbol(P, k, imask, coeff)


def A(k, imask, coeff=1):
    return AlgebraElement.a_monomial(P, k, imask, coeff)


def cfg(n, eps, central=False, mutation=None):
    return AlgebraConfig(EpsilonConfig(n, eps), central, mutation)


def test_witt_bracket():
    c = cfg(1, (1,))
    assert bracket_basis(c, (1, 0), (2, 0), P) == D(2, 0, 2)


def test_odd_self_bracket():
    c = cfg(1, (1,))
    assert bracket_basis(c, (1, iset(1)), (1, iset(1)), P) == -D(1, 0)


def test_central_term_plain():
    c = cfg(1, (1,), central=True)
    got = bracket_basis(c, (3, 0), (-1, 0), P)
    want = D(1, 0, -8) + AlgebraElement.central_element(P, 2)
    assert got == want


def test_central_term_one_xi():
    c = cfg(1, (1,), central=True)
    got = bracket_basis(c, (2, iset(1)), (0, iset(1)), P)
    want = -D(1, 0) + AlgebraElement.central_element(
        P, Scalar.const(P, Fraction(1, 4)))
    assert got == want


def test_central_needs_small_n():
    with pytest.raises(UsageError):
        cfg(4, (1, 1, 1, 1), central=True)


def test_semidirect_action_example():
    c = cfg(1, (1,))
    got = bracket(c, D(1, 0), A(1, 0))
    assert got == A(1, 0, 2)


def test_central_is_central():
    c = cfg(2, (1, 1), central=True)
    C = AlgebraElement.central_element(P)
    x = D(2, iset(1)) + A(0, iset(2))
    assert bracket(c, C, x).is_zero()
    assert bracket(c, x, C).is_zero()


def test_functions_commute():
    c = cfg(1, (1,))
    assert bracket(c, A(1, 0), A(2, 0)).is_zero()


def test_a_action_monomial():
    got = a_action(SuperFunction.monomial(P, 1, 0), D(1, 0))
    assert got == D(2, 0)


def test_a_action_sign():
    got = a_action(SuperFunction.monomial(P, 0, iset(1)), D(1, iset(2)))
    assert got == D(1, iset(1, 2))


def test_a_action_square_zero():
    got = a_action(SuperFunction.monomial(P, 0, iset(1)), D(1, iset(1)))
    assert got.is_zero()


def test_a_action_rejects_central():
    with pytest.raises(UsageError):
        a_action(SuperFunction.one(P), AlgebraElement.central_element(P))


def test_phi_fixes_degree_zero():
    c = cfg(1, (1,))
    assert phi(c, D(1, 0)) == D(1, 0)


def test_phi_adds_function_part():
    c = cfg(1, (1,))
    assert phi(c, D(2, 0)) == D(2, 0) + A(1, 0, 2)


def test_phi_identity_on_functions():
    c = cfg(1, (1,))
    assert phi(c, A(3, iset(1))) == A(3, iset(1))


def test_valuation_linear():
    c = cfg(1, (1,))
    x = D(1, 0) - D(0, 0)
    assert k_ell_valuation(c, x) == {0: 1}


def test_valuation_square():
    c = cfg(1, (1,))
    x = D(2, 0) + D(1, 0, -2) + D(0, 0)
    assert k_ell_valuation(c, x) == {0: 2}


def test_valuation_unit():
    c = cfg(2, (1, 1))
    assert k_ell_valuation(c, D(1, iset(1, 2))) == {iset(1, 2): 0}


def test_valuation_laurent_tail_conservative():
    c = cfg(1, (1,))
    assert k_ell_valuation(c, D(-2, 0)) == {0: 0}


def test_ideal_membership():
    c3 = cfg(3, (1, 1, 1))
    assert in_ideal_i(c3, tm1_power_d(P, 2, 0, 0))
    assert not in_ideal_i(c3, D(1, 0) - D(0, 0))
    assert in_ideal_i(c3, D(1, iset(1, 2, 3)))


def test_project_z():
    c = cfg(2, (1, 1))
    z, mat = project_k0(c, D(1, 0) - D(0, 0))
    assert z == Scalar.const(P, 1)
    assert all(m.is_zero() for row in mat for m in row)


def test_project_so_generator():
    c = cfg(2, (1, 1))
    z, mat = project_k0(c, D(1, iset(1, 2)))
    assert z.is_zero()
    assert mat[1][0] == Scalar.const(P, 1)
    assert mat[0][1] == Scalar.const(P, -1)
    assert mat[0][0].is_zero() and mat[1][1].is_zero()


def test_project_kernel():
    c = cfg(2, (1, 1))
    z, mat = project_k0(c, tm1_power_d(P, 2, 0, 0))
    assert z.is_zero()
    assert all(m.is_zero() for row in mat for m in row)


def test_project_requires_degree_zero():
    c = cfg(2, (1, 1))
    with pytest.raises(UsageError):
        project_k0(c, D(1, 0))


@pytest.mark.parametrize("eps", [(1, 1), (1, 0), (0, 0)])
def test_bracket_super_skew(eps):
    c = cfg(2, eps, central=True)
    syms = [(k, Im) for k in range(-2, 3) for Im in range(4)]
    for x, y in product(syms, repeat=2):
        bx = bracket_basis(c, x, y, P)
        by = bracket_basis(c, y, x, P)
        if (x[1].bit_count() & 1) and (y[1].bit_count() & 1):
            assert bx == by, (x, y)
        else:
            assert (bx + by).is_zero(), (x, y)


def test_bracket_crosscheck_small():
    # structure constants match the contact bracket through f <-> D_f
    for eps in [(1,), (0,)]:
        c = cfg(1, eps)
        syms = [(k, Im) for k in range(-3, 4) for Im in range(2)]
        for (p, Im), (q, Jm) in product(syms, repeat=2):
            bb = bracket_basis(c, (p, Im), (q, Jm), P)
            cb = contact_bracket(c.cfg, SuperFunction.monomial(P, p, Im),
                                 SuperFunction.monomial(P, q, Jm))
            assert bb.d_terms == dict(cb.terms), ((p, Im), (q, Jm))


def test_module_compatibility_identity():
    # {f, hg} - (-1)^{|h||f|} h {f, g} = D_f(h) g on monomials
    c = EpsilonConfig(2, (1, 0))
    monos = [(k, Im) for k in range(-1, 2) for Im in range(4)]
    for (kf, If), (kh, Ih), (kg, Ig) in product(monos, repeat=3):
        f = SuperFunction.monomial(P, kf, If)
        h = SuperFunction.monomial(P, kh, Ih)
        g = SuperFunction.monomial(P, kg, Ig)
        lhs = contact_bracket(c, f, h * g)
        sgn = -1 if ((If.bit_count() & 1) and (Ih.bit_count() & 1)) else 1
        rhs = h * contact_bracket(c, f, g)
        lhs = lhs - (rhs if sgn > 0 else -rhs)
        assert lhs == apply_d(c, f, h) * g, ((kf, If), (kh, Ih), (kg, Ig))


def test_phi_is_homomorphism_small():
    c = cfg(2, (1, 0))
    dsyms = [D(k, Im) for k in range(-2, 3) for Im in range(4)]
    asyms = [A(k, Im) for k in range(-1, 2) for Im in range(4)]
    elems = dsyms + asyms
    for x in elems:
        for y in elems:
            lhs = phi(c, bracket(c, x, y))
            rhs = bracket(c, phi(c, x), phi(c, y))
            assert lhs == rhs, (str(x), str(y))


def test_jacobi_small_with_central():
    c = cfg(2, (1, 1), central=True)
    syms = [(k, Im) for k in range(-2, 3) for Im in range(4)]

    def par(s):
        return s[1].bit_count() & 1

    for x, y, z in product(syms, repeat=3):
        xe, ye, ze = (AlgebraElement.d_symbol(P, *s) for s in (x, y, z))
        t1 = bracket(c, xe, bracket(c, ye, ze))
        t2 = bracket(c, ye, bracket(c, ze, xe))
        t3 = bracket(c, ze, bracket(c, xe, ye))
        s1 = -1 if par(x) * par(z) else 1
        s2 = -1 if par(y) * par(x) else 1
        s3 = -1 if par(z) * par(y) else 1
        total = t1.scale(s1) + t2.scale(s2) + t3.scale(s3)
        assert total.is_zero(), (x, y, z)


def test_filtration_bracket_smoke():
    from superkon.algebra import filtration_exponent
    c = cfg(2, (1, 0))
    for ell in (0, 1, 2):
        for Im in range(4):
            for Jm in range(4):
                g1 = tm1_power_d(P, filtration_exponent(1, Im.bit_count()), 1, Im)
                g2 = tm1_power_d(P, filtration_exponent(ell, Jm.bit_count()), 1, Jm)
                br = bracket(c, g1, g2)
                assert in_k_ell(c, br, ell + 1), (ell, Im, Jm)


def test_projection_is_homomorphism():
    c = cfg(3, (1, 1, 1))
    pairs = [iset(1, 2), iset(1, 3), iset(2, 3)]
    for Im in pairs:
        for Jm in pairs:
            x, y = D(1, Im), D(1, Jm)
            zb, mb = project_k0(c, bracket(c, x, y))
            zx, mx = project_k0(c, x)
            zy, my = project_k0(c, y)
            n = 3
            comm = [[Scalar.zero(P) for _ in range(n)] for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    acc = Scalar.zero(P)
                    for k in range(n):
                        acc = acc + mx[i][k] * my[k][j] - my[i][k] * mx[k][j]
                    comm[i][j] = acc
            assert zb.is_zero()
            assert mb == comm, (Im, Jm)


def test_eps_shift_is_homomorphism():
    src = EpsilonConfig(2, (2, 0))
    dst = EpsilonConfig(2, (0, 0))
    csrc = AlgebraConfig(src)
    cdst = AlgebraConfig(dst)
    syms = [D(k, Im) for k in range(-2, 3) for Im in range(4)]
    syms += [A(k, Im) for k in range(-1, 2) for Im in range(4)]
    for x in syms:
        for y in syms:
            lhs = eps_shift_map(src, dst, bracket(csrc, x, y))
            rhs = bracket(cdst, eps_shift_map(src, dst, x),
                          eps_shift_map(src, dst, y))
            assert lhs == rhs, (str(x), str(y))


def test_element_text_round_trip():
    x = D(2, iset(1), Scalar.const(P, 3)) + D(-1, iset(1, 3)) \
        + A(0, iset(2), Scalar.const(P, Fraction(-2, 3))) \
        + AlgebraElement.central_element(P, Scalar.const(P, Fraction(1, 4)))
    text = str(x)
    assert AlgebraElement.parse(P, text) == x
    assert str(AlgebraElement.parse(P, text)) == text


def test_negative_control_drop_sign():
    good = cfg(2, (1, 1))
    bad = cfg(2, (1, 1), mutation="drop_sign_intersection")
    x, y = (1, iset(1)), (1, iset(1, 2))
    cb = contact_bracket(good.cfg, SuperFunction.monomial(P, 1, iset(1)),
                         SuperFunction.monomial(P, 1, iset(1, 2)))
    assert bracket_basis(good, x, y, P).d_terms == dict(cb.terms)
    assert bracket_basis(bad, x, y, P).d_terms != dict(cb.terms)


def test_negative_control_double_cocycle():
    good = cfg(1, (1,), central=True)
    bad = cfg(1, (1,), central=True, mutation="double_cocycle")
    assert bracket_basis(bad, (3, 0), (-1, 0), P).central == \
        bracket_basis(good, (3, 0), (-1, 0), P).central * 2
