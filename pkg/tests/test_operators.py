"""Differential-operator algebra: builders, brackets, exponentials,
substitution maps, and the first/second-order bridge."""

import random
from fractions import Fraction

import pytest

from taulink.grading import GradedPoly, TruncationSpec, random_poly
from taulink.operators import (DiffOperator, apply_operator, build_Bt,
                               build_Lm, build_P, build_P0, build_Pt,
                               build_Q0W, build_Qplus, build_QtW, build_Vhat,
                               build_Vtilde, build_W, build_Xm, build_Ym,
                               classical_map, commutator, exp_apply,
                               flow_map, phi_polynomials, pt_via_zassenhaus,
                               substitute, sum_scaled, xi_first,
                               xi_image_of_multiplier, xi_second,
                               SubstitutionMap)

F = Fraction
T49 = TruncationSpec(4, 9, 9)


def test_operator_normalization_and_validation():
    a = DiffOperator("q", {(0, ((1, 1),), (2,)): F(1),
                           (0, ((1, 1),), (2,)): F(2)})
    assert a.terms == {(0, ((1, 1),), (2,)): F(2)}
    assert DiffOperator("q", {(0, (), ()): F(0)}).terms == {}
    with pytest.raises(ValueError):
        DiffOperator("q", {(-1, (), ()): F(1)})
    with pytest.raises(ValueError):
        DiffOperator("q", {(0, (), (1, 2, 3)): F(1)})
    with pytest.raises(ValueError):
        DiffOperator("x", {})
    with pytest.raises(ValueError):
        DiffOperator("q", {}) + DiffOperator("t", {})


def test_apply_operator_basics():
    t = TruncationSpec(2, 6, 6)
    # q2 d/dq1 applied to q1^2 gives 2 q1 q2
    op = DiffOperator("q", {(0, ((2, 1),), (1,)): F(1)})
    p = GradedPoly.monomial("q", 0, ((1, 2),), 1, t)
    out = apply_operator(op, p)
    assert out.coefficient(0, ((1, 1), (2, 1))) == 2
    # derivative kills monomials missing the variable
    q3 = GradedPoly.variable("q", 3, t)
    assert apply_operator(op, q3).terms == {}


def test_xym_builders():
    x = build_Xm(2, T49)
    assert x.terms[(0, ((1, 1),), (3,))] == 3  # (k+m) with k=1, m=2
    y = build_Ym(4, T49)
    assert y.terms == {(0, (), (1, 3)): F(3), (0, (), (2, 2)): F(2)}
    with pytest.raises(ValueError):
        build_Xm(0, T49)
    with pytest.raises(ValueError):
        build_Ym(0, T49)
    l2 = build_Lm(2, T49)
    assert l2.weights() == {-2}
    assert l2.max_order() == 2


def test_lm_bracket_by_double_application():
    rng = random.Random(11)
    for m, n in ((1, 2), (2, 3), (1, 3)):
        lm, ln = build_Lm(m, T49), build_Lm(n, T49)
        lmn = build_Lm(m + n, T49)
        for _ in range(4):
            p = random_poly("q", T49, rng)
            lhs = (apply_operator(lm, apply_operator(ln, p))
                   - apply_operator(ln, apply_operator(lm, p)))
            rhs = apply_operator(lmn, p).scale(m - n)
            assert lhs == rhs


def test_commutator_symbolic_first_order():
    a = DiffOperator("q", {(0, ((2, 1),), (1,)): F(1)})
    b = DiffOperator("q", {(0, ((1, 1),), (2,)): F(1)})
    got = commutator(a, b)
    want = DiffOperator("q", {(0, ((2, 1),), (2,)): F(1),
                              (0, ((1, 1),), (1,)): F(-1)})
    assert got == want
    with pytest.raises(NotImplementedError):
        commutator(build_Lm(2, T49), build_Lm(3, T49))


def test_w_family_goldens():
    bt = build_Bt(T49)
    assert bt.terms[(2, ((0, 1),), (1,))] == F(1, 12)
    assert bt.terms[(2, ((3, 1),), (4,))] == F(1, 12)
    assert build_P0(T49).terms == {(2, (), (2,)): F(-1, 12)}
    assert build_Q0W(T49).terms == {(2, (), (0, 0)): F(-1, 12)}
    assert build_W(T49).weights() == {0, -3}


def test_pt_and_p_goldens():
    assert build_Pt(T49).terms == {(2, (), (2,)): F(-1, 12),
                                   (4, (), (3,)): F(-1, 288)}
    assert build_P(T49).terms == {(2, (), (5,)): F(-1, 36),
                                  (4, (), (7,)): F(-1, 4320)}


def test_pt_via_zassenhaus_matches_direct():
    for trunc in (T49, TruncationSpec(6, 9, 9)):
        assert pt_via_zassenhaus(trunc) == build_Pt(trunc).restricted(trunc)


def test_quadratic_operator_folding():
    # off-diagonal entries are doubled onto the sorted derivative pair,
    # diagonal ones kept once
    assert build_QtW(T49).terms == {(2, (), (0, 0)): F(-1, 12),
                                    (4, (), (0, 1)): F(-1, 144)}
    qp = build_Qplus(T49)
    assert qp.terms[(2, (), (1, 1))] == F(-1, 12)
    assert qp.terms[(3, (), (1, 2))] == F(-8, 135)
    assert qp.terms[(4, (), (1, 3))] == F(-1, 144)
    assert qp.terms[(4, (), (2, 2))] == F(-1, 54)
    assert build_QtW(TruncationSpec(1, 9, 9)).terms == {}
    assert build_Qplus(TruncationSpec(1, 9, 9)).terms == {}


def test_vhat_goldens():
    vm1 = build_Vhat(-1, T49)
    assert vm1.terms[(0, ((0, 2),), ())] == F(1, 2)
    assert vm1.terms[(0, (), (0,))] == F(-1)
    v0 = build_Vhat(0, T49)
    assert v0.terms[(0, (), ())] == F(1, 8)
    assert v0.terms[(0, (), (1,))] == F(-3)
    v1 = build_Vhat(1, T49)
    assert v1.terms[(0, (), (0, 0))] == F(1, 2)
    assert v1.terms[(0, (), (2,))] == F(-15)
    with pytest.raises(ValueError):
        build_Vhat(-2, T49)


def test_vtilde_golden():
    vt = build_Vtilde(1, T49)
    assert vt.terms[(0, (), (5,))] == F(-5)
    assert vt.terms[(0, (), (1, 1))] == F(1, 2)  # the m=2 pair sum
    with pytest.raises(ValueError):
        build_Vtilde(0, T49)


def test_exp_apply_requires_u_factor():
    with pytest.raises(ValueError):
        exp_apply(build_Xm(1, T49), GradedPoly.variable("q", 1, T49))


def test_exp_apply_nilpotent_golden():
    t = TruncationSpec(3, 6, 6)
    op = DiffOperator("q", {(1, ((1, 1),), (2,)): F(1)})  # u q1 d/dq2
    out = exp_apply(op, GradedPoly.variable("q", 2, t))
    assert out.coefficient(0, ((2, 1),)) == 1
    assert out.coefficient(1, ((1, 1),)) == 1
    assert len(out.terms) == 2  # second application kills the image


def test_sum_scaled():
    def scalar(m, trunc):
        return DiffOperator("q", {(0, (), ()): F(1)})

    out = sum_scaled(scalar, [F(5), F(7), F(11)], T49, u_step=2)
    assert out.terms == {(2, (), ()): F(5), (4, (), ()): F(7)}
    with pytest.raises(ValueError):
        sum_scaled(scalar, [], T49)
    with pytest.raises(ValueError):
        sum_scaled(scalar, [F(1)], T49, u_step=5)  # nothing fits


def test_phi_polynomials_goldens():
    t = TruncationSpec(6, 9, 9)
    phis = phi_polynomials(3, t)
    assert phis[0] == GradedPoly.variable("q", 1, t)
    p1 = phis[1]
    assert [p1.coefficient(u, ((idx, 1),))
            for u, idx in ((2, 1), (1, 2), (0, 3))] == [1, 2, 1]
    p2 = phis[2]
    assert [p2.coefficient(u, ((idx, 1),))
            for u, idx in ((4, 1), (3, 2), (2, 3), (1, 4), (0, 5))] \
        == [1, 6, 12, 10, 3]
    p3 = phis[3]
    assert [p3.coefficient(u, ((idx, 1),))
            for u, idx in ((6, 1), (5, 2), (4, 3), (3, 4), (2, 5), (1, 6), (0, 7))] \
        == [1, 14, 61, 124, 131, 70, 15]
    with pytest.raises(ValueError):
        phi_polynomials(-1, t)


def test_classical_substitution():
    cm = classical_map(T49)
    p = (GradedPoly.monomial("t", 0, ((0, 3),), F(1, 6), T49)
         + GradedPoly.monomial("t", 0, ((2, 1),), F(1), T49))
    out = substitute(p, cm)
    assert out.coefficient(0, ((1, 3),)) == F(1, 6)   # t0 -> q1
    assert out.coefficient(0, ((5, 1),)) == 3         # t2 -> 3 q5


def test_flow_substitution():
    fm = flow_map(T49)
    out = substitute(GradedPoly.variable("t", 1, T49), fm)
    phis = phi_polynomials(1, T49)
    assert out == phis[1]


def test_substitution_validation():
    bad = GradedPoly.variable("q", 2, T49)  # weight 2, not weight 1
    with pytest.raises(ValueError):
        SubstitutionMap("t", {0: bad})
    cm = classical_map(TruncationSpec(4, 9, 2))
    p = GradedPoly.variable("t", 4, T49)
    with pytest.raises(KeyError):
        substitute(p, cm)
    with pytest.raises(ValueError):
        substitute(GradedPoly.variable("q", 1, T49), cm)


def test_xi_helpers():
    g1, img1 = xi_first(1, 2)
    assert g1.terms == {(0, ((3, 1),), (1,)): F(1)}
    assert img1.terms == {(0, ((1, 1),), (3,)): F(-3)}
    g2, img2 = xi_second(2, 2)
    assert g2.terms == {(0, ((2, 2),), ()): F(1)}
    assert img2.terms == {(0, (), (2, 2)): F(-4)}
    with pytest.raises(ValueError):
        xi_first(0, 1)
    with pytest.raises(ValueError):
        xi_second(1, 0)


def test_xi_image_of_multiplier():
    op = DiffOperator("q", {(0, ((1, 1), (2, 1)), ()): F(3)})
    out = xi_image_of_multiplier(op)
    assert out.terms == {(0, (), (1, 2)): F(-6)}
    with pytest.raises(ValueError):
        xi_image_of_multiplier(DiffOperator("q", {(0, ((1, 3),), ()): F(1)}))
    with pytest.raises(ValueError):
        xi_image_of_multiplier(DiffOperator("q", {(0, ((1, 2),), (1,)): F(1)}))


def test_restricted_drops_out_of_window():
    op = DiffOperator("q", {(0, ((20, 1),), (1,)): F(1),
                            (5, (), (1,)): F(1),
                            (1, ((1, 1),), (2,)): F(1)})
    small = op.restricted(TruncationSpec(4, 9, 9))
    assert small.terms == {(1, ((1, 1),), (2,)): F(1)}
