"""Exact matrices: products, inverses, nilpotent exponentials, membership."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevalley.generators import GroupModel
from chevalley.matrices import (ExactMatrix, MatrixError, NotNilpotentError,
                                SingularMatrixError, check_membership,
                                exp_nilpotent, format_matrix, mat_add,
                                mat_inv, mat_mul, parse_matrix,
                                symplectic_form)
from chevalley.scalars import LaurentFrac


def unit_plus(size, entries):
    return ExactMatrix.from_entries(size, entries)


class TestMul:
    def test_identity(self):
        i4 = ExactMatrix.identity(4)
        assert mat_mul(i4, i4) == i4

    def test_two_superdiagonals(self):
        # hand multiplication: (I+e12)(I+e23) = I + e12 + e23 + e13
        a = unit_plus(4, {(1, 2): 1})
        b = unit_plus(4, {(2, 3): 1})
        expected = unit_plus(4, {(1, 2): 1, (2, 3): 1, (1, 3): 1})
        assert mat_mul(a, b) == expected

    def test_disjoint_elementaries_annihilate(self):
        e12 = ExactMatrix.elementary(4, 1, 2)
        e34 = ExactMatrix.elementary(4, 3, 4)
        assert mat_mul(e12, e34) == ExactMatrix.zeros(4)

    def test_size_mismatch(self):
        with pytest.raises(MatrixError):
            mat_mul(ExactMatrix.identity(4), ExactMatrix.identity(6))

    def test_mode_mismatch(self):
        lau = ExactMatrix.identity(4).to_mode("laurent")
        with pytest.raises(MatrixError):
            mat_mul(ExactMatrix.identity(4), lau)


class TestInv:
    def test_identity(self):
        i4 = ExactMatrix.identity(4)
        assert mat_inv(i4) == i4

    def test_unipotent(self):
        t = Fraction(5, 3)
        m = unit_plus(4, {(1, 2): t})
        assert mat_inv(m) == unit_plus(4, {(1, 2): -t})

    def test_diagonal(self):
        m = parse_matrix("2,0;0,1/2")
        assert mat_inv(m) == parse_matrix("1/2,0;0,2")

    def test_singular_reports_rank(self):
        m = ExactMatrix([[1, 2], [2, 4]])
        with pytest.raises(SingularMatrixError) as err:
            mat_inv(m)
        assert err.value.rank == 1

    def test_involution_of_inversion(self):
        m = ExactMatrix([[1, 2, 0, 1], [0, 1, 3, 0],
                         [5, 0, 1, 0], [0, 0, 0, 7]])
        assert mat_inv(mat_inv(m)) == m
        assert mat_mul(m, mat_inv(m)) == ExactMatrix.identity(4)

    def test_laurent_mode(self):
        t = LaurentFrac.symbol("t")
        m = ExactMatrix([[t, 0], [0, 1 / t]])
        assert mat_mul(m, mat_inv(m)) == ExactMatrix.identity(2, "laurent")


class TestExp:
    def test_zero(self):
        assert exp_nilpotent(ExactMatrix.zeros(4)) == ExactMatrix.identity(4)

    def test_single_long_entry(self):
        # square of e_{1,3} is zero in size 4
        t = Fraction(7, 2)
        n = ExactMatrix.elementary(4, 1, 3, t)
        assert mat_mul(n, n) == ExactMatrix.zeros(4)
        assert exp_nilpotent(n) == unit_plus(4, {(1, 3): t})

    def test_two_component_square_zero(self):
        # oracle: t1 e_{1,2} + t2 e_{4,3} has square 0, so exp is I + sum
        t1, t2 = Fraction(2), Fraction(-3, 5)
        n = mat_add(ExactMatrix.elementary(4, 1, 2, t1),
                    ExactMatrix.elementary(4, 4, 3, t2))
        assert mat_mul(n, n) == ExactMatrix.zeros(4)
        assert exp_nilpotent(n) == unit_plus(4, {(1, 2): t1, (4, 3): t2})

    def test_order_three_divides_by_factorials(self):
        n = mat_add(ExactMatrix.elementary(4, 1, 2), ExactMatrix.elementary(4, 2, 3))
        expected = unit_plus(4, {(1, 2): 1, (2, 3): 1, (1, 3): Fraction(1, 2)})
        assert exp_nilpotent(n) == expected

    def test_rejects_semisimple(self):
        with pytest.raises(NotNilpotentError):
            exp_nilpotent(ExactMatrix.identity(4))

    @given(st.lists(st.tuples(st.integers(1, 3), st.integers(2, 4),
                              st.fractions(min_value=-9, max_value=9, max_denominator=4)),
                    min_size=1, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_exp_inverse_property(self, entries):
        # strictly upper-triangular matrices are nilpotent
        acc = {}
        for i, j, v in entries:
            if i < j:
                acc[(i, j)] = acc.get((i, j), Fraction(0)) + v
        rows = [[Fraction(0)] * 4 for _ in range(4)]
        for (i, j), v in acc.items():
            rows[i - 1][j - 1] = v
        n = ExactMatrix(rows)
        neg = ExactMatrix([[-x for x in r] for r in rows])
        assert mat_mul(exp_nilpotent(n), exp_nilpotent(neg)) == \
            ExactMatrix.identity(4)

    def test_commuting_sum_splits(self):
        n1 = ExactMatrix.elementary(4, 1, 3, Fraction(2))
        n2 = ExactMatrix.elementary(4, 2, 4, Fraction(-7, 3))
        assert mat_mul(n1, n2) == mat_mul(n2, n1)
        assert exp_nilpotent(mat_add(n1, n2)) == \
            mat_mul(exp_nilpotent(n1), exp_nilpotent(n2))


class TestMembership:
    def test_identity_everywhere(self):
        for fam in ("sp", "sl-r", "sl-c"):
            model = GroupModel(fam, 2)
            assert check_membership(ExactMatrix.identity(4), model)

    def test_symplectic_long_root_by_hand(self):
        # (I + 3 e_{1,3})^T J (I + 3 e_{1,3}) = J, checked via explicit J
        model = GroupModel("sp", 2)
        j = symplectic_form(4)
        m = unit_plus(4, {(1, 3): 3})
        assert mat_mul(mat_mul(m.transpose(), j), m) == j
        assert check_membership(m, model)

    def test_bad_diagonal_rejected(self):
        m = ExactMatrix([[2, 0, 0, 0], [0, 1, 0, 0],
                         [0, 0, 1, 0], [0, 0, 0, 1]])
        assert not check_membership(m, GroupModel("sp", 2))
        assert not check_membership(m, GroupModel("sl-r", 2))

    def test_closed_under_product_and_inverse(self):
        from chevalley.generators import gen_x
        from chevalley.roots import build_root_system
        rng = random.Random(20240817)
        for fam in ("sp", "sl-r"):
            model = GroupModel(fam, 2)
            roots = build_root_system(2).roots
            prod = ExactMatrix.identity(4)
            for _ in range(6):
                r = roots[rng.randrange(len(roots))]
                arity = model.param_arity(r)
                params = tuple(Fraction(rng.randrange(-4, 5), rng.randrange(1, 4))
                               for _ in range(arity))
                prod = mat_mul(prod, gen_x(model, r, params).matrix)
            assert check_membership(prod, model)
            assert check_membership(mat_inv(prod), model)


class TestTextFormat:
    def test_round_trip(self):
        m = parse_matrix("1,2/3;-4,5")
        assert format_matrix(m) == "1,2/3;-4,5"
        assert parse_matrix(format_matrix(m)) == m

    def test_gaussian_round_trip(self):
        m = parse_matrix("1+2 i,0;0,1/2-1/3 i")
        assert parse_matrix(format_matrix(m)) == m

    def test_odd_size_rejected(self):
        with pytest.raises(MatrixError):
            parse_matrix("1,0,0;0,1,0;0,0,1")


class TestLaurentGridAgreement:
    def test_symbolic_matrix_evaluates_to_rational_matrix(self):
        # identity-asserting equation verified symbolically agrees with the
        # rational-mode computation at every admissible grid point
        t = LaurentFrac.symbol("t")
        m = ExactMatrix([[t, 1], [0, 1 / t]])
        prod = mat_mul(m, mat_inv(m))
        assert prod == ExactMatrix.identity(2, "laurent")
        for tv in (Fraction(2), Fraction(-5, 3), Fraction(1, 7)):
            mv = m.evaluate({"t": tv})
            assert mat_mul(mv, mat_inv(mv)) == ExactMatrix.identity(2)
            assert prod.evaluate({"t": tv}) == ExactMatrix.identity(2)
