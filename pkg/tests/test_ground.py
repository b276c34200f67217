from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fspectrum import CQ, Algebra, DomainError, Func, GroundMismatch, GroundSet, InputError, NotInvertible
from fspectrum.ground import (
    contains,
    critical_radii_sq,
    exact_sqrt,
    in_F0,
    in_F0_by_definition,
    invert,
    join,
    kernel_partition,
    meet,
)
from fspectrum.oracle import brute_subalgebra_closure

from conftest import algebras, func, members

X6 = GroundSet(("a", "b", "c", "d", "e", "f"))


class TestCQ:
    def test_field_operations(self):
        z = CQ(1, 2)
        w = CQ(Fraction(1, 2), -1)
        assert z + w == CQ(Fraction(3, 2), 1)
        assert z * w == CQ(Fraction(5, 2), 0)
        assert (z / w) * w == z
        assert z.conjugate() == CQ(1, -2)
        assert z.abs2() == 5
        assert -z == CQ(-1, -2)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            CQ(1) / CQ(0)

    def test_coerce_rejects_floats_and_bools(self):
        with pytest.raises(InputError):
            CQ.coerce(0.5)
        with pytest.raises(InputError):
            CQ.coerce(True)
        assert CQ.coerce("3/4") == CQ(Fraction(3, 4))
        assert CQ.coerce((1, 2)) == CQ(1, 2)

    def test_hash_matches_real_numbers(self):
        assert hash(CQ(3)) == hash(CQ(Fraction(6, 2)))
        assert CQ(2) == 2

    def test_exact_sqrt(self):
        assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert exact_sqrt(Fraction(2)) is None


class TestGroundAndFunc:
    def test_ground_validation(self):
        with pytest.raises(InputError):
            GroundSet(())
        with pytest.raises(InputError):
            GroundSet(("a", "a"))
        with pytest.raises(InputError):
            X6.index("z")

    def test_length_mismatch(self):
        with pytest.raises(GroundMismatch):
            Func(X6, (CQ(1),))

    def test_different_grounds(self):
        with pytest.raises(GroundMismatch):
            Func.constant(X6, 1) + Func.constant(GroundSet.of_size(6), 1)

    def test_abs_needs_rational_moduli(self):
        assert func(X6, -2, 1, 0, 0, 0, 0).abs() == func(X6, 2, 1, 0, 0, 0, 0)
        with pytest.raises(DomainError):
            func(X6, CQ(1, 1), 0, 0, 0, 0, 0).abs()


class TestKernelPartition:
    def test_w6_blocks(self, w6):
        assert [sorted(w6.ground.labels(b)) for b in w6.blocks] == [["a", "b"], ["c", "d"], ["e", "f"]]
        assert w6.dimension == 3

    def test_no_generators_single_block(self):
        assert Algebra.constants(X6).blocks == (X6.all,)

    def test_injective_generator_singletons(self):
        alg = Algebra(X6, [func(X6, 0, 1, 2, 3, 4, 5)])
        assert alg.num_blocks == 6

    @given(algebras(max_size=6))
    def test_idempotent(self, alg):
        again = kernel_partition(alg.ground, alg.basis())
        assert again == alg.partition

    @given(algebras(max_size=6))
    def test_generators_and_constants_are_members(self, alg):
        assert all(contains(alg, g) for _, g in alg.generators)
        assert contains(alg, Func.constant(alg.ground, CQ(3, -1)))


class TestContains:
    def test_examples(self, w6):
        assert contains(w6, func(X6, 7, 7, 0, 0, 0, 0))
        assert not contains(w6, func(X6, 1, 2, 0, 0, 0, 0))
        assert not contains(Algebra.constants(X6), func(X6, 0, 0, 0, 0, 0, 1))

    @given(algebras(max_size=4, values=[CQ(0), CQ(1), CQ(2), CQ(0, 1)]))
    def test_agrees_with_closure_oracle(self, alg):
        # every function with values in {0,1,2}
        member, dim = brute_subalgebra_closure(alg.ground, [g for _, g in alg.generators])
        assert dim == alg.dimension
        n = len(alg.ground)
        for code in range(3 ** n):
            vals = [(code // 3**i) % 3 for i in range(n)]
            f = Func(alg.ground, tuple(CQ(v) for v in vals))
            assert member(f) == contains(alg, f)


class TestLattice:
    def test_join_meet(self, w6):
        two = GroundSet.of_size(2)
        f, g = func(two, 0, 1), func(two, 1, 0)
        assert join(f, g) == func(two, 1, 1)
        assert meet(f, g) == func(two, 0, 0)
        assert join(f, f) == f
        g1 = w6.generator("g1")
        assert join(g1 - 2, Func.constant(X6, 0)) == func(X6, 0, 0, 0, 0, 1, 1)

    def test_complex_rejected(self):
        two = GroundSet.of_size(2)
        with pytest.raises(DomainError):
            join(func(two, CQ(0, 1), 0), func(two, 0, 0))


class TestInvert:
    def test_examples(self, w6):
        assert invert(Algebra.constants(X6), Func.constant(X6, 2)) == Func.constant(X6, Fraction(1, 2))
        f = func(X6, 1, 1, 2, 2, 4, 4)
        inv = invert(w6, f)
        half, quarter = Fraction(1, 2), Fraction(1, 4)
        assert inv == func(X6, 1, 1, half, half, quarter, quarter)
        assert contains(w6, inv)

    def test_zero_value_not_invertible(self, w6):
        with pytest.raises(NotInvertible, match="not invertible"):
            invert(w6, func(X6, 0, 0, 1, 1, 1, 1))

    def test_non_member(self, w6):
        with pytest.raises(DomainError):
            invert(w6, func(X6, 1, 2, 1, 1, 1, 1))

    @given(st.data())
    def test_inverse_laws(self, data):
        alg = data.draw(algebras(max_size=6))
        f = data.draw(members(alg))
        if in_F0(f):
            with pytest.raises(NotInvertible):
                invert(alg, f)
            return
        g = invert(alg, f)
        assert f * g == Func.constant(alg.ground, 1)
        assert invert(alg, g) == f
        assert contains(alg, g)


class TestF0:
    def test_examples(self):
        assert in_F0(func(X6, 0, 1, 1, 1, 1, 1))
        assert not in_F0(Func.constant(X6, 1))
        f = func(X6, Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), 1, 1, 1)
        assert not in_F0(f)
        assert not in_F0_by_definition(f)

    @given(st.lists(st.sampled_from([CQ(0), CQ(1), CQ(Fraction(1, 3)), CQ(0, 2), CQ(-1, 1)]), min_size=1, max_size=6))
    def test_definition_matches_shortcut(self, vals):
        f = Func(GroundSet.of_size(len(vals)), tuple(vals))
        assert in_F0(f) == in_F0_by_definition(f)

    def test_critical_radii(self):
        f = func(GroundSet.of_size(3), 0, 2, CQ(0, 1))
        assert critical_radii_sq(f) == [Fraction(1, 2), Fraction(1), Fraction(4)]
        assert critical_radii_sq(Func.constant(GroundSet.of_size(2), 0)) == [Fraction(1)]
