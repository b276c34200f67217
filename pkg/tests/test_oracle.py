import pytest
from hypothesis import given

from fspectrum import CQ, Algebra, Func, GroundSet, InputError
from fspectrum.filters import is_filter
from fspectrum.oracle import (
    brute_F_family,
    brute_ideal_closure,
    brute_subalgebra_closure,
    enumerate_all_filters,
)

from conftest import algebras, func


@pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 7), (4, 15)])
def test_filter_counts(n, count):
    filters = enumerate_all_filters(n)
    assert len(filters) == count
    g = GroundSet.of_size(n)
    assert all(is_filter(g, f.member_sets) for f in filters)


def test_size_guards(w6):
    with pytest.raises(InputError):
        enumerate_all_filters(5)
    with pytest.raises(InputError):
        brute_subalgebra_closure(w6.ground, [])
    with pytest.raises(InputError):
        brute_F_family(Algebra.constants(GroundSet.of_size(7)), [range(7)])
    with pytest.raises(InputError):
        brute_ideal_closure(w6, [])


def test_family_examples(w6):
    x = range(6)
    assert brute_F_family(w6, [x])
    assert brute_F_family(w6, [{0, 1}, x])
    assert not brute_F_family(w6, [{0}, x])


class TestClosure:
    def test_constants_only(self):
        g = GroundSet.of_size(3)
        member, dim = brute_subalgebra_closure(g, [])
        assert dim == 1
        assert member(Func.constant(g, 5)) and not member(func(g, 0, 1, 0))

    def test_injective_generator_gives_everything(self):
        g = GroundSet.of_size(3)
        member, dim = brute_subalgebra_closure(g, [func(g, 0, 1, CQ(0, 1))])
        assert dim == 3
        for code in range(27):
            assert member(func(g, code % 3, code // 3 % 3, code // 9))

    def test_w6_prefix_block_constant(self):
        g = GroundSet.of_size(4)
        member, dim = brute_subalgebra_closure(g, [func(g, 1, 1, 2, 2), func(g, 1, 1, 1, 1)])
        assert dim == 2
        assert member(func(g, 7, 7, CQ(0, 1), CQ(0, 1)))
        assert not member(func(g, 1, 0, 0, 0))

    def test_needs_conjugates(self):
        # i·1_{x0}: without conjugation the span would miss real parts of products
        g = GroundSet.of_size(2)
        member, dim = brute_subalgebra_closure(g, [func(g, CQ(0, 1), 0)])
        assert dim == 2

    @given(algebras(max_size=4))
    def test_dimension_is_block_count(self, alg):
        _, dim = brute_subalgebra_closure(alg.ground, [g for _, g in alg.generators])
        assert dim == alg.num_blocks
