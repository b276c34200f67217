from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fspectrum import Algebra, DomainError, FFilter, Func, GroundSet, InputError
from fspectrum.filters import (
    annihilator,
    enumerate_F_filters,
    extend_to_ultrafilter,
    is_F_family,
    is_F_filter,
    level_set,
    level_sets,
    principal_family,
    ultrafilter_characterizations,
    ultrafilters,
    zero_set,
    zero_set_witness,
)
from fspectrum.ground import critical_radii_sq
from fspectrum.oracle import brute_F_family, brute_maximal_F_family_fip, enumerate_all_filters
from fspectrum.spectrum import tau_interior

from conftest import algebras, members

B1, B2, B3 = frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})
X = frozenset(range(6))


class TestLevelSets:
    def test_examples(self, w6):
        g = w6.generator("g1") - 2
        assert level_set(g, Fraction(1, 2)) == B2
        assert zero_set(g) == B2
        assert level_set(Func.constant(w6.ground, 0), 3) == X
        assert level_set(Func.constant(w6.ground, 1), Fraction(1, 2)) == frozenset()
        assert zero_set(Func.constant(w6.ground, 0)) == X
        assert zero_set(Func.constant(w6.ground, 1)) == frozenset()

    def test_radius_must_be_positive(self, w6):
        with pytest.raises(DomainError):
            level_set(w6.generator("g1"), 0)

    @given(st.data())
    def test_monotone_and_zero_set_at_subthreshold(self, data):
        alg = data.draw(algebras(max_size=5))
        f = data.draw(members(alg))
        r = data.draw(st.fractions(min_value=Fraction(1, 10), max_value=3))
        s = data.draw(st.fractions(min_value=Fraction(1, 10), max_value=3))
        r, s = min(r, s), max(r, s)
        assert level_set(f, r) <= level_set(f, s)
        assert level_sets(f)[0] == zero_set(f)
        assert zero_set(f) == frozenset.intersection(*level_sets(f))


class TestFamilies:
    def test_trivial_filter_is_F_filter(self, w6):
        assert is_F_filter(w6, [X])
        assert is_F_family(w6, [B1, X])
        assert brute_F_family(w6, [B1, X])

    def test_non_saturated_singleton_family(self, w6):
        assert not is_F_family(w6, [{0}, X])
        assert not brute_F_family(w6, [{0}, X])

    def test_empty_member_rejected(self, w6):
        with pytest.raises(InputError):
            is_F_family(w6, [frozenset(), X])
        with pytest.raises(InputError):
            is_F_family(w6, [])

    @given(st.data())
    def test_F_family_agrees_with_witness_search(self, data):
        alg = data.draw(algebras(max_size=5))
        n = len(alg.ground)
        subsets = st.frozensets(st.integers(0, n - 1), min_size=1)
        fam = data.draw(st.lists(subsets, min_size=1, max_size=4))
        assert is_F_family(alg, fam) == brute_F_family(alg, fam)


class TestEnumeration:
    def test_w6_counts(self, w6):
        assert len(enumerate_F_filters(w6)) == 7
        assert len(ultrafilters(w6)) == 3

    def test_constants_only_trivial_filter(self):
        alg = Algebra.constants(GroundSet.of_size(4))
        (phi,) = enumerate_F_filters(alg)
        assert phi.generator == alg.ground.all

    def test_full_algebra_every_filter(self):
        alg = Algebra.full(GroundSet.of_size(2))
        gens = {phi.generator for phi in enumerate_F_filters(alg)}
        assert gens == {f.generator for f in enumerate_all_filters(2)}
        assert [u.block for u in ultrafilters(alg)] == [frozenset({0}), frozenset({1})]

    def test_generator_must_be_saturated(self, w6):
        with pytest.raises(DomainError):
            FFilter(w6, {0})
        with pytest.raises(DomainError):
            FFilter(w6, set())

    @given(algebras(max_size=4))
    def test_matches_oracle(self, alg):
        fast = {phi.generator for phi in enumerate_F_filters(alg)}
        brute = {phi.generator for phi in enumerate_all_filters(alg.ground) if brute_F_family(alg, phi.member_sets)}
        assert fast == brute
        assert len(fast) == 2 ** alg.num_blocks - 1

    @given(algebras(max_size=5))
    def test_ultrafilters_are_maximal(self, alg):
        ff = enumerate_F_filters(alg)
        maximal = {a.generator for a in ff if not any(b.generator < a.generator for b in ff)}
        assert maximal == {u.block for u in ultrafilters(alg)}

    @given(algebras(max_size=5))
    def test_zero_set_base(self, alg):
        for phi in enumerate_F_filters(alg):
            for a in phi.family():
                if a == alg.ground.all:
                    continue
                f = zero_set_witness(phi, a)
                assert alg.contains(f)
                assert phi.generator <= zero_set(f) <= a

    @given(algebras(max_size=5))
    def test_member_iff_interior_member(self, alg):
        for phi in enumerate_F_filters(alg):
            for a in principal_family(alg.ground, frozenset()):
                assert (a in phi) == (tau_interior(alg, a) in phi)


class TestExtendToUltrafilter:
    def test_examples(self, w6):
        assert extend_to_ultrafilter(w6, [B1 | B2, X]).block == B1
        assert extend_to_ultrafilter(w6, [X]).block == B1
        assert extend_to_ultrafilter(w6, [B3]).block == B3

    def test_errors(self, w6):
        with pytest.raises(DomainError):
            extend_to_ultrafilter(w6, [B1, B3])
        with pytest.raises(DomainError):
            extend_to_ultrafilter(w6, [{0}])


class TestAnnihilator:
    def test_examples(self, w6):
        assert annihilator(w6, {0}).vanishing_blocks == {0}
        assert annihilator(w6, X).is_zero
        full = Algebra.full(GroundSet.of_size(3))
        assert annihilator(full, {1}).vanishing_blocks == {1}


class TestUltrafilterCharacterization:
    def test_block_filter_all_true(self, w6):
        assert all(ultrafilter_characterizations(w6, FFilter(w6, B1)))

    def test_two_block_filter_all_false(self, w6):
        assert not any(ultrafilter_characterizations(w6, FFilter(w6, B1 | B2)))

    def test_trivial_filter_all_false(self, w6):
        assert not any(ultrafilter_characterizations(w6, [X]))

    @given(algebras(max_size=4))
    def test_five_statements_agree_on_every_filter(self, alg):
        blocks = set(alg.blocks)
        for phi in enumerate_all_filters(alg.ground):
            v = ultrafilter_characterizations(alg, phi.member_sets)
            assert v.agree, (phi.generator, v)
            assert v.maximal_F_filter == (phi.generator in blocks)

    @given(algebras(max_size=3))
    def test_maximal_family_statement_by_direct_search(self, alg):
        # the shortcut for statement (iii) against checking every larger family
        sets = [s for s in principal_family(alg.ground, frozenset()) if s]
        for mask in range(1, 1 << len(sets)):
            fam = [s for i, s in enumerate(sets) if mask >> i & 1]
            v = ultrafilter_characterizations(alg, fam)
            assert v.maximal_F_family_with_fip == brute_maximal_F_family_fip(alg, fam), fam

    def test_family_that_is_not_a_filter(self, w6):
        # an F-family with FIP that is not upward closed is never maximal
        v = ultrafilter_characterizations(w6, [B1])
        assert not v.maximal_F_family_with_fip
        assert not v.maximal_F_filter

    @given(st.data())
    def test_critical_radii_cover_level_sets(self, data):
        alg = data.draw(algebras(max_size=5))
        f = data.draw(members(alg))
        r = data.draw(st.fractions(min_value=Fraction(1, 20), max_value=4))
        radii = critical_radii_sq(f)
        assert level_set(f, r) in {frozenset(x for x, v in enumerate(f.values) if v.abs2() <= t) for t in radii}
