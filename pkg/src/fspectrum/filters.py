"""Level sets, F-families, F-filters and F-ultrafilters on a finite set.

Every filter on a finite set is principal, so an F-filter is stored by its
generator (the intersection of its members).  The F-filters are exactly the
principal filters whose generator is a non-empty union of blocks; the oracle
module checks this against exhaustive enumeration.

Quantifiers over ``r > 0`` are reduced to the critical radii returned by
:func:`~fspectrum.ground.critical_radii_sq`.  Quantifiers over members of the
algebra are reduced to block-constant functions with values in a small
alphabet; which alphabet suffices is noted at each use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable, NamedTuple, Sequence

from .errors import DomainError, InputError, TheoremViolation
from .ground import Algebra, Func, GroundSet, Subset, critical_radii_sq

if TYPE_CHECKING:
    from .ideals import Ideal

SetFamily = frozenset  # frozenset[frozenset[int]]


def level_set_sq(f: Func, r2: Fraction) -> Subset:
    """``{x : |f(x)|^2 <= r2}``."""
    return frozenset(x for x, a in enumerate(f.abs2_values) if a <= r2)


def level_set(f: Func, r: Fraction | int) -> Subset:
    """``X(f, r) = {x : |f(x)| <= r}`` for rational ``r > 0``."""
    r = Fraction(r)
    if r <= 0:
        raise DomainError("level sets need r > 0")
    return level_set_sq(f, r * r)


def zero_set(f: Func) -> Subset:
    return frozenset(x for x, v in enumerate(f.values) if not v)


def level_sets(f: Func) -> list[Subset]:
    """The distinct sets ``X(f, r)``, ``r > 0``, in increasing order of ``r``.

    Entry 0 is the zero set (all radii below the least positive threshold).
    """
    out = [level_set_sq(f, t) for t in critical_radii_sq(f)]
    dedup = [out[0]]
    for s in out[1:]:
        if s != dedup[-1]:
            dedup.append(s)
    return dedup


def principal_family(ground: GroundSet, generator: Iterable[int]) -> SetFamily:
    """All supersets of ``generator`` as an explicit family."""
    g = frozenset(generator)
    rest = sorted(ground.all - g)
    out = []
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            out.append(g | frozenset(extra))
    return frozenset(out)


def is_filter(ground: GroundSet, family: Iterable[Iterable[int]]) -> bool:
    """Check the three filter axioms on an explicit family."""
    fam = frozenset(frozenset(s) for s in family)
    if not fam or frozenset() in fam:
        return False
    for a, b in itertools.combinations(fam, 2):
        if a & b not in fam:
            return False
    for a in fam:
        for x in ground.all - a:
            if a | {x} not in fam:
                return False
    return True


def has_fip(family: Iterable[Iterable[int]]) -> bool:
    """Finite intersection property; the family itself is finite here."""
    fam = [frozenset(s) for s in family]
    if not fam:
        return True
    return bool(frozenset.intersection(*fam))


def _family(family: Iterable[Iterable[int]]) -> SetFamily:
    fam = frozenset(frozenset(s) for s in family)
    if not fam:
        raise InputError("a set family must be non-empty")
    return fam


def is_F_family(algebra: Algebra, family: Iterable[Iterable[int]]) -> bool:
    """Every proper member ``A`` has a member ``B`` that F separates from ``X \\ A``.

    A block-constant {0,1}-valued separator exists iff no block meets both
    ``B`` and ``X \\ A``, i.e. ``sat(B)`` and ``sat(X \\ A)`` are disjoint.
    """
    fam = _family(family)
    if frozenset() in fam:
        raise InputError("an F-family cannot contain the empty set")
    part = algebra.partition
    full = algebra.ground.all
    for a in fam:
        if a == full:
            continue
        outside = part.blocks_meeting(full - a)
        if not any(not (part.blocks_meeting(b) & outside) for b in fam):
            return False
    return True


def is_F_filter(algebra: Algebra, family: Iterable[Iterable[int]]) -> bool:
    fam = _family(family)
    return is_filter(algebra.ground, fam) and is_F_family(algebra, fam)


@dataclass(frozen=True)
class UltraPoint:
    """An F-ultrafilter, i.e. a point of the spectrum: one block."""

    index: int
    block: Subset


@dataclass(frozen=True)
class FFilter:
    """Principal F-filter generated by a non-empty saturated set."""

    algebra: Algebra
    generator: Subset

    def __post_init__(self) -> None:
        g = frozenset(self.generator)
        object.__setattr__(self, "generator", g)
        if not g:
            raise DomainError("an F-filter generator must be non-empty")
        if not g <= self.algebra.ground.all:
            raise InputError("generator is not a subset of the ground set")
        if not self.algebra.partition.is_saturated(g):
            raise DomainError("an F-filter generator must be a union of blocks")

    @classmethod
    def of_blocks(cls, algebra: Algebra, block_ids: Iterable[int]) -> "FFilter":
        return cls(algebra, algebra.partition.union(block_ids))

    @property
    def block_ids(self) -> frozenset[int]:
        return self.algebra.partition.blocks_inside(self.generator)

    def __contains__(self, subset: Iterable[int]) -> bool:
        return self.generator <= frozenset(subset)

    def family(self) -> SetFamily:
        return principal_family(self.algebra.ground, self.generator)

    def is_subfilter_of(self, other: "FFilter") -> bool:
        """``self ⊆ other`` as families of sets."""
        return other.generator <= self.generator

    @property
    def is_ultra(self) -> bool:
        return len(self.block_ids) == 1

    def __repr__(self) -> str:
        return f"FFilter(<{','.join(self.algebra.ground.labels(self.generator))}>)"


def enumerate_F_filters(algebra: Algebra) -> list[FFilter]:
    """All ``2^b - 1`` F-filters, ordered by the bitmask of their block set."""
    b = algebra.num_blocks
    out = []
    for mask in range(1, 1 << b):
        out.append(FFilter.of_blocks(algebra, (j for j in range(b) if mask >> j & 1)))
    return out


def ultrafilters(algebra: Algebra) -> list[UltraPoint]:
    return [UltraPoint(j, blk) for j, blk in enumerate(algebra.blocks)]


def principal_ultrafilter(point: UltraPoint, algebra: Algebra) -> FFilter:
    return FFilter(algebra, point.block)


def annihilator(algebra: Algebra, subset: Iterable[int]) -> "Ideal":
    """``Z(A)``: members of F that vanish on ``A``; stored by its vanishing blocks."""
    from .ideals import Ideal

    a = frozenset(subset)
    if not a:
        raise DomainError("the annihilator needs a non-empty set")
    return Ideal(algebra, algebra.partition.blocks_meeting(a))


def extend_to_ultrafilter(algebra: Algebra, family: Iterable[Iterable[int]]) -> UltraPoint:
    """An F-ultrafilter containing the family; least admissible block wins."""
    fam = _family(family)
    if not has_fip(fam):
        raise DomainError("family does not have the finite intersection property")
    if not is_F_family(algebra, fam):
        raise DomainError("family is not an F-family")
    core = frozenset.intersection(*fam)
    for p in ultrafilters(algebra):
        if p.block <= core:
            return p
    raise TheoremViolation(
        "F-family with FIP admits no F-ultrafilter",
        {"family": [sorted(s) for s in sorted(fam, key=sorted)]},
    )


@lru_cache(maxsize=256)
def witness_functions(algebra: Algebra, alphabet: tuple[Fraction, ...]) -> tuple[Func, ...]:
    """Every block-constant function with block values drawn from ``alphabet``."""
    return tuple(
        algebra.from_block_values(vals)
        for vals in itertools.product(alphabet, repeat=algebra.num_blocks)
    )


@lru_cache(maxsize=256)
def _witness_chains(
    algebra: Algebra, alphabet: tuple[Fraction, ...]
) -> tuple[tuple[Subset, tuple[Subset, ...]], ...]:
    return tuple((zero_set(f), tuple(level_sets(f))) for f in witness_functions(algebra, alphabet))


# Nested pairs X(f,t) ⊆ X(f,r) of saturated sets are all realised by block
# values {0,1,2}; the extremal zero sets need only {0,1}.
PAIR_ALPHABET = (Fraction(0), Fraction(1), Fraction(2))
URYSOHN_ALPHABET = (Fraction(0), Fraction(1))


class UltrafilterVerdicts(NamedTuple):
    maximal_F_filter: bool
    separation_clause: bool
    maximal_F_family_with_fip: bool
    finite_union_clause: bool
    complement_clause: bool

    @property
    def agree(self) -> bool:
        return len(set(self)) == 1


def _level_sets_all_in(
    chains: Sequence[tuple[Subset, tuple[Subset, ...]]], vanish: Subset, phi: SetFamily
) -> bool:
    """Every ``X(f, r)`` with ``f`` vanishing on ``vanish`` belongs to ``phi``."""
    for zeros, chain in chains:
        if vanish <= zeros and any(s not in phi for s in chain):
            return False
    return True


def ultrafilter_characterizations(
    algebra: Algebra,
    candidate: Iterable[Iterable[int]] | FFilter,
    *,
    pair_alphabet: tuple[Fraction, ...] = PAIR_ALPHABET,
    zero_alphabet: tuple[Fraction, ...] = URYSOHN_ALPHABET,
) -> UltrafilterVerdicts:
    """Evaluate the five equivalent descriptions of an F-ultrafilter separately."""
    if isinstance(candidate, FFilter):
        phi = candidate.family()
    else:
        phi = _family(candidate)
    ground = algebra.ground
    full = ground.all
    part = algebra.partition
    f_filters = enumerate_F_filters(algebra)

    phi_is_F_family = frozenset() not in phi and is_F_family(algebra, phi)
    phi_is_F_filter = phi_is_F_family and is_filter(ground, phi)
    core = frozenset.intersection(*phi)

    def properly_contained() -> bool:
        # psi ⊋ phi  iff  phi ⊆ <H>  and  <H> ⊄ phi
        for psi in f_filters:
            h = psi.generator
            if not h <= core:
                continue
            inside = sum(1 for s in phi if h <= s)
            if inside != 1 << (len(full) - len(h)):
                return True
        return False

    # (i) maximal among F-filters
    s1 = phi_is_F_filter and not properly_contained()

    # (ii) X(f,r) ∉ phi  ⇒  every X(f,t), t < r, misses some member of phi
    s2 = phi_is_F_filter
    if s2:
        gen = core  # minimum member of a filter
        for _, chain in _witness_chains(algebra, pair_alphabet):
            for j, big in enumerate(chain):
                if gen <= big:
                    continue
                if any(chain[i] & gen for i in range(j + 1)):
                    s2 = False
                    break
            if not s2:
                break

    # (iii) maximal F-family with FIP.  Any strictly larger F-family with FIP
    # generates an F-filter strictly containing phi, so it suffices to look
    # for one of those.
    s3 = phi_is_F_family and has_fip(phi) and not properly_contained()

    zero_chains = _witness_chains(algebra, zero_alphabet)
    p_cache: dict[Subset, bool] = {}

    def all_levels_in(a: Subset) -> bool:
        sat = part.saturation(a)
        if sat not in p_cache:
            if not a:
                # Z(∅) is all of F; the constant 1 has X(1, 1/2) = ∅ ∉ phi
                p_cache[sat] = False
            else:
                p_cache[sat] = _level_sets_all_in(zero_chains, sat, phi)
        return p_cache[sat]

    subsets = [frozenset(c) for k in range(len(full) + 1) for c in itertools.combinations(sorted(full), k)]

    # (iv) ⋃A_k ∈ phi ⇒ some A_k has all X(f,r), f ∈ Z(A_k), in phi.  A
    # violating cover exists iff the union of all "bad" sets lies in phi.
    s4 = phi_is_F_filter
    if s4:
        bad = frozenset().union(*(a for a in subsets if not all_levels_in(a)))
        s4 = bad not in phi

    # (v) for every proper non-empty A, A or X \ A passes
    s5 = phi_is_F_filter
    if s5:
        for a in subsets:
            if a and a != full and not (all_levels_in(a) or all_levels_in(full - a)):
                s5 = False
                break

    return UltrafilterVerdicts(s1, s2, s3, s4, s5)


def zero_set_witness(phi: FFilter, member: Iterable[int]) -> Func:
    """A member ``f`` of F with ``generator ⊆ Z(f) ⊆ member``."""
    a = frozenset(member)
    if a not in phi:
        raise DomainError("set is not a member of the filter")
    algebra = phi.algebra
    inner = algebra.interior(a)
    f = Func.indicator(algebra.ground, algebra.ground.all - inner)
    if not (phi.generator <= zero_set(f) <= a):
        raise TheoremViolation("zero-set base witness failed", {"member": sorted(a)})
    return f

