"""Closed proper ideals, the level-set base B(I), and characters.

A closed ideal of a finite-dimensional algebra of block-constant functions
is the set of members vanishing on a fixed set of blocks.  Properness means
that set is non-empty; using every block gives the zero ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import DomainError, InputError, TheoremViolation
from .filters import (
    URYSOHN_ALPHABET,
    FFilter,
    SetFamily,
    level_sets,
    witness_functions,
    zero_set,
)
from .ground import CQ, Algebra, Func, Subset, contains, in_F0
from .spectrum import SpectrumSpace, filter_closure

MAX_CHARACTER_BLOCKS = 20


@dataclass(frozen=True)
class Ideal:
    algebra: Algebra
    vanishing_blocks: frozenset[int]

    def __post_init__(self) -> None:
        v = frozenset(self.vanishing_blocks)
        object.__setattr__(self, "vanishing_blocks", v)
        if not v:
            raise DomainError("an ideal must vanish on at least one block (properness)")
        if not v <= frozenset(range(self.algebra.num_blocks)):
            raise InputError("vanishing block index out of range")

    @classmethod
    def zero(cls, algebra: Algebra) -> "Ideal":
        return cls(algebra, frozenset(range(algebra.num_blocks)))

    @classmethod
    def maximal(cls, algebra: Algebra, block: int) -> "Ideal":
        return cls(algebra, frozenset({block}))

    @property
    def is_zero(self) -> bool:
        return len(self.vanishing_blocks) == self.algebra.num_blocks

    @property
    def is_maximal(self) -> bool:
        return len(self.vanishing_blocks) == 1

    @property
    def vanishing_set(self) -> Subset:
        return self.algebra.partition.union(self.vanishing_blocks)

    def __contains__(self, f: Func) -> bool:
        if not contains(self.algebra, f):
            return False
        return all(not f.values[x] for x in self.vanishing_set)

    def __le__(self, other: "Ideal") -> bool:
        """Inclusion of ideals: vanishing on more blocks means a smaller ideal."""
        return other.vanishing_blocks <= self.vanishing_blocks

    def generators(self) -> list[Func]:
        """Spanning set: indicators of the blocks where the ideal does not vanish."""
        alg = self.algebra
        return [alg.block_indicator(j) for j in range(alg.num_blocks) if j not in self.vanishing_blocks]

    def __repr__(self) -> str:
        return f"Ideal(vanishing={sorted(self.vanishing_blocks)})"


def enumerate_ideals(algebra: Algebra) -> list[Ideal]:
    """Every closed proper ideal, ordered by the bitmask of its vanishing blocks."""
    b = algebra.num_blocks
    return [
        Ideal(algebra, frozenset(j for j in range(b) if mask >> j & 1)) for mask in range(1, 1 << b)
    ]


def ideal_base(ideal: Ideal) -> SetFamily:
    """The distinct level sets ``X(f, r)`` over ``f ∈ I`` and ``r > 0``.

    Block-constant {0,1}-valued members vanishing on the ideal's blocks
    realise every saturated superset of the vanishing set as a zero set,
    and every level set of a member is such a set.
    """
    alg = ideal.algebra
    vanish = ideal.vanishing_set
    out: set[Subset] = set()
    for f in witness_functions(alg, URYSOHN_ALPHABET):
        if vanish <= zero_set(f):
            out.update(level_sets(f))
    return frozenset(out)


def filter_from_ideal(ideal: Ideal) -> FFilter:
    """The F-filter generated by ``B(I)``."""
    base = ideal_base(ideal)
    least = frozenset.intersection(*base)
    if least not in base:
        raise TheoremViolation("B(I) has no least member", {"ideal": sorted(ideal.vanishing_blocks)})
    return FFilter(ideal.algebra, least)


def ideal_from_filter(phi: FFilter) -> Ideal:
    """``{f : X(f, r) ∈ φ for every r > 0}``, i.e. members vanishing on the generator."""
    return Ideal(phi.algebra, phi.block_ids)


class ThreeConditions(NamedTuple):
    in_ideal: bool
    extension_vanishes_on_closure: bool
    level_sets_in_filter: bool

    @property
    def agree(self) -> bool:
        return len(set(self)) == 1


def three_cond_check(space: SpectrumSpace, ideal: Ideal, f: Func) -> ThreeConditions:
    """Evaluate membership in I three ways; callers compare them."""
    from .extension import extend

    if not contains(space.algebra, f):
        raise DomainError("function is not a member of the algebra")
    phi = filter_from_ideal(ideal)
    fhat = extend(space, f)
    closure = filter_closure(space, phi)
    return ThreeConditions(
        f in ideal,
        all(not fhat.values[p] for p in closure),
        all(phi.generator <= s for s in level_sets(f)),
    )


def k_truncation(f: Func) -> Func:
    """``|f|^2 / max(|f|^2, 1)``, the same as ``|f|^2 / (|f| ∨ 1)^2``."""
    return Func(f.ground, tuple(CQ(v.abs2() / max(v.abs2(), Fraction(1))) for v in f.values))


def truncation_error_sq(f: Func, h: Func) -> Fraction:
    """``||f - f·k||^2`` where ``k`` is the truncation of ``h``."""
    return (f - f * k_truncation(h)).sup_norm_sq()


@dataclass(frozen=True)
class Character:
    """A multiplicative linear functional, given by its values on the block indicators."""

    algebra: Algebra
    weights: tuple[int, ...]

    def __call__(self, f: Func) -> CQ:
        vals = self.algebra.block_values(f)
        return sum((w * v for w, v in zip(self.weights, vals)), CQ(0))

    @property
    def block(self) -> int:
        return self.weights.index(1)

    def kernel(self) -> Ideal:
        return Ideal(self.algebra, frozenset(j for j, w in enumerate(self.weights) if w == 1))


def characters(algebra: Algebra) -> list[Character]:
    """Solve for all non-zero multiplicative linear functionals.

    A functional is fixed by its values ``w_j`` on the block indicators
    ``e_j``.  Since ``e_j^2 = e_j`` each ``w_j`` solves ``t^2 = t``, so the
    search runs over {0,1} assignments and keeps those respecting
    ``e_i e_j = 0`` (i ≠ j), ``Σ e_j = 1`` and non-vanishing.
    """
    b = algebra.num_blocks
    if b > MAX_CHARACTER_BLOCKS:
        raise InputError(f"character search is exhaustive; {b} blocks is too many")
    out = []
    for w in itertools.product((0, 1), repeat=b):
        if not any(w):
            continue
        if any(w[i] * w[j] != 0 for i, j in itertools.combinations(range(b), 2)):
            continue
        if sum(w) != 1:  # value on the unit
            continue
        out.append(Character(algebra, w))
    return sorted(out, key=lambda mu: mu.block)


def evaluation_character(algebra: Algebra, x: int) -> Character:
    """``f ↦ f(x)``."""
    j = algebra.partition.block_of[x]
    return Character(algebra, tuple(1 if i == j else 0 for i in range(algebra.num_blocks)))


def spectrum_homeo(algebra: Algebra) -> dict[int, int]:
    """Character index ↦ spectrum point, via the F-filter generated by B(ker μ)."""
    chars = characters(algebra)
    mapping = {}
    for i, mu in enumerate(chars):
        ker = mu.kernel()
        if not ker.is_maximal:
            raise TheoremViolation("kernel of a character is not maximal", {"character": i})
        p = filter_from_ideal(ker)
        if not p.is_ultra:
            raise TheoremViolation("B(ker μ) does not generate an ultrafilter", {"character": i})
        (mapping[i],) = p.block_ids
    if sorted(mapping.values()) != list(range(algebra.num_blocks)):
        raise TheoremViolation("characters do not biject onto the spectrum", {"map": mapping})
    for x in algebra.ground:
        ev = evaluation_character(algebra, x)
        if ev not in chars or mapping[chars.index(ev)] != algebra.partition.block_of[x]:
            raise TheoremViolation("evaluation character misplaced", {"x": x})
    return mapping


def ideal_intersection(ideals: Iterable[Ideal]) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise DomainError("empty intersection of ideals")
    return Ideal(ideals[0].algebra, frozenset().union(*(i.vanishing_blocks for i in ideals)))


def maximal_ideal_intersection(algebra: Algebra, ideal: Ideal) -> bool:
    """``I`` equals the intersection of the maximal ideals containing it."""
    maximal = [Ideal.maximal(algebra, j) for j in range(algebra.num_blocks)]
    above = [m for m in maximal if ideal <= m]
    return bool(above) and ideal_intersection(above) == ideal


def ideal_in_F0(ideal: Ideal) -> bool:
    """Every spanning member and every sum of them lies in F0."""
    gens = ideal.generators()
    if not gens:
        return in_F0(Func.constant(ideal.algebra.ground, 0))
    total = gens[0]
    for g in gens[1:]:
        total = total + g
    return all(in_F0(g) for g in gens) and in_F0(total)
