"""Nested subalgebras and their spectra; finite forms of the classical corollaries.

A finite Hausdorff space is discrete, so the topological results are stated
for discrete X only.  Passing any other topology raises ``DomainError``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError, GroundMismatch, TheoremViolation
from .extension import extend
from .filters import URYSOHN_ALPHABET, witness_functions
from .ground import Algebra, Func, GroundSet, contains
from .spectrum import SpectrumSpace, build_spectrum, closure_eA, hat

EMBOPEN_MESSAGE = (
    "The C0(X) / one-point compactification criterion needs a non-compact, "
    "locally compact space. Every finite space is compact, so there is no "
    "finite instance to compute; this tool does not implement it."
)


def require_discrete(ground: GroundSet, open_sets: Iterable[Iterable[int]] | None) -> None:
    """Reject topologies other than the discrete one."""
    if open_sets is None:
        return
    opens = {frozenset(s) for s in open_sets}
    if any(frozenset({x}) not in opens for x in ground):
        raise DomainError("only the discrete topology is supported on a finite set")


def is_subalgebra(coarse: Algebra, fine: Algebra) -> bool:
    """``coarse ⊆ fine``: every coarse generator is constant on the fine blocks."""
    if coarse.ground != fine.ground:
        raise GroundMismatch("algebras on different ground sets")
    by_generators = all(contains(fine, g) for _, g in coarse.generators)
    by_partition = fine.partition.refines(coarse.partition)
    if by_generators != by_partition:
        raise TheoremViolation("generator test and refinement test disagree")
    return by_generators


@dataclass(frozen=True, eq=False)
class AlgebraPair:
    fine: Algebra
    coarse: Algebra

    def __post_init__(self) -> None:
        if not is_subalgebra(self.coarse, self.fine):
            raise DomainError("coarse algebra is not contained in the fine one")

    @cached_property
    def fine_space(self) -> SpectrumSpace:
        return build_spectrum(self.fine)

    @cached_property
    def coarse_space(self) -> SpectrumSpace:
        return build_spectrum(self.coarse)


def quotient_map(pair: AlgebraPair) -> tuple[int, ...]:
    """``F: δ₂X → δ₁X``, fine point ↦ coarse point, with ``e₁ = F ∘ e₂``.

    ``F(p)`` is the single point of ``⋂_{A ∈ p} cl e₁(A)``; the members of
    ``p`` contain its fine block, so the intersection is the closure of the
    block's image.
    """
    s2, s1 = pair.fine_space, pair.coarse_space
    out = []
    for p in range(len(s2)):
        c = closure_eA(s1, s2.block(p))
        if len(c) != 1:
            raise TheoremViolation("fine point does not map to a single coarse point", {"point": p})
        (q,) = c
        out.append(q)
    fmap = tuple(out)
    for x in pair.fine.ground:
        if s1.eval[x] != fmap[s2.eval[x]]:
            raise TheoremViolation("e₁ ≠ F ∘ e₂", {"x": x})
    if set(fmap) != set(range(len(s1))):
        raise TheoremViolation("quotient map is not surjective")
    return fmap


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """``outer ∘ inner`` for maps stored as index tuples."""
    return tuple(outer[i] for i in inner)


class SurjptsVerdicts(NamedTuple):
    contained: bool
    maps_to: bool
    extensions_agree: bool

    @property
    def agree(self) -> bool:
        return len(set(self)) == 1


def coarse_test_functions(coarse: Algebra) -> list[Func]:
    """Block indicators and generators of the coarse algebra; they span it."""
    return coarse.basis() + [g for _, g in coarse.generators]


def surjpts_check(pair: AlgebraPair, p: int, q: int) -> SurjptsVerdicts:
    s2, s1 = pair.fine_space, pair.coarse_space
    if not (0 <= p < len(s2) and 0 <= q < len(s1)):
        raise DomainError("point index out of range")
    fmap = quotient_map(pair)
    # <Q> ⊆ <P> as filters iff P ⊆ Q
    contained = s2.block(p) <= s1.block(q)
    agree = all(
        extend(s2, f).values[p] == extend(s1, f).values[q] for f in coarse_test_functions(pair.coarse)
    )
    return SurjptsVerdicts(contained, fmap[p] == q, agree)


def equivalence_classes(pair: AlgebraPair) -> list[frozenset[int]]:
    """Classes of δ₂X under "every coarse extension agrees"."""
    s2 = pair.fine_space
    tests = [extend(s2, f) for f in coarse_test_functions(pair.coarse)]
    classes: dict[tuple, list[int]] = {}
    for p in range(len(s2)):
        classes.setdefault(tuple(t.values[p] for t in tests), []).append(p)
    return [frozenset(c) for c in classes.values()]


def quotient_space_check(pair: AlgebraPair) -> bool:
    """δ₂X/≈ ≅ δ₁X through the map induced by F, checked on open sets both ways."""
    s2, s1 = pair.fine_space, pair.coarse_space
    fmap = quotient_map(pair)
    classes = equivalence_classes(pair)
    fibres = [frozenset(p for p in range(len(s2)) if fmap[p] == q) for q in range(len(s1))]
    if sorted(map(sorted, classes)) != sorted(map(sorted, fibres)):
        return False
    induced = {}
    for cls in classes:
        images = {fmap[p] for p in cls}
        if len(images) != 1:
            return False
        (induced[cls],) = images
    if sorted(induced.values()) != list(range(len(s1))):
        return False
    part1 = pair.coarse.partition
    for mask in range(1 << len(s1)):
        a = part1.union(j for j in range(len(s1)) if mask >> j & 1)
        # preimage of a basic open set of δ₁X is the basic open set of δ₂X
        if frozenset(p for p in range(len(s2)) if fmap[p] in hat(s1, a)) != hat(s2, a):
            return False
    for r in range(len(classes) + 1):
        for chosen in itertools.combinations(classes, r):
            u = frozenset().union(*chosen)
            blocks = pair.fine.partition.union(u)
            # image of a saturated open set is open in δ₁X
            if {induced[c] for c in chosen} != set(hat(s1, blocks)):
                return False
    return True


def embedding_check(algebra: Algebra, topology: Iterable[Iterable[int]] | None = None) -> bool:
    """``e`` injective ⟺ singleton blocks ⟺ Urysohn witnesses exist for all ``x ∈ A``."""
    ground = algebra.ground
    require_discrete(ground, topology)
    space = build_spectrum(algebra)
    injective = len(set(space.eval)) == len(ground)
    singletons = all(len(b) == 1 for b in algebra.blocks)
    pool = witness_functions(algebra, URYSOHN_ALPHABET)
    n = len(ground)
    witnesses = True
    for x in ground:
        others = [y for y in ground if y != x]
        if n <= 8:
            nbhds = (
                frozenset((x,) + extra)
                for k in range(len(others))
                for extra in itertools.combinations(others, k)
            )
        else:
            nbhds = iter([frozenset({x})])
        for a in nbhds:
            if not any(f.values[x] == 1 and all(not f.values[y] for y in ground.all - a) for f in pool):
                witnesses = False
                break
        if not witnesses:
            break
    if not injective == singletons == witnesses:
        raise TheoremViolation(
            "embedding criteria disagree",
            {"injective": injective, "singletons": singletons, "witnesses": witnesses},
        )
    return injective


def separates_points(algebra: Algebra) -> bool:
    gens = [g for _, g in algebra.generators]
    return all(
        any(g.values[x] != g.values[y] for g in gens)
        for x, y in itertools.combinations(algebra.ground, 2)
    )


def stone_weierstrass_check(algebra: Algebra, topology: Iterable[Iterable[int]] | None = None) -> bool:
    """Generators separate points ⟺ the algebra is all of C(X) ⟺ e is a homeomorphism."""
    require_discrete(algebra.ground, topology)
    sep = separates_points(algebra)
    everything = algebra.dimension == len(algebra.ground)
    homeo = len(set(build_spectrum(algebra).eval)) == len(algebra.ground)
    if not sep == everything == homeo:
        raise TheoremViolation(
            "Stone-Weierstrass criteria disagree",
            {"separates": sep, "full": everything, "homeomorphism": homeo},
        )
    return sep


def spectrum_isomorphism(a1: Algebra, a2: Algebra) -> tuple[int, ...] | None:
    """A point bijection δ(a1) → δ(a2) carrying the algebras onto each other, if any.

    The induced map ``g ↦ g ∘ σ⁻¹`` sends point indicators to point
    indicators; it is checked to be an isometric *-isomorphism on that basis.
    """
    b1, b2 = a1.num_blocks, a2.num_blocks
    if b1 != b2:
        return None
    sigma = tuple(range(b1))
    s2 = build_spectrum(a2)
    for j in range(b1):
        img = a2.from_block_values([1 if sigma[j] == k else 0 for k in range(b2)])
        if extend(s2, img).values != tuple(1 if k == sigma[j] else 0 for k in range(b2)):
            raise TheoremViolation("indicator not carried to indicator", {"block": j})
        if (img * img) != img or img.sup_norm_sq() != 1:
            raise TheoremViolation("image of an idempotent is not a norm-one idempotent")
    return sigma


def gelfand_naimark_check(a1: Algebra, a2: Algebra) -> bool:
    """Spectra homeomorphic ⟺ algebras isometrically *-isomorphic (equal dimension)."""
    homeomorphic = len(build_spectrum(a1)) == len(build_spectrum(a2))
    iso = spectrum_isomorphism(a1, a2) is not None
    if homeomorphic != iso or iso != (a1.dimension == a2.dimension):
        raise TheoremViolation("Gelfand-Naimark criteria disagree")
    return iso
