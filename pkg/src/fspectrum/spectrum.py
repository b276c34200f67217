"""The spectrum δX: F-ultrafilters with the hat-set topology.

On a finite set the points are the blocks, ``Â`` is the set of blocks inside
``A`` and the topology is discrete.  Point sets are frozensets of point
indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Iterator

from .errors import DomainError, TheoremViolation
from .filters import (
    FFilter,
    UltraPoint,
    enumerate_F_filters,
    level_set_sq,
    principal_family,
    ultrafilters,
    zero_set,
)
from .ground import Algebra, Func, Subset, critical_radii_sq

EAGER_TABLE_MAX_BLOCKS = 16
EXHAUSTIVE_SUBSETS_MAX = 8

PointSet = frozenset  # frozenset[int] of point indices


@dataclass(frozen=True, eq=False)
class SpectrumSpace:
    algebra: Algebra
    points: tuple[UltraPoint, ...]
    eval: tuple[int, ...]
    _hat_table: dict[Subset, PointSet] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def all(self) -> PointSet:
        return frozenset(range(len(self.points)))

    def e(self, x: int) -> int:
        """Evaluation map: the neighbourhood ultrafilter of ``x``."""
        return self.eval[x]

    def image(self, subset: Iterable[int]) -> PointSet:
        return frozenset(self.eval[x] for x in subset)

    def block(self, p: int) -> Subset:
        return self.points[p].block

    def hat_of_saturated(self, sat: Subset) -> PointSet:
        if self._hat_table is not None:
            return self._hat_table[sat]
        return _lazy_hat(self.algebra, sat)


def build_spectrum(algebra: Algebra) -> SpectrumSpace:
    points = tuple(ultrafilters(algebra))
    ev = algebra.partition.block_of
    table = None
    if algebra.num_blocks <= EAGER_TABLE_MAX_BLOCKS:
        part = algebra.partition
        table = {}
        for mask in range(1 << len(points)):
            ids = frozenset(j for j in range(len(points)) if mask >> j & 1)
            table[part.union(ids)] = ids
    space = SpectrumSpace(algebra, points, tuple(ev), table)
    if space.image(algebra.ground.all) != space.all:
        raise TheoremViolation("evaluation map is not onto the spectrum")
    return space


@lru_cache(maxsize=4096)
def _lazy_hat(algebra: Algebra, sat: Subset) -> PointSet:
    return algebra.partition.blocks_inside(sat)


def tau_interior(algebra: Algebra, subset: Iterable[int]) -> Subset:
    """Interior in the weakest topology making F continuous: blocks inside ``A``."""
    return algebra.partition.interior(subset)


def hat(space: SpectrumSpace, subset: Iterable[int]) -> PointSet:
    """``Â = {p : A ∈ p}``."""
    a = frozenset(subset)
    return space.hat_of_saturated(tau_interior(space.algebra, a))


def closure_eA(space: SpectrumSpace, subset: Iterable[int]) -> PointSet:
    """Closure of ``e(A)`` in δX: points whose every member meets ``A``."""
    a = frozenset(subset)
    return frozenset(p for p in range(len(space)) if space.block(p) & a)


def filter_hat(space: SpectrumSpace, phi: FFilter) -> PointSet:
    """``φ̂ = {p : φ ⊆ p}``."""
    return frozenset(p for p in range(len(space)) if space.block(p) <= phi.generator)


def filter_bar(space: SpectrumSpace, phi: FFilter) -> PointSet:
    """``φ̄ = ⋂_{A ∈ φ} cl e(A)``, intersected over the explicit family."""
    out = space.all
    for a in phi.family():
        out &= closure_eA(space, a)
    return out


def filter_closure(space: SpectrumSpace, phi: FFilter) -> PointSet:
    """φ̂, after checking that it equals φ̄."""
    h = filter_hat(space, phi)
    n_free = len(space.algebra.ground) - len(phi.generator)
    if n_free <= 12:
        bar = filter_bar(space, phi)
    else:
        # closures are monotone, so the intersection is attained at the generator
        bar = closure_eA(space, phi.generator)
    if h != bar:
        raise TheoremViolation(
            "hat and bar closures of an F-filter differ",
            {"generator": sorted(phi.generator), "hat": sorted(h), "bar": sorted(bar)},
        )
    return h


def closed_set_to_filter(space: SpectrumSpace, points: Iterable[int]) -> FFilter:
    """The unique F-filter ``φ`` with ``φ̂ = C``; its generator is ``⋃ C``."""
    c = frozenset(points)
    if not c:
        raise DomainError("closed set must be non-empty")
    if not c <= space.all:
        raise DomainError("not a set of spectrum points")
    return FFilter.of_blocks(space.algebra, c)


def intersection_of_points(space: SpectrumSpace, points: Iterable[int]) -> frozenset[Subset]:
    """``⋂_{p ∈ C} p`` as an explicit family of subsets of X."""
    ground = space.algebra.ground
    fams = [principal_family(ground, space.block(p)) for p in points]
    return frozenset.intersection(*fams)


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: Any = None

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if not self.passed:
            out["counterexample"] = self.counterexample
        return out


def probe_subsets(algebra: Algebra) -> Iterator[Subset]:
    """All subsets of X when small; otherwise unions of blocks and one-point edits of them."""
    ground = algebra.ground
    n = len(ground)
    if n <= EXHAUSTIVE_SUBSETS_MAX:
        for k in range(n + 1):
            for c in itertools.combinations(range(n), k):
                yield frozenset(c)
        return
    seen: set[Subset] = set()
    part = algebra.partition
    for mask in range(1 << min(len(part), 10)):
        sat = part.union(j for j in range(len(part)) if mask >> j & 1)
        for s in [sat] + [sat ^ {x} for x in range(n)]:
            if s not in seen:
                seen.add(s)
                yield s


def _first(it: Iterable[Any]) -> Any:
    for x in it:
        return x
    return None


def verify_space(space: SpectrumSpace) -> list[CheckResult]:
    """Exhaustive checks of the topological facts about δX at finite scale."""
    alg = space.algebra
    full_x = alg.ground.all
    full_p = space.all
    results: list[CheckResult] = []
    subsets = list(probe_subsets(alg))
    hats = {a: hat(space, a) for a in subsets}
    closures = {a: closure_eA(space, a) for a in subsets}

    def add(name: str, bad: Any) -> None:
        results.append(CheckResult(name, bad is None, bad))

    def separated(p: int, q: int) -> bool:
        u, v = hat(space, space.block(p)), hat(space, space.block(q))
        return p in u and q in v and not u & v

    add(
        "hausdorff",
        _first(
            {"p": p, "q": q}
            for p, q in itertools.combinations(range(len(space)), 2)
            if not separated(p, q)
        ),
    )
    add("compact", None if len(space) >= 1 else {"points": 0})
    add("dense_evaluation_image", None if closure_eA(space, full_x) == full_p else {"closure": sorted(closure_eA(space, full_x))})

    f_filters = enumerate_F_filters(alg)
    fhat = {phi.generator: filter_hat(space, phi) for phi in f_filters}

    add(
        "filtprop_i",
        _first(
            {"generator": sorted(phi.generator)}
            for phi in f_filters
            if len(full_x) - len(phi.generator) <= 12
            and fhat[phi.generator] != frozenset.intersection(full_p, *(hat(space, a) for a in phi.family()))
        ),
    )
    add(
        "filtprop_ii",
        _first(
            {"generator": sorted(phi.generator)}
            for phi in f_filters
            if len(full_x) <= 12 and phi.family() != intersection_of_points(space, fhat[phi.generator])
        ),
    )
    add(
        "filtprop_iii",
        _first(
            {"phi": sorted(a.generator), "psi": sorted(b.generator)}
            for a in f_filters
            for b in f_filters
            if a.is_subfilter_of(b) != (fhat[b.generator] <= fhat[a.generator])
        ),
    )
    add(
        "filtprop_iv",
        _first(
            {"phi": sorted(a.generator), "psi": sorted(b.generator)}
            for a in f_filters
            for b in f_filters
            if (a.generator == b.generator) != (fhat[a.generator] == fhat[b.generator])
        ),
    )
    add(
        "properties_i",
        _first(
            {"A": sorted(a)}
            for a in subsets
            if hat(space, full_x - a) != full_p - closures[a]
        ),
    )
    add(
        "properties_ii",
        _first(
            {"A": sorted(a)}
            for a in subsets
            if tau_interior(alg, a) == a and closures[a] != _closure_of_points(space, hats[a])
        ),
    )
    add(
        "properties_iii",
        _first(
            {"A": sorted(a), "B": sorted(b)}
            for a in subsets
            for b in subsets
            if (hats[a] == hats[b]) != (tau_interior(alg, a) == tau_interior(alg, b))
        ),
    )
    add(
        "properties_iv",
        _first({"A": sorted(a)} for a in subsets if (not hats[a]) != (not tau_interior(alg, a))),
    )
    add(
        "properties_v",
        _first({"A": sorted(a)} for a in subsets if (hats[a] == full_p) != (a == full_x)),
    )
    add("intersecting", _check_intersecting(space, subsets, closures))
    add("closed_set_bijection", _check_bijection(space, f_filters))
    return results


def _closure_of_points(space: SpectrumSpace, pts: PointSet) -> PointSet:
    # δX is discrete: every set is closed
    return frozenset(pts)


def _check_intersecting(space: SpectrumSpace, subsets: list[Subset], closures: dict) -> Any:
    """Closures of e(A), e(B) meet iff X(f,r) and X(g,r) always meet for f ∈ Z(A), g ∈ Z(B).

    Witnesses are the block-constant {0,1}-valued members vanishing on the
    set.  With more than four blocks only the witness vanishing exactly on
    sat(A) is used; it has the smallest level sets, so it decides the
    universal statement on its own.
    """
    from .filters import URYSOHN_ALPHABET, witness_functions

    alg = space.algebra
    part = alg.partition
    pool = witness_functions(alg, URYSOHN_ALPHABET) if len(part) <= 4 else ()
    witnesses: dict[Subset, list[Func]] = {}
    for a in subsets:
        s = part.saturation(a)
        if s in witnesses:
            continue
        if pool:
            witnesses[s] = [f for f in pool if s <= zero_set(f)]
        else:
            witnesses[s] = [Func.indicator(alg.ground, alg.ground.all - s)]
    for sa, fa in witnesses.items():
        for sb, gb in witnesses.items():
            lhs = all(_levels_always_meet(f, g) for f in fa for g in gb)
            rhs = bool(closure_eA(space, sa) & closure_eA(space, sb))
            if lhs != rhs:
                return {"A": sorted(sa), "B": sorted(sb), "levels_meet": lhs, "closures_meet": rhs}
    return None


def _levels_always_meet(f: Func, g: Func) -> bool:
    radii = sorted(set(critical_radii_sq(f)) | set(critical_radii_sq(g)))
    return all(level_set_sq(f, t) & level_set_sq(g, t) for t in radii)


def _check_bijection(space: SpectrumSpace, f_filters: list[FFilter]) -> Any:
    b = len(space)
    expected = (1 << b) - 1
    closed_sets = [
        frozenset(j for j in range(b) if mask >> j & 1) for mask in range(1, 1 << b)
    ]
    if len(f_filters) != expected or len(closed_sets) != expected:
        return {"filters": len(f_filters), "closed_sets": len(closed_sets), "expected": expected}
    images = set()
    for phi in f_filters:
        c = filter_closure(space, phi)
        if closed_set_to_filter(space, c) != phi:
            return {"generator": sorted(phi.generator)}
        images.add(c)
    if len(images) != expected:
        return {"distinct_images": len(images)}
    for c in closed_sets:
        if filter_closure(space, closed_set_to_filter(space, c)) != c:
            return {"closed_set": sorted(c)}
    return None
