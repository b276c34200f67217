"""Brute-force reference implementations.

Nothing here uses the saturation shortcuts of the fast path: filters are
found by searching every family of subsets, the F-family condition by
searching for separating functions, and the generated subalgebra by
closing a spanning set under the algebra operations with exact linear
algebra.  They are slow by design and guarded by size limits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import InputError
from .ground import CQ, Algebra, Func, GroundSet

FILTER_MAX_SIZE = 4
FAMILY_MAX_SIZE = 6
CLOSURE_MAX_SIZE = 4
MAXIMALITY_MAX_SIZE = 3


@dataclass(frozen=True)
class FullFilter:
    member_sets: frozenset[frozenset[int]]

    @property
    def generator(self) -> frozenset[int]:
        return frozenset.intersection(*self.member_sets)

    @property
    def is_principal(self) -> bool:
        return self.generator in self.member_sets


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


@lru_cache(maxsize=None)
def _all_filter_masks(n: int) -> tuple[tuple[int, ...], ...]:
    full = (1 << n) - 1
    # every filter contains X and omits ∅; the other subsets are free
    free = list(range(1, full))
    out = []
    for choice in range(1 << len(free)):
        members = [full] + [free[i] for i in range(len(free)) if choice >> i & 1]
        mset = set(members)
        if any(a | (1 << x) not in mset for a in members for x in range(n)):
            continue
        if any(a & b not in mset for a, b in itertools.combinations(members, 2)):
            continue
        out.append(tuple(sorted(members)))
    return tuple(out)


def enumerate_all_filters(ground: GroundSet | int, max_size: int = FILTER_MAX_SIZE) -> list[FullFilter]:
    """Every filter on X, by exhaustive search over families of subsets."""
    n = ground if isinstance(ground, int) else len(ground)
    if n > max_size:
        raise InputError(f"exhaustive filter search is limited to n <= {max_size}")
    filters = [FullFilter(frozenset(_mask_to_set(m) for m in ms)) for ms in _all_filter_masks(n)]
    if not all(f.is_principal for f in filters):
        raise AssertionError("found a non-principal filter on a finite set")
    if len(filters) != (1 << n) - 1:
        raise AssertionError(f"expected {(1 << n) - 1} filters, found {len(filters)}")
    return sorted(filters, key=lambda f: sum(1 << x for x in f.generator))


def block_constant_01(algebra: Algebra) -> list[tuple[int, ...]]:
    """Value tables of the {0,1}-valued functions constant on every block."""
    owner = algebra.partition.block_of
    return [
        tuple(bits[owner[x]] for x in range(len(owner)))
        for bits in itertools.product((0, 1), repeat=algebra.num_blocks)
    ]


def brute_F_family(algebra: Algebra, family: Iterable[Iterable[int]]) -> bool:
    """Search for ``B`` in the family and ``f`` with ``f(B)={0}``, ``f(X \\ A)={1}``."""
    n = len(algebra.ground)
    if n > FAMILY_MAX_SIZE:
        raise InputError(f"brute-force F-family check is limited to n <= {FAMILY_MAX_SIZE}")
    fam = [frozenset(s) for s in family]
    if not fam or frozenset() in fam:
        raise InputError("family must be non-empty and exclude the empty set")
    full = frozenset(range(n))
    candidates = block_constant_01(algebra)
    for a in fam:
        if a == full:
            continue
        found = any(
            all(f[x] == 0 for x in b) and all(f[x] == 1 for x in full - a)
            for f in candidates
            for b in fam
        )
        if not found:
            return False
    return True


def brute_F_filters(algebra: Algebra) -> list[FullFilter]:
    return [phi for phi in enumerate_all_filters(algebra.ground) if brute_F_family(algebra, phi.member_sets)]


def brute_maximal_F_family_fip(algebra: Algebra, family: Iterable[Iterable[int]]) -> bool:
    """Maximality among F-families with FIP, by checking every larger family."""
    n = len(algebra.ground)
    if n > MAXIMALITY_MAX_SIZE:
        raise InputError(f"direct maximality search is limited to n <= {MAXIMALITY_MAX_SIZE}")
    fam = frozenset(frozenset(s) for s in family)

    def good(f: frozenset) -> bool:
        return bool(frozenset.intersection(*f)) and brute_F_family(algebra, f)

    if frozenset() in fam or not good(fam):
        return False
    nonempty = [frozenset(c) for k in range(1, n + 1) for c in itertools.combinations(range(n), k)]
    extra = [s for s in nonempty if s not in fam]
    for k in range(1, len(extra) + 1):
        for add in itertools.combinations(extra, k):
            if good(fam | frozenset(add)):
                return False
    return True


class _Span:
    """Row-reduced basis of a subspace of Q(i)^n."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.rows: list[tuple[int, list[CQ]]] = []

    def reduce(self, v: Sequence[CQ]) -> list[CQ]:
        w = list(v)
        for pivot, row in self.rows:
            c = w[pivot]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence[CQ]) -> bool:
        w = self.reduce(v)
        pivot = next((i for i, a in enumerate(w) if a), None)
        if pivot is None:
            return False
        inv = CQ(1) / w[pivot]
        w = [a * inv for a in w]
        # keep existing rows reduced against the new pivot
        self.rows = [
            (p, [a - r[pivot] * b for a, b in zip(r, w)]) if r[pivot] else (p, r)
            for p, r in self.rows
        ]
        self.rows.append((pivot, w))
        return True

    def __contains__(self, v: Sequence[CQ]) -> bool:
        return not any(self.reduce(v))

    def __len__(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[list[CQ]]:
        return [r for _, r in self.rows]


def brute_subalgebra_closure(
    ground: GroundSet, generators: Sequence[Func], max_size: int = CLOSURE_MAX_SIZE
) -> tuple[Callable[[Func], bool], int]:
    """Membership predicate and dimension of the unital *-algebra generated.

    Starts from the span of 1, the generators and their conjugates, then
    keeps adding products and conjugates of basis vectors until nothing new
    appears.  The dimension is at most ``n``, so this terminates.
    """
    n = len(ground)
    if n > max_size:
        raise InputError(f"brute-force closure is limited to n <= {max_size}")
    span = _Span(n)
    span.add([CQ(1)] * n)
    for g in generators:
        if g.ground != ground:
            raise InputError("generator on a different ground set")
        span.add(g.values)
        span.add([v.conjugate() for v in g.values])
    grew = True
    while grew:
        grew = False
        vecs = span.vectors()
        for u, v in itertools.combinations_with_replacement(vecs, 2):
            if span.add([a * b for a, b in zip(u, v)]):
                grew = True
        for u in vecs:
            if span.add([a.conjugate() for a in u]):
                grew = True
        if len(span) > n:
            raise AssertionError("closure exceeded the ambient dimension")

    def member(f: Func) -> bool:
        if f.ground != ground:
            raise InputError("function on a different ground set")
        return f.values in span

    return member, len(span)


def brute_ideal_closure(
    algebra: Algebra, seeds: Sequence[Func], max_size: int = CLOSURE_MAX_SIZE
) -> tuple[Callable[[Func], bool], int]:
    """Smallest ideal of the algebra containing ``seeds``: span of all products ``h·s``.

    The algebra is taken from the brute-force closure of its generators.
    """
    ground = algebra.ground
    n = len(ground)
    if n > max_size:
        raise InputError(f"brute-force ideal closure is limited to n <= {max_size}")
    member_f, _ = brute_subalgebra_closure(ground, [g for _, g in algebra.generators], max_size)
    f_span = _Span(n)
    f_span.add([CQ(1)] * n)
    for _, g in algebra.generators:
        f_span.add(g.values)
        f_span.add([v.conjugate() for v in g.values])
    grew = True
    while grew:
        grew = False
        vecs = f_span.vectors()
        for u, v in itertools.combinations_with_replacement(vecs, 2):
            grew |= f_span.add([a * b for a, b in zip(u, v)])
        for u in vecs:
            grew |= f_span.add([a.conjugate() for a in u])
    span = _Span(n)
    for s in seeds:
        if not member_f(s):
            raise InputError("seed is not a member of the algebra")
        for h in f_span.vectors():
            span.add([a * b for a, b in zip(h, s.values)])

    def member(f: Func) -> bool:
        return f.values in span

    return member, len(span)
