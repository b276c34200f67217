"""Ground sets, exact complex-rational functions and generated subalgebras.

A unital C*-subalgebra of functions on a finite set is determined by the
partition of the set into the classes of points that the algebra cannot
tell apart.  Everything downstream works with that partition; the
generators are kept only for reporting and for the oracle cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, GroundMismatch, InputError, NotInvertible

Rational = Union[int, Fraction]
Subset = frozenset  # frozenset[int] of element indices


class CQ:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im", "_abs2", "_hash")

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)
        self._abs2: Fraction | None = None
        self._hash: int | None = None

    @classmethod
    def coerce(cls, value: object) -> "CQ":
        if isinstance(value, CQ):
            return value
        if isinstance(value, bool):
            raise InputError(f"not a number: {value!r}")
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls(Fraction(value))
        if isinstance(value, tuple) and len(value) == 2:
            return cls(Fraction(value[0]), Fraction(value[1]))
        raise InputError(f"cannot use {value!r} as an exact complex rational")

    def __add__(self, other: object) -> "CQ":
        o = CQ.coerce(other)
        return CQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> "CQ":
        o = CQ.coerce(other)
        return CQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: object) -> "CQ":
        return CQ.coerce(other) - self

    def __mul__(self, other: object) -> "CQ":
        o = CQ.coerce(other)
        return CQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "CQ":
        o = CQ.coerce(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return CQ(num.re / d, num.im / d)

    def __rtruediv__(self, other: object) -> "CQ":
        return CQ.coerce(other) / self

    def __neg__(self) -> "CQ":
        return CQ(-self.re, -self.im)

    def conjugate(self) -> "CQ":
        return CQ(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus; always rational."""
        if self._abs2 is None:
            self._abs2 = self.re * self.re + self.im * self.im
        return self._abs2

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if type(other) is CQ:
            return self.re == other.re and self.im == other.im
        try:
            o = CQ.coerce(other)
        except (InputError, ValueError, TypeError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.re) if self.im == 0 else hash((self.re, self.im))
        return self._hash

    def __repr__(self) -> str:
        if self.im == 0:
            return f"CQ({self.re})"
        return f"CQ({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = CQ(0, 1)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Return the rational square root of ``q`` if it has one."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        elements = tuple(str(e) for e in self.elements)
        if not elements:
            raise InputError("ground set must be non-empty")
        if len(set(elements)) != len(elements):
            raise InputError("ground labels must be unique")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elements)})

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        return cls(tuple(f"x{i}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.elements)))

    @property
    def all(self) -> Subset:
        return frozenset(range(len(self.elements)))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown ground label {label!r}") from None

    def subset(self, labels: Iterable[str]) -> Subset:
        return frozenset(self.index(lab) for lab in labels)

    def labels(self, subset: Iterable[int]) -> list[str]:
        return [self.elements[i] for i in sorted(subset)]

    def complement(self, subset: Iterable[int]) -> Subset:
        return self.all - frozenset(subset)


@dataclass(frozen=True, eq=False)
class Func:
    """A function from a ground set to the Gaussian rationals."""

    ground: GroundSet
    values: tuple[CQ, ...]

    def __post_init__(self) -> None:
        values = tuple(CQ.coerce(v) for v in self.values)
        if len(values) != len(self.ground):
            raise GroundMismatch(
                f"function has {len(values)} values for a ground set of size {len(self.ground)}"
            )
        object.__setattr__(self, "values", values)

    @cached_property
    def abs2_values(self) -> tuple[Fraction, ...]:
        return tuple(v.abs2() for v in self.values)

    @classmethod
    def constant(cls, ground: GroundSet, c: object = 1) -> "Func":
        c = CQ.coerce(c)
        return cls(ground, (c,) * len(ground))

    @classmethod
    def indicator(cls, ground: GroundSet, subset: Iterable[int]) -> "Func":
        s = frozenset(subset)
        return cls(ground, tuple(CQ(1 if i in s else 0) for i in ground))

    def __call__(self, x: int) -> CQ:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def _same_ground(self, other: "Func") -> None:
        if not isinstance(other, Func):
            raise TypeError(f"expected Func, got {type(other).__name__}")
        if other.ground != self.ground:
            raise GroundMismatch("functions live on different ground sets")

    def _lift(self, other: object) -> tuple[CQ, ...]:
        if isinstance(other, Func):
            self._same_ground(other)
            return other.values
        return (CQ.coerce(other),) * len(self.values)

    def __add__(self, other: object) -> "Func":
        return Func(self.ground, tuple(a + b for a, b in zip(self.values, self._lift(other))))

    __radd__ = __add__

    def __sub__(self, other: object) -> "Func":
        return Func(self.ground, tuple(a - b for a, b in zip(self.values, self._lift(other))))

    def __rsub__(self, other: object) -> "Func":
        return Func(self.ground, tuple(b - a for a, b in zip(self.values, self._lift(other))))

    def __mul__(self, other: object) -> "Func":
        return Func(self.ground, tuple(a * b for a, b in zip(self.values, self._lift(other))))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Func":
        return Func(self.ground, tuple(a / b for a, b in zip(self.values, self._lift(other))))

    def __neg__(self) -> "Func":
        return Func(self.ground, tuple(-a for a in self.values))

    def conjugate(self) -> "Func":
        return Func(self.ground, tuple(a.conjugate() for a in self.values))

    def abs2(self) -> "Func":
        """Pointwise squared modulus ``|f|^2`` (real, exact)."""
        return Func(self.ground, tuple(CQ(a.abs2()) for a in self.values))

    def abs(self) -> "Func":
        """Pointwise ``|f|``; only defined for real-valued ``f``."""
        if not self.is_real:
            raise DomainError("|f| is materialised only for real-valued functions")
        return Func(self.ground, tuple(CQ(abs(a.re)) for a in self.values))

    @property
    def is_real(self) -> bool:
        return all(v.is_real for v in self.values)

    def real_values(self) -> tuple[Fraction, ...]:
        if not self.is_real:
            raise DomainError("function is not real-valued")
        return tuple(v.re for v in self.values)

    def real_part(self) -> "Func":
        return Func(self.ground, tuple(CQ(v.re) for v in self.values))

    def imag_part(self) -> "Func":
        return Func(self.ground, tuple(CQ(v.im) for v in self.values))

    def sup_norm_sq(self) -> Fraction:
        """``||f||^2`` as an exact rational."""
        return max(v.abs2() for v in self.values)

    def image(self, subset: Iterable[int]) -> frozenset[CQ]:
        return frozenset(self.values[i] for i in subset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Func):
            return NotImplemented
        return self.ground == other.ground and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.ground, self.values))

    def __repr__(self) -> str:
        return "Func(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class Partition:
    """Blocks of a set partition of ``range(n)``, ordered by least element."""

    blocks: tuple[Subset, ...]
    block_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min_or_fail))
        seen: set[int] = set()
        for b in blocks:
            if seen & b:
                raise InputError("partition blocks overlap")
            seen |= b
        n = len(seen)
        if seen != set(range(n)):
            raise InputError("partition blocks do not cover 0..n-1")
        owner = [0] * n
        for j, b in enumerate(blocks):
            for x in b:
                owner[x] = j
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "block_of", tuple(owner))

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def size(self) -> int:
        return len(self.block_of)

    def blocks_meeting(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.block_of[x] for x in subset)

    def blocks_inside(self, subset: Iterable[int]) -> frozenset[int]:
        s = frozenset(subset)
        return frozenset(j for j, b in enumerate(self.blocks) if b <= s)

    def union(self, block_ids: Iterable[int]) -> Subset:
        out: set[int] = set()
        for j in block_ids:
            out |= self.blocks[j]
        return frozenset(out)

    def saturation(self, subset: Iterable[int]) -> Subset:
        """Smallest union of blocks containing ``subset``."""
        return self.union(self.blocks_meeting(subset))

    def interior(self, subset: Iterable[int]) -> Subset:
        """Largest union of blocks contained in ``subset``."""
        return self.union(self.blocks_inside(subset))

    def is_saturated(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        return self.saturation(s) == s

    def refines(self, other: "Partition") -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        if self.size != other.size:
            raise GroundMismatch("partitions of different sets")
        return all(len(other.blocks_meeting(b)) == 1 for b in self.blocks)


def min_or_fail(block: Subset) -> int:
    if not block:
        raise InputError("partition blocks must be non-empty")
    return min(block)


def kernel_partition(ground: GroundSet, generators: Sequence[Func]) -> Partition:
    """Classes of ``x ~ y  iff  g(x) == g(y)`` for every generator ``g``."""
    for g in generators:
        if g.ground != ground:
            raise GroundMismatch("generator defined on a different ground set")
    classes: dict[tuple[CQ, ...], list[int]] = {}
    for x in ground:
        classes.setdefault(tuple(g.values[x] for g in generators), []).append(x)
    # dict preserves first-seen order, which is least-element order
    return Partition(tuple(frozenset(c) for c in classes.values()))


class Algebra:
    """Canonical form of the closed unital *-subalgebra generated by functions.

    Membership is "constant on every block of the kernel partition".
    """

    __slots__ = ("ground", "generators", "partition")

    def __init__(
        self,
        ground: GroundSet,
        generators: Mapping[str, Func] | Sequence[Func] = (),
        partition: Partition | None = None,
    ) -> None:
        if not isinstance(generators, Mapping):
            generators = {f"g{i + 1}": g for i, g in enumerate(generators)}
        self.ground = ground
        self.generators: tuple[tuple[str, Func], ...] = tuple(generators.items())
        computed = kernel_partition(ground, [g for _, g in self.generators])
        if partition is not None and partition != computed:
            raise InputError("given partition is not the kernel partition of the generators")
        self.partition = computed

    @classmethod
    def from_partition(cls, ground: GroundSet, blocks: Iterable[Iterable[int]]) -> "Algebra":
        """The algebra of all functions constant on the given blocks."""
        part = Partition(tuple(frozenset(b) for b in blocks))
        if part.size != len(ground):
            raise GroundMismatch("partition does not cover the ground set")
        label = Func(ground, tuple(CQ(part.block_of[x]) for x in ground))
        return cls(ground, {"blocks": label})

    @classmethod
    def constants(cls, ground: GroundSet) -> "Algebra":
        return cls(ground, {})

    @classmethod
    def full(cls, ground: GroundSet) -> "Algebra":
        return cls.from_partition(ground, [[x] for x in ground])

    @property
    def blocks(self) -> tuple[Subset, ...]:
        return self.partition.blocks

    @property
    def num_blocks(self) -> int:
        return len(self.partition)

    @property
    def dimension(self) -> int:
        return len(self.partition)

    def generator(self, name: str) -> Func:
        for n, g in self.generators:
            if n == name:
                return g
        raise InputError(f"no generator named {name!r}")

    def block_indicator(self, j: int) -> Func:
        return Func.indicator(self.ground, self.partition.blocks[j])

    def basis(self) -> list[Func]:
        return [self.block_indicator(j) for j in range(self.num_blocks)]

    def block_values(self, f: Func) -> tuple[CQ, ...]:
        """Value of a member on each block (in block order)."""
        if not self.contains(f):
            raise DomainError("function is not a member of the algebra")
        return tuple(f.values[min(b)] for b in self.partition.blocks)

    def from_block_values(self, values: Sequence[object]) -> Func:
        if len(values) != self.num_blocks:
            raise InputError(f"expected {self.num_blocks} block values, got {len(values)}")
        vals = [CQ.coerce(v) for v in values]
        return Func(self.ground, tuple(vals[j] for j in self.partition.block_of))

    def contains(self, f: Func) -> bool:
        return contains(self, f)

    def saturation(self, subset: Iterable[int]) -> Subset:
        return self.partition.saturation(subset)

    def interior(self, subset: Iterable[int]) -> Subset:
        return self.partition.interior(subset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.ground == other.ground and self.partition == other.partition

    def __hash__(self) -> int:
        return hash((self.ground, self.partition))

    def __repr__(self) -> str:
        blocks = " | ".join(",".join(self.ground.labels(b)) for b in self.blocks)
        return f"Algebra({blocks})"


def contains(algebra: Algebra, f: Func) -> bool:
    """True iff ``f`` is constant on every block."""
    if f.ground != algebra.ground:
        raise GroundMismatch("function and algebra live on different ground sets")
    return all(len(f.image(b)) == 1 for b in algebra.partition.blocks)


def join(f: Func, g: Func) -> Func:
    """Pointwise maximum of two real-valued functions."""
    fa, ga = _real_pair(f, g)
    return Func(f.ground, tuple(CQ(max(a, b)) for a, b in zip(fa, ga)))


def meet(f: Func, g: Func) -> Func:
    """Pointwise minimum of two real-valued functions."""
    fa, ga = _real_pair(f, g)
    return Func(f.ground, tuple(CQ(min(a, b)) for a, b in zip(fa, ga)))


def lattice_ops(f: Func, g: Func) -> tuple[Func, Func]:
    return join(f, g), meet(f, g)


def _real_pair(f: Func, g: Func) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    f._same_ground(g)
    if not (f.is_real and g.is_real):
        raise DomainError("lattice operations need real-valued functions")
    return f.real_values(), g.real_values()


def critical_radii_sq(f: Func) -> list[Fraction]:
    """Squared radii at which the level sets ``X(f, r)`` can change.

    Returns the distinct positive values of ``|f(x)|^2`` in increasing order,
    preceded by one value strictly below the least of them.  Every set
    ``X(f, r)`` with ``r > 0`` equals ``X(f, sqrt(t))`` for some returned
    ``t``, and consecutive entries represent consecutive intervals of ``r``.
    """
    positive = sorted({a for a in f.abs2_values if a > 0})
    if not positive:
        return [Fraction(1)]
    return [positive[0] / 2] + positive


def in_F0(f: Func) -> bool:
    """True iff every level set of ``f`` is non-empty; on finite sets, iff f has a zero."""
    return any(not v for v in f.values)


def in_F0_by_definition(f: Func) -> bool:
    """The defining quantifier over ``r > 0``, evaluated at the critical radii."""
    return all(
        any(v.abs2() <= t for v in f.values) for t in critical_radii_sq(f)
    )


def invert(algebra: Algebra, f: Func) -> Func:
    """Pointwise ``1/f`` for a member that is bounded away from zero."""
    if not contains(algebra, f):
        raise DomainError("function is not a member of the algebra")
    if in_F0(f):
        raise NotInvertible("not invertible: f vanishes somewhere")
    # 1/f = conj(f) / |f|^2 keeps everything in the algebra's closure ops
    return Func(f.ground, tuple(v.conjugate() / v.abs2() for v in f.values))
