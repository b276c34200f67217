"""Extensions of members of F to δX and the constructive inverse of f ↦ f̂."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .errors import DomainError, GroundMismatch, InputError, TheoremViolation
from .filters import principal_family
from .ground import CQ, Algebra, Func, GroundSet, contains, exact_sqrt, join
from .spectrum import SpectrumSpace, build_spectrum, closure_eA


EXPLICIT_MEMBERS_MAX_FREE = 4


@dataclass(frozen=True, eq=False)
class SpectrumFunc:
    space: SpectrumSpace
    values: tuple[CQ, ...]

    def __post_init__(self) -> None:
        vals = tuple(CQ.coerce(v) for v in self.values)
        if len(vals) != len(self.space):
            raise InputError(f"expected {len(self.space)} point values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def __call__(self, p: int) -> CQ:
        return self.values[p]

    def pullback(self) -> Func:
        """``g ∘ e`` on the ground set."""
        return Func(self.space.algebra.ground, tuple(self.values[p] for p in self.space.eval))

    def sup_norm_sq(self) -> Fraction:
        return max(v.abs2() for v in self.values)

    @property
    def is_real(self) -> bool:
        return all(v.is_real for v in self.values)

    def _zip(self, other: "SpectrumFunc") -> zip:
        if other.space is not self.space and other.space.algebra != self.space.algebra:
            raise GroundMismatch("spectrum functions on different spaces")
        return zip(self.values, other.values)

    def __add__(self, other: "SpectrumFunc") -> "SpectrumFunc":
        return SpectrumFunc(self.space, tuple(a + b for a, b in self._zip(other)))

    def __sub__(self, other: "SpectrumFunc") -> "SpectrumFunc":
        return SpectrumFunc(self.space, tuple(a - b for a, b in self._zip(other)))

    def __mul__(self, other: object) -> "SpectrumFunc":
        if isinstance(other, SpectrumFunc):
            return SpectrumFunc(self.space, tuple(a * b for a, b in self._zip(other)))
        c = CQ.coerce(other)
        return SpectrumFunc(self.space, tuple(a * c for a in self.values))

    __rmul__ = __mul__

    def conjugate(self) -> "SpectrumFunc":
        return SpectrumFunc(self.space, tuple(a.conjugate() for a in self.values))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectrumFunc):
            return NotImplemented
        return self.space.algebra == other.space.algebra and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return "SpectrumFunc(" + ", ".join(str(v) for v in self.values) + ")"


def extend(space: SpectrumSpace, f: Func) -> SpectrumFunc:
    """The unique continuous ``f̂`` on δX with ``f̂ ∘ e = f``.

    ``f̂(p)`` is read off ``⋂_{A ∈ p} f(A)``; the members of ``p`` are the
    supersets of its block, so the intersection is ``f(block)``, which must
    be a single value.
    """
    alg = space.algebra
    if f.ground != alg.ground:
        raise GroundMismatch("function and spectrum live on different ground sets")
    if not contains(alg, f):
        raise DomainError("function is not a member of the algebra")
    vals = []
    for p in range(len(space)):
        blk = space.block(p)
        c = f.image(blk)
        # the literal intersection over every member; skipped when p has many members
        if len(alg.ground) - len(blk) <= EXPLICIT_MEMBERS_MAX_FREE:
            for a in principal_family(alg.ground, blk):
                c = c & f.image(a)
        if len(c) != 1:
            raise TheoremViolation("extension is not single-valued", {"point": p})
        (v,) = c
        vals.append(v)
    fhat = SpectrumFunc(space, tuple(vals))
    if fhat.pullback() != f:
        raise TheoremViolation("f̂ ∘ e differs from f")
    return fhat


@dataclass
class GammaReport:
    linear: bool
    multiplicative: bool
    conjugation: bool
    isometric: bool
    unital: bool
    surjective: bool
    dimension: int
    points: int
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return all(
            (self.linear, self.multiplicative, self.conjugation, self.isometric, self.unital, self.surjective)
        )


def sample_members(algebra: Algebra, count: int = 6, seed: int = 0) -> list[Func]:
    """Generators, block indicators, the unit and a few seeded complex members."""
    rng = random.Random(seed)
    alphabet = [CQ(0), CQ(1), CQ(-1), CQ(2), CQ(Fraction(1, 2)), CQ(0, 1), CQ(1, -2)]
    out = [g for _, g in algebra.generators]
    out += algebra.basis()
    out.append(Func.constant(algebra.ground, 1))
    for _ in range(count):
        out.append(algebra.from_block_values([rng.choice(alphabet) for _ in range(algebra.num_blocks)]))
    return out


def gamma_check(space: SpectrumSpace, members: Sequence[Func] | None = None) -> GammaReport:
    """Check that ``f ↦ f̂`` is an isometric unital *-isomorphism onto C(δX)."""
    alg = space.algebra
    members = list(members) if members is not None else sample_members(alg)
    hats = [extend(space, f) for f in members]
    bad: dict | None = None
    linear = multiplicative = conj = iso = True
    alpha = CQ(Fraction(2, 3), -1)
    for i, (f, fh) in enumerate(zip(members, hats)):
        if extend(space, f.conjugate()) != fh.conjugate():
            conj = False
            bad = bad or {"law": "conjugation", "f": i}
        if fh.sup_norm_sq() != f.sup_norm_sq():
            iso = False
            bad = bad or {"law": "isometry", "f": i}
        for j, (g, gh) in enumerate(zip(members, hats)):
            if extend(space, f + g * alpha) != fh + gh * alpha:
                linear = False
                bad = bad or {"law": "linearity", "f": i, "g": j}
            if extend(space, f * g) != fh * gh:
                multiplicative = False
                bad = bad or {"law": "multiplicativity", "f": i, "g": j}
    one = extend(space, Func.constant(alg.ground, 1))
    unital = all(v == 1 for v in one.values)
    # onto: every point indicator (a basis of C(δX)) has a preimage
    surjective = alg.dimension == len(space)
    for p in range(len(space)):
        target = SpectrumFunc(space, tuple(CQ(1 if q == p else 0) for q in range(len(space))))
        pre = target.pullback()
        if not contains(alg, pre) or extend(space, pre) != target:
            surjective = False
            bad = bad or {"law": "surjectivity", "point": p}
    return GammaReport(linear, multiplicative, conj, iso, unital, surjective, alg.dimension, len(space), bad)


def rset(space: SpectrumSpace, p: int, g: SpectrumFunc, r: Fraction | int) -> frozenset[int]:
    """``{x : |g(p) - g(e(x))| <= r}``, checked to be a member of ``p``."""
    r = Fraction(r)
    if r <= 0:
        raise DomainError("r must be positive")
    gp = g.values[p]
    out = frozenset(x for x in space.algebra.ground if (gp - g.values[space.eval[x]]).abs2() <= r * r)
    if not space.block(p) <= out:
        raise TheoremViolation("r-set is not a member of the ultrafilter", {"point": p, "r": str(r)})
    return out


@dataclass
class LevelRecord:
    k: int
    interval: tuple[Fraction, Fraction]
    A: frozenset[int]
    C: frozenset[int]
    bumps: tuple[tuple[int, Fraction], ...]


@dataclass
class ApproxTrace:
    radius: Fraction
    inner_radius: Fraction
    n: int
    levels: list[LevelRecord]
    result: Func
    error_sq: Fraction
    reduction: str = "core"
    shift: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)
    parts: dict[str, "ApproxTrace"] = field(default_factory=dict)

    @property
    def error(self) -> Fraction | None:
        """Achieved sup-norm error when it is rational, else ``None``."""
        return exact_sqrt(self.error_sq)

    @property
    def within_bound(self) -> bool:
        return self.error_sq <= self.radius * self.radius

    def disjoint_levels(self) -> bool:
        """``A_k ∩ A_j = ∅`` whenever ``j >= k + 3``, in this trace and its parts."""
        for a in self.levels:
            for b in self.levels:
                if b.k >= a.k + 3 and a.A & b.A:
                    return False
        return all(t.disjoint_levels() for t in self.parts.values())

    def resolution_ok(self) -> bool:
        """``1/n <= inner_radius/3`` for every core run in the trace."""
        ok = self.n == 0 or Fraction(1, self.n) <= self.inner_radius / 3
        return ok and all(t.resolution_ok() for t in self.parts.values())


def levels_for(r: Fraction) -> int:
    """Smallest ``n`` with ``1/n <= r/3``."""
    return math.ceil(Fraction(3) / r)


def _approximate_core(space: SpectrumSpace, g: SpectrumFunc, r: Fraction) -> ApproxTrace:
    alg = space.algebra
    ground = alg.ground
    gv = [v.re for v in g.values]
    n = levels_for(r)
    zero = Func.constant(ground, 0)
    levels = []
    f = zero
    for k in range(1, n + 1):
        lo, hi = Fraction(k - 1, n), Fraction(k, n)
        a_k = frozenset(x for x in ground if Fraction(k - 2, n) < gv[space.eval[x]] < Fraction(k + 1, n))
        c_k = frozenset(p for p in range(len(space)) if lo <= gv[p] <= hi)
        f_k = zero
        bumps = []
        for p in sorted(c_k):
            # A_k contains the r-set of p at radius 1/(2n), hence A_k ∈ p
            if not rset(space, p, g, Fraction(1, 2 * n)) <= a_k:
                raise TheoremViolation("A_k is not a member of p ∈ C_k", {"k": k, "point": p})
            f_p = alg.block_indicator(p) * hi
            if any(f_p.values[x] for x in ground.all - a_k):
                raise TheoremViolation("bump does not vanish off A_k", {"k": k, "point": p})
            bumps.append((p, hi))
            f_k = join(f_k, f_p)
        for x in ground:
            if space.eval[x] in c_k and f_k.values[x] != hi:
                raise TheoremViolation("f_k is not k/n on e^-1(C_k)", {"k": k, "x": x})
        levels.append(LevelRecord(k, (lo, hi), a_k, c_k, tuple(bumps)))
        f = join(f, f_k)
    err = max((f.values[x] - g.values[space.eval[x]]).abs2() for x in ground)
    return ApproxTrace(r, r, n, levels, f, err)


def approximate(
    space: SpectrumSpace, g: SpectrumFunc, r: Fraction | int, *, reduce: bool = False
) -> tuple[Func, ApproxTrace]:
    """Find ``f ∈ F`` with ``||f̂ - g|| <= r`` by the level-set construction.

    The core construction needs ``g`` real, positive, with ``||g|| = 1``.
    With ``reduce=True`` other targets are brought to that form: constants
    are returned as they are, real ``g`` is shifted by ``-min g`` and scaled
    to norm one (inner radius ``r / scale``), and complex ``g`` is handled
    part by part with radius ``r/2`` each.
    """
    r = Fraction(r)
    if r <= 0:
        raise DomainError("r must be positive")
    if g.space.algebra != space.algebra:
        raise GroundMismatch("target lives on a different spectrum")
    core_ok = g.is_real and all(v.re >= 0 for v in g.values) and g.sup_norm_sq() == 1
    if core_ok:
        trace = _approximate_core(space, g, r)
    elif not reduce:
        raise DomainError("core path needs a positive real target with sup norm 1; pass reduce=True")
    else:
        trace = _approximate_reduced(space, g, r)
    if not trace.within_bound:
        raise TheoremViolation(
            "approximation missed its radius",
            {"radius": str(r), "error_sq": str(trace.error_sq)},
        )
    return trace.result, trace


def _approximate_reduced(space: SpectrumSpace, g: SpectrumFunc, r: Fraction) -> ApproxTrace:
    ground = space.algebra.ground
    if len(set(g.values)) == 1:
        c = g.values[0]
        f = Func.constant(ground, c)
        return ApproxTrace(r, r, 0, [], f, Fraction(0), reduction="constant")
    if not g.is_real:
        re = SpectrumFunc(space, tuple(CQ(v.re) for v in g.values))
        im = SpectrumFunc(space, tuple(CQ(v.im) for v in g.values))
        tr = _approximate_reduced(space, re, r / 2)
        ti = _approximate_reduced(space, im, r / 2)
        f = tr.result + ti.result * CQ(0, 1)
        err = max((f.values[x] - g.values[space.eval[x]]).abs2() for x in ground)
        return ApproxTrace(
            r, r / 2, 0, [], f, err, reduction="complex", parts={"re": tr, "im": ti}
        )
    vals = [v.re for v in g.values]
    shift = min(vals)
    scale = max(vals) - shift
    h = SpectrumFunc(space, tuple(CQ((v - shift) / scale) for v in vals))
    inner = _approximate_core(space, h, r / scale)
    f = inner.result * scale + shift
    err = max((f.values[x] - g.values[space.eval[x]]).abs2() for x in ground)
    return ApproxTrace(
        r, r / scale, inner.n, inner.levels, f, err,
        reduction="shift-scale", shift=shift, scale=scale, parts={"core": inner},
    )


@dataclass
class Factorization:
    algebra: Algebra
    homeo: dict[int, Hashable]


def dense_image_factorization(
    ground: GroundSet, codomain: Sequence[Hashable], eps: Mapping[str, Hashable] | Sequence[Hashable]
) -> Factorization:
    """Induced algebra ``{h ∘ ε}`` and the homeomorphism ``F: δX → Y`` with ``F ∘ e = ε``."""
    ys = list(codomain)
    if len(set(ys)) != len(ys):
        raise InputError("codomain labels must be distinct")
    if isinstance(eps, Mapping):
        values = [eps[lab] for lab in ground.elements]
    else:
        values = list(eps)
    if len(values) != len(ground):
        raise GroundMismatch("ε must be defined on every ground element")
    pos = {y: i for i, y in enumerate(ys)}
    for v in values:
        if v not in pos:
            raise InputError(f"ε takes value {v!r} outside the codomain")
    if {pos[v] for v in values} != set(range(len(ys))):
        raise DomainError("image not dense: ε is not onto Y")
    # h = index of the point in Y separates Y, so {h ∘ ε} has the fibres as blocks
    algebra = Algebra(ground, {"eps": Func(ground, tuple(CQ(pos[v]) for v in values))})
    space = build_spectrum(algebra)
    homeo: dict[int, Hashable] = {}
    for p in range(len(space)):
        c = {values[x] for x in space.block(p)}
        # cl ε(A) over members A of p: each contains the block, a fibre
        if len(c) != 1:
            raise TheoremViolation("⋂ cl ε(A) is not a single point", {"point": p})
        (homeo[p],) = c
    if len(set(homeo.values())) != len(ys):
        raise TheoremViolation("F is not a bijection onto Y")
    for x in ground:
        if homeo[space.eval[x]] != values[x]:
            raise TheoremViolation("F ∘ e differs from ε", {"x": x})
    # continuity at each point: the basic neighbourhood of the block maps into {F(p)}
    for p in range(len(space)):
        if {homeo[q] for q in closure_eA(space, space.block(p))} != {homeo[p]}:
            raise TheoremViolation("F is not continuous", {"point": p})
    return Factorization(algebra, homeo)
