"""The theorem battery run by ``verify``.

Every check runs on one instance and returns ``None`` (pass), ``SKIP`` or a
counterexample dict.  Internal randomness (test members, targets,
coarsenings) is seeded from the report seed and the instance digest, so a
failure replays from the instance file and the seed alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import NotInvertible, TheoremViolation
from .extension import SpectrumFunc, approximate, extend, gamma_check
from .filters import enumerate_F_filters, ultrafilter_characterizations
from .ground import (
    CQ,
    Algebra,
    Func,
    critical_radii_sq,
    exact_sqrt,
    in_F0,
    in_F0_by_definition,
    invert,
)
from .ideals import (
    Ideal,
    enumerate_ideals,
    filter_from_ideal,
    ideal_from_filter,
    ideal_in_F0,
    k_truncation,
    maximal_ideal_intersection,
    spectrum_homeo,
    three_cond_check,
    truncation_error_sq,
)
from .instance import Instance, random_coarsening, random_member, trial_rng, random_instance
from .morphisms import (
    AlgebraPair,
    compose,
    embedding_check,
    gelfand_naimark_check,
    quotient_map,
    quotient_space_check,
    stone_weierstrass_check,
    surjpts_check,
)
from .oracle import (
    CLOSURE_MAX_SIZE,
    FAMILY_MAX_SIZE,
    FILTER_MAX_SIZE,
    brute_F_family,
    brute_F_filters,
    brute_ideal_closure,
    brute_subalgebra_closure,
    enumerate_all_filters,
)
from .spectrum import SpectrumSpace, build_spectrum, verify_space

SKIP = "skipped"
APPROX_RADII = (Fraction(1, 3), Fraction(1, 5), Fraction(1, 10))


@dataclass
class Context:
    instance: Instance
    algebra: Algebra
    space: SpectrumSpace
    rng: random.Random

    def members(self, count: int = 4) -> list[Func]:
        alg = self.algebra
        return [g for _, g in alg.generators] + alg.basis() + [random_member(self.rng, alg) for _ in range(count)]


def _check_kernel_partition(ctx: Context) -> Any:
    alg = ctx.algebra
    n = len(alg.ground)
    if n > CLOSURE_MAX_SIZE:
        return SKIP
    member, dim = brute_subalgebra_closure(alg.ground, [g for _, g in alg.generators])
    if dim != alg.dimension:
        return {"closure_dimension": dim, "blocks": alg.num_blocks}
    probes = ctx.members() + [
        Func(alg.ground, tuple(ctx.rng.choice((CQ(0), CQ(1), CQ(0, 1))) for _ in range(n))) for _ in range(6)
    ]
    for f in probes:
        if member(f) != alg.contains(f):
            return {"function": [str(v) for v in f.values], "closure": member(f), "fast": alg.contains(f)}
    return None


def _check_F_filters(ctx: Context) -> Any:
    alg = ctx.algebra
    fast = enumerate_F_filters(alg)
    if len(fast) != (1 << alg.num_blocks) - 1:
        return {"count": len(fast), "blocks": alg.num_blocks}
    n = len(alg.ground)
    if n <= FILTER_MAX_SIZE:
        brute = {phi.generator for phi in brute_F_filters(alg)}
        quick = {phi.generator for phi in fast}
        if brute != quick:
            return {"only_brute": sorted(map(sorted, brute - quick)), "only_fast": sorted(map(sorted, quick - brute))}
    elif n <= FAMILY_MAX_SIZE:
        for phi in fast:
            if not brute_F_family(alg, phi.family()):
                return {"generator": sorted(phi.generator)}
    return None


def _check_ultrafilters(ctx: Context) -> Any:
    alg = ctx.algebra
    if len(alg.ground) <= FILTER_MAX_SIZE:
        candidates = [(phi.generator, phi.member_sets) for phi in enumerate_all_filters(alg.ground)]
    else:
        candidates = [(phi.generator, phi) for phi in enumerate_F_filters(alg)]
    blocks = set(alg.blocks)
    for gen, cand in candidates:
        verdicts = ultrafilter_characterizations(alg, cand)
        expected = gen in blocks
        if not verdicts.agree or verdicts[0] != expected:
            return {"generator": sorted(gen), "verdicts": list(verdicts), "expected": expected}
    return None


def _check_gamma(ctx: Context) -> Any:
    report = gamma_check(ctx.space, ctx.members())
    return None if report.passed else report.counterexample or {"report": "failed"}


def _check_extension(ctx: Context) -> Any:
    for f in ctx.members():
        fhat = extend(ctx.space, f)
        if fhat.pullback() != f:
            return {"function": [str(v) for v in f.values]}
    return None


def _random_target(rng: random.Random, space: SpectrumSpace, complex_ok: bool) -> SpectrumFunc:
    vals = []
    for _ in range(len(space)):
        re = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
        im = Fraction(rng.randint(-8, 8), rng.randint(1, 8)) if complex_ok else Fraction(0)
        vals.append(CQ(re, im))
    return SpectrumFunc(space, tuple(vals))


def normalized_target(rng: random.Random, space: SpectrumSpace) -> SpectrumFunc:
    """Random positive real target with sup norm exactly 1."""
    vals = [Fraction(rng.randint(0, 12), 12) for _ in range(len(space))]
    vals[rng.randrange(len(vals))] = Fraction(1)
    return SpectrumFunc(space, tuple(CQ(v) for v in vals))


def check_approximation(space: SpectrumSpace, g: SpectrumFunc, r: Fraction, reduce: bool) -> Any:
    f, trace = approximate(space, g, r, reduce=reduce)
    if not space.algebra.contains(f):
        return {"radius": str(r), "reason": "result not in the algebra"}
    err = (extend(space, f) - g).sup_norm_sq()
    if err > r * r or err != trace.error_sq:
        return {"radius": str(r), "error_sq": str(err)}
    if not trace.resolution_ok():
        return {"radius": str(r), "n": trace.n, "reason": "1/n > r/3"}
    if not trace.disjoint_levels():
        return {"radius": str(r), "reason": "A_k meets A_j with j >= k+3"}
    return None


def _check_approximation(ctx: Context) -> Any:
    for r in APPROX_RADII:
        for g, reduce in ((normalized_target(ctx.rng, ctx.space), False), (_random_target(ctx.rng, ctx.space, True), True)):
            bad = check_approximation(ctx.space, g, r, reduce)
            if bad:
                bad["target"] = [str(v) for v in g.values]
                return bad
    return None


def _check_galois(ctx: Context) -> Any:
    alg = ctx.algebra
    ideals = enumerate_ideals(alg)
    filters = enumerate_F_filters(alg)
    if len(ideals) != len(filters):
        return {"ideals": len(ideals), "filters": len(filters)}
    for i in ideals:
        if ideal_from_filter(filter_from_ideal(i)) != i:
            return {"ideal": sorted(i.vanishing_blocks)}
    for phi in filters:
        if filter_from_ideal(ideal_from_filter(phi)) != phi:
            return {"filter": sorted(phi.generator)}
    for i in ideals:
        for j in ideals:
            # larger ideal, larger filter
            if (i <= j) != (filter_from_ideal(j).generator <= filter_from_ideal(i).generator):
                return {"I": sorted(i.vanishing_blocks), "J": sorted(j.vanishing_blocks)}
    if not all(ideal_in_F0(i) for i in ideals):
        return {"reason": "an ideal leaves F0"}
    return None


def _check_three_conditions(ctx: Context) -> Any:
    alg = ctx.algebra
    tests = ctx.members(2) + [Func.constant(alg.ground, 0), Func.constant(alg.ground, 1)]
    for ideal in enumerate_ideals(alg):
        for f in tests:
            verdict = three_cond_check(ctx.space, ideal, f)
            if not verdict.agree:
                return {"ideal": sorted(ideal.vanishing_blocks), "function": [str(v) for v in f.values], "verdicts": list(verdict)}
    return None


def _check_ideal_closure(ctx: Context) -> Any:
    alg = ctx.algebra
    if len(alg.ground) > CLOSURE_MAX_SIZE:
        return SKIP
    probes = ctx.members()
    for ideal in enumerate_ideals(alg):
        seeds = [f for f in probes if f in ideal] or [Func.constant(alg.ground, 0)]
        member, dim = brute_ideal_closure(alg, seeds)
        # the ideal generated by the seeds vanishes exactly on their common zero blocks
        common = frozenset(
            j for j in range(alg.num_blocks) if all(not alg.block_values(s)[j] for s in seeds)
        )
        generated = Ideal(alg, common)
        if dim != alg.num_blocks - len(common):
            return {"ideal": sorted(ideal.vanishing_blocks), "dimension": dim}
        for f in probes:
            if member(f) != (f in generated):
                return {"ideal": sorted(ideal.vanishing_blocks), "function": [str(v) for v in f.values]}
    return None


def _check_truncation(ctx: Context) -> Any:
    for f in ctx.members():
        k = k_truncation(f)
        if any(not (0 <= v.re <= 1 and v.is_real) for v in k.values):
            return {"function": [str(v) for v in f.values], "reason": "k leaves [0, 1]"}
        if not ctx.algebra.contains(k) or any(bool(a) != bool(b) for a, b in zip(k.values, f.values)):
            return {"function": [str(v) for v in f.values], "reason": "k not in F or Z(k) != Z(f)"}
        radii = {Fraction(1, 2), Fraction(1), Fraction(2)}
        radii |= {r for r in map(exact_sqrt, critical_radii_sq(f)) if r is not None}
        for r in sorted(radii):
            # h = f/r has X(h, 1) = X(f, r)
            h = f * CQ(1 / r)
            if truncation_error_sq(f, h) > r * r:
                return {"function": [str(v) for v in f.values], "r": str(r)}
    return None


def _check_characters(ctx: Context) -> Any:
    mapping = spectrum_homeo(ctx.algebra)
    if len(mapping) != ctx.algebra.num_blocks:
        return {"characters": len(mapping)}
    return None


def _check_maximal_intersection(ctx: Context) -> Any:
    for ideal in enumerate_ideals(ctx.algebra):
        if not maximal_ideal_intersection(ctx.algebra, ideal):
            return {"ideal": sorted(ideal.vanishing_blocks)}
    return None


def _check_invertibility(ctx: Context) -> Any:
    one = Func.constant(ctx.algebra.ground, 1)
    for f in ctx.members():
        if in_F0(f) != in_F0_by_definition(f):
            return {"function": [str(v) for v in f.values], "reason": "F0 tests disagree"}
        try:
            g = invert(ctx.algebra, f)
        except NotInvertible:
            if not in_F0(f):
                return {"function": [str(v) for v in f.values], "reason": "refused an invertible member"}
            continue
        if in_F0(f) or f * g != one or invert(ctx.algebra, g) != f or not ctx.algebra.contains(g):
            return {"function": [str(v) for v in f.values], "reason": "bad inverse"}
    return None


def check_refinement(fine: Algebra, coarse: Algebra, coarsest: Algebra) -> Any:
    """Quotient-map laws for fine ⊇ coarse ⊇ coarsest."""
    pair = AlgebraPair(fine, coarse)
    fmap = quotient_map(pair)
    for p in range(len(pair.fine_space)):
        for q in range(len(pair.coarse_space)):
            v = surjpts_check(pair, p, q)
            if not v.agree:
                return {"p": p, "q": q, "verdicts": list(v)}
    if not quotient_space_check(pair):
        return {"reason": "quotient space is not homeomorphic to the coarse spectrum"}
    outer = quotient_map(AlgebraPair(coarse, coarsest))
    direct = quotient_map(AlgebraPair(fine, coarsest))
    if compose(outer, fmap) != direct:
        return {"reason": "composition of quotient maps differs from the direct map"}
    return None


def _check_morphisms(ctx: Context) -> Any:
    coarse = random_coarsening(ctx.rng, ctx.algebra)
    coarsest = random_coarsening(ctx.rng, coarse)
    bad = check_refinement(ctx.algebra, coarse, coarsest)
    if bad:
        bad["coarse_blocks"] = [sorted(b) for b in coarse.blocks]
        bad["coarsest_blocks"] = [sorted(b) for b in coarsest.blocks]
    return bad


def _check_corollaries(ctx: Context) -> Any:
    alg = ctx.algebra
    embedding_check(alg)
    stone_weierstrass_check(alg)
    twin = Algebra.from_partition(alg.ground, alg.blocks)
    if not gelfand_naimark_check(alg, twin):
        return {"reason": "algebra not isomorphic to its own block algebra"}
    other = random_coarsening(ctx.rng, alg)
    if gelfand_naimark_check(alg, other) != (other.num_blocks == alg.num_blocks):
        return {"other_blocks": [sorted(b) for b in other.blocks]}
    return None


def _spectrum_checks(ctx: Context) -> dict[str, Any]:
    return {f"spectrum_{r.name}": r.counterexample if not r.passed else None for r in verify_space(ctx.space)}


CHECKS: list[tuple[str, Callable[[Context], Any]]] = [
    ("kernel_partition", _check_kernel_partition),
    ("F_filter_enumeration", _check_F_filters),
    ("ultrafilter_characterization", _check_ultrafilters),
    ("extension", _check_extension),
    ("gamma_isomorphism", _check_gamma),
    ("approximation", _check_approximation),
    ("ideal_filter_galois", _check_galois),
    ("ideal_three_conditions", _check_three_conditions),
    ("ideal_closure", _check_ideal_closure),
    ("k_truncation", _check_truncation),
    ("characters", _check_characters),
    ("maximal_ideal_intersection", _check_maximal_intersection),
    ("invertibility", _check_invertibility),
    ("quotient_maps", _check_morphisms),
    ("classical_corollaries", _check_corollaries),
]


def _entry(name: str, outcome: Any, instance: Instance, seed: int, digest: str) -> dict[str, Any]:
    entry: dict[str, Any] = {"theorem": name, "seed": seed, "instance_digest": digest}
    if outcome is None:
        entry["status"] = "pass"
    elif outcome == SKIP:
        entry["status"] = SKIP
    else:
        entry["status"] = "fail"
        entry["counterexample"] = {"detail": outcome, "instance": instance.to_json(), "seed": seed}
    return entry


def run_battery(instance: Instance, seed: int = 0) -> list[dict[str, Any]]:
    digest = instance.digest()
    algebra = instance.algebra()
    ctx = Context(instance, algebra, build_spectrum(algebra), random.Random(f"battery:{seed}:{digest}"))
    entries = []

    def guarded(fn: Callable[[], Any]) -> Any:
        try:
            return fn()
        except TheoremViolation as exc:
            return {"violation": str(exc), "data": exc.counterexample}

    spectrum = guarded(lambda: _spectrum_checks(ctx))
    for name, fn in CHECKS:
        entries.append(_entry(name, guarded(lambda fn=fn: fn(ctx)), instance, seed, digest))
        if name == "extension":
            if isinstance(spectrum, dict) and "violation" not in spectrum:
                for sname, outcome in spectrum.items():
                    entries.append(_entry(sname, outcome, instance, seed, digest))
            else:
                entries.append(_entry("spectrum", spectrum, instance, seed, digest))
    return entries


def verify_instance(instance: Instance, seed: int = 0) -> dict[str, Any]:
    entries = run_battery(instance, seed)
    return _report(seed, [{"trial": 0, **e} for e in entries])


def verify_random(seed: int, trials: int, max_size: int) -> dict[str, Any]:
    entries = []
    for t in range(trials):
        inst = random_instance(trial_rng(seed, t), max_size)
        entries.extend({"trial": t, **e} for e in run_battery(inst, seed))
    return _report(seed, entries)


def _report(seed: int, entries: list[dict[str, Any]]) -> dict[str, Any]:
    entries.sort(key=lambda e: e["trial"])
    counts = {s: sum(1 for e in entries if e["status"] == s) for s in ("pass", "fail", SKIP)}
    return {"seed": seed, "summary": counts, "passed": counts["fail"] == 0, "entries": entries}
