"""Instance files: strict JSON ingestion, canonical serialization, seeded generation.

An instance is::

    {"ground": ["a", "b", ...],
     "functions": {"g1": [["1", "0"], ["1/2", "-1"], ...], ...},
     "generators": ["g1", ...]}

Each value is a pair of rational strings for the real and imaginary parts.
Rationals are written ``p/q`` in lowest terms with ``q > 0`` (``p`` alone
when ``q = 1``).
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import InputError
from .ground import CQ, Algebra, Func, GroundSet

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")

ALPHABET = (CQ(0), CQ(1), CQ(-1), CQ(2), CQ(-2), CQ(Fraction(1, 2)), CQ(0, 1))


def parse_rational(text: object) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text.strip()):
        raise InputError(f"not a rational string: {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_value(item: object) -> CQ:
    if not isinstance(item, list) or len(item) != 2:
        raise InputError(f"complex value must be a two-element array, got {item!r}")
    return CQ(parse_rational(item[0]), parse_rational(item[1]))


def format_value(v: CQ) -> list[str]:
    return [format_rational(v.re), format_rational(v.im)]


def parse_table(ground: GroundSet, table: object, what: str = "function") -> Func:
    if not isinstance(table, list):
        raise InputError(f"{what} must be an array of values")
    if len(table) != len(ground):
        raise InputError(f"{what} has {len(table)} values for {len(ground)} ground elements")
    return Func(ground, tuple(parse_value(v) for v in table))


@dataclass(frozen=True)
class Instance:
    ground: GroundSet
    functions: Mapping[str, Func]
    generators: tuple[str, ...]

    def __post_init__(self) -> None:
        missing = [g for g in self.generators if g not in self.functions]
        if missing:
            raise InputError(f"undefined generator(s): {', '.join(missing)}")
        for name, f in self.functions.items():
            if f.ground != self.ground:
                raise InputError(f"function {name} is on a different ground set")

    def algebra(self) -> Algebra:
        return Algebra(self.ground, {g: self.functions[g] for g in self.generators})

    def function(self, name: str) -> Func:
        if name not in self.functions:
            raise InputError(f"no function named {name!r}")
        return self.functions[name]

    def to_json(self) -> dict[str, Any]:
        return {
            "ground": list(self.ground.elements),
            "functions": {k: [format_value(v) for v in f.values] for k, f in self.functions.items()},
            "generators": list(self.generators),
        }

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()

    @classmethod
    def from_json(cls, obj: object) -> "Instance":
        if not isinstance(obj, dict):
            raise InputError("instance must be a JSON object")
        unknown = set(obj) - {"ground", "functions", "generators"}
        if unknown:
            raise InputError(f"unknown instance keys: {', '.join(sorted(unknown))}")
        labels = obj.get("ground")
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise InputError("ground must be an array of string labels")
        try:
            ground = GroundSet(tuple(labels))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        funcs = obj.get("functions", {})
        if not isinstance(funcs, dict):
            raise InputError("functions must be an object")
        functions = {str(k): parse_table(ground, v, f"function {k}") for k, v in funcs.items()}
        gens = obj.get("generators", [])
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            raise InputError("generators must be an array of function names")
        return cls(ground, functions, tuple(gens))

    @classmethod
    def from_algebra(cls, algebra: Algebra) -> "Instance":
        funcs = dict(algebra.generators)
        return cls(algebra.ground, funcs, tuple(funcs))


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_instance(path: str | Path) -> Instance:
    return Instance.from_json(load_json(path))


def trial_rng(seed: int, trial: int) -> random.Random:
    # string seeds are hashed with sha512, so this is stable across runs and platforms
    return random.Random(f"fspectrum:{seed}:{trial}")


def random_instance(
    rng: random.Random, max_size: int = 5, max_generators: int = 3, size: int | None = None
) -> Instance:
    """Seeded random instance.

    Draw ``n`` uniformly in ``[1, max_size]`` and ``b`` in ``[1, n]``; assign
    the first ``b`` elements of a shuffled ground set to distinct planned
    blocks and the rest uniformly; then draw 0 to ``max_generators``
    generators, each constant on the planned blocks with values from
    ``ALPHABET``.  The kernel partition may come out coarser than planned.
    Passing ``size`` fixes ``n`` instead of drawing it.
    """
    if max_size < 1:
        raise InputError("max size must be at least 1")
    n = size if size is not None else rng.randint(1, max_size)
    b = rng.randint(1, n)
    order = list(range(n))
    rng.shuffle(order)
    owner = [0] * n
    for i, x in enumerate(order):
        owner[x] = i if i < b else rng.randrange(b)
    ground = GroundSet.of_size(n)
    functions = {}
    for k in range(rng.randint(0, max_generators)):
        vals = [rng.choice(ALPHABET) for _ in range(b)]
        functions[f"g{k + 1}"] = Func(ground, tuple(vals[owner[x]] for x in range(n)))
    return Instance(ground, functions, tuple(functions))


def random_coarsening(rng: random.Random, algebra: Algebra) -> Algebra:
    """A subalgebra: merge the blocks of ``algebra`` along a random surjection."""
    b = algebra.num_blocks
    target = rng.randint(1, b)
    order = list(range(b))
    rng.shuffle(order)
    group = [0] * b
    for i, j in enumerate(order):
        group[j] = i if i < target else rng.randrange(target)
    merged: dict[int, set[int]] = {}
    for j, blk in enumerate(algebra.blocks):
        merged.setdefault(group[j], set()).update(blk)
    return Algebra.from_partition(algebra.ground, merged.values())


def random_member(rng: random.Random, algebra: Algebra) -> Func:
    return algebra.from_block_values([rng.choice(ALPHABET) for _ in range(algebra.num_blocks)])


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=repr)
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, CQ):
        return format_value(obj)
    return str(obj)


def dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_jsonable)


def values_json(values: Sequence[CQ]) -> list[list[str]]:
    return [format_value(v) for v in values]
