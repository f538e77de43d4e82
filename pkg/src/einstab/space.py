"""Homogeneous spaces reduced to summand dimensions, Killing coefficients and
structural constants.

A space is described by ``r`` isotropy summands with dimensions ``d_k``,
coefficients ``b_k`` of minus the Killing form relative to the background
inner product ``Q``, and the fully symmetric structural constants ``[ijk]``.
Exact values are carried as :class:`fractions.Fraction`; anything touching a
``float`` degrades to ``float`` by ordinary Python arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Mapping, Sequence, Union

Scalar = Union[Fraction, float]


class DescriptorError(ValueError):
    """Base class for descriptor problems."""


class DescriptorParseError(DescriptorError):
    """The file is not a well-formed descriptor document."""


class DescriptorValidationError(DescriptorError):
    """A descriptor field violates the data model.

    ``field`` names the offending key (``dims``, ``constants[3]`` ...).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def as_scalar(value) -> Scalar:
    """Coerce ints and rational strings to ``Fraction``; floats stay floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def exact_sqrt(value: Scalar) -> Scalar:
    """Square root, exact when ``value`` is the square of a rational."""
    if is_exact(value):
        q = Fraction(value)
        if q < 0:
            raise ValueError("negative radicand")
        num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if num * num == q.numerator and den * den == q.denominator:
            return Fraction(num, den)
        return math.sqrt(q)
    return math.sqrt(value)


def _distinct_permutations(triple: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    return sorted(set(itertools.permutations(triple)))


@dataclass(frozen=True)
class StructureConstants:
    """Nonnegative ``[ijk]`` stored once per sorted 1-based triple.

    Absent triples are zero. Consumers that need the ordered sums of the
    curvature formulas use :meth:`ordered`, which yields each distinct
    permutation once (so ``[123]`` appears six times, ``[112]`` three times
    and ``[111]`` once).
    """

    r: int
    entries: Mapping[tuple[int, int, int], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 1:
            raise DescriptorValidationError("r", "must be a positive integer")
        clean = {}
        for key, value in dict(self.entries).items():
            triple = tuple(sorted(int(i) for i in key))
            if len(triple) != 3:
                raise DescriptorValidationError("constants", f"{key} is not a triple")
            if triple[0] < 1 or triple[2] > self.r:
                raise DescriptorValidationError(
                    "constants", f"triple {list(triple)} out of range 1..{self.r}"
                )
            if triple in clean:
                raise DescriptorValidationError("constants", f"duplicate triple {list(triple)}")
            value = as_scalar(value)
            if value < 0:
                raise DescriptorValidationError(
                    "constants", f"triple {list(triple)} has negative value {value}"
                )
            if value != 0:
                clean[triple] = value
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, key) -> Scalar:
        return self.entries.get(tuple(sorted(key)), Fraction(0))

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.r == other.r and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.r, tuple(self.entries.items())))

    def ordered(self) -> Iterator[tuple[int, int, int, Scalar]]:
        """Yield ``(i, j, k, [ijk])`` over ordered 0-based index triples."""
        for triple, value in self.entries.items():
            for i, j, k in _distinct_permutations(triple):
                yield i - 1, j - 1, k - 1, value

    def relabel(self, perm: Sequence[int]) -> StructureConstants:
        """Summand ``k`` (1-based) becomes summand ``perm[k-1]``."""
        return StructureConstants(
            self.r, {tuple(perm[i - 1] for i in t): v for t, v in self.entries.items()}
        )


@dataclass(frozen=True)
class SpaceDescriptor:
    name: str
    dims: tuple[int, ...]
    killing: tuple[Scalar, ...]
    constants: StructureConstants
    trivial_dim: int = 0
    notes: str = ""

    def __post_init__(self):
        dims = tuple(self.dims)
        killing = tuple(as_scalar(b) for b in self.killing)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "killing", killing)
        if len(dims) == 0:
            raise DescriptorValidationError("dims", "at least one summand is required")
        for k, d in enumerate(dims):
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise DescriptorValidationError(f"dims[{k}]", f"{d!r} is not a positive integer")
        if len(killing) != len(dims):
            raise DescriptorValidationError(
                "killing", f"length {len(killing)} does not match r={len(dims)}"
            )
        for k, b in enumerate(killing):
            if b < 0:
                raise DescriptorValidationError(f"killing[{k}]", f"negative value {b}")
        if self.constants.r != len(dims):
            raise DescriptorValidationError(
                "constants", f"r={self.constants.r} does not match r={len(dims)}"
            )
        if sum(dims) < 2:
            raise DescriptorValidationError("dims", "total dimension must be at least 2")
        if isinstance(self.trivial_dim, bool) or not isinstance(self.trivial_dim, int) \
                or not 0 <= self.trivial_dim <= max(len(dims) - 1, 0):
            raise DescriptorValidationError("trivial_dim", f"{self.trivial_dim!r} out of range")
        for k, b in enumerate(killing):
            if b == 0 and any(k + 1 in t for t, _ in self.constants):
                warnings.warn(
                    f"{self.name}: summand {k + 1} has b_k=0 but appears in nonzero constants",
                    stacklevel=2,
                )

    @property
    def r(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    def a_values(self) -> tuple[Scalar, ...]:
        """``[123]/d_k`` for a three-summand space with only ``[123]``."""
        c = self.constants[(1, 2, 3)]
        return tuple(c / d for d in self.dims)


@dataclass(frozen=True)
class DiagonalMetric:
    """``g = x_1 Q|p_1 + ... + x_r Q|p_r``."""

    x: tuple[Scalar, ...]

    def __post_init__(self):
        x = tuple(as_scalar(v) for v in self.x)
        if not x:
            raise ValueError("metric needs at least one coefficient")
        for k, v in enumerate(x):
            if not v > 0:
                raise ValueError(f"metric coefficient x_{k + 1}={v} is not positive")
        object.__setattr__(self, "x", x)

    def __len__(self):
        return len(self.x)

    def __iter__(self):
        return iter(self.x)

    def __getitem__(self, k):
        return self.x[k]

    def scaled(self, c) -> DiagonalMetric:
        return DiagonalMetric(tuple(c * v for v in self.x))

    def gauge(self) -> DiagonalMetric:
        """Homothety representative with ``x_1 = 1``."""
        return self.scaled(1 / self.x[0])

    def as_float(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.x)


def metric(*x) -> DiagonalMetric:
    if len(x) == 1 and not isinstance(x[0], (int, float, Fraction, str)):
        x = tuple(x[0])
    return DiagonalMetric(tuple(x))


# --- descriptor files -------------------------------------------------------

def _parse_scalar(value, where: str) -> Scalar:
    if isinstance(value, bool):
        raise DescriptorParseError(f"{where}: boolean is not a number")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DescriptorParseError(f"{where}: bad rational {value!r}") from exc
    if isinstance(value, (int, float)):
        return float(value)
    raise DescriptorParseError(f"{where}: expected 'p/q' string or number, got {value!r}")


def _dump_scalar(value: Scalar):
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def descriptor_from_dict(doc: Mapping) -> SpaceDescriptor:
    if not isinstance(doc, Mapping):
        raise DescriptorParseError("top level must be an object")
    for key in ("name", "r", "dims", "killing"):
        if key not in doc:
            raise DescriptorParseError(f"missing key {key!r}")
    unknown = set(doc) - {"name", "r", "dims", "killing", "constants", "trivial_dim", "notes"}
    if unknown:
        raise DescriptorParseError(f"unknown keys {sorted(unknown)}")
    r = doc["r"]
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise DescriptorValidationError("r", f"{r!r} is not a positive integer")
    dims = doc["dims"]
    if not isinstance(dims, list):
        raise DescriptorParseError("dims must be an array")
    if len(dims) != r:
        raise DescriptorValidationError("dims", f"length {len(dims)} does not match r={r}")
    killing = doc["killing"]
    if not isinstance(killing, list):
        raise DescriptorParseError("killing must be an array")
    killing = [_parse_scalar(b, f"killing[{k}]") for k, b in enumerate(killing)]

    entries = {}
    constants = doc.get("constants", [])
    if not isinstance(constants, list):
        raise DescriptorParseError("constants must be an array")
    for pos, item in enumerate(constants):
        where = f"constants[{pos}]"
        if not isinstance(item, Mapping) or set(item) != {"triple", "value"}:
            raise DescriptorParseError(f"{where}: expected {{'triple': [...], 'value': ...}}")
        triple = item["triple"]
        if (not isinstance(triple, list) or len(triple) != 3
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in triple)):
            raise DescriptorParseError(f"{where}: triple must be three integers")
        if not all(1 <= i <= r for i in triple):
            raise DescriptorValidationError(where, f"triple {triple} out of range 1..{r}")
        if list(triple) != sorted(triple):
            raise DescriptorValidationError(where, f"triple {triple} must satisfy i<=j<=k")
        key = tuple(triple)
        if key in entries:
            raise DescriptorParseError(f"{where}: duplicate triple {triple}")
        value = _parse_scalar(item["value"], where)
        if value < 0:
            raise DescriptorValidationError(where, f"triple {triple} has negative value {value}")
        entries[key] = value

    trivial_dim = doc.get("trivial_dim", 0)
    notes = doc.get("notes", "")
    if not isinstance(doc["name"], str) or not isinstance(notes, str):
        raise DescriptorParseError("name and notes must be strings")
    return SpaceDescriptor(
        name=doc["name"], dims=tuple(dims), killing=tuple(killing),
        constants=StructureConstants(r, entries), trivial_dim=trivial_dim, notes=notes,
    )


def descriptor_to_dict(space: SpaceDescriptor) -> dict:
    doc = {
        "name": space.name,
        "r": space.r,
        "dims": list(space.dims),
        "killing": [_dump_scalar(b) for b in space.killing],
        "constants": [
            {"triple": list(t), "value": _dump_scalar(v)} for t, v in space.constants
        ],
    }
    if space.trivial_dim:
        doc["trivial_dim"] = space.trivial_dim
    if space.notes:
        doc["notes"] = space.notes
    return doc


def load_descriptor(path) -> SpaceDescriptor:
    text = Path(path).read_text(encoding="utf-8")

    def no_duplicate_keys(pairs):
        keys = [k for k, _ in pairs]
        if len(keys) != len(set(keys)):
            raise DescriptorParseError(f"duplicate keys in object: {keys}")
        return dict(pairs)

    try:
        doc = json.loads(text, object_pairs_hook=no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise DescriptorParseError(f"{path}: {exc}") from exc
    return descriptor_from_dict(doc)


def save_descriptor(space: SpaceDescriptor, path) -> None:
    Path(path).write_text(
        json.dumps(descriptor_to_dict(space), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
