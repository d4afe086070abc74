"""Vectors of the permutation module: finite formal sums of rational
n-tuples with exact coefficients, the action of increasing maps, and the
orbitwise coefficient-sum maps over finite parameter sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from permod.ring import RingError, RingSpec, Scalar
from permod.structure import DLO, ParamSet, StructureOracle

Tuple_ = tuple[Fraction, ...]


@dataclass(frozen=True)
class ModVector:
    """A formal R-linear combination of rational n-tuples.

    Terms are stored sorted lexicographically by tuple, with no zero
    coefficients, so equal vectors compare equal structurally.
    """

    ring: RingSpec
    arity: int
    terms: tuple[tuple[Tuple_, Scalar], ...]

    @classmethod
    def from_terms(
        cls, ring: RingSpec, arity: int, items: Iterable[tuple[Sequence, object]]
    ) -> "ModVector":
        if arity < 1:
            raise ValueError("arity must be at least 1")
        acc: dict[Tuple_, Scalar] = {}
        for tup, coeff in items:
            tup = tuple(Fraction(x) for x in tup)
            if len(tup) != arity:
                raise ValueError(f"tuple {tup} does not have arity {arity}")
            c = ring.add(acc.get(tup, ring.zero()), ring.normalize(coeff))
            if ring.is_zero(c):
                acc.pop(tup, None)
            else:
                acc[tup] = c
        return cls(ring, arity, tuple(sorted(acc.items())))

    @classmethod
    def zero(cls, ring: RingSpec, arity: int) -> "ModVector":
        return cls(ring, arity, ())

    def term_dict(self) -> dict[Tuple_, Scalar]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "ModVector") -> "ModVector":
        _check_compatible(self, other)
        return ModVector.from_terms(
            self.ring, self.arity, list(self.terms) + list(other.terms)
        )

    def scale(self, c) -> "ModVector":
        c = self.ring.normalize(c)
        return ModVector.from_terms(
            self.ring, self.arity, [(t, self.ring.mul(c, v)) for t, v in self.terms]
        )

    def neg(self) -> "ModVector":
        return ModVector(
            self.ring, self.arity, tuple((t, self.ring.neg(v)) for t, v in self.terms)
        )

    def sub(self, other: "ModVector") -> "ModVector":
        return self.add(other.neg())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for tup, coeff in self.terms:
            point = "(" + ",".join(str(x) for x in tup) + ")"
            bits.append(f"{self.ring.format(coeff)}*{point}")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "arity": self.arity,
            "terms": [
                {"coeff": self.ring.format(c), "tuple": [str(x) for x in t]}
                for t, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, ring: RingSpec | None = None) -> "ModVector":
        """Parse the canonical file format, rejecting zero coefficients and
        duplicate tuples.  A ``ring`` argument re-parses coefficients into
        that ring (the CLI's --ring override)."""
        try:
            file_ring = RingSpec.from_name(obj["ring"])
            arity = int(obj["arity"])
            raw = obj["terms"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed vector object: {exc}") from None
        ring = ring or file_ring
        seen: set[Tuple_] = set()
        items = []
        for entry in raw:
            coeff_text = entry["coeff"]
            tup_text = entry["tuple"]
            try:
                coeff = ring.parse(coeff_text)
            except RingError as exc:
                raise ValueError(f"term {entry!r}: {exc}") from None
            tup = []
            for x in tup_text:
                try:
                    tup.append(Fraction(x))
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"term {entry!r}: bad rational {x!r}") from None
            tup = tuple(tup)
            if ring.is_zero(coeff):
                raise ValueError(f"term {entry!r}: zero coefficient")
            if tup in seen:
                raise ValueError(f"term {entry!r}: duplicate tuple")
            seen.add(tup)
            items.append((tup, coeff))
        return cls.from_terms(ring, arity, items)


@dataclass(frozen=True)
class AugVector:
    """Sparse image of a vector under the orbitwise coefficient-sum map:
    canonical pattern string -> nonzero ring element."""

    ring: RingSpec
    entries: tuple[tuple[str, Scalar], ...]

    @classmethod
    def from_dict(cls, ring: RingSpec, entries: Mapping[str, Scalar]) -> "AugVector":
        kept = {k: v for k, v in entries.items() if not ring.is_zero(v)}
        return cls(ring, tuple(sorted(kept.items())))

    def entry_dict(self) -> dict[str, Scalar]:
        return dict(self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def add(self, other: "AugVector") -> "AugVector":
        acc = dict(self.entries)
        for k, v in other.entries:
            acc[k] = self.ring.add(acc.get(k, self.ring.zero()), v)
        return AugVector.from_dict(self.ring, acc)

    def scale(self, c) -> "AugVector":
        c = self.ring.normalize(c)
        return AugVector.from_dict(
            self.ring, {k: self.ring.mul(c, v) for k, v in self.entries}
        )

    def to_json(self) -> dict:
        return {k: self.ring.format(v) for k, v in self.entries}


def _check_compatible(x: ModVector, y: ModVector) -> None:
    if x.ring != y.ring:
        raise RingError(f"ring mismatch: {x.ring.name} vs {y.ring.name}")
    if x.arity != y.arity:
        raise ValueError(f"arity mismatch: {x.arity} vs {y.arity}")


def check_family(vectors: Sequence[ModVector]) -> None:
    for v in vectors[1:]:
        _check_compatible(vectors[0], v)


def support_points(x: ModVector) -> ParamSet:
    """All rationals occurring as coordinates of tuples of x, as a chain.

    Any order automorphism fixing these points fixes x, so any parameter
    set containing them is admissible for deciding membership of x.
    """
    pts = {c for tup, _ in x.terms for c in tup}
    return ParamSet(tuple(sorted(pts)))


def act(x: ModVector, mapping: Mapping[Fraction, Fraction]) -> ModVector:
    """Apply a strictly increasing partial rational map to every tuple.

    The map must be defined on all support points; it extends to an order
    automorphism by density, so the result lies in the same orbit.
    """
    mapping = {Fraction(k): Fraction(v) for k, v in mapping.items()}
    dom = sorted(mapping)
    for a, b in zip(dom, dom[1:]):
        if mapping[a] >= mapping[b]:
            raise ValueError("map is not strictly increasing")
    missing = [p for p in support_points(x).points if p not in mapping]
    if missing:
        raise ValueError(f"map not defined on support points {missing}")
    terms = [(tuple(mapping[c] for c in tup), v) for tup, v in x.terms]
    return ModVector(x.ring, x.arity, tuple(sorted(terms)))


def relabel(x: ModVector, mapping: Mapping[Fraction, Fraction]) -> ModVector:
    """Apply an arbitrary injective point map (no order requirement).

    Used for set-reduct expansions, where orbit representatives arise from
    re-orderings of the support.
    """
    mapping = {Fraction(k): Fraction(v) for k, v in mapping.items()}
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("relabelling must be injective")
    missing = [p for p in support_points(x).points if p not in mapping]
    if missing:
        raise ValueError(f"map not defined on support points {missing}")
    terms = [(tuple(mapping[c] for c in tup), v) for tup, v in x.terms]
    return ModVector(x.ring, x.arity, tuple(sorted(terms)))


def omega(x: ModVector, params: ParamSet, oracle: StructureOracle = DLO) -> AugVector:
    """Sum the coefficients of x over each orbit of the pointwise
    stabiliser of ``params``, keyed by canonical pattern string."""
    acc: dict[str, Scalar] = {}
    ring = x.ring
    for tup, coeff in x.terms:
        key = oracle.pattern_text(tup, params)
        acc[key] = ring.add(acc.get(key, ring.zero()), coeff)
    return AugVector.from_dict(ring, acc)


def omega_empty(x: ModVector, oracle: StructureOracle = DLO) -> AugVector:
    return omega(x, ParamSet.empty(), oracle)


def is_aug_zero(x: ModVector, oracle: StructureOracle = DLO) -> bool:
    """True when every orbitwise coefficient sum over the empty parameter
    set vanishes (the kernel of the plain augmentation, orbit by orbit)."""
    return omega_empty(x, oracle).is_zero


def chain_skeleton(v: ModVector) -> tuple[tuple[Fraction, ...], list]:
    """The support chain of v plus its terms with coordinates replaced by
    chain indices; applying any increasing image of the chain is then pure
    tuple indexing."""
    chain = support_points(v).points
    index = {p: i for i, p in enumerate(chain)}
    skeleton = [
        (tuple(index[c] for c in tup), coeff) for tup, coeff in v.terms
    ]
    return chain, skeleton


def translate_onto(v_skeleton: list, ring, arity, images: Sequence[Fraction]) -> ModVector:
    # increasing maps preserve the lexicographic term order, so the
    # canonical form survives re-indexing as is
    terms = tuple(
        (tuple(images[i] for i in idxs), coeff) for idxs, coeff in v_skeleton
    )
    return ModVector(ring, arity, terms)


def orbit_reps_over(
    v: ModVector, params: ParamSet, oracle: StructureOracle = DLO
) -> list[ModVector]:
    """One vector per orbit of the parameter stabiliser on the full orbit
    of v: apply every placement of the support chain of v."""
    chain, skeleton = chain_skeleton(v)
    return [
        translate_onto(skeleton, v.ring, v.arity, placement.images)
        for placement in oracle.enumerate_placements(chain, params)
    ]


def orbit_canonical_form(v: ModVector) -> ModVector:
    """The translate of v whose support chain is 1..m; two vectors have
    equal forms exactly when an increasing map carries one to the other."""
    chain = support_points(v).points
    mapping = {p: Fraction(i + 1) for i, p in enumerate(chain)}
    return act(v, mapping)
