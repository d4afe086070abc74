"""Order-type classification over the dense linear order.

The backend answers two finitary questions about the ordered rationals:

* `pattern_of_tuple`: the complete order configuration of an n-tuple
  relative to a finite parameter chain, as a canonical string; two
  tuples get equal keys exactly when an order automorphism fixing the
  parameters pointwise maps one to the other.

* `enumerate_placements`: the inequivalent ways a finite chain can sit
  relative to the parameter chain (each point either equals a parameter
  or falls in one of the gaps), each with a concrete deterministic
  realization by fresh rationals.

The canonical key is a merged weak-order word over tokens ``p<i>``
(parameters) and ``c<j>`` (tuple coordinates), e.g. ``p0<c1=c0<p1``.
Keys compare as plain strings.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from permod.kernels import pattern_word

Point = Fraction
Slot = tuple[str, int]  # ("param", i) or ("gap", i)


def parse_point(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}: {exc}") from None


@dataclass(frozen=True)
class ParamSet:
    """A strictly increasing finite chain of rational parameter points."""

    points: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        pts = tuple(Fraction(p) for p in self.points)
        for a, b in zip(pts, pts[1:]):
            if a >= b:
                raise ValueError("parameter points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable) -> "ParamSet":
        pts = [Fraction(p) for p in points]
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate parameter point")
        return cls(tuple(sorted(pts)))

    @classmethod
    def empty(cls) -> "ParamSet":
        return cls(())

    @property
    def size(self) -> int:
        return len(self.points)

    def issuperset(self, other: "ParamSet") -> bool:
        return set(self.points) >= set(other.points)

    def union(self, other: "ParamSet") -> "ParamSet":
        return ParamSet.of(set(self.points) | set(other.points))

    def to_json(self) -> list[str]:
        return [str(p) for p in self.points]


@dataclass(frozen=True)
class PatternKey:
    """Canonical order type of a tuple over a parameter chain.

    ``slots[j]`` places coordinate j either on a parameter or in a gap
    (gap i is the open interval below parameter i; gap of index equal to
    the parameter count is the unbounded top gap).  ``text`` is the
    canonical merged word; equality and hashing go through it.
    """

    arity: int
    slots: tuple[Slot, ...]
    text: str

    def __eq__(self, other) -> bool:
        return isinstance(other, PatternKey) and self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)

    @property
    def is_singleton(self) -> bool:
        return all(kind == "param" for kind, _ in self.slots)

    def singleton_tuple(self, params: ParamSet) -> tuple[Fraction, ...]:
        if not self.is_singleton:
            raise ValueError("pattern has coordinates in gaps")
        return tuple(params.points[i] for _, i in self.slots)


@dataclass(frozen=True)
class Placement:
    """A monotone assignment of a source chain into slots, realized."""

    source: tuple[Fraction, ...]
    slots: tuple[Slot, ...]
    images: tuple[Fraction, ...]

    def mapping(self) -> dict[Fraction, Fraction]:
        return dict(zip(self.source, self.images))


@dataclass(frozen=True)
class ReductSpec:
    """Group choice: "none" keeps the order automorphisms, "pure-set"
    passes to all permutations of the underlying set."""

    kind: str = "none"

    def __post_init__(self) -> None:
        if self.kind not in ("none", "pure-set"):
            raise ValueError(f"unknown reduct {self.kind!r}")


def gap_values(lo: Fraction | None, hi: Fraction | None, count: int) -> list[Fraction]:
    """``count`` fresh increasing rationals strictly inside the gap.

    Bounded gaps subdivide dyadically (one point lands on the midpoint);
    unbounded gaps use unit offsets.  Deterministic by construction.
    """
    if count == 0:
        return []
    if lo is None and hi is None:
        return [Fraction(j) for j in range(1, count + 1)]
    if lo is None:
        return [hi - count + j for j in range(count)]
    if hi is None:
        return [lo + j for j in range(1, count + 1)]
    d = 1 << count.bit_length()
    return [lo + (hi - lo) * Fraction(j, d) for j in range(1, count + 1)]


class StructureOracle(ABC):
    """Contract a homogeneous-structure backend must satisfy.

    `pattern_of_tuple` must be constant on orbits of the pointwise
    parameter stabiliser and separate them; `enumerate_placements` must
    be complete and duplicate-free over those orbits.
    """

    def pattern_text(self, w: Sequence[Fraction], params: ParamSet) -> str:
        """Canonical key string only; hot path used by the coefficient-sum
        maps.  Backends may override with something cheaper."""
        return self.pattern_of_tuple(w, params).text

    @abstractmethod
    def pattern_of_tuple(self, w: Sequence[Fraction], params: ParamSet) -> PatternKey: ...

    @abstractmethod
    def enumerate_placements(
        self, source_points: Sequence[Fraction], params: ParamSet
    ) -> list[Placement]: ...

    @abstractmethod
    def canonical_orbit_reps(self, n: int) -> list[tuple[Fraction, ...]]: ...

    @abstractmethod
    def reduct_expansions(
        self, points: Sequence[Fraction], reduct: ReductSpec
    ) -> list[dict[Fraction, Fraction]]: ...


class DenseLinearOrder(StructureOracle):
    """The ordered rationals."""

    def pattern_text(self, w: Sequence[Fraction], params: ParamSet) -> str:
        pts = params.points
        cnums = []
        cdens = []
        for x in w:
            if not isinstance(x, Fraction):
                x = Fraction(x)
            cnums.append(x.numerator)
            cdens.append(x.denominator)
        return pattern_word(
            cnums,
            cdens,
            [p.numerator for p in pts],
            [p.denominator for p in pts],
        )

    def pattern_of_tuple(self, w: Sequence[Fraction], params: ParamSet) -> PatternKey:
        pts = params.points
        w = tuple(Fraction(x) for x in w)
        slots = []
        for x in w:
            i = bisect_left(pts, x)
            if i < len(pts) and pts[i] == x:
                slots.append(("param", i))
            else:
                slots.append(("gap", i))
        items = [(p, 0, i) for i, p in enumerate(pts)]
        items += [(x, 1, j) for j, x in enumerate(w)]
        items.sort()
        parts = []
        prev = None
        for val, kind, idx in items:
            tok = ("p" if kind == 0 else "c") + str(idx)
            if prev is None:
                parts.append(tok)
            else:
                parts.append(("=" if val == prev else "<") + tok)
            prev = val
        return PatternKey(len(w), tuple(slots), "".join(parts))

    @lru_cache(maxsize=1024)
    def _slot_images(
        self, m: int, points: tuple[Fraction, ...]
    ) -> tuple[tuple[tuple[Slot, ...], tuple[Fraction, ...]], ...]:
        # placements depend only on the chain length and the parameters
        s = len(points)
        maps: list[tuple[int, ...]] = []
        cur: list[int] = []

        # slot k of 0..2s: even = gap k//2, odd = parameter (k-1)//2
        def rec(i: int, lo: int) -> None:
            if i == m:
                maps.append(tuple(cur))
                return
            for k in range(lo, 2 * s + 1):
                cur.append(k)
                rec(i + 1, k + 1 if k % 2 else k)
                cur.pop()

        rec(0, 0)
        out = []
        for slot_map in maps:
            slots = tuple(
                ("param", (k - 1) // 2) if k % 2 else ("gap", k // 2) for k in slot_map
            )
            images: list[Fraction] = []
            i = 0
            while i < m:
                k = slot_map[i]
                if k % 2:
                    images.append(points[(k - 1) // 2])
                    i += 1
                    continue
                j = i
                while j < m and slot_map[j] == k:
                    j += 1
                g = k // 2
                lo = points[g - 1] if g > 0 else None
                hi = points[g] if g < s else None
                images.extend(gap_values(lo, hi, j - i))
                i = j
            out.append((slots, tuple(images)))
        return tuple(out)

    def enumerate_placements(
        self, source_points: Sequence[Fraction], params: ParamSet
    ) -> list[Placement]:
        source = tuple(Fraction(x) for x in source_points)
        for a, b in zip(source, source[1:]):
            if a >= b:
                raise ValueError("source points must be strictly increasing")
        return [
            Placement(source, slots, images)
            for slots, images in self._slot_images(len(source), params.points)
        ]

    def canonical_orbit_reps(self, n: int) -> list[tuple[Fraction, ...]]:
        if n < 1:
            raise ValueError("arity must be at least 1")
        reps = []
        for tup in product(range(1, n + 1), repeat=n):
            if set(tup) == set(range(1, max(tup) + 1)):
                reps.append(tuple(Fraction(v) for v in tup))
        return reps

    def reduct_expansions(
        self, points: Sequence[Fraction], reduct: ReductSpec
    ) -> list[dict[Fraction, Fraction]]:
        pts = tuple(Fraction(p) for p in points)
        if reduct.kind == "none":
            # identity only: the group is unchanged
            return [dict(zip(pts, pts))]
        return [dict(zip(pts, img)) for img in permutations(pts)]


DLO = DenseLinearOrder()
