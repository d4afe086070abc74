"""Membership decisions with independently checkable certificates.

The decision reduces membership of a target vector in the module
generated by the given vectors under all order automorphisms to a span
question among finitely many placed representatives: the parameter set S
is the support chain of the target (or any finite superset), the
representatives are the generators acted by every placement of their
support chains relative to S, and both sides are compared through their
orbitwise coefficient sums over S.

Every verdict carries a certificate:

* YES: span coefficients against the placed representatives, optionally
  an explicit witness (an exact combination of acted generators found by
  the grid oracle within a budget);
* NO over a field: a functional on pattern coordinates vanishing on all
  representatives but not on the target;
* NO over Z: a character into the rationals mod 1 with the same
  separation property.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from permod import oracle as _oracle
from permod.linalg import (
    character_from_span,
    make_span,
    normalize_functional,
    span_intersect_coords,
)
from permod.pmod import (
    AugVector,
    ModVector,
    act,
    check_family,
    is_aug_zero,
    omega,
    orbit_canonical_form,
    orbit_reps_over,
    relabel,
    support_points,
)
from permod.ring import CharacterQZ, RingError, RingSpec, Scalar
from permod.structure import DLO, ParamSet, ReductSpec, StructureOracle, gap_values


@dataclass(frozen=True)
class ExplicitWitness:
    """Summands (coefficient, acted generator) adding up to the target."""

    summands: tuple[tuple[Scalar, ModVector], ...]

    def evaluate(self, ring: RingSpec, arity: int) -> ModVector:
        total = ModVector.zero(ring, arity)
        for coeff, vec in self.summands:
            total = total.add(vec.scale(coeff))
        return total

    def to_json(self) -> dict:
        return {
            "type": "explicit-witness",
            "summands": [
                {"coeff": v.ring.format(c), "vector": v.to_json()}
                for c, v in self.summands
            ],
        }


@dataclass(frozen=True)
class SpanWitnessCert:
    """YES certificate: coefficients against placed representatives."""

    terms: tuple[tuple[Scalar, ModVector], ...]
    explicit: ExplicitWitness | None = None


@dataclass(frozen=True)
class FunctionalCert:
    """NO certificate over a field: an invariant functional, given by its
    value on each occurring pattern coordinate."""

    functional: AugVector


@dataclass(frozen=True)
class CharacterCert:
    """NO certificate over Z: pattern coordinate -> rational mod 1."""

    values: tuple[tuple[str, Fraction], ...]

    def value_on(self, aug: AugVector) -> Fraction:
        table = dict(self.values)
        total = Fraction(0)
        for key, coeff in aug.entries:
            total += table.get(key, Fraction(0)) * coeff
        return total % 1

    @property
    def denominator(self) -> int:
        return CharacterQZ(tuple(v for _, v in self.values)).denominator


Certificate = SpanWitnessCert | FunctionalCert | CharacterCert


@dataclass(frozen=True)
class Decision:
    member: bool
    certificate: Certificate
    param_set: ParamSet
    rep_count: int


class VerificationError(RuntimeError):
    """A construction failed its own membership re-check."""

    def __init__(self, message: str, decision: Decision | None = None):
        super().__init__(message)
        self.decision = decision


def _dedup_orbits(generators: Sequence[ModVector]) -> list[ModVector]:
    # drop generators lying in the orbit of an earlier one
    kept: list[ModVector] = []
    seen: set[ModVector] = set()
    for g in generators:
        form = orbit_canonical_form(g)
        if form not in seen:
            seen.add(form)
            kept.append(g)
    return kept


def _placed_representatives(
    generators: Sequence[ModVector], params: ParamSet, oracle: StructureOracle
) -> list[ModVector]:
    reps: list[ModVector] = []
    for g in _dedup_orbits(generators):
        reps.extend(orbit_reps_over(g, params, oracle))
    return reps


def membership(
    target: ModVector,
    generators: Sequence[ModVector],
    *,
    param_set: ParamSet | None = None,
    witness_budget: int = 0,
    oracle: StructureOracle = DLO,
) -> Decision:
    """Decide whether the target lies in the module generated by the given
    vectors under all order automorphisms.

    ``param_set`` may name any finite superset of the target's support
    points (the verdict does not depend on the choice); ``witness_budget``
    caps the grid size of the optional explicit-witness search on YES.
    """
    generators = list(generators)
    check_family([target, *generators])
    ring = target.ring
    support = support_points(target)
    params = param_set if param_set is not None else support
    if not params.issuperset(support):
        raise ValueError("parameter set must contain the support points of the target")

    reps = _placed_representatives(generators, params, oracle)
    rep_augs = [omega(r, params, oracle) for r in reps]
    target_aug = omega(target, params, oracle)

    keys = sorted(
        set(target_aug.entry_dict()).union(*(a.entry_dict() for a in rep_augs))
        if rep_augs
        else set(target_aug.entry_dict())
    )
    col = {k: i for i, k in enumerate(keys)}
    engine = make_span(ring)
    for aug in rep_augs:
        engine.insert((col[k], v) for k, v in aug.entries)
    comb = engine.reduce_comb((col[k], v) for k, v in target_aug.entries)

    if comb is not None:
        terms = tuple(
            (comb[j], reps[j]) for j in range(len(reps)) if j in comb and comb[j] != 0
        )
        explicit = None
        if witness_budget:
            found = _oracle.oracle_membership(
                target, generators, witness_budget, oracle=oracle
            )
            if found.conclusive:
                explicit = ExplicitWitness(tuple(found.witness))
        cert: Certificate = SpanWitnessCert(terms, explicit)
        return Decision(True, cert, params, len(reps))

    if ring.is_field:
        phi = engine.functional((col[k], v) for k, v in target_aug.entries)
        dense = normalize_functional([phi.get(i, ring.zero()) for i in range(len(keys))], ring)
        functional = AugVector.from_dict(ring, dict(zip(keys, dense)))
        return Decision(False, FunctionalCert(functional), params, len(reps))

    dense_target = [target_aug.entry_dict().get(k, 0) for k in keys]
    chi = character_from_span(engine, dense_target, len(keys))
    values = tuple(
        (k, c) for k, c in zip(keys, chi.coeffs) if c != 0
    )
    return Decision(False, CharacterCert(values), params, len(reps))


def _aug_pairing(phi: AugVector, aug: AugVector, ring: RingSpec) -> Scalar:
    table = phi.entry_dict()
    total = ring.zero()
    for key, coeff in aug.entries:
        if key in table:
            total = ring.add(total, ring.mul(table[key], coeff))
    return total


def verify_certificate(
    decision: Decision,
    target: ModVector,
    generators: Sequence[ModVector],
    *,
    reduct: ReductSpec | None = None,
    oracle: StructureOracle = DLO,
) -> bool:
    """Recompute representatives and coefficient sums from scratch and
    re-evaluate the certificate identities.  False signals a defect."""
    try:
        generators = list(generators)
        if reduct is not None and reduct.kind != "none":
            generators = _reduct_expand(generators, reduct, oracle)
        check_family([target, *generators])
        ring = target.ring
        params = decision.param_set
        if not params.issuperset(support_points(target)):
            return False
        reps = _placed_representatives(generators, params, oracle)
        if decision.rep_count != len(reps):
            return False
        target_aug = omega(target, params, oracle)

        if decision.member:
            cert = decision.certificate
            if not isinstance(cert, SpanWitnessCert):
                return False
            rep_pool = set(reps)
            total = AugVector.from_dict(ring, {})
            for coeff, rep in cert.terms:
                if rep not in rep_pool or ring.is_zero(coeff):
                    return False
                total = total.add(omega(rep, params, oracle).scale(coeff))
            if total != target_aug:
                return False
            if cert.explicit is not None:
                forms = {orbit_canonical_form(g) for g in generators}
                for coeff, vec in cert.explicit.summands:
                    if orbit_canonical_form(vec) not in forms:
                        return False
                if cert.explicit.evaluate(ring, target.arity) != target:
                    return False
            return True

        cert = decision.certificate
        if isinstance(cert, FunctionalCert):
            if not ring.is_field or cert.functional.is_zero:
                return False
            phi = cert.functional
            for rep in reps:
                if not ring.is_zero(_aug_pairing(phi, omega(rep, params, oracle), ring)):
                    return False
            return not ring.is_zero(_aug_pairing(phi, target_aug, ring))
        if isinstance(cert, CharacterCert):
            if ring.is_field:
                return False
            for rep in reps:
                if cert.value_on(omega(rep, params, oracle)) != 0:
                    return False
            return cert.value_on(target_aug) != 0
        return False
    except (ValueError, RingError):
        return False


@dataclass(frozen=True)
class GeneratesAll:
    result: bool
    decisions: tuple[tuple[ModVector, Decision], ...]


def generates_all(
    generators: Sequence[ModVector],
    *,
    ring: RingSpec | None = None,
    arity: int | None = None,
    oracle: StructureOracle = DLO,
) -> GeneratesAll:
    """Do the generators span the whole module?  True exactly when every
    canonical orbit representative is a member."""
    generators = list(generators)
    if generators:
        check_family(generators)
        ring = generators[0].ring
        arity = generators[0].arity
    elif ring is None or arity is None:
        raise ValueError("empty generator list needs explicit ring and arity")
    decisions = []
    verdict = True
    for rep_tuple in oracle.canonical_orbit_reps(arity):
        w = ModVector.from_terms(ring, arity, [(rep_tuple, ring.one())])
        d = membership(w, generators, oracle=oracle)
        decisions.append((w, d))
        verdict = verdict and d.member
    return GeneratesAll(verdict, tuple(decisions))


def min_support(
    generators: Sequence[ModVector], k: int, *, oracle: StructureOracle = DLO
) -> ModVector | None:
    """A nonzero module element with at most k basis tuples, or None.

    Every orbit of k-element tuple sets has a representative with all
    coordinates in the integer grid 1..k*n, so it is enough to look for
    span vectors supported on at most k parameter-only patterns over that
    grid; such patterns lift exactly (their tuples are fixed pointwise).
    """
    if k < 1:
        raise ValueError("support bound must be at least 1")
    generators = list(generators)
    if not generators:
        return None
    check_family(generators)
    ring = generators[0].ring
    n = generators[0].arity
    grid = [Fraction(i) for i in range(1, k * n + 1)]
    params = ParamSet.of(grid)

    reps = _placed_representatives(generators, params, oracle)
    rep_augs = [omega(r, params, oracle) for r in reps]

    singleton: list[tuple[str, tuple[Fraction, ...]]] = []
    for tup in _grid_tuples(grid, n):
        singleton.append((oracle.pattern_of_tuple(tup, params).text, tup))
    singleton.sort(key=lambda kv: kv[1])

    keys = sorted(
        {k_ for aug in rep_augs for k_ in aug.entry_dict()}
        | {text for text, _ in singleton}
    )
    col = {k_: i for i, k_ in enumerate(keys)}
    rows = [
        [aug.entry_dict().get(k_, ring.zero()) for k_ in keys] for aug in rep_augs
    ]

    subsets = []
    for size in range(1, k + 1):
        subsets.extend(combinations(range(len(singleton)), size))
    subsets.sort(key=lambda s: tuple(reversed(s)))
    for subset in subsets:
        coords = {col[singleton[i][0]] for i in subset}
        hit = span_intersect_coords(rows, coords, ring)
        if hit is None:
            continue
        terms = []
        for i in subset:
            text, tup = singleton[i]
            v = hit[col[text]]
            if not ring.is_zero(v):
                terms.append((tup, v))
        return ModVector.from_terms(ring, n, terms)
    return None


def _grid_tuples(grid: Sequence[Fraction], n: int):
    if n == 1:
        yield from ((g,) for g in grid)
        return
    from itertools import product

    yield from product(grid, repeat=n)


def _reduct_expand(
    generators: Sequence[ModVector], reduct: ReductSpec, oracle: StructureOracle
) -> list[ModVector]:
    expanded = []
    for g in generators:
        pts = support_points(g).points
        for mapping in oracle.reduct_expansions(pts, reduct):
            expanded.append(relabel(g, mapping))
    return expanded


def reduct_membership(
    target: ModVector,
    generators: Sequence[ModVector],
    reduct: ReductSpec,
    *,
    witness_budget: int = 0,
    oracle: StructureOracle = DLO,
) -> Decision:
    """Membership under the permutation group of the pure set: expand each
    generator by all re-orderings of its support, then decide as usual."""
    generators = list(generators)
    check_family([target, *generators])
    expanded = _reduct_expand(generators, reduct, oracle)
    return membership(
        target, expanded, witness_budget=witness_budget, oracle=oracle
    )


@dataclass(frozen=True)
class CyclicResult:
    generator: ModVector
    into: tuple[Decision, ...]
    back: Decision


def cyclic_generator(
    generators: Sequence[ModVector], *, oracle: StructureOracle = DLO
) -> CyclicResult:
    """A single vector generating the same module as the given family.

    Each generator is moved into its own convex block (2i, 2i+1) and the
    translates are summed.  The construction is never trusted: membership
    is re-checked in both directions and a failure raises, it is not
    silently accepted.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    check_family(generators)
    ring = generators[0].ring
    if not ring.is_field:
        raise RingError("cyclic generator synthesis needs a field")
    for g in generators:
        if not is_aug_zero(g, oracle):
            raise ValueError(f"generator {g} has a nonzero coefficient sum on some orbit")

    x = ModVector.zero(ring, generators[0].arity)
    for i, g in enumerate(generators, start=1):
        chain = support_points(g).points
        images = gap_values(Fraction(2 * i), Fraction(2 * i + 1), len(chain))
        x = x.add(act(g, dict(zip(chain, images))))

    into = []
    for g in generators:
        d = membership(g, [x], oracle=oracle)
        if not d.member:
            raise VerificationError("a generator is not in the cyclic module", d)
        into.append(d)
    back = membership(x, generators, oracle=oracle)
    if not back.member:
        raise VerificationError("the combined vector left the original module", back)
    return CyclicResult(x, tuple(into), back)


# ---------------------------------------------------------------------------
# canonical JSON forms
# ---------------------------------------------------------------------------


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, SpanWitnessCert):
        out: dict = {
            "type": "span-witness",
            "coefficients": [
                {"coeff": rep.ring.format(coeff), "rep": rep.to_json()}
                for coeff, rep in cert.terms
            ],
        }
        out["explicitWitness"] = cert.explicit.to_json() if cert.explicit else None
        return out
    if isinstance(cert, FunctionalCert):
        return {"type": "dual-functional", "functional": cert.functional.to_json()}
    return {
        "type": "character",
        "character": {k: str(v) for k, v in cert.values},
    }


def decision_to_json(decision: Decision) -> dict:
    return {
        "member": decision.member,
        "paramSet": decision.param_set.to_json(),
        "repCount": decision.rep_count,
        "certificate": certificate_to_json(decision.certificate),
    }


def certificate_from_json(obj: dict, ring: RingSpec) -> Certificate:
    kind = obj.get("type")
    if kind == "span-witness":
        terms = tuple(
            (ring.parse(entry["coeff"]), ModVector.from_json(entry["rep"]))
            for entry in obj["coefficients"]
        )
        explicit = None
        raw = obj.get("explicitWitness")
        if raw is not None:
            explicit = ExplicitWitness(
                tuple(
                    (ring.parse(e["coeff"]), ModVector.from_json(e["vector"]))
                    for e in raw["summands"]
                )
            )
        return SpanWitnessCert(terms, explicit)
    if kind == "dual-functional":
        entries = {k: ring.parse(v) for k, v in obj["functional"].items()}
        return FunctionalCert(AugVector.from_dict(ring, entries))
    if kind == "character":
        values = tuple(
            sorted((k, Fraction(v)) for k, v in obj["character"].items())
        )
        return CharacterCert(values)
    raise ValueError(f"unknown certificate type {kind!r}")


def decision_from_json(obj: dict, ring: RingSpec) -> Decision:
    try:
        params = ParamSet.of(obj["paramSet"])
        return Decision(
            bool(obj["member"]),
            certificate_from_json(obj["certificate"], ring),
            params,
            int(obj["repCount"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed decision object: {exc}") from None
