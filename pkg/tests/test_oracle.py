"""Grid oracle: spans, witness search, instance generation."""

from fractions import Fraction

import pytest

from permod.decide import membership
from permod.oracle import (
    Grid,
    InstanceProfile,
    grid_span,
    oracle_membership,
    random_instance,
)
from permod.pmod import ModVector, support_points
from permod.ring import GF, QQ, ZZ


def vec(ring, arity, items):
    return ModVector.from_terms(ring, arity, items)


GEN_DIFF = vec(QQ, 1, [((0,), 1), ((1,), -1)])


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid((Fraction(2), Fraction(1)))
    assert Grid.integers(3).points == (1, 2, 3)


def test_grid_span_difference_basis():
    basis = grid_span([GEN_DIFF], Grid.integers(3))
    assert basis == [
        vec(QQ, 1, [((1,), 1), ((2,), -1)]),
        vec(QQ, 1, [((2,), 1), ((3,), -1)]),
    ]


def test_grid_span_trivial_cases():
    single = vec(QQ, 1, [((0,), 1)])
    assert grid_span([single], Grid.integers(2)) == [
        vec(QQ, 1, [((1,), 1)]),
        vec(QQ, 1, [((2,), 1)]),
    ]
    assert grid_span([], Grid.integers(4)) == []


def test_grid_span_z_keeps_lattice_scaling():
    doubled = vec(ZZ, 1, [((0,), 2)])
    basis = grid_span([doubled], Grid.integers(2))
    assert basis == [
        vec(ZZ, 1, [((1,), 2)]),
        vec(ZZ, 1, [((2,), 2)]),
    ]


def test_grid_too_small():
    with pytest.raises(ValueError):
        grid_span([GEN_DIFF], Grid.integers(1))


def test_oracle_telescoping_witness():
    target = vec(QQ, 1, [((0,), 1), ((2,), -1)])
    res = oracle_membership(target, [GEN_DIFF], 4)
    assert res.conclusive and res.grid_size == 4
    total = ModVector.zero(QQ, 1)
    for c, w in res.witness:
        total = total.add(w.scale(c))
    assert total == target


def test_oracle_obstruction_stays_inconclusive():
    res = oracle_membership(vec(QQ, 1, [((0,), 1)]), [GEN_DIFF], 8)
    assert res.status == "inconclusive" and res.witness is None


def test_oracle_generator_is_its_own_witness():
    res = oracle_membership(GEN_DIFF, [GEN_DIFF], 6)
    assert res.conclusive
    assert res.grid_size == 4  # first grid in the schedule


def test_oracle_zero_target():
    res = oracle_membership(ModVector.zero(QQ, 1), [GEN_DIFF], 5)
    assert res.conclusive and res.witness == ()


def test_oracle_sound_for_gf_and_z():
    g = vec(GF(2), 1, [((0,), 1), ((1,), 1)])
    t = vec(GF(2), 1, [((2,), 1), ((5,), 1)])
    res = oracle_membership(t, [g], 6)
    assert res.conclusive
    gz = vec(ZZ, 1, [((0,), 2)])
    assert oracle_membership(vec(ZZ, 1, [((4,), 1)]), [gz], 8).status == "inconclusive"
    assert oracle_membership(vec(ZZ, 1, [((4,), 2)]), [gz], 8).conclusive


def test_random_instance_deterministic():
    prof = InstanceProfile()
    a = random_instance(12, prof)
    b = random_instance(12, prof)
    assert a == b
    assert a != random_instance(13, prof)


def test_random_instances_respect_profile():
    for seed in range(40):
        prof = InstanceProfile(ring=[QQ, GF(2), GF(3), ZZ][seed % 4])
        inst = random_instance(seed, prof)
        assert inst.target.arity <= prof.arity
        for v in (*inst.generators, inst.target):
            assert v.ring == prof.ring
            assert len(v.terms) <= prof.max_support * 4  # combination of few translates
            for p in support_points(v).points:
                assert 0 <= p < prof.point_pool


def test_planted_instances_are_members():
    hits = 0
    for seed in range(30):
        inst = random_instance(seed, InstanceProfile())
        if not inst.planted:
            continue
        hits += 1
        assert membership(inst.target, list(inst.generators)).member
    assert hits > 5


def test_planted_witnesses_found_when_grid_is_big_enough():
    """One-sided completeness: the planted combination lives inside the
    point pool, so a grid covering it must produce a witness."""
    for seed in range(40):
        inst = random_instance(seed, InstanceProfile())
        if not inst.planted:
            continue
        res = oracle_membership(inst.target, list(inst.generators), 10)
        assert res.conclusive, f"seed {seed}"


def test_oracle_agrees_with_decider_on_small_batch():
    for seed in range(25):
        prof = InstanceProfile(ring=[QQ, GF(2), ZZ][seed % 3])
        inst = random_instance(seed, prof)
        decided = membership(inst.target, list(inst.generators))
        res = oracle_membership(inst.target, list(inst.generators), 8)
        if res.conclusive:
            assert decided.member
            total = ModVector.zero(inst.target.ring, inst.target.arity)
            for c, w in res.witness:
                total = total.add(w.scale(c))
            assert total == inst.target
