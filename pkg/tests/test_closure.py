import random

import pytest

from corpus import random_cylinder, random_torus
from fvjones import (EmbeddingViolation, SmoothedState, SurfaceSpec, build_slash_tangle, classify_cylinder,
                     classify_torus, essential_component_count, oracle_census, per_component_flat_crossings,
                     reduce_cylinder, reduce_torus, resolve_state, validate)
from fvjones.closure import BACKSLASH, NONE, SLASH, slash_matching
from fvjones.diagram import Slot
from fvjones.states import state_records

S = SmoothedState.from_text


@pytest.mark.parametrize("text, m_prime, circles", [
    ("r1-r2 l1-l2", 0, 1),
    ("r2-r3 l1-l2 r1-l3", 1, 0),
    ("r1-l1", 1, 0),
    ("r1-l1 r2-l2", 2, 0),
    ("r1-r2 l2-l3 r3-l1", 1, 0),
])
def test_reduce_cylinder(text, m_prime, circles):
    r = reduce_cylinder(S(text))
    assert (r.m_prime, r.reduction_circles) == (m_prime, circles)


def test_reduce_cylinder_rejects_crossed_strands():
    with pytest.raises(EmbeddingViolation):
        reduce_cylinder(S("r1-l2 r2-l1"))


@pytest.mark.parametrize("text, loops, d, census", [
    ("r1-l1", 2, 4, (2, 1)),
    ("r1-l1", 0, 3, (1, 0)),
    ("r1-r2 l1-l2", 3, 4, (4, 0)),
    ("r1-r2 l1-l2", 3, 5, (4, 0)),
    ("r1-l1 r2-l2", 0, 2, (0, 2)),
])
def test_classify_cylinder(text, loops, d, census):
    assert tuple(classify_cylinder(S(text, loops), SurfaceSpec.cylinder(d))) == census


def test_reduce_torus_on_slash_patterns():
    for m1 in range(0, 5):
        for m2 in range(0, 5):
            if m1 == m2 == 0:
                continue
            for chirality in (SLASH, BACKSLASH):
                r = reduce_torus(SmoothedState(tuple(slash_matching(m1, m2, chirality))))
                assert (r.m1, r.m2, r.reduction_circles) == (m1, m2, 0)
                assert r.chirality == (chirality if m1 and m2 else NONE)


def test_reduce_torus_nested_turnbacks():
    r = reduce_torus(S("r1-r2 l1-l2 t1-t2 b1-b2"))
    assert (r.m1, r.m2, r.reduction_circles) == (0, 0, 2)


def test_reduce_torus_corner_circle():
    # arcs cutting off all four corners close into one null circle
    s = S("t1-l1 r1-t2 b2-r2 l2-b1")
    r = reduce_torus(s)
    assert (r.m1, r.m2, r.reduction_circles) == (0, 0, 1)
    t = build_slash_tangle(2, 2, surface=SurfaceSpec.torus(2, 3))
    assert oracle_census(s, t) == classify_torus(s, t.surface) == (1, 0)


def test_reduce_torus_rejects_mixed_pattern():
    with pytest.raises(EmbeddingViolation):
        reduce_torus(S("r1-l1 t1-b1"))


def test_slash_naming():
    assert set(slash_matching(1, 1, SLASH)) == {(Slot("L", 1), Slot("B", 1)), (Slot("T", 1), Slot("R", 1))}
    t = build_slash_tangle(5, 3)
    assert validate(t) == [] and t.crossings == () and len(list(t.boundary())) == 16
    parallel = build_slash_tangle(3, 0, BACKSLASH)
    assert resolve_state(parallel, "").matching == tuple((Slot("L", i), Slot("R", i)) for i in (1, 2, 3))


def test_essential_component_count():
    assert essential_component_count(6, 9) == 3
    assert essential_component_count(1, 0) == 1
    assert essential_component_count(0, 0) == 0


def test_per_component_flat_crossings():
    assert per_component_flat_crossings(1, 0, SurfaceSpec.torus(3, 5)) == 4
    assert per_component_flat_crossings(6, 9, SurfaceSpec.torus(4, 8)) == 3
    assert per_component_flat_crossings(1, 0, SurfaceSpec.cylinder(4)) == 3
    with pytest.raises(ValueError):
        per_component_flat_crossings(0, 0, SurfaceSpec.torus(2, 2))


def test_classify_torus_examples():
    assert tuple(classify_torus(S("r1-l1", 2), SurfaceSpec.torus(3, 5))) == (3, 0)
    big = SmoothedState(tuple(slash_matching(6, 9, SLASH)))
    assert tuple(classify_torus(big, SurfaceSpec.torus(4, 8))) == (0, 3)
    assert tuple(classify_torus(S("r1-r2 l1-l2 t1-t2 b1-b2", 3), SurfaceSpec.torus(2, 2))) == (5, 0)


def test_reduction_is_order_independent():
    rng = random.Random(3)
    for k in range(60):
        t = random_torus(rng) if k % 2 else random_cylinder(rng)
        reduce = reduce_torus if t.surface.is_torus else reduce_cylinder
        for r in state_records(t):
            want = reduce(r.smoothed)
            for _ in range(3):
                got = reduce(r.smoothed, rng=random.Random(rng.random()))
                assert (got.m1, got.m2, got.reduction_circles) == (want.m1, want.m2, want.reduction_circles)


def test_parity_coherence():
    rng = random.Random(4)
    for _ in range(40):
        t = random_torus(rng)
        for r in state_records(t):
            red = reduce_torus(r.smoothed)
            if r.census.e:
                assert per_component_flat_crossings(red.m1, red.m2, t.surface) % 2 == 1
