"""Closing smoothed states with Cy / T and counting trivial circles and flat eights.

The reduction removes a turnback between two adjacent ends of one side.  The
closure glues those ends to their opposites, so the opposites become joined
by an outside arc: either they were already matched (a circle closes) or the
arc is spliced into the matching.  What survives is a family of parallel
through strands, which close up to a torus-link type curve.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import TYPE_CHECKING

from .diagram import CutTangle, End, Slot, SurfaceSpec
from .errors import EmbeddingViolation
from .laurent import ComponentCensus

if TYPE_CHECKING:
    from .states import SmoothedState

SLASH = "slash"
BACKSLASH = "backslash"
NONE = "none"


@dataclass(frozen=True)
class ReducedMatching:
    m1: int  # surviving right/left ends per side (m' on the cylinder)
    m2: int  # surviving top/bottom ends per side
    chirality: str
    reduction_circles: int

    @property
    def m_prime(self) -> int:
        return self.m1


def slash_matching(m1: int, m2: int, chirality: str) -> list[tuple[Slot, Slot]]:
    """Matching of the crossingless tangle D_s(m1, m2) or D_b(m1, m2).

    ``slash`` cuts off the top-right and bottom-left corners (for (1, 1): r1-t1
    and b1-l1); ``backslash`` is its reflection.  With m1 or m2 zero both are
    parallel through strands.
    """
    L = [Slot("L", i) for i in range(1, m1 + 1)]
    R = [Slot("R", i) for i in range(1, m1 + 1)]
    T = [Slot("T", j) for j in range(1, m2 + 1)]
    B = [Slot("B", j) for j in range(1, m2 + 1)]
    if chirality == SLASH:
        first = L[::-1] + T
        second = B + R[::-1]
    elif chirality == BACKSLASH:
        first = L + B
        second = T + R
    else:
        raise ValueError(f"unknown chirality {chirality!r}")
    return list(zip(first, second))


def _reduce(partner: dict[Slot, Slot], h: list[int], v: list[int], sides: str,
            rng: random.Random | None) -> int:
    """Delete adjacent same-side turnbacks until none are left; returns circles closed.

    ``h`` / ``v`` are the surviving indices on the right/left and top/bottom
    sides (always the same on both sides of a pair).  Mutates its arguments.
    """
    circles = 0
    while True:
        candidates = []
        for side in sides:
            idx = h if side in "RL" else v
            for i, j in zip(idx, idx[1:]):
                if partner.get(Slot(side, i)) == Slot(side, j):
                    candidates.append((side, i, j))
                    if rng is None:
                        break
            if candidates and rng is None:
                break
        if not candidates:
            return circles
        side, i, j = rng.choice(candidates) if rng else candidates[0]
        u, w = Slot(side, i), Slot(side, j)
        uo, wo = u.opposite, w.opposite
        for s in (u, w):
            del partner[s]
        if partner[uo] == wo:
            circles += 1
            del partner[uo], partner[wo]
        else:
            x, y = partner.pop(uo), partner.pop(wo)
            partner[x] = y
            partner[y] = x
        idx = h if side in "RL" else v
        idx.remove(i)
        idx.remove(j)


def reduce_cylinder(s: "SmoothedState", m: int | None = None, rng: random.Random | None = None) -> ReducedMatching:
    partner = s.partner_map()
    if m is None:
        m = s.side_count("R")
    if any(slot.side in "TB" for slot in partner):
        raise EmbeddingViolation("cylinder state has top/bottom ends")
    h = list(range(1, m + 1))
    circles = _reduce(partner, h, [], "RL", rng)
    for i in h:
        if partner.get(Slot("R", i)) != Slot("L", i):
            raise EmbeddingViolation(
                f"surviving strands are not order preserving: r{i}-{partner.get(Slot('R', i))}")
    return ReducedMatching(len(h), 0, NONE, circles)


def _corner_circle(partner, h, v) -> bool:
    """Remove the innermost four corner arcs if all four corners are cut.

    Such arcs close up to a small circle around the corner of the rectangle
    and have no same-side turnback to reduce.
    """
    if len(h) < 2 or len(v) < 2:
        return False
    arcs = [
        (Slot("T", v[0]), Slot("L", h[0])),
        (Slot("R", h[0]), Slot("T", v[-1])),
        (Slot("B", v[-1]), Slot("R", h[-1])),
        (Slot("L", h[-1]), Slot("B", v[0])),
    ]
    if not all(partner.get(x) == y for x, y in arcs):
        return False
    for x, y in arcs:
        del partner[x], partner[y]
    h[:] = h[1:-1]
    v[:] = v[1:-1]
    return True


def reduce_torus(s: "SmoothedState", m1: int | None = None, m2: int | None = None,
                 rng: random.Random | None = None) -> ReducedMatching:
    partner = s.partner_map()
    m1 = s.side_count("R") if m1 is None else m1
    m2 = s.side_count("T") if m2 is None else m2
    h = list(range(1, m1 + 1))
    v = list(range(1, m2 + 1))
    circles = 0
    while True:
        circles += _reduce(partner, h, v, "RLTB", rng)
        if not _corner_circle(partner, h, v):
            break
        circles += 1

    # relabel survivors 1..m' and compare with the two parallel patterns
    rank_h = {i: k for k, i in enumerate(h, start=1)}
    rank_v = {j: k for k, j in enumerate(v, start=1)}

    def rank(slot):
        return Slot(slot.side, (rank_h if slot.side in "RL" else rank_v)[slot.index])

    survived = {tuple(sorted((rank(x), rank(y)))) for x, y in partner.items()}
    a, b = len(h), len(v)
    for chirality in (SLASH, BACKSLASH):
        if survived == {tuple(sorted(p)) for p in slash_matching(a, b, chirality)}:
            return ReducedMatching(a, b, chirality if a and b else NONE, circles)
    raise EmbeddingViolation(f"surviving matching on ({a}, {b}) ends is neither D_s nor D_b")


def essential_component_count(m1p: int, m2p: int) -> int:
    return gcd(m1p, m2p)


def per_component_flat_crossings(m1p: int, m2p: int, spec: SurfaceSpec) -> int:
    """Flat self-crossings of each essential component in the image diagram."""
    if spec.is_torus:
        if m1p == 0 and m2p == 0:
            raise ValueError("no essential component for (0, 0)")
        return gcd(spec.d1 * m2p, spec.d2 * m1p) // gcd(m1p, m2p) - 1
    if m1p < 1:
        raise ValueError("cylinder needs at least one through strand")
    return spec.d - 1


def classify_cylinder(s: "SmoothedState", spec: SurfaceSpec) -> ComponentCensus:
    r = reduce_cylinder(s)
    base = s.interior_loops + r.reduction_circles
    if r.m1 == 0:
        return ComponentCensus(base, 0)
    if per_component_flat_crossings(r.m1, 0, spec) % 2 == 0:
        return ComponentCensus(base + r.m1, 0)
    return ComponentCensus(base, r.m1)


def classify_torus(s: "SmoothedState", spec: SurfaceSpec) -> ComponentCensus:
    r = reduce_torus(s)
    base = s.interior_loops + r.reduction_circles
    n = essential_component_count(r.m1, r.m2)
    if n == 0:
        return ComponentCensus(base, 0)
    # an even number of flat self-crossings unwinds to a plain circle
    if per_component_flat_crossings(r.m1, r.m2, spec) % 2 == 0:
        return ComponentCensus(base + n, 0)
    return ComponentCensus(base, n)


def _orient_crossingless(pairs: list[tuple[Slot, Slot]]) -> dict[Slot, bool]:
    """Orient closed-up strands coherently; returns ``slot -> leaves rectangle``."""
    partner = {}
    for x, y in pairs:
        partner[x] = y
        partner[y] = x
    out: dict[Slot, bool] = {}
    for start in sorted(partner):
        if start in out:
            continue
        cur = start
        while cur not in out:
            nxt = partner[cur]
            out[cur] = False
            out[nxt] = True
            cur = nxt.opposite
    return out


def build_slash_tangle(m1: int, m2: int, chirality: str = SLASH,
                       surface: SurfaceSpec | None = None) -> CutTangle:
    """Crossingless torus tangle D_s / D_b whose T-closure is an (m1, +-m2) torus link."""
    if m1 < 0 or m2 < 0 or (m1 == 0 and m2 == 0):
        raise ValueError("need m1, m2 >= 0, not both zero")
    surface = surface or SurfaceSpec.torus(2, 2)
    pairs = slash_matching(m1, m2, chirality)
    direction = _orient_crossingless(pairs)
    label = {}
    for k, (x, y) in enumerate(pairs, start=1):
        label[x] = label[y] = k

    def side(letter, n):
        return tuple(End(label[Slot(letter, i)], direction[Slot(letter, i)]) for i in range(1, n + 1))

    return CutTangle(surface, (), side("R", m1), side("L", m1), side("T", m2), side("B", m2))
