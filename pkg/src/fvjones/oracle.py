"""Independent classification by tracing closed components on the surface.

Instead of reducing turnbacks, every component of (matching + closure arcs)
is followed around and its homology class read off from the seams it
crosses.  A closure arc traversed right-to-left adds +1 to the longitude
``p``; top-to-bottom adds +1 to the meridian ``q``.  On the cylinder only
``p`` exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import TYPE_CHECKING, NamedTuple

from .diagram import CutTangle, Slot
from .errors import EmbeddingViolation
from .laurent import ComponentCensus

if TYPE_CHECKING:
    from .states import SmoothedState

INTERIOR = "interior"
CLOSURE = "closure"

_SEAM = {("R", "L"): (1, 0), ("L", "R"): (-1, 0), ("T", "B"): (0, 1), ("B", "T"): (0, -1)}


@dataclass(frozen=True)
class TracedComponent:
    cycle: tuple[tuple[Slot, str], ...]
    homology: int | tuple[int, int]

    @property
    def essential(self) -> bool:
        return self.homology not in (0, (0, 0))


def _canonical_sign(pq):
    p, q = pq
    return (-p, -q) if (p, q) < (0, 0) else (p, q)


def trace_components(s: "SmoothedState", t: CutTangle) -> list[TracedComponent]:
    partner = s.partner_map()
    expected = {slot for slot, _ in t.boundary()}
    if set(partner) != expected:
        raise EmbeddingViolation("matching does not cover the tangle's boundary ends")

    torus = t.surface.is_torus
    seen: set[Slot] = set()
    comps = []
    for start in sorted(partner):
        if start in seen:
            continue
        steps = []
        p = q = 0
        cur = start
        while True:
            nxt = partner[cur]
            steps.append((cur, INTERIOR))
            steps.append((nxt, CLOSURE))
            seen.update((cur, nxt))
            dp, dq = _SEAM[(nxt.side, nxt.opposite.side)]
            p += dp
            q += dq
            cur = nxt.opposite
            if cur == start:
                break
            if cur in seen:
                raise EmbeddingViolation(f"closure revisits {cur} before closing")
        comps.append(TracedComponent(tuple(steps), (p, q) if torus else p))
    null = (0, 0) if torus else 0
    comps.extend(TracedComponent((), null) for _ in range(s.interior_loops))

    essential = [c for c in comps if c.essential]
    if torus:
        classes = set()
        for c in essential:
            if gcd(*c.homology) != 1:
                raise EmbeddingViolation(f"non-primitive class {c.homology}: component is not embedded")
            classes.add(_canonical_sign(c.homology))
        if len(classes) > 1:
            raise EmbeddingViolation(f"essential components in different classes {sorted(classes)}")
    else:
        for c in essential:
            if abs(c.homology) != 1:
                raise EmbeddingViolation(f"cylinder component winds {c.homology} times")
    return comps


def oracle_census(s: "SmoothedState", t: CutTangle) -> ComponentCensus:
    comps = trace_components(s, t)
    essential = [c for c in comps if c.essential]
    trivial = len(comps) - len(essential)
    n = len(essential)
    if n == 0:
        return ComponentCensus(trivial, 0)
    spec = t.surface
    if spec.is_torus:
        p0, q0 = essential[0].homology
        crossings = gcd(spec.d1 * abs(q0), spec.d2 * abs(p0)) - 1
    else:
        crossings = spec.d - 1
    if crossings % 2 == 0:
        return ComponentCensus(trivial + n, 0)
    return ComponentCensus(trivial, n)


class BlockReport(NamedTuple):
    v1: int
    v2: int
    v3: int
    exact: bool
    ok: bool


def block_identities(d1: int, d2: int, m1: int, m2: int) -> BlockReport:
    """Block-crossing counts of the torus-link curves and their consistency.

    v1: blocks passed through the left side before returning to the start
    block; v2: blocks between returns of the link curve; v3: left-side
    crossings per component, (G / g) * v2.
    """
    if min(d1, d2, m1, m2) < 1:
        raise ValueError("all arguments must be positive")
    G = gcd(d1 * m2, d2 * m1)
    g = gcd(m1, m2)
    N = d1 * m2 * d2 * m1
    divisions = [(N, G * g), (N, G * G), (G, g), (d1 * m2, G), (d2 * m1, G)]
    exact = all(num % den == 0 for num, den in divisions)
    v1 = N // (G * g)
    v2 = N // (G * G)
    v3 = (G // g) * v2
    # v2 also equals the lcm-style count on the reduced grid
    a, b = d1 * m2 // G, d2 * m1 // G
    ok = exact and v1 == v3 and v2 == a * b // gcd(a, b)
    return BlockReport(v1, v2, v3, exact, ok)
