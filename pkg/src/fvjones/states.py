"""State enumeration, smoothing resolution and the flat-virtual state sum."""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .diagram import CutTangle, Slot, writhe
from .errors import EmbeddingViolation, StateCapExceeded
from .laurent import ComponentCensus, FlatValue, LaurentPoly, fv_add, fv_scale, normalize_census, writhe_prefactor

DEFAULT_CAP = 24

# Slot pairs joined by each smoothing of (p0, p1, p2, p3).
A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


def enumerate_states(n: int, cap: int = DEFAULT_CAP) -> Iterator[str]:
    """All ``2**n`` states as strings over ``"AB"``, in binary counting order.

    Crossing 0 is the most significant position and A counts as 0, so for
    ``n = 2`` the order is AA, AB, BA, BB.
    """
    if n < 0:
        raise ValueError("negative crossing count")
    if n > cap:
        raise StateCapExceeded(n, cap)
    return ("".join(p) for p in itertools.product("AB", repeat=n))


def state_from_index(n: int, k: int) -> str:
    return format(k, f"0{n}b").replace("0", "A").replace("1", "B") if n else ""


def state_exponent(state: str) -> int:
    """alpha(s) - beta(s)."""
    b = state.count("B")
    return len(state) - 2 * b


@dataclass(frozen=True)
class SmoothedState:
    """A crossingless boundary matching plus the closed circles inside the rectangle."""

    matching: tuple[tuple[Slot, Slot], ...]
    interior_loops: int = 0

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.matching))
        object.__setattr__(self, "matching", pairs)

    def partner_map(self) -> dict[Slot, Slot]:
        out = {}
        for u, v in self.matching:
            if u == v or u in out or v in out:
                raise EmbeddingViolation(f"matching is not an involution at {u}")
            out[u] = v
            out[v] = u
        return out

    def slots(self) -> list[Slot]:
        return sorted(s for pair in self.matching for s in pair)

    def side_count(self, side: str) -> int:
        return sum(1 for s in self.slots() if s.side == side)

    @classmethod
    def from_text(cls, text: str, interior_loops: int = 0) -> "SmoothedState":
        """Build from ``"r1-l1 r2-r3"`` style notation."""
        pairs = []
        for tok in text.replace(",", " ").split():
            u, v = tok.split("-")
            pairs.append((Slot.parse(u), Slot.parse(v)))
        return cls(tuple(pairs), interior_loops)

    def __str__(self):
        body = " ".join(f"{u}-{v}" for u, v in self.matching)
        return f"{{{body}}} loops={self.interior_loops}"


class _Resolver:
    """Node numbering for one tangle: boundary ends first, then 4 slots per crossing."""

    def __init__(self, t: CutTangle):
        self.boundary = [slot for slot, _ in t.boundary()]
        nb = len(self.boundary)
        self.nb = nb
        self.size = nb + 4 * len(t.crossings)
        where: dict[int, list[int]] = {}
        for i, (_, end) in enumerate(t.boundary()):
            where.setdefault(end.arc, []).append(i)
        for ci, c in enumerate(t.crossings):
            for k, label in enumerate(c.slots):
                where.setdefault(label, []).append(nb + 4 * ci + k)
        self.arc_edges = [tuple(v) for v in where.values()]
        self.free_loops = t.free_loops
        self.n = len(t.crossings)

    def resolve(self, state: str) -> SmoothedState:
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for u, v in self.arc_edges:
            union(u, v)
        nb = self.nb
        for ci, choice in enumerate(state):
            base = nb + 4 * ci
            for i, j in (A_PAIRS if choice == "A" else B_PAIRS):
                union(base + i, base + j)

        ends: dict[int, list[Slot]] = {}
        for i, slot in enumerate(self.boundary):
            ends.setdefault(find(i), []).append(slot)
        loops = 0
        seen = set()
        for x in range(nb, self.size):
            r = find(x)
            if r not in ends and r not in seen:
                seen.add(r)
                loops += 1
        # every chain through crossings has degree-two interior nodes, so a
        # boundary component is a path with exactly two ends
        pairs = []
        for slots in ends.values():
            if len(slots) != 2:
                raise EmbeddingViolation(f"boundary chain with {len(slots)} ends")
            pairs.append((slots[0], slots[1]))
        return SmoothedState(tuple(pairs), loops + self.free_loops)


@lru_cache(maxsize=64)
def _resolver(t: CutTangle) -> _Resolver:
    return _Resolver(t)


def resolve_state(t: CutTangle, state: str) -> SmoothedState:
    if len(state) != len(t.crossings):
        raise ValueError(f"state has {len(state)} entries, tangle has {len(t.crossings)} crossings")
    return _resolver(t).resolve(state)


class StateRecord(NamedTuple):
    state: str
    exponent: int
    smoothed: SmoothedState
    census: ComponentCensus


def classify(s: SmoothedState, surface) -> ComponentCensus:
    from .closure import classify_cylinder, classify_torus

    if surface.is_torus:
        return classify_torus(s, surface)
    return classify_cylinder(s, surface)


def state_records(t: CutTangle, cap: int = DEFAULT_CAP, start: int = 0, stop: int | None = None,
                  classifier=None) -> Iterator[StateRecord]:
    """Resolve and classify states ``start <= k < stop`` (all by default)."""
    n = len(t.crossings)
    if n > cap:
        raise StateCapExceeded(n, cap)
    classifier = classifier or classify
    stop = 2 ** n if stop is None else stop
    for k in range(start, stop):
        state = state_from_index(n, k)
        smoothed = resolve_state(t, state)
        try:
            census = classifier(smoothed, t.surface)
        except EmbeddingViolation as exc:
            exc.state = state
            raise
        yield StateRecord(state, state_exponent(state), smoothed, census)


def _tally(t: CutTangle, cap: int, start: int, stop: int) -> Counter:
    return Counter((r.exponent, r.census) for r in state_records(t, cap, start, stop))


def bracket_from_records(records) -> FlatValue:
    return _value_from_tally(Counter((r.exponent, r.census) for r in records))


def _value_from_tally(tally: Counter) -> FlatValue:
    total = FlatValue()
    for (exponent, census), count in sorted(tally.items()):
        total = fv_add(total, fv_scale(LaurentPoly.monomial(exponent, count), normalize_census(census)))
    return total


def is_empty(t: CutTangle) -> bool:
    return not (t.crossings or t.free_loops or any(True for _ in t.boundary()))


def flat_bracket(t: CutTangle, cap: int = DEFAULT_CAP, jobs: int = 1) -> FlatValue:
    """Sum of a^(alpha - beta) times the normalized census over all states."""
    n = len(t.crossings)
    if n > cap:
        raise StateCapExceeded(n, cap)
    if is_empty(t):
        raise ValueError("the empty diagram has no bracket value")
    total = 2 ** n
    if jobs <= 1 or total < 64:
        return _value_from_tally(_tally(t, cap, 0, total))
    chunk = -(-total // (jobs * 4))
    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    tally: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_tally, t, cap, lo, hi) for lo, hi in bounds]
        for f in futures:
            tally.update(f.result())
    return _value_from_tally(tally)


def flat_jones(t: CutTangle, cap: int = DEFAULT_CAP, jobs: int = 1) -> FlatValue:
    return fv_scale(writhe_prefactor(writhe(t)), flat_bracket(t, cap, jobs))


def state_contribution(t: CutTangle, record: StateRecord, normalized: bool = True) -> FlatValue:
    """One summand of the bracket, or of J_f when ``normalized``."""
    value = fv_scale(LaurentPoly.monomial(record.exponent), normalize_census(record.census))
    if normalized:
        value = fv_scale(writhe_prefactor(writhe(t)), value)
    return value
