"""Build cut tangles by sweeping the rectangle from left to right.

A word is a sequence of elementary pieces acting on the stack of strand
positions (0 = top):

    ("X", i, down_over)   crossing of positions i and i+1; the strand moving
                          down (i -> i+1) passes over iff ``down_over``
    ("cup", i)            a new turnback opens at positions i, i+1
    ("cap", i)            positions i and i+1 are joined and close off
    ("top", "in")         a strand enters through the top side at position 0
    ("top", "out")        the strand at position 0 leaves through the top side
    ("bottom", ...)       same at the last position (top/bottom: torus only)

Any word produces a planar tangle, so words are the test generator for
random valid diagrams.  Orientations are chosen per closed-up component.
"""

from __future__ import annotations

import random
from dataclasses import replace

from .diagram import CrossingRecord, CutTangle, End, SurfaceSpec

# geometric ports of a crossing, listed counterclockwise
_CCW = ("NW", "SW", "SE", "NE")


def build(word, surface: SurfaceSpec, m: int, rng: random.Random | None = None,
          free_loops: int = 0, crossing_rank=None) -> CutTangle:
    """Turn a sweep word into a CutTangle with ``m`` ends on the left side.

    Component orientations are random when ``rng`` is given, otherwise every
    component is oriented the way it is first traced.  Tracing starts at the
    boundary ends, then at crossings in order of ``crossing_rank`` (default:
    their position in the word), so two words related by an inserted move
    get matching orientations when the new crossings are ranked last.
    """
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ends: dict[int, list] = {}
    counter = iter(range(10 ** 9))

    def new_segment(*ports):
        s = next(counter)
        parent[s] = s
        ends[s] = list(ports)
        return s

    pos = [new_segment(("L", i)) for i in range(1, m + 1)]
    crossings = []  # (down_over,)
    n_top = n_bottom = 0
    loops = free_loops

    def attach(seg, port):
        ends[find(seg)].append(port)

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
        ends[rb].extend(ends.pop(ra))
        return False

    for piece in word:
        kind = piece[0]
        if kind == "X":
            _, i, down_over = piece
            if not 0 <= i < len(pos) - 1:
                raise ValueError(f"crossing at {i} with {len(pos)} strands")
            c = len(crossings)
            crossings.append(down_over)
            attach(pos[i], ("X", c, "NW"))
            attach(pos[i + 1], ("X", c, "SW"))
            pos[i] = new_segment(("X", c, "NE"))
            pos[i + 1] = new_segment(("X", c, "SE"))
        elif kind == "cup":
            i = piece[1]
            if not 0 <= i <= len(pos):
                raise ValueError(f"cup at {i} with {len(pos)} strands")
            s = new_segment()
            pos[i:i] = [s, s]
        elif kind == "cap":
            i = piece[1]
            if not 0 <= i < len(pos) - 1:
                raise ValueError(f"cap at {i} with {len(pos)} strands")
            a, b = pos[i], pos[i + 1]
            closed = join(a, b)
            if closed and not ends[find(a)]:
                loops += 1
                del ends[find(a)]
            del pos[i:i + 2]
        elif kind in ("top", "bottom"):
            letter = "T" if kind == "top" else "B"
            if letter == "T":
                n_top += 1
                idx, at = n_top, 0
            else:
                n_bottom += 1
                idx, at = n_bottom, len(pos)
            if piece[1] == "in":
                pos.insert(at, new_segment((letter, idx)))
            else:
                if not pos:
                    raise ValueError("no strand to leave the rectangle")
                at = 0 if letter == "T" else len(pos) - 1
                attach(pos.pop(at), (letter, idx))
        else:
            raise ValueError(f"unknown piece {piece!r}")

    if (n_top or n_bottom) and not surface.is_torus:
        raise ValueError("top/bottom pieces need a torus surface")
    if len(pos) != m:
        raise ValueError(f"left has {m} ends, right has {len(pos)}")
    if n_top != n_bottom:
        raise ValueError(f"top has {n_top} ends, bottom has {n_bottom}")
    for i, seg in enumerate(pos, start=1):
        attach(seg, ("R", i))

    arcs = [ports for root, ports in ends.items() if find(root) == root and ports]
    rank = list(range(len(crossings))) if crossing_rank is None else list(crossing_rank)
    if len(rank) != len(crossings):
        raise ValueError(f"crossing_rank has {len(rank)} entries for {len(crossings)} crossings")
    return _orient(arcs, crossings, surface, m, len(pos), n_top, n_bottom, loops, rng, rank)


def _orient(arcs, crossings, surface, m_left, m_right, n_top, n_bottom, loops, rng, rank):
    arc_of = {}
    other_end = {}
    for k, ports in enumerate(arcs):
        if len(ports) != 2:
            raise AssertionError(f"arc with {len(ports)} ends")
        a, b = ports
        arc_of[a] = arc_of[b] = k
        other_end[a], other_end[b] = b, a

    def through(port):
        if port[0] == "X":
            _, c, name = port
            return ("X", c, {"NW": "SE", "SE": "NW", "SW": "NE", "NE": "SW"}[name])
        side, i = port
        return ({"R": "L", "L": "R", "T": "B", "B": "T"}[side], i)

    head_of = {}  # arc index -> port at its head
    visited = set()

    def start_key(port):
        if port[0] == "X":
            return (1, rank[port[1]], port[2])
        return (0, port[0], port[1])

    order = sorted(other_end, key=start_key)
    for start in order:
        if start in visited:
            continue
        cycle = []
        cur = start
        while cur not in visited:
            nxt = other_end[cur]
            visited.update((cur, nxt))
            cycle.append((cur, nxt))
            cur = through(nxt)
        if rng is not None and rng.random() < 0.5:
            cycle = [(b, a) for a, b in cycle]
        for tail, head in cycle:
            head_of[arc_of[tail]] = head

    labels = {}
    for k in range(len(arcs)):
        labels[k] = len(labels) + 1

    def label(port):
        return labels[arc_of[port]]

    def is_head(port):
        return head_of[arc_of[port]] == port

    records = []
    for c, down_over in enumerate(crossings):
        ports = [("X", c, name) for name in _CCW]
        over_pair = {"NW", "SE"} if down_over else {"SW", "NE"}
        under_in = next(p for p in ports if p[2] not in over_pair and is_head(p))
        k = ports.index(under_in)
        rotated = ports[k:] + ports[:k]
        over_in = next(j for j in (1, 3) if is_head(rotated[j]))
        records.append(CrossingRecord(c, tuple(label(p) for p in rotated), over_in))

    def side(letter, n):
        return tuple(End(label((letter, i)), is_head((letter, i))) for i in range(1, n + 1))

    return CutTangle(surface, tuple(records), side("R", m_right), side("L", m_left),
                     side("T", n_top), side("B", n_bottom), loops)


# ---------------------------------------------------------------------------
# random words


def random_word(rng: random.Random, m1: int, n_crossings: int, m2: int = 0,
                max_width: int = 6, loop_rate: float = 0.05) -> list:
    """Random sweep word with ``m1`` ends left and right and ``m2`` top and bottom."""
    events = ["X"] * n_crossings + ["top"] * m2 + ["bottom"] * m2
    rng.shuffle(events)
    word: list = []
    k = m1

    def churn():
        nonlocal k
        # optional cups and caps between events
        while rng.random() < 0.3:
            if k >= 2 and (k >= max_width or rng.random() < 0.5):
                word.append(("cap", rng.randrange(k - 1)))
                k -= 2
            else:
                word.append(("cup", rng.randrange(k + 1)))
                k += 2

    for ev in events:
        churn()
        if rng.random() < loop_rate:
            i = rng.randrange(k + 1)
            word += [("cup", i), ("cap", i)]
        if ev == "X":
            while k < 2:
                word.append(("cup", rng.randrange(k + 1)))
                k += 2
            word.append(("X", rng.randrange(k - 1), rng.random() < 0.5))
        else:
            if k == 0 or (k < max_width and rng.random() < 0.5):
                word.append((ev, "in"))
                k += 1
            else:
                word.append((ev, "out"))
                k -= 1
    churn()
    while k > m1:
        word.append(("cap", rng.randrange(k - 1)))
        k -= 2
    while k < m1:
        word.append(("cup", rng.randrange(k + 1)))
        k += 2
    return word


def random_tangle(rng: random.Random, surface: SurfaceSpec, m1: int, n_crossings: int,
                  m2: int = 0, **kw) -> tuple[CutTangle, list]:
    word = random_word(rng, m1, n_crossings, m2, **kw)
    return build(word, surface, m1, rng), word


# ---------------------------------------------------------------------------
# Reidemeister moves


def widths(word, m: int) -> list[int]:
    """Strand count before each piece, plus the final count."""
    out = [m]
    k = m
    for piece in word:
        kind = piece[0]
        if kind == "cup":
            k += 2
        elif kind == "cap":
            k -= 2
        elif kind in ("top", "bottom"):
            k += 1 if piece[1] == "in" else -1
        out.append(k)
    return out


def inverse(pieces):
    """Inverse of a braid-like run of crossings (reverse, swap over/under)."""
    return [("X", i, not over) for _, i, over in reversed(pieces)]


def r2_insert(word, at: int, i: int, down_over: bool = True):
    return word[:at] + [("X", i, down_over), ("X", i, not down_over)] + word[at:]


def r3_pair(word, at: int, i: int, heights):
    """Two words that differ by exactly one third Reidemeister move.

    Both insert a three-crossing braid on positions i, i+1, i+2 followed by
    the inverse of the first; the second then has the braid relation
    applied to its first three crossings.  ``heights`` ranks the three
    strands entering at positions i, i+1, i+2.
    """
    hp, hq, hr = heights
    # s_i s_{i+1} s_i: P/Q, then P/R, then Q/R
    left = [("X", i, hp > hq), ("X", i + 1, hp > hr), ("X", i, hq > hr)]
    # s_{i+1} s_i s_{i+1}: Q/R, then P/R, then P/Q
    right = [("X", i + 1, hq > hr), ("X", i, hp > hr), ("X", i + 1, hp > hq)]
    tail = inverse(left)
    return word[:at] + left + tail + word[at:], word[:at] + right + tail + word[at:]


KINKS = ("under_pos", "under_neg", "over_pos", "over_neg")


def add_kink(t: CutTangle, arc: int, kind: str) -> CutTangle:
    """Insert a first Reidemeister curl into ``arc``.

    ``kind`` says whether the strand first passes under or over itself and
    the sign of the new crossing.
    """
    if arc not in t.arcs:
        raise ValueError(f"no arc {arc}")
    loop, after = max(t.arcs) + 1, max(t.arcs) + 2
    # the arc keeps its tail; the old head occurrence is renamed to ``after``
    slots = {
        "under_neg": (arc, loop, loop, after),
        "under_pos": (arc, after, loop, loop),
        "over_neg": (loop, arc, after, loop),
        "over_pos": (loop, loop, after, arc),
    }[kind]
    over_in = 3 if kind.endswith("pos") else 1

    def rename_head(slots_, over):
        heads = (0, over)
        return tuple(after if (x == arc and j in heads) else x for j, x in enumerate(slots_))

    crossings = []
    for c in t.crossings:
        crossings.append(replace(c, slots=rename_head(c.slots, c.over_in)))
    sides = {}
    for letter in ("R", "L", "T", "B"):
        sides[letter] = tuple(End(after, True) if (e.arc == arc and e.out) else e for e in t.side(letter))
    crossings.append(CrossingRecord(len(crossings), slots, over_in))
    return replace(t, crossings=tuple(crossings), right=sides["R"], left=sides["L"],
                   top=sides["T"], bottom=sides["B"])
