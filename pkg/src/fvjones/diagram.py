"""Cut-tangle data model, text format, validation, orientation and writhe.

A cut tangle is a classical diagram drawn in the fundamental rectangle of a
cylinder or torus.  Strands leave the rectangle through labeled ends on the
right and left sides (and, on the torus, the top and bottom sides); gluing
right ``i`` to left ``i`` and top ``j`` to bottom ``j`` recovers the diagram
on the surface.

Crossings use a PD-style slot list read counterclockwise from the incoming
under-arc.  The over-strand enters through slot ``over_in`` (1 or 3) and
leaves through the opposite slot.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .errors import InvalidTangle, TangleSyntaxError

SIDES = ("R", "L", "T", "B")
SIDE_NAMES = {"R": "right", "L": "left", "T": "top", "B": "bottom"}
OPPOSITE_SIDE = {"R": "L", "L": "R", "T": "B", "B": "T"}


class Slot(NamedTuple):
    """A boundary end: side letter and 1-based position along that side."""

    side: str
    index: int

    def __str__(self):
        return f"{self.side.lower()}{self.index}"

    @property
    def opposite(self) -> "Slot":
        """The end this one is glued to by the Cy / T closure."""
        return Slot(OPPOSITE_SIDE[self.side], self.index)

    @classmethod
    def parse(cls, text: str) -> "Slot":
        m = re.fullmatch(r"([rltbRLTB])(\d+)", text.strip())
        if not m:
            raise ValueError(f"bad slot {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str
    d: int | None = None
    d1: int | None = None
    d2: int | None = None

    @classmethod
    def cylinder(cls, d: int) -> "SurfaceSpec":
        return cls("cylinder", d=d)

    @classmethod
    def torus(cls, d1: int, d2: int) -> "SurfaceSpec":
        return cls("torus", d1=d1, d2=d2)

    @property
    def is_torus(self) -> bool:
        return self.kind == "torus"

    def __str__(self):
        if self.is_torus:
            return f"torus d1={self.d1} d2={self.d2}"
        return f"cylinder d={self.d}"


@dataclass(frozen=True)
class End:
    """One boundary entry: the arc reaching the side, and whether it leaves."""

    arc: int
    out: bool

    def __str__(self):
        return f"{self.arc}{'+' if self.out else '-'}"


@dataclass(frozen=True)
class CrossingRecord:
    id: int
    slots: tuple[int, int, int, int]
    over_in: int

    @property
    def over_out(self) -> int:
        return 4 - self.over_in

    def head_slots(self) -> tuple[int, int]:
        """Slot indices where an arc ends (enters the crossing)."""
        return (0, self.over_in)

    def tail_slots(self) -> tuple[int, int]:
        return (2, self.over_out)


@dataclass(frozen=True)
class CutTangle:
    surface: SurfaceSpec
    crossings: tuple[CrossingRecord, ...] = ()
    right: tuple[End, ...] = ()
    left: tuple[End, ...] = ()
    top: tuple[End, ...] = ()
    bottom: tuple[End, ...] = ()
    free_loops: int = 0
    arcs: frozenset[int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        labels = {e.arc for side in (self.right, self.left, self.top, self.bottom) for e in side}
        for c in self.crossings:
            labels.update(c.slots)
        object.__setattr__(self, "arcs", frozenset(labels))

    @property
    def m(self) -> int:
        return len(self.right)

    m1 = m

    @property
    def m2(self) -> int:
        return len(self.top)

    def side(self, letter: str) -> tuple[End, ...]:
        return {"R": self.right, "L": self.left, "T": self.top, "B": self.bottom}[letter]

    def boundary(self):
        """Yield ``(Slot, End)`` for every boundary end, sides in R, L, T, B order."""
        for letter in SIDES:
            for i, end in enumerate(self.side(letter), start=1):
                yield Slot(letter, i), end


@dataclass(frozen=True)
class Violation:
    code: str
    fields: tuple[tuple[str, object], ...] = ()

    def __str__(self):
        return " ".join([self.code] + [f"{k}={v}" for k, v in self.fields])


def _violation(code, **fields):
    return Violation(code, tuple(fields.items()))


def crossing_sign(c: CrossingRecord) -> int:
    return 1 if c.over_in == 3 else -1


def writhe(t: CutTangle) -> int:
    return sum(crossing_sign(c) for c in t.crossings)


def mirror(t: CutTangle) -> CutTangle:
    """Swap over and under at every crossing.

    The old over-strand becomes the under-strand, so the slot list is
    re-anchored at its incoming slot.
    """
    flipped = []
    for c in t.crossings:
        k = c.over_in
        slots = c.slots[k:] + c.slots[:k]
        flipped.append(CrossingRecord(c.id, slots, 4 - k))
    return replace(t, crossings=tuple(flipped))


def validate(t: CutTangle) -> list[Violation]:
    out = []
    s = t.surface
    if s.kind == "cylinder":
        if s.d is None or s.d < 2:
            out.append(_violation("E_SURFACE", d=s.d))
        if t.top or t.bottom:
            out.append(_violation("E_SIDES", kind="cylinder"))
    elif s.kind == "torus":
        if s.d1 is None or s.d2 is None or s.d1 < 2 or s.d2 < 2:
            out.append(_violation("E_SURFACE", d1=s.d1, d2=s.d2))
    else:
        out.append(_violation("E_SURFACE", kind=s.kind))

    if len(t.right) != len(t.left):
        out.append(_violation("E_SIDE_COUNT", sides="right/left", counts=f"{len(t.right)}/{len(t.left)}"))
    if len(t.top) != len(t.bottom):
        out.append(_violation("E_SIDE_COUNT", sides="top/bottom", counts=f"{len(t.top)}/{len(t.bottom)}"))

    if t.free_loops < 0:
        out.append(_violation("E_LOOPS", loops=t.free_loops))

    counts: Counter[int] = Counter()
    heads: Counter[int] = Counter()
    for c in t.crossings:
        if c.over_in not in (1, 3):
            out.append(_violation("E_OVER_SLOT", crossing=c.id, over=c.over_in))
            continue
        counts.update(c.slots)
        heads.update(c.slots[i] for i in c.head_slots())
    for _, end in t.boundary():
        counts[end.arc] += 1
        if end.out:
            heads[end.arc] += 1

    for label in sorted(counts):
        if label <= 0:
            out.append(_violation("E_LABEL", arc=label))
        if counts[label] != 2:
            out.append(_violation("E_ARC_MULT", arc=label, count=counts[label]))
        elif heads[label] != 1:
            out.append(_violation("E_ORIENT", arc=label))

    pairs = [("right", t.right, t.left)]
    if t.surface.is_torus:
        pairs.append(("top", t.top, t.bottom))
    for name, near, far in pairs:
        for i, (a, b) in enumerate(zip(near, far), start=1):
            if a.out == b.out:
                out.append(_violation("E_CLOSURE", side=name, index=i))
    return out


# ---------------------------------------------------------------------------
# text format

_END_RE = re.compile(r"(\d+)([+-])")
_INT = r"(-?\d+)"


def _tokens(line: str):
    """Split on whitespace, keeping 1-based column of each token."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_tangle(text: str, check: bool = True) -> CutTangle:
    """Parse the line format; with ``check`` raise InvalidTangle on any violation."""
    surface = None
    sides: dict[str, tuple[End, ...]] = {}
    crossings = []
    loops = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = _tokens(line)
        head, col = toks[0]

        def fail(msg, column=col):
            raise TangleSyntaxError(msg, lineno, column)

        if head == "surface":
            if surface is not None:
                fail("duplicate surface line")
            rest = " ".join(t for t, _ in toks[1:])
            if m := re.fullmatch(r"cylinder d=" + _INT, rest):
                surface = SurfaceSpec.cylinder(int(m.group(1)))
            elif m := re.fullmatch(r"torus d1=" + _INT + r" d2=" + _INT, rest):
                surface = SurfaceSpec.torus(int(m.group(1)), int(m.group(2)))
            else:
                fail("expected 'cylinder d=<int>' or 'torus d1=<int> d2=<int>'",
                     toks[1][1] if len(toks) > 1 else col + len(head))
        elif re.match(r"(right|left|top|bottom):", head):
            name, _, first = head.partition(":")
            letter = name[0].upper()
            if letter in sides:
                fail(f"duplicate {name} line")
            items = []
            if first:
                items.append((first, col + len(name) + 1))
            items.extend(toks[1:])
            ends = []
            for tok, c in items:
                m = _END_RE.fullmatch(tok)
                if not m:
                    fail(f"expected <arc><+|->, got {tok!r}", c)
                ends.append(End(int(m.group(1)), m.group(2) == "+"))
            sides[letter] = tuple(ends)
        elif head == "X":
            if len(toks) != 6:
                fail("crossing line needs four arc labels and over=<1|3>")
            labels = []
            for tok, c in toks[1:5]:
                if not re.fullmatch(r"\d+", tok):
                    fail(f"expected arc label, got {tok!r}", c)
                labels.append(int(tok))
            tok, c = toks[5]
            m = re.fullmatch(r"over=(\d+)", tok)
            if not m:
                fail(f"expected over=<1|3>, got {tok!r}", c)
            crossings.append(CrossingRecord(len(crossings), tuple(labels), int(m.group(1))))
        elif head == "loops":
            if loops is not None:
                fail("duplicate loops line")
            if len(toks) != 2 or not re.fullmatch(r"\d+", toks[1][0]):
                fail("expected 'loops <count>'")
            loops = int(toks[1][0])
        else:
            fail(f"unknown directive {head!r}")

    if surface is None:
        raise TangleSyntaxError("missing surface line", 1, 1)
    for letter in ("R", "L"):
        if letter not in sides:
            raise TangleSyntaxError(f"missing {SIDE_NAMES[letter]} line", 1, 1)
    if surface.is_torus:
        for letter in ("T", "B"):
            if letter not in sides:
                raise TangleSyntaxError(f"missing {SIDE_NAMES[letter]} line (torus)", 1, 1)
    elif "T" in sides or "B" in sides:
        raise TangleSyntaxError("top/bottom lines are only allowed on a torus", 1, 1)

    t = CutTangle(
        surface=surface,
        crossings=tuple(crossings),
        right=sides["R"],
        left=sides["L"],
        top=sides.get("T", ()),
        bottom=sides.get("B", ()),
        free_loops=loops or 0,
    )
    violations = validate(t) if check else []
    if violations:
        raise InvalidTangle(violations)
    return t


def serialize(t: CutTangle) -> str:
    lines = [f"surface {t.surface}"]
    names = ["R", "L"] + (["T", "B"] if t.surface.is_torus else [])
    for letter in names:
        ends = " ".join(str(e) for e in t.side(letter))
        lines.append(f"{SIDE_NAMES[letter]}: {ends}".rstrip())
    for c in t.crossings:
        lines.append("X " + " ".join(map(str, c.slots)) + f" over={c.over_in}")
    if t.free_loops:
        lines.append(f"loops {t.free_loops}")
    return "\n".join(lines) + "\n"
