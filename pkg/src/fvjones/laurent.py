"""Integer Laurent polynomials in ``a`` and flat-eight graded values.

A :class:`FlatValue` maps an eight-count ``e`` to the Laurent coefficient of
the class "unknot plus ``e`` disjoint flat eights" (``e = 0`` is the unknot
class itself).
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from typing import NamedTuple


class LaurentPoly:
    """Sparse exponent -> coefficient map with exact integer arithmetic."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        if isinstance(terms, int):
            terms = {0: terms}
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[int(k)] = int(c)
        self._terms = clean

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if not self._terms or set(self._terms) == {0}:
            return hash(self._terms.get(0, 0))
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only unit monomials are invertible")
            (k, c), = self._terms.items()
            return LaurentPoly({-k: c}) ** (-n)
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``a**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            c = self._terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = f"a^{k}"
            else:
                body = f"{mag}*a^{k}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


A = LaurentPoly.monomial(1)


def loop_factor() -> LaurentPoly:
    """delta = -a^2 - a^-2, the value of one extra trivial circle."""
    return LaurentPoly({2: -1, -2: -1})


def writhe_prefactor(w: int) -> LaurentPoly:
    """(-a)^(-3w) = (-1)^w a^(-3w)."""
    return LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1)


class ComponentCensus(NamedTuple):
    t: int  # trivial circles
    e: int  # flat eights


class FlatValue(Mapping):
    """Finitely supported map ``e -> LaurentPoly``; zero entries are dropped."""

    __slots__ = ("_data",)

    def __init__(self, data=None):
        clean = {}
        for e, p in (data or {}).items():
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly(p)
            if int(e) < 0:
                raise ValueError("eight-count must be non-negative")
            if p:
                clean[int(e)] = p
        self._data = clean

    def __getitem__(self, e):
        return self._data[e]

    def __iter__(self):
        return iter(sorted(self._data))

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if not isinstance(other, FlatValue):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __add__(self, other):
        return fv_add(self, other)

    def __neg__(self):
        return FlatValue({e: -p for e, p in self._data.items()})

    def __repr__(self):
        return "FlatValue({" + ", ".join(f"{e}: {self._data[e]}" for e in self) + "})"

    def to_json(self) -> dict:
        return {str(e): {str(k): c for k, c in sorted(self._data[e].terms.items())} for e in self}

    @classmethod
    def from_json(cls, obj) -> "FlatValue":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({int(e): LaurentPoly({int(k): c for k, c in terms.items()}) for e, terms in obj.items()})


def fv_add(x: FlatValue, y: FlatValue) -> FlatValue:
    out = dict(x.items())
    for e, p in y.items():
        out[e] = out[e] + p if e in out else p
    return FlatValue(out)


def fv_scale(p: LaurentPoly, x: FlatValue) -> FlatValue:
    return FlatValue({e: p * q for e, q in x.items()})


def normalize_census(c: ComponentCensus) -> FlatValue:
    """Evaluate the semi-trivial class O^t + eight^e as a FlatValue.

    With no eights the leftover circles count as the unknot times delta^(t-1);
    with eights present every circle is an extra factor of delta.
    """
    t, e = c
    if t < 0 or e < 0 or t + e < 1:
        raise ValueError(f"empty or negative census {tuple(c)}")
    if e == 0:
        return FlatValue({0: loop_factor() ** (t - 1)})
    return FlatValue({e: loop_factor() ** t})


def render(x: FlatValue, format: str = "text") -> str:
    if format == "json":
        return json.dumps(x.to_json(), sort_keys=False)
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    if not x:
        return "0"
    return "\n".join(f"E^{e}: {x[e]}" for e in x)
