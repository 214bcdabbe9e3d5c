"""Lattice-path ("graphic") computations with exact integer arithmetic.

A word is drawn as a path from the origin, letter ``a`` moving by the step
vector ``v_a``.  For a rational slope ``p/q`` the integer sequence

    D_n = p*n - q*#0(pref_n)

has zero drift exactly when letter 0 occurs with frequency ``p/q``; the
graphic has infinitely many lattice points on a line of that slope iff some
level set ``{n : D_n = C}`` is infinite.  Every witness in this package is a
``(slope, level)`` pair on ``D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import WordError
from .words import WordStream, as_text, check_word

# above this bound the int64 fast path could overflow; fall back to Python ints
_INT64_SAFE = 2**62


def parse_rational(text: str | Fraction | int) -> Fraction:
    if isinstance(text, Fraction):
        return text
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise WordError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class StepVectors:
    """One integer step vector per letter."""

    vectors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        vecs = tuple((int(x), int(y)) for x, y in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if len(vecs) < 2:
            raise WordError("need a step vector for each of at least two letters")
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                (x1, y1), (x2, y2) = vecs[i], vecs[j]
                if x1 * y2 - x2 * y1 == 0:
                    raise WordError(f"step vectors {vecs[i]} and {vecs[j]} are collinear")

    @classmethod
    def standard(cls) -> "StepVectors":
        return cls(((1, -1), (1, 1)))

    @classmethod
    def canonical(cls, b: int, c: int) -> "StepVectors":
        """``v0 = (1, -b)``, ``v1 = (1, c)``; the pair used by the morphism deciders.

        For ``b = c = 0`` the vectors are collinear, so no validation is done.
        """
        obj = object.__new__(cls)
        object.__setattr__(obj, "vectors", ((1, -b), (1, c)))
        return obj

    @classmethod
    def parse(cls, text: str) -> "StepVectors":
        """``"1,-1/1,1"`` -> ``((1, -1), (1, 1))``."""
        try:
            vecs = tuple(tuple(int(t) for t in part.split(",")) for part in text.split("/"))
        except ValueError as exc:
            raise WordError(f"bad vector list {text!r}") from exc
        if any(len(v) != 2 for v in vecs):
            raise WordError(f"bad vector list {text!r}; expected bx,by/cx,cy")
        return cls(vecs)


@dataclass(frozen=True)
class GraphicPath:
    """Lattice points ``(x_n, y_n)``, ``n = 0..N``, starting at the origin."""

    xs: np.ndarray
    ys: np.ndarray

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def points(self) -> list[tuple[int, int]]:
        return list(zip(self.xs.tolist(), self.ys.tolist()))


def _letter_codes(u: str) -> np.ndarray:
    return np.frombuffer(u.encode("ascii"), dtype=np.uint8) - ord("0")


def graphic_points(u: str, v: StepVectors | None = None) -> GraphicPath:
    v = v or StepVectors.standard()
    check_word(u, len(v.vectors))
    codes = _letter_codes(u)
    dx = np.array([x for x, _ in v.vectors], dtype=np.int64)
    dy = np.array([y for _, y in v.vectors], dtype=np.int64)
    xs = np.concatenate(([0], np.cumsum(dx[codes])))
    ys = np.concatenate(([0], np.cumsum(dy[codes])))
    return GraphicPath(xs.astype(np.int64), ys.astype(np.int64))


@dataclass(frozen=True)
class DiscrepancyProfile:
    """Exact values ``D_0 .. D_N`` at one slope (for one letter's indicator)."""

    slope: Fraction
    values: np.ndarray
    letter: int = 0

    @property
    def N(self) -> int:
        return len(self.values) - 1

    @property
    def min(self) -> int:
        return int(self.values.min())

    @property
    def max(self) -> int:
        return int(self.values.max())

    def __getitem__(self, n: int) -> int:
        return int(self.values[n])


def _indicator(u: str, letter: int) -> np.ndarray:
    return np.frombuffer(u.encode("ascii"), dtype=np.uint8) == ord("0") + letter


def discrepancy_values(u: str, slope: Fraction, letter: int = 0) -> np.ndarray:
    p, q = slope.numerator, slope.denominator
    ind = _indicator(u, letter)
    if (abs(p) + q) * (len(u) + 1) < _INT64_SAFE:
        steps = p - q * ind.astype(np.int64)
        return np.concatenate((np.zeros(1, dtype=np.int64), np.cumsum(steps)))
    out = np.empty(len(u) + 1, dtype=object)
    d = 0
    out[0] = 0
    for n, is_a in enumerate(ind.tolist(), start=1):
        d += p - q if is_a else p
        out[n] = d
    return out


def discrepancy_profile(w: WordStream | str, slope: Fraction | str, N: int, letter: int = 0) -> DiscrepancyProfile:
    """``D_n = p*n - q*#letter(pref_n)`` for ``n = 0..N``.

    For a finite word shorter than ``N`` the profile stops where the word does.
    """
    slope = parse_rational(slope)
    if not 0 <= slope <= 1:
        raise WordError(f"slope {slope} outside [0, 1]")
    if N < 0:
        raise WordError("N must be non-negative")
    return DiscrepancyProfile(slope, discrepancy_values(as_text(w, N), slope, letter), letter)


def iter_discrepancy(w: WordStream | str, slope: Fraction | str, letter: int = 0) -> Iterator[int]:
    """Streaming ``D_1, D_2, ...`` with constant memory."""
    slope = parse_rational(slope)
    p, q = slope.numerator, slope.denominator
    target = str(letter)
    letters = iter(w) if isinstance(w, str) else w.letters()
    d = 0
    for ch in letters:
        d += p - q if ch == target else p
        yield d


@dataclass(frozen=True)
class LineHits:
    level: int
    positions: np.ndarray
    max_gap: int
    last_hit: int | None

    @property
    def count(self) -> int:
        return len(self.positions)


def gaps(positions: np.ndarray) -> np.ndarray:
    return np.diff(positions) if len(positions) > 1 else np.zeros(0, dtype=np.int64)


def line_hits(d: DiscrepancyProfile, C: int) -> LineHits:
    """All ``n >= 1`` with ``D_n = C``, ascending."""
    pos = np.flatnonzero(d.values[1:] == C) + 1
    g = gaps(pos)
    return LineHits(
        level=int(C),
        positions=pos,
        max_gap=int(g.max()) if len(g) else 0,
        last_hit=int(pos[-1]) if len(pos) else None,
    )


@dataclass(frozen=True)
class WidthEstimate:
    slope: Fraction
    min: int
    max: int

    @property
    def width(self) -> int:
        return self.max - self.min


def width(d: DiscrepancyProfile) -> WidthEstimate:
    return WidthEstimate(d.slope, d.min, d.max)


def level_counts(d: DiscrepancyProfile) -> tuple[int, np.ndarray]:
    """``(minD, counts)`` with ``counts[i]`` = hits of level ``minD + i`` over ``n >= 1``."""
    vals = d.values[1:]
    if len(vals) == 0:
        return 0, np.zeros(0, dtype=np.int64)
    lo = int(vals.min())
    return lo, np.bincount((vals - lo).astype(np.int64))


def pigeonhole_level(d: DiscrepancyProfile) -> tuple[int, int]:
    """Most-hit level and its hit count among ``D_1 .. D_N``."""
    lo, counts = level_counts(d)
    if len(counts) == 0:
        return 0, 0
    i = int(np.argmax(counts))
    return lo + i, int(counts[i])


def pigeonhole_bound(d: DiscrepancyProfile) -> int:
    """``ceil(N / (W+1))`` for the width ``W`` of ``D_1 .. D_N``."""
    if d.N == 0:
        return 0
    vals = d.values[1:]
    w = int(vals.max()) - int(vals.min())
    return math.ceil(d.N / (w + 1))
