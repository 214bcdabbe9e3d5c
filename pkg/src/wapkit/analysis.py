"""Prefix-based analyzers: frequencies, balance, WAP witnesses, abelian periods.

These are semi-decisions.  A reported witness is a verified fact about the
scanned prefix; an empty result only means nothing was found inside the
stated budget, which is recorded on every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator

import numpy as np

from .errors import WordError
from .graphic import discrepancy_values, gaps, parse_rational
from .words import WordStream, alphabet_size, as_text

WITNESS = "witness"
BOUNDED = "bounded-witness"
NONE_IN_BUDGET = "none-in-budget"


def farey(order: int) -> Iterator[Fraction]:
    """Reduced fractions in ``[0, 1]`` with denominator at most ``order``, ascending."""
    if order < 1:
        raise WordError("Farey order must be at least 1")
    a, b, c, d = 0, 1, 1, order
    yield Fraction(0, 1)
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield Fraction(a, b)


def _codes(u: str) -> np.ndarray:
    return np.frombuffer(u.encode("ascii"), dtype=np.uint8) - ord("0")


def _cumcounts(u: str, sigma: int) -> np.ndarray:
    """``C[a, n]`` = occurrences of letter ``a`` in ``pref_n``, shape ``(sigma, N+1)``."""
    codes = _codes(u)
    out = np.zeros((sigma, len(u) + 1), dtype=np.int64)
    for a in range(sigma):
        np.cumsum(codes == a, out=out[a, 1:])
    return out


def _sigma(w: WordStream | str, u: str) -> int:
    s = alphabet_size(u)
    return max(s, w.sigma) if isinstance(w, WordStream) else s


# --------------------------------------------------------------------------
# Frequencies
# --------------------------------------------------------------------------


@dataclass
class FrequencyReport:
    N: int
    counts: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    checkpoints: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)


def prefix_frequency(w: WordStream | str, N: int, checkpoints: Iterable[int] = ()) -> FrequencyReport:
    if N < 1:
        raise WordError("N must be at least 1")
    u = as_text(w, N)
    N = len(u)
    sigma = _sigma(w, u)
    cum = _cumcounts(u, sigma)
    counts = tuple(int(x) for x in cum[:, N])
    cps = [(n, tuple(int(x) for x in cum[:, n])) for n in checkpoints if 0 <= n <= N]
    return FrequencyReport(N, counts, tuple(Fraction(c, N) for c in counts), cps)


def _exact_extreme(counts: np.ndarray, lengths: np.ndarray, largest: bool) -> Fraction:
    # floats only shortlist candidates; the final choice is an exact comparison
    ratios = counts / lengths
    best = ratios.max() if largest else ratios.min()
    near = np.flatnonzero(np.abs(ratios - best) <= 1e-12)
    fracs = (Fraction(int(counts[i]), int(lengths[i])) for i in near)
    return max(fracs) if largest else min(fracs)


def frequency_oscillation(w: WordStream | str, N: int) -> dict[int, tuple[Fraction, Fraction]]:
    """Per letter, min and max of ``rho_a(pref_n)`` over ``n`` in ``[N/2, N]``."""
    if N < 2:
        raise WordError("N must be at least 2")
    u = as_text(w, N)
    N = len(u)
    cum = _cumcounts(u, _sigma(w, u))
    lo = max(1, math.ceil(N / 2))
    lengths = np.arange(lo, N + 1)
    return {
        a: (
            _exact_extreme(cum[a, lo:], lengths, largest=False),
            _exact_extreme(cum[a, lo:], lengths, largest=True),
        )
        for a in range(cum.shape[0])
    }


# --------------------------------------------------------------------------
# Balance
# --------------------------------------------------------------------------


@dataclass
class BalanceReport:
    """Window extremes: ``mins[i, a]``/``maxs[i, a]`` for window length ``lengths[i]``."""

    N: int
    lengths: np.ndarray
    mins: np.ndarray
    maxs: np.ndarray

    @property
    def c_balance(self) -> int:
        return int((self.maxs - self.mins).max()) if len(self.lengths) else 0

    def spread(self, n: int, letter: int = 0) -> int:
        i = int(np.searchsorted(self.lengths, n))
        if i >= len(self.lengths) or self.lengths[i] != n:
            raise KeyError(n)
        return int(self.maxs[i, letter] - self.mins[i, letter])


def window_extremes(cum: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Min and max letter counts over all length-``n`` windows, per letter."""
    diff = cum[:, n:] - cum[:, :-n]
    return diff.min(axis=1), diff.max(axis=1)


def balance_profile(w: WordStream | str, N: int, L: int, lengths: Iterable[int] | None = None) -> BalanceReport:
    """Sliding-window count extremes for every window length ``1..L``.

    ``lengths`` restricts the scan to chosen window lengths (each ``<= L``).
    """
    if L > N:
        raise WordError("window length L must not exceed N")
    u = as_text(w, N)
    N = len(u)
    L = min(L, N)
    cum = _cumcounts(u, _sigma(w, u))
    lens = np.array(sorted(set(lengths)) if lengths is not None else range(1, L + 1), dtype=np.int64)
    lens = lens[(lens >= 1) & (lens <= L)]
    sigma = cum.shape[0]
    mins = np.zeros((len(lens), sigma), dtype=np.int64)
    maxs = np.zeros((len(lens), sigma), dtype=np.int64)
    for i, n in enumerate(lens.tolist()):
        mins[i], maxs[i] = window_extremes(cum, n)
    return BalanceReport(N, lens, mins, maxs)


# --------------------------------------------------------------------------
# WAP witnesses
# --------------------------------------------------------------------------


@dataclass
class WitnessReport:
    slope: Fraction
    level: int
    hits: int
    first_hit: int
    last_hit: int
    max_gap: int
    verdict: str
    letter: int = 0
    positions: np.ndarray = field(default=None, repr=False, compare=False)
    budget: dict = field(default_factory=dict, compare=False)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.slope.denominator, self.slope.numerator, self.level)


def persistent(positions: np.ndarray, N: int) -> bool:
    """Hits in both the first and the final quarter of the prefix."""
    return bool(len(positions)) and positions[0] <= N / 4 and positions[-1] > 3 * N / 4


def _rank(reports: list) -> list:
    return sorted(reports, key=lambda r: (-r.hits, r.key))


def wap_witness_search(
    w: WordStream | str,
    N: int,
    max_denominator: int = 8,
    min_hits: int = 50,
    max_gap: int | None = None,
    recency: bool = True,
    slopes: Iterable[Fraction | str] | None = None,
    letter: int = 0,
) -> list[WitnessReport]:
    """Candidate ``(slope, level)`` lines with at least ``min_hits`` lattice hits.

    Slopes run over the Farey sequence of order ``max_denominator`` unless
    ``slopes`` is given.  With ``recency`` a level counts only if its hits
    reach both the first and the final quarter of the prefix, which rejects
    lines that are crossed during a single long transient.  A candidate is a
    bounded witness when its largest gap between consecutive hits is at most
    ``max_gap`` (default ``10*q``).  Sorted by hit count, then ``(q, p, C)``.
    """
    if min_hits < 2:
        raise WordError("min_hits must be at least 2")
    u = as_text(w, N)
    N = len(u)
    slope_list = sorted({parse_rational(s) for s in slopes}) if slopes is not None else list(farey(max_denominator))
    budget = {"N": N, "Q": max_denominator, "H": min_hits, "G": max_gap, "recency": recency}
    found = []
    for s in slope_list:
        vals = discrepancy_values(u, s, letter)[1:]
        if len(vals) == 0:
            continue
        lo = int(vals.min())
        counts = np.bincount((vals - lo).astype(np.int64))
        for i in np.flatnonzero(counts >= min_hits).tolist():
            level = lo + i
            pos = np.flatnonzero(vals == level) + 1
            if recency and not persistent(pos, N):
                continue
            g = gaps(pos)
            mg = int(g.max()) if len(g) else 0
            bound = max_gap if max_gap is not None else 10 * s.denominator
            found.append(
                WitnessReport(
                    slope=s,
                    level=level,
                    hits=len(pos),
                    first_hit=int(pos[0]),
                    last_hit=int(pos[-1]),
                    max_gap=mg,
                    verdict=BOUNDED if mg <= bound else WITNESS,
                    letter=letter,
                    positions=pos,
                    budget=budget,
                )
            )
    return _rank(found)


@dataclass
class JointWitnessReport:
    """Simultaneous hits for every letter: block frequencies ``p_a / q``."""

    frequencies: tuple[Fraction, ...]
    levels: tuple[int, ...]
    hits: int
    first_hit: int
    last_hit: int
    max_gap: int
    positions: np.ndarray = field(default=None, repr=False, compare=False)
    budget: dict = field(default_factory=dict, compare=False)

    @property
    def key(self):
        return (self.frequencies, self.levels)


def frequency_vectors(sigma: int, max_denominator: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """``(q, (p_0, .., p_{sigma-1}))`` with ``sum p = q`` and ``gcd(q, p..) = 1``."""
    for q in range(1, max_denominator + 1):
        for ps in product(range(q + 1), repeat=sigma - 1):
            last = q - sum(ps)
            if last < 0:
                continue
            vec = ps + (last,)
            if math.gcd(q, *vec) == 1:
                yield q, vec


def joint_witness_search(
    w: WordStream | str,
    N: int,
    max_denominator: int = 4,
    min_hits: int = 50,
    recency: bool = True,
) -> list[JointWitnessReport]:
    """WAP witnesses for words over any alphabet.

    A factorization with common block frequencies needs break points where
    the discrepancy of every letter sits on its own fixed level at the same
    time, so hits are counted on the vector ``(D^0_n, .., D^{sigma-2}_n)``
    (the last letter's discrepancy is determined by the others).
    """
    u = as_text(w, N)
    N = len(u)
    sigma = _sigma(w, u)
    cum = _cumcounts(u, sigma)[:, 1:]
    n = np.arange(1, N + 1, dtype=np.int64)
    budget = {"N": N, "Q": max_denominator, "H": min_hits, "recency": recency}
    found = []
    for q, vec in frequency_vectors(sigma, max_denominator):
        D = np.stack([vec[a] * n - q * cum[a] for a in range(sigma - 1)])
        keys, inverse, counts = np.unique(D, axis=1, return_inverse=True, return_counts=True)
        inverse = inverse.reshape(-1)
        for j in np.flatnonzero(counts >= min_hits).tolist():
            pos = np.flatnonzero(inverse == j) + 1
            if recency and not persistent(pos, N):
                continue
            g = gaps(pos)
            levels = tuple(int(x) for x in keys[:, j]) + (-int(keys[:, j].sum()),)
            found.append(
                JointWitnessReport(
                    frequencies=tuple(Fraction(p, q) for p in vec),
                    levels=levels,
                    hits=len(pos),
                    first_hit=int(pos[0]),
                    last_hit=int(pos[-1]),
                    max_gap=int(g.max()) if len(g) else 0,
                    positions=pos,
                    budget=budget,
                )
            )
    return sorted(found, key=lambda r: (-r.hits, r.frequencies, r.levels))


# --------------------------------------------------------------------------
# Abelian periods
# --------------------------------------------------------------------------


@dataclass
class AbelianPeriodReport:
    period: int
    offset: int
    blocks: int
    parikh: tuple[int, ...]
    budget: dict = field(default_factory=dict, compare=False)


def check_abelian_period(cum: np.ndarray, period: int, offset: int) -> tuple[int, tuple[int, ...]] | None:
    """Number of complete blocks and their shared Parikh vector, or ``None``."""
    N = cum.shape[1] - 1
    ends = np.arange(offset, N + 1, period)
    if len(ends) < 3:
        return None
    blocks = cum[:, ends[1:]] - cum[:, ends[:-1]]
    if not (blocks == blocks[:, :1]).all():
        return None
    return blocks.shape[1], tuple(int(x) for x in blocks[:, 0])


def abelian_period_search(
    w: WordStream | str,
    N: int,
    max_period: int,
    max_offset: int,
    periods: Iterable[int] | None = None,
) -> AbelianPeriodReport | None:
    """Lexicographically smallest ``(period, offset)`` whose blocks are abelian equivalent.

    Blocks are ``w[s+ip+1 .. s+(i+1)p]`` for every complete block inside the
    prefix; at least two are required.  ``None`` means every pair in the
    budget was refuted.
    """
    if max_period < 1 or max_offset < 0:
        raise WordError("need max_period >= 1 and max_offset >= 0")
    if max_offset + 2 * max_period > N:
        raise WordError("budget needs max_offset + 2*max_period <= N")
    u = as_text(w, N)
    cum = _cumcounts(u, _sigma(w, u))
    budget = {"N": len(u), "P": max_period, "S": max_offset}
    candidates = sorted(set(periods)) if periods is not None else range(1, max_period + 1)
    for p in candidates:
        for s in range(max_offset + 1):
            hit = check_abelian_period(cum, p, s)
            if hit is not None:
                return AbelianPeriodReport(p, s, hit[0], hit[1], budget)
    return None
