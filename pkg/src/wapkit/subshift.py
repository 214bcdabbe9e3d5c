"""Occurrences, return words, and WAP points in a shift orbit closure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .analysis import _cumcounts, window_extremes
from .errors import BudgetError, WordError
from .graphic import discrepancy_values, parse_rational
from .words import WordStream, alphabet_size, as_text, check_word, parikh

EXHAUSTED = "budget-exhausted"
COMPLETE = "complete"


@dataclass
class OccurrenceIndex:
    factor: str
    positions: list[int]  # 1-based starts
    N: int


def _find_all(text: str, u: str) -> list[int]:
    out, i = [], text.find(u)
    while i != -1:
        out.append(i + 1)
        i = text.find(u, i + 1)
    return out


def occurrences(w: WordStream | str, u: str, N: int) -> OccurrenceIndex:
    check_word(u)
    if not u:
        raise WordError("factor must be non-empty")
    if N < len(u):
        raise WordError("N must be at least |u|")
    text = as_text(w, N)
    return OccurrenceIndex(u, _find_all(text, u), len(text))


@dataclass
class ReturnFactorization:
    """``leading + returns + tail`` rebuilds the scanned prefix."""

    factor: str
    leading: str
    returns: list[str]
    tail: str
    starts: list[int]

    def reconstruct(self) -> str:
        return self.leading + "".join(self.returns) + self.tail


def _factorize(text: str, u: str, starts: list[int]) -> ReturnFactorization:
    rets = [text[a - 1 : b - 1] for a, b in zip(starts, starts[1:])]
    return ReturnFactorization(u, text[: starts[0] - 1], rets, text[starts[-1] - 1 :], starts)


def return_factorization(w: WordStream | str, u: str, N: int) -> ReturnFactorization:
    """Return words of ``u``: the segments between consecutive occurrences."""
    occ = occurrences(w, u, N)
    if len(occ.positions) < 2:
        raise BudgetError(f"{u!r} occurs {len(occ.positions)} time(s) in a prefix of length {occ.N}")
    return _factorize(as_text(w, N), u, occ.positions)


# --------------------------------------------------------------------------
# Building a WAP point of the orbit closure
# --------------------------------------------------------------------------


@dataclass
class OrbitLevel:
    word: str
    parikh: tuple[int, ...]
    frequency: Fraction
    relation: str  # ">=" or "<=", the inequality this level was chosen to satisfy
    start: int  # 1-based position in w where this factor was taken


@dataclass
class OrbitBuilderState:
    target: Fraction
    depth_requested: int
    levels: list[OrbitLevel] = field(default_factory=list)
    status: str = COMPLETE
    N: int = 0
    occurrences_scanned: int = 0

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def word(self) -> str:
        return self.levels[-1].word if self.levels else ""


@dataclass
class OrbitResult:
    word: str
    state: OrbitBuilderState
    level: int | None
    hit_positions: list[int]


def _satisfies(zeros: int, length: int, target: Fraction, relation: str) -> bool:
    lhs, rhs = zeros * target.denominator, target.numerator * length
    return lhs >= rhs if relation == ">=" else lhs <= rhs


def _next_level(text: str, zeros_cum: np.ndarray, u: str, target: Fraction, relation: str, state: OrbitBuilderState):
    starts = _find_all(text, u)
    state.occurrences_scanned += len(starts)
    # earliest run of consecutive returns, starting at any return, that is
    # strictly longer than u and has the required frequency
    for i in range(len(starts) - 1):
        a = starts[i]
        for j in range(i + 1, len(starts)):
            b = starts[j]
            if b - a > len(u):
                length, zeros = b - a, int(zeros_cum[b - 1] - zeros_cum[a - 1])
                if _satisfies(zeros, length, target, relation):
                    return a, text[a - 1 : b - 1]
                break
    return None


def build_wap_orbit_point(w: WordStream | str, target: Fraction | str, depth: int, N: int) -> OrbitResult:
    """Nested factors ``u_1, u_2, ...`` whose letter-0 frequencies straddle ``target``.

    ``u_1 = "0"`` (frequency 1, at least the target).  ``u_(j+1)`` starts at
    an occurrence of ``u_j`` and ends just before a later one: normally a
    single return word, extended by further returns only when the return is
    not longer than ``u_j`` (overlapping occurrences).  Its frequency is at
    least the target for even ``j+1`` and at most it for odd ``j+1``.  Each
    ``u_j`` is a prefix of the next and a factor of ``w``, so the limit lies
    in the orbit closure, and its graphic keeps crossing the line of slope
    ``target``.

    If no qualifying factor exists inside the first ``N`` letters the state
    is marked budget-exhausted and the deepest word reached is returned.
    """
    target = parse_rational(target)
    if not 0 < target < 1:
        raise WordError("target frequency must lie strictly between 0 and 1")
    if depth < 1:
        raise WordError("depth must be at least 1")
    text = as_text(w, N)
    state = OrbitBuilderState(target, depth, N=len(text))
    if "0" not in text:
        state.status = EXHAUSTED
        return OrbitResult("", state, None, [])
    sigma = alphabet_size(text)
    zeros_cum = np.concatenate(([0], np.cumsum(np.frombuffer(text.encode("ascii"), dtype=np.uint8) == ord("0"))))
    u = "0"
    state.levels.append(OrbitLevel(u, parikh(u, sigma), Fraction(1), ">=", text.find("0") + 1))
    while state.depth < depth:
        relation = ">=" if (state.depth + 1) % 2 == 0 else "<="
        nxt = _next_level(text, zeros_cum, u, target, relation, state)
        if nxt is None:
            state.status = EXHAUSTED
            break
        pos, u = nxt
        state.levels.append(OrbitLevel(u, parikh(u, sigma), Fraction(u.count("0"), len(u)), relation, pos))
    level, hits = crossing_level(state.word, target)
    return OrbitResult(state.word, state, level, hits)


def crossing_level(u: str, target: Fraction) -> tuple[int | None, list[int]]:
    """Most-visited level of the discrepancy of ``u`` and the lattice points on it.

    The origin counts as a point of the graphic, so position 0 is included.
    """
    if not u:
        return None, []
    d = discrepancy_values(u, target)
    lo = int(d.min())
    counts = np.bincount((d - lo).astype(np.int64))
    level = lo + int(np.argmax(counts))
    return level, np.flatnonzero(d == level).tolist()


# --------------------------------------------------------------------------
# Uniform frequencies
# --------------------------------------------------------------------------


@dataclass
class FrequencyBounds:
    """``lo[i]``/``hi[i]``: extreme letter frequencies over windows of length ``lengths[i]``."""

    letter: int
    lengths: list[int]
    lo: list[Fraction]
    hi: list[Fraction]

    @property
    def estimate(self) -> tuple[Fraction, Fraction]:
        return self.lo[-1], self.hi[-1]


def uniform_frequency_bounds(w: WordStream | str, N: int, L: int, letter: int = 0, lengths=None) -> FrequencyBounds:
    """Sliding-window minimal and maximal frequency of ``letter`` for window lengths up to ``L``."""
    if L > N:
        raise WordError("window length L must not exceed N")
    text = as_text(w, N)
    L = min(L, len(text))
    cum = _cumcounts(text, max(alphabet_size(text), letter + 1))
    lens = sorted(set(lengths)) if lengths is not None else list(range(1, L + 1))
    lens = [n for n in lens if 1 <= n <= L]
    lo, hi = [], []
    for n in lens:
        mn, mx = window_extremes(cum, n)
        lo.append(Fraction(int(mn[letter]), n))
        hi.append(Fraction(int(mx[letter]), n))
    return FrequencyBounds(letter, lens, lo, hi)
