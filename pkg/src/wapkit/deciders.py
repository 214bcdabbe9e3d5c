"""Exact WAP and bounded-WAP decisions for fixed points of binary uniform morphisms.

The graphic used throughout is the one with steps ``v0 = (1, -b)`` and
``v1 = (1, c)`` where ``(a, b; c, d)`` is the morphism's count matrix, so a
fixed point can only be WAP along a horizontal line.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable

import numpy as np

from .errors import PreconditionError, WordError
from .words import Morphism, fixed_point_stream

ZERO_CROSSING = "zero-crossing"
ENDPOINT = "endpoint"
FORMULA = "formula"

ABELIAN_EQUIVALENT = "abelian-equivalent-images"
ALTERNATING = "alternating-form"
ULTIMATELY_CONSTANT = "ultimately-constant"
NO = "no"

MAX_CENSUS_K = 6

CENSUS_COLUMNS = (
    "phi0", "phi1", "a", "b", "c", "d",
    "wap_from0", "condition0", "wap_from1", "condition1",
    "bounded_wap", "reason", "empirical_hits", "agree",
)


@dataclass(frozen=True)
class MorphismMatrix:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, m: Morphism) -> "MorphismMatrix":
        x, y = m.images
        return cls(x.count("0"), x.count("1"), y.count("0"), y.count("1"))

    @property
    def k(self) -> int:
        return self.a + self.b

    @property
    def frequency0(self) -> Fraction:
        """Letter-0 frequency of the fixed point from 0: ``c / (b + c)``."""
        if self.b + self.c == 0:
            return Fraction(1)  # the fixed point is 0^omega
        return Fraction(self.c, self.b + self.c)


@dataclass(frozen=True)
class WapCertificate:
    """Which criterion settled the question, with its integer parameters.

    For ``start = 1`` all values refer to the letter-swapped conjugate, whose
    fixed point from 0 is the swapped fixed point from 1.
    """

    start: int
    condition: str
    verdict: bool
    delta: int
    A: int | None = None
    t: int | None = None
    j: int | None = None
    lhs: int | None = None
    zero_at: tuple[int, int] | None = None


def _require_binary_uniform(m: Morphism) -> None:
    if m.sigma != 2:
        raise PreconditionError("the deciders handle binary morphisms only")
    if not m.uniform:
        raise PreconditionError(f"{m} is not uniform")
    if m.k < 2:
        raise PreconditionError("uniform length k must be at least 2")


def oriented(m: Morphism, start: int) -> Morphism:
    """``m`` itself for ``start = 0``; its letter-swapped conjugate for ``start = 1``."""
    _require_binary_uniform(m)
    if start not in (0, 1):
        raise WordError("start must be 0 or 1")
    if not m.prolongeable(start):
        raise PreconditionError(f"{m} is not prolongeable on {start}")
    return m if start == 0 else m.swapped()


def image_graphic(u: str, b: int, c: int) -> list[int]:
    """``g_u(1) .. g_u(|u|)`` with steps ``-b`` for 0 and ``+c`` for 1."""
    ys, y = [], 0
    for ch in u:
        y += c if ch == "1" else -b
        ys.append(y)
    return ys


def decide_wap(m: Morphism, start: int = 0) -> tuple[bool, WapCertificate]:
    """Is the fixed point of ``m`` starting with ``start`` weak abelian periodic?"""
    mo = oriented(m, start)
    mx = MorphismMatrix.of(mo)
    a, b, c = mx.a, mx.b, mx.c
    k = mx.k
    g0 = image_graphic(mo.images[0], b, c)
    delta = g0[-1]

    prev = 0
    for x, y in enumerate(g0, start=1):
        if y == 0:
            return True, WapCertificate(start, ZERO_CROSSING, True, delta, zero_at=(x, x))
        if x > 1 and prev * y < 0:
            return True, WapCertificate(start, ZERO_CROSSING, True, delta, zero_at=(x - 1, x))
        prev = y

    if delta >= -b:
        return True, WapCertificate(start, ENDPOINT, True, delta)

    # here b >= 1 and a - c >= 2, so both letters occur in the images used below
    ones0 = [g0[i] for i in range(k) if mo.images[0][i] == "1"]
    g1 = image_graphic(mo.images[1], b, c)
    ones1 = [(g1[i], i + 1) for i in range(k) if mo.images[1][i] == "1"]
    A = max(ones0)
    t = max(v for v, _ in ones1)
    j = min(i for v, i in ones1 if v == t)
    # delta * (A - c) / (-b) + t with delta = -b (a - c)
    lhs = (a - c) * (A - c) + t
    verdict = lhs >= A
    return verdict, WapCertificate(start, FORMULA, verdict, delta, A=A, t=t, j=j, lhs=lhs)


def is_alternating_form(m: Morphism) -> bool:
    k = len(m.images[0])
    if k < 3 or k % 2 == 0:
        return False
    h = (k - 1) // 2
    return m.images[0] == "01" * h + "0" and m.images[1] == "10" * h + "1"


def decide_bounded_wap(m: Morphism, start: int | None = None) -> tuple[bool, str]:
    """Bounded WAP, equivalently abelian periodicity, of a fixed point of ``m``.

    Beyond the image criterion (abelian-equivalent images, or the odd
    alternating form) two degenerate families are settled directly: a fixed
    point that never leaves its start letter, and one of the form
    ``x y^omega``.  Both are abelian periodic though neither satisfies the
    image criterion.  ``start`` defaults to 0 when the morphism is
    prolongeable on 0.
    """
    _require_binary_uniform(m)
    if start is None:
        start = 0 if m.prolongeable(0) else 1
    mo = oriented(m, start)
    mx = MorphismMatrix.of(mo)
    if mx.b == 0 or (mx.c == 0 and mx.a == 1):
        return True, ULTIMATELY_CONSTANT
    if mx.a == mx.c:
        return True, ABELIAN_EQUIVALENT
    if is_alternating_form(m):
        return True, ALTERNATING
    return False, NO


# --------------------------------------------------------------------------
# Empirical companions
# --------------------------------------------------------------------------


def fixed_point_graphic(m: Morphism, start: int, N: int) -> np.ndarray:
    """``g_w(1) .. g_w(N)`` for the (oriented) fixed point, steps ``-b`` / ``+c``."""
    mo = oriented(m, start)
    mx = MorphismMatrix.of(mo)
    u = fixed_point_stream(mo, 0).prefix(N)
    ones = np.frombuffer(u.encode("ascii"), dtype=np.uint8) == ord("1")
    steps = np.where(ones, mx.c, -mx.b).astype(np.int64)
    return np.cumsum(steps)


def horizontal_witness(m: Morphism, start: int, N: int) -> tuple[int, int]:
    """Most-visited horizontal level of the fixed point's graphic and its hit count."""
    g = fixed_point_graphic(m, start, N)
    lo = int(g.min())
    counts = np.bincount(g - lo)
    i = int(np.argmax(counts))
    return lo + i, int(counts[i])


@dataclass(frozen=True)
class DecayRow:
    n: int
    lo: int
    hi: int
    running_max: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.running_max <= self.bound


def decay_check(m: Morphism, start: int, N: int) -> list[DecayRow]:
    """Maximum of the graphic over ``(k^n, k^(n+1)]`` against ``A - n``, up to position ``N``.

    Meaningful for NotWAP verdicts, where ``A`` comes from the certificate.
    For ``n = 0`` only the positions of letter 1 are compared.
    """
    verdict, cert = decide_wap(m, start)
    if cert.A is None:
        raise PreconditionError("decay check needs the formula condition (parameter A)")
    k = len(m.images[0])
    g = fixed_point_graphic(m, start, N)
    # inside phi(0) only the positions of 1 are bounded by A (that is how A is
    # defined); from k+1 on the bound holds at every position
    first = oriented(m, start).images[0]
    ones = [i for i in range(1, min(k, N)) if first[i] == "1"]
    rows = [DecayRow(0, 1, min(k, N), max(int(g[i]) for i in ones), cert.A)] if ones else []
    n, lo = 1, k
    while lo < N:
        hi = min(lo * k, N)
        rows.append(DecayRow(n, lo, hi, int(g[lo:hi].max()), cert.A - n))
        n, lo = n + 1, lo * k
    return rows


# --------------------------------------------------------------------------
# Census
# --------------------------------------------------------------------------


@dataclass
class CensusRow:
    phi0: str
    phi1: str
    matrix: MorphismMatrix
    wap_from0: bool
    condition0: str
    wap_from1: bool | None
    condition1: str | None
    bounded_wap: bool
    reason: str
    empirical_hits: int | None = None
    agree: bool | None = None

    @property
    def morphism(self) -> Morphism:
        return Morphism((self.phi0, self.phi1))

    def as_csv(self) -> list[str]:
        def yn(x):
            return "" if x is None else ("yes" if x else "no")

        mx = self.matrix
        return [
            self.phi0, self.phi1, str(mx.a), str(mx.b), str(mx.c), str(mx.d),
            yn(self.wap_from0), self.condition0, yn(self.wap_from1), self.condition1 or "",
            yn(self.bounded_wap), self.reason,
            "" if self.empirical_hits is None else str(self.empirical_hits), yn(self.agree),
        ]


def classify(m: Morphism) -> CensusRow:
    wap0, cert0 = decide_wap(m, 0)
    wap1 = cond1 = None
    if m.prolongeable(1):
        wap1, cert1 = decide_wap(m, 1)
        cond1 = cert1.condition
    bounded, reason = decide_bounded_wap(m, 0)
    return CensusRow(m.images[0], m.images[1], MorphismMatrix.of(m), wap0, cert0.condition, wap1, cond1, bounded, reason)


def empirical_agreement(m: Morphism, start: int, N: int, min_hits: int = 50) -> tuple[bool, int]:
    """WAP verdicts need a horizontal level with ``min_hits`` hits; NotWAP ones must decay."""
    wap, _ = decide_wap(m, start)
    _, hits = horizontal_witness(m, start, N)
    if wap:
        return hits >= min_hits, hits
    return all(r.ok for r in decay_check(m, start, N)), hits


def census_morphisms(k: int) -> Iterable[Morphism]:
    """Every binary ``k``-uniform morphism with ``phi(0)`` starting in 0, lexicographic."""
    for tail0 in product("01", repeat=k - 1):
        for img1 in product("01", repeat=k):
            yield Morphism(("0" + "".join(tail0), "".join(img1)))


def enumerate_census(k: int, N: int | None = None, min_hits: int = 50) -> list[CensusRow]:
    if not 2 <= k <= MAX_CENSUS_K:
        raise WordError(f"census length k={k} outside 2..{MAX_CENSUS_K} ({2 ** (2 * k - 1)} rows)")
    rows = []
    for m in census_morphisms(k):
        row = classify(m)
        if N is not None:
            ok, hits = empirical_agreement(m, 0, N, min_hits)
            if row.wap_from1 is not None:
                ok = ok and empirical_agreement(m, 1, N, min_hits)[0]
            row.empirical_hits, row.agree = hits, ok
        rows.append(row)
    return rows


def census_csv(rows: Iterable[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CENSUS_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())
    return buf.getvalue()
