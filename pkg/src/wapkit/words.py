"""Finite and infinite words over small digit alphabets.

Words are plain ``str`` objects over the characters ``'0'``, ``'1'``, ``'2'``
(letter ``i`` is the character ``str(i)``).  Infinite words are
:class:`WordStream` objects: a single-consumer cursor over a deterministic
letter generator, plus a way to re-derive any prefix from scratch.

Positions are 1-based wherever a position is reported (``w = w1 w2 ...``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .errors import PreconditionError, WordError

HOLE = "?"
MAX_SIGMA = 10


def check_word(u: str, sigma: int | None = None) -> str:
    """Return ``u`` if it is a digit word with every letter below ``sigma``."""
    if not isinstance(u, str):
        raise WordError(f"expected a digit string, got {type(u).__name__}")
    if u and not u.isdigit():
        raise WordError(f"word contains non-digit symbols: {u[:20]!r}")
    if sigma is not None and u and max(u) >= str(sigma):
        raise WordError(f"letter {max(u)} outside alphabet of size {sigma}")
    return u


def alphabet_size(u: str, minimum: int = 2) -> int:
    return max(minimum, int(max(u)) + 1) if u else minimum


def parikh(u: str, sigma: int | None = None) -> tuple[int, ...]:
    """Per-letter occurrence counts of ``u``."""
    check_word(u, sigma)
    if sigma is None:
        sigma = alphabet_size(u)
    return tuple(u.count(str(a)) for a in range(sigma))


def abelian_equivalent(u: str, v: str) -> bool:
    sigma = max(alphabet_size(u), alphabet_size(v))
    return parikh(u, sigma) == parikh(v, sigma)


# --------------------------------------------------------------------------
# Streams
# --------------------------------------------------------------------------


class WordStream:
    """Lazy source of the letters of an infinite (or, for files, finite) word.

    Iterating advances a cursor; :meth:`prefix` never touches the cursor and
    always rebuilds from the generator specification, so two calls with the
    same ``n`` agree.  Not safe to share between threads; use :meth:`fresh`.
    """

    def __init__(
        self,
        factory: Callable[[], Iterator[str]],
        sigma: int,
        name: str = "",
        fast_prefix: Callable[[int], str] | None = None,
        finite: bool = False,
    ):
        self._factory = factory
        self._fast_prefix = fast_prefix
        self._it: Iterator[str] | None = None
        self.sigma = sigma
        self.name = name
        self.finite = finite
        self.position = 0

    def __repr__(self) -> str:
        return f"WordStream({self.name or '?'}, sigma={self.sigma}, position={self.position})"

    def __iter__(self) -> "WordStream":
        return self

    def __next__(self) -> str:
        if self._it is None:
            self._it = self._factory()
        letter = next(self._it)
        self.position += 1
        return letter

    def take(self, n: int) -> str:
        """Consume and return the next ``n`` letters (fewer if a finite word ends)."""
        if self._it is None:
            self._it = self._factory()
        chunk = "".join(itertools.islice(self._it, n))
        self.position += len(chunk)
        return chunk

    def fresh(self) -> "WordStream":
        return WordStream(self._factory, self.sigma, self.name, self._fast_prefix, self.finite)

    def letters(self) -> Iterator[str]:
        """A new independent iterator over the word from position 1."""
        return self._factory()

    def prefix(self, n: int) -> str:
        if n < 0:
            raise WordError("prefix length must be non-negative")
        if self._fast_prefix is not None:
            return self._fast_prefix(n)
        return "".join(itertools.islice(self._factory(), n))

    def map_letters(self, table: dict[str, str], name: str, sigma: int | None = None) -> "WordStream":
        trans = str.maketrans(table)
        factory = self._factory
        fast = self._fast_prefix

        def letters():
            for ch in factory():
                yield table.get(ch, ch)

        mapped_fast = None
        if fast is not None:
            def mapped_fast(n):
                return fast(n).translate(trans)

        return WordStream(letters, sigma or self.sigma, name, mapped_fast, self.finite)


def prefix(w: WordStream | str, n: int) -> str:
    """First ``n`` letters of ``w``; for finite words, as many as exist."""
    if n < 0:
        raise WordError("prefix length must be non-negative")
    if isinstance(w, str):
        return w[:n]
    return w.prefix(n)


# --------------------------------------------------------------------------
# Morphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """Morphism given by the images of letters ``0 .. sigma-1``."""

    images: tuple[str, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not 1 <= len(images) <= MAX_SIGMA:
            raise WordError("a morphism needs between 1 and 10 letter images")
        for img in images:
            if not img:
                raise WordError("morphism images must be non-empty")
            check_word(img, len(images))

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """``"0001/1011"`` -> images of 0 and 1."""
        return cls(tuple(part.strip() for part in text.split("/")))

    def __str__(self) -> str:
        return "/".join(self.images)

    @property
    def sigma(self) -> int:
        return len(self.images)

    @property
    def uniform(self) -> bool:
        return len({len(img) for img in self.images}) == 1

    @property
    def k(self) -> int | None:
        return len(self.images[0]) if self.uniform else None

    def prolongeable(self, a: int) -> bool:
        img = self.images[a]
        return len(img) >= 2 and img[0] == str(a)

    def incidence_matrix(self) -> list[list[int]]:
        """``M[i][j] = |phi(j)|_i`` so that ``parikh(phi(u)) = M @ parikh(u)``."""
        cols = [parikh(img, self.sigma) for img in self.images]
        return [[cols[j][i] for j in range(self.sigma)] for i in range(self.sigma)]

    def swapped(self) -> "Morphism":
        """Letter-swap conjugate of a binary morphism (relabel 0<->1 everywhere)."""
        if self.sigma != 2:
            raise WordError("letter swap is defined for binary morphisms")
        flip = str.maketrans("01", "10")
        return Morphism((self.images[1].translate(flip), self.images[0].translate(flip)))

    def translation(self) -> dict[int, str]:
        return {ord(str(a)): img for a, img in enumerate(self.images)}


def apply_morphism(m: Morphism, u: str) -> str:
    """Image of ``u``: the concatenation of the letter images, in order."""
    check_word(u)
    if u and int(max(u)) >= m.sigma:
        raise WordError(f"letter {max(u)} outside the domain of {m}")
    return u.translate(m.translation())


def _fixed_point_letters(images: Sequence[str], a: int) -> Iterator[str]:
    # phi^(L+1)(a) = phi^L(a) phi^L(tail), so after the start letter we emit
    # phi^0(tail), phi^1(tail), ... expanding depth-first with an explicit stack.
    yield str(a)
    tail = images[a][1:]
    depth = 0
    while True:
        stack = [(x, depth) for x in reversed(tail)]
        while stack:
            x, d = stack.pop()
            if d == 0:
                yield x
            else:
                img = images[int(x)]
                for y in reversed(img):
                    stack.append((y, d - 1))
        depth += 1


def fixed_point_stream(m: Morphism, start: int = 0) -> WordStream:
    """The fixed point of ``m`` beginning with letter ``start``."""
    if not 0 <= start < m.sigma:
        raise WordError(f"start letter {start} outside alphabet")
    if not m.prolongeable(start):
        raise PreconditionError(f"{m} is not prolongeable on {start}")
    images = m.images
    table = m.translation()

    def fast(n: int) -> str:
        s = images[start]
        rounds = 0
        while len(s) < n:
            s = s.translate(table)
            rounds += 1
            if rounds > 64:
                # slow growth (e.g. 0->01, 1->1); the stack expansion is linear
                return "".join(itertools.islice(_fixed_point_letters(images, start), n))
        return s[:n]

    return WordStream(
        lambda: _fixed_point_letters(images, start),
        m.sigma,
        name=f"morphic:{m}@{start}",
        fast_prefix=fast,
    )


# --------------------------------------------------------------------------
# Toeplitz words
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ToeplitzPattern:
    pattern: str

    def __post_init__(self):
        p = self.pattern
        if not p or p[0] == HOLE:
            raise WordError("Toeplitz pattern must start with a letter")
        check_word(p.replace(HOLE, ""))

    @property
    def length(self) -> int:
        return len(self.pattern)

    @property
    def holes(self) -> int:
        return self.pattern.count(HOLE)

    @property
    def sigma(self) -> int:
        return alphabet_size(self.pattern.replace(HOLE, ""))

    def fill(self, u: Iterable[str]) -> Iterator[str]:
        """``F_w(u)``: ``w^omega`` with its holes replaced by the letters of ``u`` in order."""
        src = iter(u)
        while True:
            for ch in self.pattern:
                yield next(src) if ch == HOLE else ch


def _toeplitz_letters(pattern: ToeplitzPattern) -> Iterator[str]:
    # T = F_w(T): the holes are fed by a nested copy of the same word, created
    # on first use; nesting depth grows like log_{p/q}(n).
    nested: Iterator[str] | None = None
    while True:
        for ch in pattern.pattern:
            if ch != HOLE:
                yield ch
                continue
            if nested is None:
                nested = _toeplitz_letters(pattern)
            yield next(nested)


def _toeplitz_prefix(pattern: ToeplitzPattern, n: int) -> str:
    import numpy as np

    if n == 0:
        return ""
    p, q = pattern.length, pattern.holes
    pat = np.frombuffer(pattern.pattern.encode(), dtype=np.uint8)
    j = np.arange(n)
    r = j % p
    out = pat[r].copy()
    is_hole = pat[r] == ord(HOLE)
    if q:
        rank = np.cumsum(pat == ord(HOLE)) - (pat == ord(HOLE))
        holes = np.flatnonzero(is_hole)
        src = (holes // p) * q + rank[r[holes]]
        unknown = np.ones(len(holes), dtype=bool)
        # one pass per round T_i -> T_{i+1}, restricted to the requested prefix
        while unknown.any():
            ready = unknown & (out[src] != ord(HOLE))
            out[holes[ready]] = out[src[ready]]
            unknown &= ~ready
    return out.tobytes().decode()


def toeplitz_stream(p: ToeplitzPattern | str) -> WordStream:
    if isinstance(p, str):
        p = ToeplitzPattern(p)
    return WordStream(
        lambda: _toeplitz_letters(p),
        p.sigma,
        name=f"toeplitz:{p.pattern}",
        fast_prefix=lambda n: _toeplitz_prefix(p, n),
    )


# --------------------------------------------------------------------------
# Periodic and block-built words
# --------------------------------------------------------------------------


def periodic_stream(u: str) -> WordStream:
    """The purely periodic word ``u u u ...``."""
    check_word(u)
    if not u:
        raise WordError("periodic word needs a non-empty period")

    def fast(n: int) -> str:
        return (u * (n // len(u) + 1))[:n]

    return WordStream(lambda: itertools.cycle(u), alphabet_size(u), f"periodic:{u}", fast)


@dataclass(frozen=True)
class Constant:
    value: int

    def __post_init__(self):
        if self.value < 1:
            raise WordError("block exponents must be at least 1")

    def __iter__(self):
        return itertools.repeat(self.value)


@dataclass(frozen=True)
class Geometric:
    base: int
    start: int = 1

    def __iter__(self):
        x = self.start
        while True:
            yield x
            x *= self.base


@dataclass(frozen=True)
class Arithmetic:
    start: int
    step: int

    def __iter__(self):
        return itertools.count(self.start, self.step)


@dataclass(frozen=True)
class Recurrence:
    """Linear recurrence ``n_i = sum(coef_j * n_{i-j})`` after the initial terms.

    The default coefficients ``(1, 1)`` give the additive (Fibonacci-type)
    rule ``n_i = n_{i-1} + n_{i-2}``.
    """

    initial: tuple[int, ...]
    coefficients: tuple[int, ...] = (1, 1)

    def __post_init__(self):
        if len(self.initial) < len(self.coefficients):
            raise WordError("recurrence needs at least as many initial terms as coefficients")

    def __iter__(self):
        terms = list(self.initial)
        yield from terms
        order = len(self.coefficients)
        window = terms[-order:]
        while True:
            nxt = sum(c * x for c, x in zip(self.coefficients, reversed(window)))
            yield nxt
            window = window[1:] + [nxt]


ExponentGen = Constant | Geometric | Arithmetic | Recurrence


@dataclass(frozen=True)
class BlockSpec:
    """Cycle through ``words``, repeating the i-th block ``exponent_i`` times.

    With a single exponent generator the sequence is shared by all blocks in
    order (block ``i`` gets ``n_i``); otherwise word ``j`` draws successive
    exponents from its own generator ``exponents[j]``.
    """

    words: tuple[str, ...]
    exponents: tuple[ExponentGen, ...]
    name: str = field(default="blocks", compare=False)

    def __post_init__(self):
        if not self.words:
            raise WordError("block spec needs at least one word")
        for u in self.words:
            if not u:
                raise WordError("block words must be non-empty")
            check_word(u)
        if len(self.exponents) not in (1, len(self.words)):
            raise WordError("give one shared exponent generator or one per word")

    @property
    def shared(self) -> bool:
        return len(self.exponents) == 1 and len(self.words) > 1

    @property
    def sigma(self) -> int:
        return alphabet_size("".join(self.words))

    def blocks(self) -> Iterator[tuple[str, int]]:
        """Yield ``(word, exponent)`` for block 1, 2, ..."""
        if self.shared:
            pairs = zip(itertools.cycle(self.words), iter(self.exponents[0]))
        else:
            gens = [iter(g) for g in self.exponents]
            pairs = ((self.words[j], next(gens[j])) for j in itertools.cycle(range(len(self.words))))
        for i, (u, e) in enumerate(pairs, start=1):
            if e < 1:
                raise WordError(f"block {i} has exponent {e}; exponents must be at least 1")
            yield u, e


def block_word_stream(spec: BlockSpec) -> WordStream:
    def letters():
        for u, e in spec.blocks():
            for _ in range(e):
                yield from u

    def fast(n: int) -> str:
        parts, total = [], 0
        for u, e in spec.blocks():
            if total >= n:
                break
            reps = min(e, (n - total) // len(u) + 1)
            parts.append(u * reps)
            total += len(u) * reps
        return "".join(parts)[:n]

    return WordStream(letters, spec.sigma, spec.name, fast)


# --------------------------------------------------------------------------
# Named example words
# --------------------------------------------------------------------------

# prop34: the first six exponents are forced by the displayed word; from the
# seventh on n_i = n_{i-1} + n_{i-2}.  Equivalent to demanding that each block
# end with its letter at frequency exactly 1/2.
PROP34_INITIAL = (1, 1, 1, 1, 2, 4)

NAMED_SPECS: dict[str, BlockSpec] = {
    "prop12": BlockSpec(
        ("01", "1", "10", "0"),
        (Arithmetic(1, 2), Constant(1), Arithmetic(2, 2), Constant(1)),
        name="named:prop12",
    ),
    "prop31": BlockSpec(("01", "0"), (Geometric(2, 1), Constant(1)), name="named:prop31"),
    "prop34": BlockSpec(("0", "1", "2"), (Recurrence(PROP34_INITIAL),), name="named:prop34"),
}

NAMED_WORDS = ("paperfolding", "prop12", "prop31", "prop34", "thue_morse")


def named_word(name: str) -> WordStream:
    if name == "paperfolding":
        w = toeplitz_stream("0?1?")
    elif name == "thue_morse":
        w = fixed_point_stream(Morphism(("01", "10")), 0)
    elif name in NAMED_SPECS:
        w = block_word_stream(NAMED_SPECS[name])
    else:
        raise WordError(f"unknown named word {name!r}; choose from {', '.join(NAMED_WORDS)}")
    w.name = f"named:{name}"
    return w


# --------------------------------------------------------------------------
# Letter unification and text I/O
# --------------------------------------------------------------------------


def unify_letters(w: WordStream | str, a: int, b: int, compact: bool = False):
    """Image of ``w`` under ``b -> a`` (other letters fixed).

    With ``compact=True`` the letters above ``b`` are shifted down by one so
    the result uses the alphabet ``0 .. sigma-2``.
    """
    if a == b:
        raise WordError("cannot unify a letter with itself")
    sigma = w.sigma if isinstance(w, WordStream) else max(alphabet_size(w), a + 1, b + 1)
    if not (0 <= a < sigma and 0 <= b < sigma):
        raise WordError(f"letters {a}, {b} outside alphabet of size {sigma}")
    table = {str(b): str(a)}
    if compact:
        target = a - (a > b)
        table = {str(c): str(c - (c > b)) for c in range(sigma) if c != b}
        table[str(b)] = str(target)
    if isinstance(w, str):
        check_word(w)
        return w.translate(str.maketrans(table))
    new_sigma = sigma - 1 if compact else sigma
    return w.map_letters(table, f"{w.name}^({a}u{b})", max(new_sigma, 2))


def read_word(path: str | Path) -> str:
    """Read the word text format: digits, whitespace ignored."""
    text = "".join(Path(path).read_text(encoding="ascii").split())
    return check_word(text)


def write_word(path: str | Path, u: str) -> None:
    Path(path).write_text(u + "\n", encoding="ascii")


def finite_stream(u: str, name: str = "finite") -> WordStream:
    """Stream over a finite word; consumers see end-of-word as end-of-budget."""
    check_word(u)
    return WordStream(lambda: iter(u), alphabet_size(u), name, lambda n: u[:n], finite=True)


def as_text(w: WordStream | str, n: int) -> str:
    """Prefix of length ``n`` as a string (shorter for finite words)."""
    return w[:n] if isinstance(w, str) else w.prefix(n)
