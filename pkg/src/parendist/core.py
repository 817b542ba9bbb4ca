"""Alphabets, parenthesis strings, height geometry and alignments.

Symbols are stored as non-zero integers: ``+k`` opens type ``k`` and ``-k``
closes it, so the complement of a symbol is its negation.  Positions exposed
by this module are 1-based and ranges are half-open on the left, ``(i..j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_PAIRS = "()[]{}<>"


class ParseError(ValueError):
    """Raised for malformed input text."""


@dataclass(frozen=True)
class Alphabet:
    type_count: int
    display: tuple[tuple[str, str], ...] | None = None

    def __post_init__(self):
        if self.type_count < 1:
            raise ValueError("type_count must be positive")
        if self.display is not None and len(self.display) != self.type_count:
            raise ValueError("display table must list one (open, close) pair per type")

    @classmethod
    def from_pairs(cls, pairs: str) -> "Alphabet":
        if not pairs or len(pairs) % 2:
            raise ParseError(f"pair table must have even length, got {pairs!r}")
        if len(set(pairs)) != len(pairs):
            raise ParseError(f"pair table has repeated characters: {pairs!r}")
        if any(c.isspace() for c in pairs):
            raise ParseError("pair table may not contain whitespace")
        display = tuple((pairs[k], pairs[k + 1]) for k in range(0, len(pairs), 2))
        return cls(len(display), display)

    def symbols(self) -> list[int]:
        return [s for k in range(1, self.type_count + 1) for s in (k, -k)]

    def contains(self, sym: int) -> bool:
        return sym != 0 and abs(sym) <= self.type_count

    @staticmethod
    def complement(sym: int) -> int:
        return -sym

    @staticmethod
    def is_open(sym: int) -> bool:
        return sym > 0

    def char(self, sym: int) -> str:
        if self.display is None:
            raise ValueError("alphabet has no display table")
        o, c = self.display[abs(sym) - 1]
        return o if sym > 0 else c

    def decode_table(self) -> dict[str, int]:
        if self.display is None:
            return {}
        table = {}
        for k, (o, c) in enumerate(self.display, start=1):
            table[o] = k
            table[c] = -k
        return table

    def extended(self, extra: int = 1) -> "Alphabet":
        """Same alphabet with ``extra`` fresh types appended (used for padding)."""
        if self.display is None:
            return Alphabet(self.type_count + extra)
        used = {c for pair in self.display for c in pair}
        spare = [c for c in "⟨⟩⟦⟧⦃⦄⦅⦆«»‹›" if c not in used]
        if len(spare) < 2 * extra:
            return Alphabet(self.type_count + extra)
        new = tuple((spare[2 * k], spare[2 * k + 1]) for k in range(extra))
        return Alphabet(self.type_count + extra, self.display + new)


class ParenString:
    """Immutable sequence of symbols over an :class:`Alphabet`."""

    __slots__ = ("_sym", "alphabet", "_h")

    def __init__(self, symbols: Iterable[int] = (), alphabet: Alphabet | None = None):
        arr = np.array(list(symbols) if not isinstance(symbols, np.ndarray) else symbols,
                       dtype=np.int32).ravel()
        if alphabet is None:
            alphabet = Alphabet(max(1, int(np.abs(arr).max())) if arr.size else 1)
        if arr.size and ((arr == 0).any() or int(np.abs(arr).max()) > alphabet.type_count):
            raise ValueError("symbol outside alphabet")
        arr.setflags(write=False)
        self._sym = arr
        self.alphabet = alphabet
        self._h = None

    @classmethod
    def from_text(cls, text: str, pairs: str = DEFAULT_PAIRS) -> "ParenString":
        alphabet = Alphabet.from_pairs(pairs)
        table = alphabet.decode_table()
        try:
            syms = [table[c] for c in text if not c.isspace()]
        except KeyError as exc:
            raise ParseError(f"{exc.args[0]!r} not in alphabet") from None
        # shrink the alphabet to the pairs actually needed only if the caller used the default
        return cls(syms, alphabet)

    @property
    def symbols(self) -> np.ndarray:
        return self._sym

    def __len__(self) -> int:
        return int(self._sym.size)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return ParenString(self._sym[idx], self.alphabet)
        return int(self._sym[idx])

    def __iter__(self):
        return (int(s) for s in self._sym)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParenString):
            return NotImplemented
        return np.array_equal(self._sym, other._sym)

    def __hash__(self) -> int:
        return hash(self._sym.tobytes())

    def __add__(self, other: "ParenString") -> "ParenString":
        alpha = self.alphabet if self.alphabet.type_count >= other.alphabet.type_count else other.alphabet
        return ParenString(np.concatenate([self._sym, other._sym]), alpha)

    def fragment(self, i: int, j: int) -> "ParenString":
        """The fragment ``x(i..j]`` (positions i+1 through j, 1-based)."""
        return ParenString(self._sym[i:j], self.alphabet)

    def window(self, start: int, end: int) -> "ParenString":
        """``x[start..end]`` with 1-based inclusive bounds."""
        return ParenString(self._sym[start - 1:end], self.alphabet)

    def to_text(self) -> str:
        if self.alphabet.display is None:
            return " ".join(str(s) for s in self)
        return "".join(self.alphabet.char(s) for s in self)

    def __repr__(self) -> str:
        if self.alphabet.display is not None:
            return f"ParenString({self.to_text()!r})"
        return f"ParenString({self._sym.tolist()!r})"

    def heights(self) -> np.ndarray:
        if self._h is None:
            h = np.zeros(len(self) + 1, dtype=np.int32)
            np.cumsum(np.sign(self._sym), out=h[1:])
            h.setflags(write=False)
            self._h = h
        return self._h


def paren(text: str, pairs: str = DEFAULT_PAIRS) -> ParenString:
    """Shorthand for building a string from bracket characters."""
    return ParenString.from_text(text, pairs)


# ---------------------------------------------------------------- file format

def parse_input(data: bytes | str) -> tuple[Alphabet, ParenString]:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    lines = text.split("\n")
    idx = 0
    while idx < len(lines) and (lines[idx].startswith("#") or not lines[idx].strip()):
        idx += 1
    if idx == len(lines):
        raise ParseError("missing header line")
    header = lines[idx].rstrip("\r")
    body = "\n".join(lines[idx + 1:])
    if header.startswith("pairs:"):
        alphabet = Alphabet.from_pairs(header[len("pairs:"):].strip())
        table = alphabet.decode_table()
        syms = []
        for c in body:
            if c.isspace():
                continue
            if c not in table:
                raise ParseError(f"{c!r} not in alphabet")
            syms.append(table[c])
        return alphabet, ParenString(syms, alphabet)
    if header.startswith("types:"):
        try:
            t = int(header[len("types:"):].strip())
        except ValueError:
            raise ParseError(f"malformed header {header!r}") from None
        if t < 1:
            raise ParseError("type count must be positive")
        alphabet = Alphabet(t)
        syms = []
        for tok in body.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"token {tok!r} is not an integer") from None
            if v == 0 or abs(v) > t:
                raise ParseError(f"token {tok!r} not in alphabet")
            syms.append(v)
        return alphabet, ParenString(syms, alphabet)
    raise ParseError(f"malformed header {header!r}")


def serialize(alphabet: Alphabet, x: ParenString, comment: str | None = None) -> str:
    out = []
    if comment is not None:
        out.append("# " + comment)
    if alphabet.display is not None:
        out.append("pairs: " + "".join(o + c for o, c in alphabet.display))
        out.append("".join(alphabet.char(s) for s in x))
    else:
        out.append(f"types: {alphabet.type_count}")
        out.append(" ".join(str(s) for s in x))
    return "\n".join(out) + "\n"


# ------------------------------------------------------------ string geometry

def reverse_complement(x: ParenString) -> ParenString:
    return ParenString(-x.symbols[::-1], x.alphabet)


def pair_cost(a: int, b: int) -> int:
    """Cost of matching symbol ``a`` (left) with ``b`` (right); equals dyck(ab)."""
    wrong = (a < 0) + (b > 0)
    if wrong:
        return wrong
    return int(b != -a)


def height_profile(x: ParenString) -> np.ndarray:
    return x.heights()


def valleys(x: ParenString) -> list[int]:
    h = x.heights()
    if len(h) < 3:
        return []
    mid = h[1:-1]
    v = np.nonzero((h[:-2] > mid) & (mid < h[2:]))[0] + 1
    return v.tolist()


def pivot_candidates(x: ParenString) -> list[int]:
    n = len(x)
    out = set()
    for v in valleys(x):
        for k in (v - 1, v, v + 1):
            if 0 <= k <= n:
                out.add(k)
    return sorted(out)


def _stack_reduce(syms: np.ndarray, fold: bool) -> np.ndarray:
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for s in syms.tolist():
        if stack and s == -stack[-1] and (fold or stack[-1] > 0):
            pop()
        else:
            push(s)
    return np.array(stack, dtype=np.int32)


def reduce_dyck(x: ParenString) -> ParenString:
    """Exhaustively delete adjacent ``a ā`` pairs with ``a`` opening."""
    return ParenString(_stack_reduce(x.symbols, fold=False), x.alphabet)


def reduce_fold(x: ParenString) -> ParenString:
    """Exhaustively delete adjacent complementary pairs in either order."""
    return ParenString(_stack_reduce(x.symbols, fold=True), x.alphabet)


def is_fold_irreducible(x: ParenString) -> bool:
    s = x.symbols
    return not bool((s[1:] == -s[:-1]).any()) if len(s) > 1 else True


# ----------------------------------------------------------------- alignments

class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class Alignment:
    """Non-crossing matching over 1-based positions."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        ps = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        object.__setattr__(self, "pairs", ps)
        seen = set()
        for i, j in ps:
            if i >= j:
                raise AlignmentError(f"pair {(i, j)} is not ordered")
            if i in seen or j in seen:
                raise AlignmentError(f"position reused in pair {(i, j)}")
            seen.update((i, j))
        # nesting check with a stack of open right endpoints
        stack: list[int] = []
        events = sorted([(i, 0, j) for i, j in ps] + [(j, 1, i) for i, j in ps])
        for pos, kind, other in events:
            if kind == 0:
                stack.append(pos)
            else:
                if not stack or stack[-1] != other:
                    raise AlignmentError("alignment is crossing")
                stack.pop()

    def __len__(self) -> int:
        return len(self.pairs)

    def partner(self) -> dict[int, int]:
        m = {}
        for i, j in self.pairs:
            m[i] = j
            m[j] = i
        return m

    def check_length(self, n: int) -> None:
        if self.pairs and (self.pairs[0][0] < 1 or max(j for _, j in self.pairs) > n):
            raise AlignmentError("alignment position out of range")


def alignment_cost(x: ParenString, M: Alignment) -> int:
    M.check_length(len(x))
    s = x.symbols
    return len(x) - 2 * len(M) + sum(pair_cost(int(s[i - 1]), int(s[j - 1])) for i, j in M.pairs)


# -------------------------------------------------------------------- windows

@dataclass(frozen=True, order=True)
class Window:
    """Interval ``[start..end]`` of 1-based positions; empty iff end == start - 1.

    An empty window is anchored at position ``end`` (it sits in the gap after it).
    """

    start: int
    end: int

    def __post_init__(self):
        if self.start < 1 or self.end < self.start - 1:
            raise ValueError(f"invalid window [{self.start}..{self.end}]")

    @classmethod
    def empty(cls, anchor: int) -> "Window":
        return cls(anchor + 1, anchor)

    def __len__(self) -> int:
        return self.end - self.start + 1

    @property
    def is_empty(self) -> bool:
        return self.end < self.start

    @property
    def anchor(self) -> int:
        return self.start - 1

    def contains(self, other: "Window") -> bool:
        return self.start <= other.start and other.end <= self.end

    def positions(self) -> range:
        return range(self.start, self.end + 1)


@dataclass(frozen=True)
class WeightedWindowPair:
    left: Window
    right: Window
    weight: int = field(default=0)

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be non-negative")
        if not self.left.is_empty and not self.right.is_empty and self.left.end >= self.right.start:
            raise ValueError("left window must precede right window")

    def text(self, x: ParenString) -> ParenString:
        return x.window(self.left.start, self.left.end) + x.window(self.right.start, self.right.end)


def pair_text(x: ParenString, w: Window, w2: Window) -> ParenString:
    return x.window(w.start, w.end) + x.window(w2.start, w2.end)


def is_consistent_decomposition(pairs: Sequence[tuple[Window, Window]], n: int | None = None) -> bool:
    """Disjoint windows whose non-empty start pairs form a non-crossing matching.

    When ``n`` is given the windows must also cover ``[1..n]`` exactly.
    """
    spans = sorted((w.start, w.end) for p in pairs for w in p if not w.is_empty)
    for (a0, a1), (b0, b1) in zip(spans, spans[1:]):
        if b0 <= a1:
            return False
    if n is not None:
        covered = sum(e - s + 1 for s, e in spans)
        if covered != n or (spans and (spans[0][0] != 1 or spans[-1][1] != n)):
            return False
        if n == 0 and spans:
            return False
    starts = [(w.start, w2.start) for w, w2 in pairs if not w.is_empty and not w2.is_empty]
    try:
        Alignment(tuple(starts))
    except AlignmentError:
        return False
    return True
