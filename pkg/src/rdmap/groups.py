"""Built-in groups with word-length metrics and canonical ball enumeration.

Three families are provided, each with a unique normal form per element:

* free groups of rank ``k``: reduced words over lowercase generators
  ``a, b, c, ...`` and uppercase inverses ``A, B, C, ...``;
* free-abelian groups of rank ``d``: integer vectors with the ``l1`` word
  length;
* cyclic groups of order ``m``: residues in ``[0, m)`` with length
  ``min(r, m - r)``.

Word lengths satisfy the usual axioms: the identity has length zero, an
element and its inverse have equal length, and length is subadditive under
multiplication.

Balls are enumerated in a fixed canonical order, breadth-first by length and
lexicographically within a length (generator order ``a < A < b < B < ...``
for free groups, tuple order for vectors, residue order for cyclic groups),
so every downstream matrix and report is reproducible run to run.  Ball sizes
grow exponentially in free groups; a configurable cap turns runaway requests
into an explicit :class:`BallCapError` instead of silent truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import ClassVar

__all__ = [
    "DEFAULT_BALL_CAP",
    "BallCapError",
    "GroupMismatchError",
    "Group",
    "FreeGroup",
    "FreeAbelianGroup",
    "CyclicGroup",
]

DEFAULT_BALL_CAP = 200_000

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


class GroupMismatchError(ValueError):
    """An element does not belong to the group it was used with."""


class BallCapError(RuntimeError):
    """A requested ball would exceed the configured element cap."""


class Group:
    """Common surface of the built-in groups.

    Concrete subclasses implement the element operations; this base class
    owns the capped ball enumeration shared by all of them.  Elements are
    plain hashable payloads (strings, integer tuples, ints), so they can key
    dictionaries directly.
    """

    kind: ClassVar[str]

    def identity(self):
        raise NotImplementedError

    def multiply(self, x, y):
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def length(self, x) -> int:
        raise NotImplementedError

    def ball_size(self, n: int) -> int:
        """Number of elements of length at most ``n`` (exact, no enumeration)."""
        raise NotImplementedError

    def parse(self, obj):
        """Normalize an external encoding into the canonical element payload."""
        raise NotImplementedError

    def encode(self, x):
        """JSON-friendly encoding of an element (inverse of :meth:`parse`)."""
        raise NotImplementedError

    def sort_key(self, x):
        """Key realizing the canonical (length, lexicographic) element order."""
        raise NotImplementedError

    def _enumerate_ball(self, n: int) -> list:
        raise NotImplementedError

    def ball(self, n: int, cap: int = DEFAULT_BALL_CAP) -> list:
        """All elements of length <= ``n`` in canonical order.

        The order is reproducible and prefix-compatible: ``ball(n)`` is an
        ordered prefix of ``ball(n + 1)``.  Raises :class:`BallCapError` when
        the ball would hold more than ``cap`` elements.
        """
        if n < 0:
            raise ValueError(f"ball radius must be nonnegative, got {n}")
        size = self.ball_size(n)
        if size > cap:
            raise BallCapError(
                f"{self!r}: ball of radius {n} holds {size} elements, "
                f"over the cap of {cap}"
            )
        return self._enumerate_ball(n)


@dataclass(frozen=True)
class FreeGroup(Group):
    """Free group of rank ``k``, elements as reduced words.

    Words use lowercase letters for generators and uppercase for their
    inverses, e.g. ``"aBa"`` is a * b^-1 * a in rank 2.  Non-reduced input
    words are normalized, never rejected.
    """

    rank: int
    kind: ClassVar[str] = "free"

    def __post_init__(self):
        if not 1 <= self.rank <= len(_ALPHABET):
            raise ValueError(f"free rank must be in [1, 26], got {self.rank}")

    @property
    def letters(self) -> str:
        """The 2k letters in canonical order: a, A, b, B, ..."""
        return "".join(c + c.upper() for c in _ALPHABET[: self.rank])

    def _check_letters(self, x):
        if not isinstance(x, str):
            raise GroupMismatchError(f"free group element must be a word, got {x!r}")
        for c in x:
            idx = _ALPHABET.find(c.lower())
            if idx < 0 or idx >= self.rank:
                raise GroupMismatchError(f"letter {c!r} not valid in rank {self.rank}")

    @staticmethod
    def _reduce(word: str) -> str:
        out: list[str] = []
        for c in word:
            if out and out[-1] == c.swapcase():
                out.pop()
            else:
                out.append(c)
        return "".join(out)

    def identity(self) -> str:
        return ""

    def parse(self, obj) -> str:
        self._check_letters(obj)
        return self._reduce(obj)

    def encode(self, x) -> str:
        return self.parse(x)

    def multiply(self, x: str, y: str) -> str:
        self._check_letters(x)
        self._check_letters(y)
        return self._reduce(x + y)

    def inverse(self, x: str) -> str:
        self._check_letters(x)
        return self._reduce(x)[::-1].swapcase()

    def length(self, x: str) -> int:
        self._check_letters(x)
        return len(self._reduce(x))

    def sort_key(self, x: str):
        word = self.parse(x)
        order = self.letters
        return (len(word), tuple(order.index(c) for c in word))

    def ball_size(self, n: int) -> int:
        if n < 0:
            raise ValueError("radius must be nonnegative")
        k = self.rank
        if k == 1:
            return 2 * n + 1
        # 1 + sum_{j=1..n} 2k (2k-1)^(j-1), geometric
        return 1 + 2 * k * ((2 * k - 1) ** n - 1) // (2 * k - 2)

    def _enumerate_ball(self, n: int) -> list[str]:
        letters = self.letters
        out = [""]
        level = [""]
        for _ in range(n):
            nxt = []
            for w in level:
                blocked = w[-1].swapcase() if w else None
                for c in letters:
                    if c != blocked:
                        nxt.append(w + c)
            out.extend(nxt)
            level = nxt
        return out


@dataclass(frozen=True)
class FreeAbelianGroup(Group):
    """Free-abelian group of rank ``d``, elements as integer d-vectors."""

    rank: int
    kind: ClassVar[str] = "free-abelian"

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"free-abelian rank must be >= 1, got {self.rank}")

    def _check(self, x):
        if (
            not isinstance(x, tuple)
            or len(x) != self.rank
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in x)
        ):
            raise GroupMismatchError(
                f"expected an integer {self.rank}-tuple, got {x!r}"
            )

    def identity(self) -> tuple:
        return (0,) * self.rank

    def parse(self, obj) -> tuple:
        if isinstance(obj, (list, tuple)):
            obj = tuple(int(v) for v in obj)
        self._check(obj)
        return obj

    def encode(self, x) -> list:
        self._check(x)
        return list(x)

    def multiply(self, x: tuple, y: tuple) -> tuple:
        self._check(x)
        self._check(y)
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x: tuple) -> tuple:
        self._check(x)
        return tuple(-a for a in x)

    def length(self, x: tuple) -> int:
        self._check(x)
        return sum(abs(a) for a in x)

    def sort_key(self, x: tuple):
        self._check(x)
        return (self.length(x), x)

    def ball_size(self, n: int) -> int:
        if n < 0:
            raise ValueError("radius must be nonnegative")
        d = self.rank
        return sum(2**i * comb(d, i) * comb(n, i) for i in range(0, min(d, n) + 1))

    def _enumerate_ball(self, n: int) -> list[tuple]:
        def gen(d: int, budget: int):
            if d == 1:
                for v in range(-budget, budget + 1):
                    yield (v,)
                return
            for v in range(-budget, budget + 1):
                for rest in gen(d - 1, budget - abs(v)):
                    yield (v,) + rest

        return sorted(gen(self.rank, n), key=self.sort_key)


@dataclass(frozen=True)
class CyclicGroup(Group):
    """Cyclic group of order ``m``, elements as residues in ``[0, m)``."""

    order: int
    kind: ClassVar[str] = "cyclic"

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"cyclic order must be >= 2, got {self.order}")

    def _check(self, x):
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.order:
            raise GroupMismatchError(
                f"expected a residue in [0, {self.order}), got {x!r}"
            )

    def identity(self) -> int:
        return 0

    def parse(self, obj) -> int:
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise GroupMismatchError(f"cyclic element must be an integer, got {obj!r}")
        return obj % self.order

    def encode(self, x) -> int:
        self._check(x)
        return x

    def multiply(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return (x + y) % self.order

    def inverse(self, x: int) -> int:
        self._check(x)
        return (-x) % self.order

    def length(self, x: int) -> int:
        self._check(x)
        return min(x, self.order - x)

    def sort_key(self, x: int):
        return (self.length(x), x)

    def ball_size(self, n: int) -> int:
        if n < 0:
            raise ValueError("radius must be nonnegative")
        return min(self.order, 2 * n + 1)

    def _enumerate_ball(self, n: int) -> list[int]:
        members = [x for x in range(self.order) if self.length(x) <= n]
        return sorted(members, key=self.sort_key)
