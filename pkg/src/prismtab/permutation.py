"""Permutations in one-line notation and their diagram combinatorics.

Cells are 1-based ``(row, col)`` tuples in the ``n x n`` grid.  Row 1 is the
top row, column 1 the leftmost column (matrix convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator

Cell = tuple[int, int]

__all__ = [
    "Cell",
    "Permutation",
    "EssentialDatum",
    "Shape",
    "make_permutation",
    "parse_permutation",
    "all_permutations",
    "length",
    "diagram",
    "rank",
    "rank_matrix",
    "essential_set",
    "shape",
    "lehmer_code",
    "bigrassmannian_for",
    "bigrass_set",
    "is_grassmannian",
    "is_bigrassmannian",
    "is_vexillary",
    "descents",
    "bruhat_leq",
    "one_m_times",
    "product_of_word",
    "reduced_word",
]


class Permutation:
    """A permutation of ``{1..n}`` in one-line notation.

    Equality and hashing ignore trailing fixed points, so ``Permutation([2, 1])``
    and ``Permutation([2, 1, 3])`` are the same element of ``S_infinity``.
    """

    __slots__ = ("window", "_key", "_length")

    def __init__(self, word: Iterable[int]):
        window = tuple(int(v) for v in word)
        if not window:
            raise ValueError("permutation word must be non-empty")
        if sorted(window) != list(range(1, len(window) + 1)):
            raise ValueError(f"not a permutation of 1..{len(window)}: {list(window)}")
        self.window = window
        k = len(window)
        while k > 0 and window[k - 1] == k:
            k -= 1
        self._key = window[:k]

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def key(self) -> tuple[int, ...]:
        """Window with trailing fixed points removed (empty for the identity)."""
        return self._key

    @property
    def size(self) -> int:
        """Smallest ``n`` with this permutation in ``S_n``."""
        return max(len(self._key), 1)

    def __call__(self, i: int) -> int:
        if 1 <= i <= len(self.window):
            return self.window[i - 1]
        if i < 1:
            raise ValueError(f"position {i} out of range")
        return i

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Permutation):
            return self._key == other._key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "Permutation") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.window)
        return ",".join(str(v) for v in self.window)

    def padded(self, n: int) -> tuple[int, ...]:
        """One-line window of length ``n`` (must be at least :attr:`size`)."""
        if n < len(self._key):
            raise ValueError(f"{self} does not fit in S_{n}")
        return self._key + tuple(range(len(self._key) + 1, n + 1))

    def in_sn(self, n: int) -> "Permutation":
        return Permutation(self.padded(n))

    def trimmed(self) -> "Permutation":
        return Permutation(self.padded(self.size))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.window, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def swap_positions(self, i: int) -> "Permutation":
        """Right multiplication by ``s_i`` (swap entries in positions i, i+1)."""
        win = list(self.padded(max(self.n, i + 1)))
        win[i - 1], win[i] = win[i], win[i - 1]
        return Permutation(win)

    @property
    def length(self) -> int:
        try:
            return self._length
        except AttributeError:
            self._length = length(self)
            return self._length

    def is_identity(self) -> bool:
        return not self._key


def make_permutation(word: Iterable[int]) -> Permutation:
    return Permutation(word)


def parse_permutation(text: str) -> Permutation:
    """Parse ``"42513"`` or ``"10,3,1,..."``."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    else:
        parts = list(text)
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"cannot parse permutation {text!r}") from exc
    return Permutation(values)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of ``S_n`` in lexicographic order of the window."""
    for word in permutations(range(1, n + 1)):
        yield Permutation(word)


def length(w: Permutation) -> int:
    win = w.window
    return sum(1 for a, b in combinations(win, 2) if a > b)


def descents(w: Permutation) -> list[int]:
    win = w.window
    return [i for i in range(1, len(win)) if win[i - 1] > win[i]]


def diagram(w: Permutation, n: int | None = None) -> frozenset[Cell]:
    """Rothe diagram: cells (i, j) with w(i) > j and w^{-1}(j) > i."""
    n = w.n if n is None else n
    win = w.padded(n)
    inv = [0] * n
    for i, v in enumerate(win, start=1):
        inv[v - 1] = i
    return frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, win[i - 1])
        if inv[j - 1] > i
    )


def rank(w: Permutation, i: int, j: int, n: int | None = None) -> int:
    n = w.n if n is None else n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"({i}, {j}) outside the {n}x{n} grid")
    win = w.padded(n)
    return sum(1 for t in range(i) if win[t] <= j)


def rank_matrix(w: Permutation, n: int | None = None) -> list[list[int]]:
    """``r[i][j]`` for 0 <= i, j <= n (row/column 0 are zero)."""
    n = w.n if n is None else n
    win = w.padded(n)
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        wi = win[i - 1]
        row, prev = r[i], r[i - 1]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if wi <= j else 0)
    return r


def lehmer_code(w: Permutation, n: int | None = None) -> tuple[int, ...]:
    n = w.n if n is None else n
    win = w.padded(n)
    return tuple(
        sum(1 for b in win[i + 1:] if b < win[i]) for i in range(n)
    )


@dataclass(frozen=True)
class EssentialDatum:
    cell: Cell
    rank: int
    rect: frozenset[Cell]
    color: int

    @property
    def height(self) -> int:
        return self.cell[0] - self.rank

    @property
    def width(self) -> int:
        return self.cell[1] - self.rank


@dataclass(frozen=True)
class Shape:
    boxes: frozenset[Cell]
    essentials: tuple[EssentialDatum, ...]

    def row_lengths(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r, _ in self.boxes:
            out[r] = out.get(r, 0) + 1
        return dict(sorted(out.items()))

    def colors_at(self, cell: Cell) -> list[int]:
        return [e.color for e in self.essentials if cell in e.rect]


def _rectangle(i: int, j: int, r: int) -> frozenset[Cell]:
    return frozenset(
        (a, b) for a in range(r + 1, i + 1) for b in range(1, j - r + 1)
    )


def essential_set(w: Permutation, n: int | None = None) -> list[EssentialDatum]:
    """Cells of D(w) with no diagram cell directly south or east, row-major."""
    n = w.n if n is None else n
    d = diagram(w, n)
    r = rank_matrix(w, n)
    cells = sorted(c for c in d if (c[0] + 1, c[1]) not in d and (c[0], c[1] + 1) not in d)
    out = []
    for color, (i, j) in enumerate(cells):
        out.append(EssentialDatum((i, j), r[i][j], _rectangle(i, j, r[i][j]), color))
    return out


def shape(w: Permutation, n: int | None = None) -> Shape:
    ess = tuple(essential_set(w, n))
    boxes: frozenset[Cell] = frozenset().union(*(e.rect for e in ess)) if ess else frozenset()
    return Shape(boxes, ess)


def bigrassmannian_for(i: int, j: int, r: int, n: int | None = None) -> Permutation:
    """The biGrassmannian ``u`` with ``Ess(u) = {(i, j)}`` and ``r_u(i, j) = r``.

    The window is ``1..r, j+1..j+i-r, r+1..j`` followed by fixed points; the
    result is checked against its own essential set before being returned.
    """
    if not (0 <= r < min(i, j)):
        raise ValueError(f"need 0 <= r < min(i, j); got i={i}, j={j}, r={r}")
    top = j + i - r
    if n is not None and top > n:
        raise ValueError(f"biGrassmannian for ({i},{j}) rank {r} does not fit in S_{n}")
    word = list(range(1, r + 1)) + list(range(j + 1, top + 1)) + list(range(r + 1, j + 1))
    u = Permutation(word if n is None else word + list(range(top + 1, n + 1)))
    ess = essential_set(u)
    if [e.cell for e in ess] != [(i, j)] or ess[0].rank != r:
        raise AssertionError(f"biGrassmannian construction failed for ({i},{j}) rank {r}: {u}")
    return u


def bigrass_set(w: Permutation) -> list[Permutation]:
    """One ``u_e`` per essential box, in essential-set order, as elements of ``S_n``."""
    n = w.n
    return [bigrassmannian_for(e.cell[0], e.cell[1], e.rank, n) for e in essential_set(w)]


def is_grassmannian(w: Permutation) -> bool:
    return len(descents(w)) <= 1


def is_bigrassmannian(w: Permutation) -> bool:
    return is_grassmannian(w) and is_grassmannian(w.inverse())


def is_vexillary(w: Permutation) -> bool:
    """True iff ``w`` avoids the pattern 2143."""
    win = w.window
    for a, b, c, d in combinations(range(len(win)), 4):
        if win[b] < win[a] < win[d] < win[c]:
            return False
    return True


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """``u <= w`` in Bruhat order, by the rank-matrix criterion."""
    n = max(u.size, w.size)
    ru, rw = rank_matrix(u, n), rank_matrix(w, n)
    return all(ru[i][j] >= rw[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


def one_m_times(w: Permutation, m: int) -> Permutation:
    """``1^m x w``: fix 1..m and shift ``w`` up by ``m``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return Permutation(list(range(1, m + 1)) + [m + v for v in w.window])


def product_of_word(word: Iterable[int], n: int | None = None) -> Permutation:
    """``s_{a_1} s_{a_2} ... s_{a_k}`` as a one-line permutation."""
    word = list(word)
    n = max([n or 1] + [a + 1 for a in word])
    win = list(range(1, n + 1))
    for a in word:
        win[a - 1], win[a] = win[a], win[a - 1]
    return Permutation(win)


def reduced_word(w: Permutation) -> list[int]:
    """A reduced word for ``w`` (bubble sort from the right)."""
    win = list(w.window)
    word: list[int] = []
    while True:
        for i in range(len(win) - 1):
            if win[i] > win[i + 1]:
                win[i], win[i + 1] = win[i + 1], win[i]
                word.append(i + 1)
                break
        else:
            break
    return word[::-1]
