"""Plus diagrams (pipe dreams) and the moves between them.

A plus diagram is a set of cells of the ``n x n`` grid.  Its word reads the
cells row by row from the top, right to left within a row, and sends the cell
``(i, j)`` to the generator ``s_{i+j-1}``.  This reading is what makes the
reduced pipe dreams of ``w`` exactly the minimal plus diagrams of the
antidiagonal initial ideal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Literal

from . import kernels
from .permutation import Cell, Permutation, essential_set, lehmer_code, length, product_of_word
from .polynomial import IntPolynomial

__all__ = [
    "PlusDiagram",
    "LabeledDiagram",
    "MASK_STRIDE",
    "cell_bit",
    "cells_of_mask",
    "word_of",
    "permutation_of",
    "is_reduced_pipe_dream",
    "d_bot",
    "local_moves",
    "ladder_moves",
    "chute_moves",
    "min_plus",
    "min_plus_by_oracle",
    "essential_antidiagonals",
    "relevant_cells",
    "is_plus_diagram",
    "contains_min_plus",
    "weight",
    "total_weight",
    "bottom_labels",
    "diagonal_order_labels",
    "labels_by_antidiagonal",
]

# cells are packed into an int as bit (row - 1) * MASK_STRIDE + (col - 1)
MASK_STRIDE = 8


def cell_bit(cell: Cell) -> int:
    return 1 << ((cell[0] - 1) * MASK_STRIDE + cell[1] - 1)


def cells_of_mask(mask: int) -> frozenset[Cell]:
    out = []
    while mask:
        low = mask & -mask
        b = low.bit_length() - 1
        out.append((b // MASK_STRIDE + 1, b % MASK_STRIDE + 1))
        mask ^= low
    return frozenset(out)


@dataclass(frozen=True)
class PlusDiagram:
    n: int
    cells: frozenset[Cell] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.cells, frozenset):
            object.__setattr__(self, "cells", frozenset(tuple(c) for c in self.cells))
        if self.n > MASK_STRIDE:
            raise ValueError(f"grids larger than {MASK_STRIDE}x{MASK_STRIDE} are not supported")
        for r, c in self.cells:
            if not (1 <= r <= self.n and 1 <= c <= self.n):
                raise ValueError(f"cell {(r, c)} outside the {self.n}x{self.n} grid")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "PlusDiagram":
        return cls(n, cells_of_mask(mask))

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "PlusDiagram":
        """Parse a picture such as ``["+ + .", ". . .", ". . ."]``."""
        grid = [r.replace(" ", "") for r in rows]
        n = len(grid)
        cells = {(i, j) for i, row in enumerate(grid, 1) for j, ch in enumerate(row, 1) if ch == "+"}
        return cls(n, frozenset(cells))

    @property
    def mask(self) -> int:
        m = 0
        for c in self.cells:
            m |= cell_bit(c)
        return m

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells))

    def __le__(self, other: "PlusDiagram") -> bool:
        return self.cells <= other.cells

    def __or__(self, other: "PlusDiagram") -> "PlusDiagram":
        return PlusDiagram(max(self.n, other.n), self.cells | other.cells)

    def sort_key(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))

    def with_move(self, src: Cell, dst: Cell) -> "PlusDiagram":
        return PlusDiagram(self.n, (self.cells - {src}) | {dst})

    def row_counts(self) -> list[int]:
        counts = [0] * self.n
        for r, _ in self.cells:
            counts[r - 1] += 1
        return counts

    def to_text(self) -> str:
        return "\n".join(
            " ".join("+" if (i, j) in self.cells else "." for j in range(1, self.n + 1))
            for i in range(1, self.n + 1)
        )

    def to_json_obj(self) -> dict:
        return {"n": self.n, "cells": [list(c) for c in sorted(self.cells)]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PlusDiagram":
        return cls(int(obj["n"]), frozenset(tuple(c) for c in obj["cells"]))

    def __str__(self) -> str:
        return self.to_text()


def _reading_order(cells: Iterable[Cell]) -> list[Cell]:
    return sorted(cells, key=lambda c: (c[0], -c[1]))


def word_of(P: PlusDiagram) -> list[int]:
    return [i + j - 1 for i, j in _reading_order(P.cells)]


def permutation_of(P: PlusDiagram) -> Permutation:
    """The ordinary product of :func:`word_of`."""
    return product_of_word(word_of(P), P.n)


def is_reduced_pipe_dream(P: PlusDiagram, w: Permutation) -> bool:
    return len(P) == length(w) and permutation_of(P) == w


def d_bot(w: Permutation, n: int | None = None) -> PlusDiagram:
    """Bottom pipe dream: row ``i`` holds ``c_i`` left-justified crosses (Lehmer code ``c``)."""
    n = w.n if n is None else n
    code = lehmer_code(w, n)
    return PlusDiagram(n, frozenset((i, j) for i, c in enumerate(code, 1) for j in range(1, c + 1)))


Direction = Literal["SW", "NE"]


def local_moves(P: PlusDiagram, direction: Direction) -> list[tuple[Cell, PlusDiagram]]:
    """Every applicable 2x2 southwest (or northeast) move, as ``(moved cell, result)``."""
    cells, n = P.cells, P.n
    out = []
    for a, b in sorted(cells):
        if direction == "SW":
            if b < 2 or a >= n:
                continue
            if (a, b - 1) in cells or (a + 1, b - 1) in cells or (a + 1, b) in cells:
                continue
            out.append(((a, b), P.with_move((a, b), (a + 1, b - 1))))
        elif direction == "NE":
            if a < 2 or b >= n:
                continue
            if (a - 1, b) in cells or (a - 1, b + 1) in cells or (a, b + 1) in cells:
                continue
            out.append(((a, b), P.with_move((a, b), (a - 1, b + 1))))
        else:
            raise ValueError(f"unknown direction {direction!r}")
    return out


def ladder_moves(P: PlusDiagram) -> list[PlusDiagram]:
    """Ladder moves: a cross at ``(i, j)`` jumps to ``(i-m, j+1)`` over a full 2-wide ladder.

    Requires ``(i, j+1)`` empty, rows ``i-m+1..i-1`` full in columns ``j, j+1``
    and row ``i-m`` empty in both.
    """
    cells, n = P.cells, P.n
    out = []
    for i, j in sorted(cells):
        if j >= n or (i, j + 1) in cells:
            continue
        r = i - 1
        while r >= 1:
            left, right = (r, j) in cells, (r, j + 1) in cells
            if not left and not right:
                out.append(P.with_move((i, j), (r, j + 1)))
                break
            if not (left and right):
                break
            r -= 1
    return out


def chute_moves(P: PlusDiagram) -> list[PlusDiagram]:
    """Chute moves: a cross at ``(i, j)`` jumps to ``(i-1, j')`` over a full 2-high chute.

    Requires ``(i-1, j)`` empty, columns ``j+1..j'-1`` full in rows ``i-1, i``
    and column ``j'`` empty in both rows.
    """
    cells, n = P.cells, P.n
    out = []
    for i, j in sorted(cells):
        if i < 2 or (i - 1, j) in cells:
            continue
        c = j + 1
        while c <= n:
            top, bottom = (i - 1, c) in cells, (i, c) in cells
            if not top and not bottom:
                out.append(P.with_move((i, j), (i - 1, c)))
                break
            if not (top and bottom):
                break
            c += 1
    return out


def min_plus(w: Permutation, n: int | None = None, verify: bool = False) -> list[PlusDiagram]:
    """Reduced pipe dreams of ``w``: the ladder-move closure of :func:`d_bot`.

    Sorted by cell list.  With ``verify`` the result is compared against the
    minimal hitting sets of the essential antidiagonals and its total weight
    against the Schubert polynomial.
    """
    n = w.n if n is None else n
    out = _min_plus_cached(w.padded(n))
    if verify:
        from .polynomial import schubert

        oracle = min_plus_by_oracle(w, n)
        if set(oracle) != set(out):
            raise AssertionError(f"ladder closure disagrees with hitting-set oracle for {w}")
        if total_weight(out, n) != schubert(w, nvars=n):
            raise AssertionError(f"pipe dream weights do not sum to the Schubert polynomial of {w}")
    return list(out)


@lru_cache(maxsize=None)
def _min_plus_cached(window: tuple[int, ...]) -> tuple[PlusDiagram, ...]:
    n = len(window)
    start = d_bot(Permutation(window), n)
    seen = {start}
    queue = deque([start])
    while queue:
        P = queue.popleft()
        for Q in ladder_moves(P):
            if Q not in seen:
                seen.add(Q)
                queue.append(Q)
    return tuple(sorted(seen, key=PlusDiagram.sort_key))


def essential_antidiagonals(w: Permutation, n: int | None = None) -> list[frozenset[Cell]]:
    """Antidiagonal supports of the ``(r+1)``-minors in the northwest ``i x j`` block, per essential box."""
    out = []
    for e in essential_set(w, n):
        i, j = e.cell
        k = e.rank + 1
        for rows in combinations(range(1, i + 1), k):
            for cols in combinations(range(1, j + 1), k):
                # rows increasing pair with columns decreasing
                out.append(frozenset(zip(rows, reversed(cols))))
    return out


def relevant_cells(w: Permutation, n: int | None = None) -> frozenset[Cell]:
    """Cells lying on at least one essential antidiagonal."""
    cells: set[Cell] = set()
    for s in essential_antidiagonals(w, n):
        cells |= s
    return frozenset(cells)


def is_plus_diagram(P: PlusDiagram, w: Permutation) -> bool:
    """True iff ``P`` meets every essential antidiagonal of ``w``."""
    cells = P.cells
    return all(s & cells for s in essential_antidiagonals(w, P.n))


def contains_min_plus(P: PlusDiagram, w: Permutation) -> bool:
    """True iff some reduced pipe dream of ``w`` is contained in ``P``."""
    return any(Q.cells <= P.cells for Q in min_plus(w, P.n))


def min_plus_by_oracle(w: Permutation, n: int | None = None) -> list[PlusDiagram]:
    """Minimal hitting sets of the essential antidiagonals."""
    n = w.n if n is None else n
    sets = [sum(cell_bit(c) for c in s) for s in essential_antidiagonals(w, n)]
    if not sets:
        return [PlusDiagram(n)]
    masks = kernels.minimal_hitting_sets(sets)
    return sorted((PlusDiagram.from_mask(n, m) for m in masks), key=PlusDiagram.sort_key)


def weight(P: PlusDiagram, nvars: int | None = None) -> IntPolynomial:
    """``prod_i x_i^(number of crosses in row i)``."""
    nvars = P.n if nvars is None else nvars
    counts = P.row_counts()
    if any(counts[nvars:]):
        raise ValueError("weight needs more variables than requested")
    return IntPolynomial.monomial(tuple(counts[:nvars]) + (0,) * (nvars - len(counts[:nvars])))


def total_weight(diagrams: Iterable[PlusDiagram], nvars: int) -> IntPolynomial:
    terms: dict[tuple[int, ...], int] = {}
    for P in diagrams:
        e = tuple(P.row_counts()[:nvars])
        e = e + (0,) * (nvars - len(e))
        terms[e] = terms.get(e, 0) + 1
    return IntPolynomial(nvars, terms)


@dataclass(frozen=True)
class LabeledDiagram:
    """A reduced pipe dream of a biGrassmannian ``u`` with its crosses numbered."""

    base: PlusDiagram
    labels: dict[Cell, int]

    def position(self, label: int) -> Cell:
        for cell, a in self.labels.items():
            if a == label:
                return cell
        raise KeyError(label)

    def positions(self) -> dict[int, Cell]:
        return {a: cell for cell, a in self.labels.items()}

    def rows(self) -> dict[int, int]:
        return {a: cell[0] for cell, a in self.labels.items()}


def _single_essential(u: Permutation):
    ess = essential_set(u)
    if len(ess) != 1:
        raise ValueError(f"{u} is not biGrassmannian")
    return ess[0]


def bottom_labels(u: Permutation, n: int | None = None) -> LabeledDiagram:
    """``D_bot(u)`` numbered along diagonals, northwest to southeast, from the southwest corner."""
    n = u.n if n is None else n
    e = _single_essential(u)
    base = d_bot(u, n)
    rect = e.rect
    if base.cells != rect:
        raise AssertionError(f"bottom pipe dream of {u} is not the essential rectangle")
    order = sorted(rect, key=lambda c: (c[1] - c[0], c[0]))
    return LabeledDiagram(base, {c: a for a, c in enumerate(order, start=1)})


def _ne_path(u: Permutation, P: PlusDiagram, choose: int = 0) -> list[tuple[Cell, Cell]]:
    """A sequence of northeast local moves from ``D_bot(u)`` to ``P``.

    ``choose`` rotates the order in which moves are explored so that different
    calls can produce different paths.
    """
    start = d_bot(u, P.n)
    parent: dict[PlusDiagram, tuple[PlusDiagram, Cell, Cell] | None] = {start: None}
    queue = deque([start])
    while queue:
        Q = queue.popleft()
        if Q == P:
            break
        moves = local_moves(Q, "NE")
        if moves and choose:
            k = choose % len(moves)
            moves = moves[k:] + moves[:k]
        for src, R in moves:
            if R not in parent and R.cells <= _ne_region(P):
                parent[R] = (Q, src, (src[0] - 1, src[1] + 1))
                queue.append(R)
    if P not in parent:
        raise ValueError(f"{sorted(P.cells)} is not reachable from D_bot({u}) by northeast moves")
    path = []
    node = P
    while parent[node] is not None:
        prev, src, dst = parent[node]
        path.append((src, dst))
        node = prev
    return path[::-1]


def _ne_region(P: PlusDiagram) -> frozenset[Cell]:
    # crosses only move northeast along antidiagonals; no pruning beyond the grid
    return frozenset((i, j) for i in range(1, P.n + 1) for j in range(1, P.n + 1))


def diagonal_order_labels(u: Permutation, P: PlusDiagram, choose: int = 0) -> LabeledDiagram:
    """Transport the numbering of ``D_bot(u)`` to ``P`` along northeast moves."""
    if not is_reduced_pipe_dream(P, u):
        raise ValueError(f"{sorted(P.cells)} is not a reduced pipe dream for {u}")
    labels = dict(bottom_labels(u, P.n).labels)
    for src, dst in _ne_path(u, P, choose):
        labels[dst] = labels.pop(src)
    return LabeledDiagram(P, labels)


def labels_by_antidiagonal(u: Permutation, P: PlusDiagram) -> LabeledDiagram:
    """Numbering of ``P`` read off antidiagonal by antidiagonal.

    On each antidiagonal the crosses of ``D_bot(u)`` and of ``P`` are matched in
    row order, which is how northeast moves (which never pass one another on
    an antidiagonal) carry them.
    """
    bot = bottom_labels(u, P.n)
    by_diag: dict[int, list[Cell]] = {}
    for c in bot.labels:
        by_diag.setdefault(c[0] + c[1], []).append(c)
    mine: dict[int, list[Cell]] = {}
    for c in P.cells:
        mine.setdefault(c[0] + c[1], []).append(c)
    labels = {}
    for d, cells in by_diag.items():
        targets = sorted(mine.get(d, []))
        if len(targets) != len(cells):
            raise ValueError(f"{sorted(P.cells)} has the wrong antidiagonal profile for {u}")
        for src, dst in zip(sorted(cells), targets):
            labels[dst] = bot.labels[src]
    if set(mine) - set(by_diag):
        raise ValueError(f"{sorted(P.cells)} has the wrong antidiagonal profile for {u}")
    return LabeledDiagram(P, labels)
