"""Prism tableaux.

A prism tableau for ``w`` fills, for every essential box ``e``, the rectangle
``R_e`` with labels of color ``e``:

* labels weakly decrease along rows, left to right;
* labels strictly increase down columns;
* a label is at most the row of its box (the flag condition).

Antidiagonal ``i`` is the set of boxes ``(x, y)`` with ``x + y - 1 = i``.  The
tableau is minimal when the number of distinct values per antidiagonal, summed,
equals ``l(w)``.  Each color of a tableau is the same data as a reduced pipe
dream of ``u_e``: a box ``(x, y)`` holding ``l`` corresponds to a cross at
``(l, x + y - l)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from . import _pykernels, kernels
from .multiplus import MultiPlusDiagram, components_for
from .permutation import Cell, EssentialDatum, Permutation, essential_set, is_grassmannian, length
from .pipedream import PlusDiagram, min_plus
from .polynomial import IntPolynomial

__all__ = [
    "Filling",
    "PrismTableau",
    "PrismStats",
    "UnstableTriple",
    "color_code",
    "is_valid_filling",
    "rect_fillings",
    "rect_fillings_via_pipe_dreams",
    "filling_to_plus",
    "plus_to_filling",
    "all_prism",
    "min_prism",
    "prism",
    "stats",
    "is_minimal",
    "unstable_triples",
    "weight",
    "prism_polynomial",
    "phi",
    "phi_inv",
    "grassmannian_reduce",
    "unflagged_min_prism",
    "unflagged_prism",
    "stable_polynomial",
]

# a filling is the sorted tuple of (box, label) pairs of one rectangle
Filling = tuple[tuple[Cell, int], ...]


def color_code(color: int) -> str:
    return "abcdefghijklmnopqrstuvwxyz"[color] if color < 26 else f"c{color}"


def _rect_rows(e: EssentialDatum) -> tuple[list[int], int]:
    i, j = e.cell
    return list(range(e.rank + 1, i + 1)), j - e.rank


def is_valid_filling(e: EssentialDatum, filling: Filling, bound: int | None = None) -> bool:
    """Row, column and bound conditions on one rectangle.

    ``bound=None`` applies the flag condition; an integer replaces it by a
    uniform upper bound on the labels.
    """
    f = dict(filling)
    if set(f) != set(e.rect):
        return False
    for (x, y), v in f.items():
        if v < 1 or v > (x if bound is None else bound):
            return False
        right = f.get((x, y + 1))
        if right is not None and right > v:
            return False
        below = f.get((x + 1, y))
        if below is not None and below <= v:
            return False
    return True


@lru_cache(maxsize=None)
def _fillings(rows: tuple[int, ...], width: int, bound: int | None) -> tuple[tuple[int, ...], ...]:
    """Row-major label tuples of a rectangle, in lexicographic order."""
    h = len(rows)
    cells = [(r, c) for r in range(h) for c in range(width)]
    vals = [0] * (h * width)
    out = []

    def rec(k):
        if k == len(cells):
            out.append(tuple(vals))
            return
        r, c = cells[k]
        hi = rows[r] if bound is None else bound
        if c > 0:
            hi = min(hi, vals[k - 1])
        lo = 1
        if r > 0:
            lo = vals[k - width] + 1
        for v in range(lo, hi + 1):
            vals[k] = v
            rec(k + 1)

    rec(0)
    return tuple(out)


def rect_fillings(e: EssentialDatum, bound: int | None = None) -> list[Filling]:
    """Every valid filling of ``R_e``, ordered by row-major reading word."""
    rows, width = _rect_rows(e)
    cells = [(r, c) for r in rows for c in range(1, width + 1)]
    return [tuple(zip(cells, vals)) for vals in _fillings(tuple(rows), width, bound)]


def filling_to_plus(filling: Filling, n: int) -> PlusDiagram:
    return PlusDiagram(n, frozenset((v, x + y - v) for (x, y), v in filling))


def plus_to_filling(e: EssentialDatum, P: PlusDiagram) -> Filling:
    """Inverse of :func:`filling_to_plus` on the pipe dreams of ``u_e``.

    Labels strictly decrease going northeast along a box antidiagonal, so the
    crosses on each antidiagonal are handed out lowest row first, from the
    southwest end.
    """
    boxes: dict[int, list[Cell]] = {}
    for b in e.rect:
        boxes.setdefault(b[0] + b[1], []).append(b)
    crosses: dict[int, list[int]] = {}
    for r, c in P.cells:
        crosses.setdefault(r + c, []).append(r)
    if sorted(boxes) != sorted(crosses) or any(len(boxes[s]) != len(crosses[s]) for s in boxes):
        raise ValueError("plus diagram does not match the rectangle's antidiagonals")
    out = []
    for s, bs in boxes.items():
        for b, r in zip(sorted(bs, key=lambda c: -c[0]), sorted(crosses[s], reverse=True)):
            out.append((b, r))
    return tuple(sorted(out))


def rect_fillings_via_pipe_dreams(e: EssentialDatum, w_n: int) -> list[Filling]:
    """The fillings of ``R_e`` read off the reduced pipe dreams of ``u_e``."""
    from .permutation import bigrassmannian_for

    u = bigrassmannian_for(e.cell[0], e.cell[1], e.rank, w_n)
    out = [plus_to_filling(e, P) for P in min_plus(u, w_n)]
    return sorted(out, key=lambda f: tuple(v for _, v in f))


@dataclass(frozen=True)
class UnstableTriple:
    antidiagonal: int
    label: int
    color_c: int
    color_d: int
    larger: int
    color_e: int

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.antidiagonal, self.label, self.color_c, self.color_d, self.larger, self.color_e)


@dataclass(frozen=True)
class PrismStats:
    d: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.d)


@dataclass(frozen=True)
class PrismTableau:
    """One filling per essential box, in essential-set order.

    ``bound`` is None for ordinary (flagged) tableaux and an integer for the
    unflagged variant with labels at most ``bound``.
    """

    w: Permutation
    fillings: tuple[Filling, ...]
    bound: int | None = None

    @property
    def essentials(self) -> list[EssentialDatum]:
        return _essentials(self.w)

    def entries(self) -> dict[Cell, list[tuple[int, int]]]:
        """Box -> sorted ``(label, color)`` pairs."""
        out: dict[Cell, list[tuple[int, int]]] = {}
        for color, f in enumerate(self.fillings):
            for cell, v in f:
                out.setdefault(cell, []).append((v, color))
        return {c: sorted(v) for c, v in sorted(out.items())}

    def by_antidiagonal(self) -> dict[int, list[tuple[int, int, Cell]]]:
        out: dict[int, list[tuple[int, int, Cell]]] = {}
        for color, f in enumerate(self.fillings):
            for (x, y), v in f:
                out.setdefault(x + y - 1, []).append((v, color, (x, y)))
        return out

    def is_valid(self) -> bool:
        ess = self.essentials
        return len(ess) == len(self.fillings) and all(
            is_valid_filling(e, f, self.bound) for e, f in zip(ess, self.fillings)
        )

    def to_text(self) -> str:
        ent = self.entries()
        if not ent:
            return "(empty)"
        rows = max(c[0] for c in ent)
        cols = max(c[1] for c in ent)
        grid = []
        for x in range(1, rows + 1):
            row = []
            for y in range(1, cols + 1):
                e = ent.get((x, y))
                row.append("{" + ",".join(f"{v}{color_code(c)}" for v, c in e) + "}" if e else ".")
            grid.append(row)
        width = max(len(s) for r in grid for s in r)
        return "\n".join(" ".join(s.ljust(width) for s in r).rstrip() for r in grid)

    def to_json_obj(self) -> dict:
        return {
            "w": list(self.w.window),
            "fillings": [
                {"color": color_code(k), "boxes": [[x, y, v] for (x, y), v in f]}
                for k, f in enumerate(self.fillings)
            ],
        }

    def __str__(self) -> str:
        return self.to_text()


@lru_cache(maxsize=None)
def _essentials_cached(w: Permutation) -> tuple[EssentialDatum, ...]:
    return tuple(essential_set(w))


def _essentials(w: Permutation) -> list[EssentialDatum]:
    return list(_essentials_cached(w))


def stats(T: PrismTableau) -> PrismStats:
    """``d_i`` = number of distinct values on antidiagonal ``i``, colors ignored."""
    by = T.by_antidiagonal()
    top = max(by, default=0)
    return PrismStats(tuple(len({v for v, _, _ in by.get(i, [])}) for i in range(1, top + 1)))


def is_minimal(T: PrismTableau) -> bool:
    return stats(T).total == length(T.w)


def weight(T: PrismTableau, nvars: int | None = None) -> IntPolynomial:
    """``x_i`` raised to the number of antidiagonals on which ``i`` appears."""
    pairs = {(v, i) for i, lst in T.by_antidiagonal().items() for v, _, _ in lst}
    top = max((v for v, _ in pairs), default=0)
    nvars = max(T.w.n, top) if nvars is None else nvars
    exp = [0] * nvars
    for v, _ in pairs:
        exp[v - 1] += 1
    return IntPolynomial.monomial(tuple(exp))


def _replace_ok(e: EssentialDatum, f: Filling, cell: Cell, new: int, bound: int | None) -> bool:
    g = tuple((c, new if c == cell else v) for c, v in f)
    return is_valid_filling(e, g, bound)


def unstable_triples(T: PrismTableau) -> list[UnstableTriple]:
    """Triples ``{l_c, l_d, l'_e}`` on one antidiagonal, ``c != d`` and ``l < l'``,
    where raising that ``l_c`` to ``l'`` keeps color ``c`` valid."""
    ess = T.essentials
    out = []
    for i, lst in sorted(T.by_antidiagonal().items()):
        for v, c, cell in lst:
            others = sorted({d for vv, d, _ in lst if vv == v and d != c})
            if not others:
                continue
            for big, e in sorted({(vv, ee) for vv, ee, _ in lst if vv > v}):
                if not _replace_ok(ess[c], T.fillings[c], cell, big, T.bound):
                    continue
                for d in others:
                    out.append(UnstableTriple(i, v, c, d, big, e))
    out.sort(key=UnstableTriple.as_tuple)
    return out


def all_prism(w: Permutation) -> Iterator[PrismTableau]:
    """Every prism tableau of ``w``, component-major product order."""
    lists = [rect_fillings(e) for e in _essentials(w)]
    for combo in product(*lists):
        yield PrismTableau(w, tuple(combo))


def _pair_masks(groups: Sequence[Sequence[frozenset]]) -> tuple[list[list[int]], int]:
    index: dict = {}
    for g in groups:
        for s in g:
            for p in s:
                index.setdefault(p, len(index))
    masks = [[sum(1 << index[p] for p in s) for s in g] for g in groups]
    return masks, len(index)


def _minimal_choices(groups: Sequence[Sequence[frozenset]], total: int) -> list[tuple[int, ...]]:
    """Index tuples whose union of pair sets has exactly ``total`` elements."""
    masks, bits = _pair_masks(groups)
    search = kernels.overlay_search if bits <= 64 else _pykernels.overlay_search
    hits = search(masks, total, -1)
    return [
        idx for idx in hits
        if bin(_union(masks, idx)).count("1") == total
    ]


def _union(masks, idx) -> int:
    u = 0
    for k, j in enumerate(idx):
        u |= masks[k][j]
    return u


def _pairs(f: Filling) -> frozenset[tuple[int, int]]:
    # (label, antidiagonal) pairs; distinct pairs over all colors sum the d_i
    return frozenset((v, x + y) for (x, y), v in f)


def _min_tableaux(w: Permutation, bound: int | None) -> list[PrismTableau]:
    lists = [rect_fillings(e, bound) for e in _essentials(w)]
    groups = [[_pairs(f) for f in lst] for lst in lists]
    hits = _minimal_choices(groups, length(w))
    return [PrismTableau(w, tuple(lists[k][j] for k, j in enumerate(idx)), bound) for idx in hits]


def min_prism(w: Permutation) -> list[PrismTableau]:
    return _min_tableaux(w, None)


def prism(w: Permutation) -> list[PrismTableau]:
    """Minimal prism tableaux without unstable triples."""
    return [T for T in min_prism(w) if not unstable_triples(T)]


def prism_polynomial(w: Permutation, nvars: int | None = None) -> IntPolynomial:
    nvars = w.n if nvars is None else nvars
    total = IntPolynomial.zero(nvars)
    for T in prism(w):
        total = total + weight(T, nvars)
    return total


def phi(T: PrismTableau) -> MultiPlusDiagram:
    n = T.w.n
    return MultiPlusDiagram(T.w, tuple(filling_to_plus(f, n) for f in T.fillings))


def phi_inv(Q: MultiPlusDiagram) -> PrismTableau:
    ess = _essentials(Q.w)
    return PrismTableau(Q.w, tuple(plus_to_filling(e, P) for e, P in zip(ess, Q.components)))


def grassmannian_reduce(T: PrismTableau) -> dict[Cell, int]:
    """Forget colors; for Grassmannian ``w`` every box then holds a single value."""
    if not is_grassmannian(T.w):
        raise ValueError(f"{T.w} is not Grassmannian")
    out = {}
    for cell, lst in T.entries().items():
        vals = {v for v, _ in lst}
        assert len(vals) == 1, f"box {cell} holds several values {sorted(vals)}"
        out[cell] = vals.pop()
    return out


def unflagged_min_prism(w: Permutation, m: int) -> list[PrismTableau]:
    """Minimal tableaux with the flag condition replaced by ``labels <= m``."""
    return _min_tableaux(w, m)


def unflagged_prism(w: Permutation, m: int) -> list[PrismTableau]:
    return [T for T in unflagged_min_prism(w, m) if not unstable_triples(T)]


def stable_polynomial(w: Permutation, m: int) -> IntPolynomial:
    """Weight sum of :func:`unflagged_prism`, in ``m`` variables."""
    total = IntPolynomial.zero(m)
    for T in unflagged_prism(w, m):
        total = total + weight(T, m)
    return total
