"""Interior faces of the complex whose faces are complements of plus diagrams.

The vertices are the cells lying on some essential antidiagonal of ``w``; a
plus diagram ``P`` names the face ``V \\ P`` and the facets are the complements
of the reduced pipe dreams.  Cells off every essential antidiagonal are cone
points, so a plus diagram using one of them is never interior.

Two tests for interiority are provided.  The fast one asks whether the
Demazure (0-Hecke) product of ``word_of(P)`` is ``w``.  The slow one builds the
complex and declares a face interior when it lies in no boundary ridge, a ridge
being on the boundary when it belongs to exactly one facet.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal

from . import kernels
from .permutation import Cell, Permutation, bigrass_set, bruhat_leq, length
from .pipedream import (
    PlusDiagram,
    cell_bit,
    cells_of_mask,
    chute_moves,
    essential_antidiagonals,
    is_plus_diagram,
    ladder_moves,
    min_plus,
    relevant_cells,
    word_of,
)

__all__ = [
    "DemazureState",
    "InteriorReport",
    "demazure_product",
    "is_interior",
    "is_interior_topological",
    "int_plus",
    "int_plus_oracle",
    "k_moves",
    "is_connected",
    "check_conjecture",
]


def demazure_product(word: Iterable[int], n: int | None = None) -> Permutation:
    """Left-to-right 0-Hecke product: ``x * s = xs`` when that is longer, else ``x``."""
    word = list(word)
    n = max([n or 1] + [k + 1 for k in word])
    return Permutation(kernels.demazure_product(word, n))


@dataclass
class DemazureState:
    """Running Demazure product of the letters consumed so far."""

    current: list[int]

    @classmethod
    def start(cls, n: int) -> "DemazureState":
        return cls(list(range(1, n + 1)))

    def push(self, k: int) -> None:
        c = self.current
        if c[k - 1] < c[k]:
            c[k - 1], c[k] = c[k], c[k - 1]

    def below(self, w: Permutation) -> bool:
        return bruhat_leq(Permutation(self.current), w)

    @property
    def permutation(self) -> Permutation:
        return Permutation(self.current)


def _letters_fit(P: PlusDiagram, w: Permutation) -> bool:
    return all(i + j - 1 < w.n for i, j in P.cells)


def is_interior(P: PlusDiagram, w: Permutation, method: Literal["demazure", "topological", "both"] = "demazure") -> bool:
    if not is_plus_diagram(P, w):
        raise ValueError(f"{sorted(P.cells)} is not a plus diagram for {w}")
    if method == "topological":
        return is_interior_topological(P, w)
    fast = P.cells <= relevant_cells(w, P.n) and demazure_product(word_of(P), w.n) == w
    if method == "both":
        slow = is_interior_topological(P, w)
        if fast != slow:
            raise AssertionError(f"interior tests disagree on {sorted(P.cells)} for {w}")
    return fast


class _Complex:
    """Facets and boundary ridges on the relevant vertices of ``w``."""

    def __init__(self, w: Permutation, n: int):
        self.vertices = sorted(relevant_cells(w, n))
        self.bit = {c: 1 << k for k, c in enumerate(self.vertices)}
        full = (1 << len(self.vertices)) - 1
        self.full = full
        self.facets = [full & ~self.mask(P.cells) for P in min_plus(w, n)]
        counts: dict[int, int] = {}
        for f in self.facets:
            rest = f
            while rest:
                b = rest & -rest
                rest ^= b
                counts[f ^ b] = counts.get(f ^ b, 0) + 1
        self.boundary = [r for r, k in counts.items() if k == 1]

    def mask(self, cells) -> int:
        return sum(self.bit[c] for c in cells)

    def interior(self, P: PlusDiagram) -> bool:
        if not P.cells <= set(self.bit):
            return False
        face = self.full & ~self.mask(P.cells)
        if not any(face & ~f == 0 for f in self.facets):
            return False
        return not any(face & ~r == 0 for r in self.boundary)


_COMPLEXES: dict[tuple, _Complex] = {}


def _complex(w: Permutation, n: int) -> _Complex:
    key = (w.padded(n), n)
    cx = _COMPLEXES.get(key)
    if cx is None:
        cx = _COMPLEXES[key] = _Complex(w, n)
    return cx


def is_interior_topological(P: PlusDiagram, w: Permutation) -> bool:
    return _complex(w, P.n).interior(P)


def int_plus(w: Permutation, n: int | None = None) -> list[PlusDiagram]:
    """Interior plus diagrams, by pruned search over the relevant cells in reading order."""
    n = w.n if n is None else n
    cells = sorted(relevant_cells(w, n), key=lambda c: (c[0], -c[1]))
    letters = [i + j - 1 for i, j in cells]
    out = []
    for m in kernels.interior_search(letters, list(w.padded(n))):
        P = PlusDiagram(n, frozenset(c for k, c in enumerate(cells) if m >> k & 1))
        if not is_plus_diagram(P, w):
            raise AssertionError(f"interior search produced a non-plus diagram for {w}")
        out.append(P)
    return sorted(out, key=PlusDiagram.sort_key)


def int_plus_oracle(w: Permutation, n: int | None = None) -> list[PlusDiagram]:
    """Interior plus diagrams from the complex itself; exponential in the vertex count."""
    n = w.n if n is None else n
    cx = _complex(w, n)
    sets = [s for s in essential_antidiagonals(w, n)]
    out = []
    verts = cx.vertices
    for k in range(len(verts) + 1):
        for chosen in combinations(verts, k):
            cells = frozenset(chosen)
            if all(s & cells for s in sets):
                P = PlusDiagram(n, cells)
                if cx.interior(P):
                    out.append(P)
    return sorted(out, key=PlusDiagram.sort_key)


def k_moves(P: PlusDiagram) -> list[PlusDiagram]:
    """Chute and ladder moves ``P -> Q`` together with their unions ``P | Q``."""
    out = set()
    for Q in chute_moves(P) + ladder_moves(P):
        out.add(Q)
        out.add(P | Q)
    return sorted(out, key=PlusDiagram.sort_key)


def _plain_moves(P: PlusDiagram) -> list[PlusDiagram]:
    return chute_moves(P) + ladder_moves(P)


def is_connected(diagrams: Iterable[PlusDiagram], moves=k_moves) -> bool:
    """Whether the move graph restricted to ``diagrams`` is connected (edges undirected)."""
    nodes = set(diagrams)
    if len(nodes) <= 1:
        return True
    adj: dict[PlusDiagram, set[PlusDiagram]] = {P: set() for P in nodes}
    for P in nodes:
        for Q in moves(P):
            if Q in nodes and Q != P:
                adj[P].add(Q)
                adj[Q].add(P)
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        for Q in adj[queue.popleft()]:
            if Q not in seen:
                seen.add(Q)
                queue.append(Q)
    return len(seen) == len(nodes)


@dataclass
class InteriorReport:
    w: Permutation
    int_plus: list[PlusDiagram] = field(default_factory=list)
    conjecture_holds: bool = True
    witnesses: list[PlusDiagram] = field(default_factory=list)
    kmove_connected: bool = True
    plain_connected: bool = True
    oracle_agrees: bool | None = None

    def to_json_obj(self) -> dict:
        return {
            "w": "".join(map(str, self.w.window)) if self.w.n < 10 else ",".join(map(str, self.w.window)),
            "int_plus": len(self.int_plus),
            "min_plus": len(min_plus(self.w)),
            "conjecture_holds": self.conjecture_holds,
            "witnesses": [P.to_json_obj() for P in self.witnesses],
            "kmove_connected": self.kmove_connected,
            "chute_ladder_connected": self.plain_connected,
            "oracle_agrees": self.oracle_agrees,
        }


def _maximal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(m != o and m & o == m for o in masks)]


def check_conjecture(w: Permutation, oracle: bool = False) -> InteriorReport:
    """Is every interior plus diagram of ``w`` an overlay of interior ones of the ``u_i``?

    Also records whether K-moves (and plain chute/ladder moves) connect the
    interior diagrams, and, with ``oracle``, whether the two interior tests agree.
    """
    n = w.n
    ip = int_plus(w)
    report = InteriorReport(w, ip)
    comps = [[Q.mask for Q in int_plus(u.in_sn(n), n)] for u in bigrass_set(w)]
    for P in ip:
        pm = P.mask
        cands = [_maximal([m for m in c if m & ~pm == 0]) for c in comps]
        if not kernels.overlay_search(cands, 0, pm):
            report.witnesses.append(P)
    report.conjecture_holds = not report.witnesses
    report.kmove_connected = is_connected(ip, k_moves)
    report.plain_connected = is_connected(ip, _plain_moves)
    if oracle:
        report.oracle_agrees = int_plus_oracle(w) == ip
    return report


def _check(args):
    w, oracle = args
    return check_conjecture(w, oracle)


def check_conjecture_many(perms: Iterable[Permutation], jobs: int = 1, oracle: bool = False) -> list[InteriorReport]:
    tasks = [(w, oracle) for w in perms]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_check, tasks, chunksize=4))
    return [_check(t) for t in tasks]
