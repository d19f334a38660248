"""Multi-plus diagrams: one reduced pipe dream per biGrassmannian below ``w``.

Each component lives in the pipe dreams of one ``u_i`` from
:func:`~prismtab.permutation.bigrass_set`.  The support is the union of the
components, and the fiber of a plus diagram ``P`` is every multi-plus diagram
whose support is exactly ``P``.

On the pipe dreams of a biGrassmannian ``u`` the order ``P <= P'`` means ``P'``
is reached from ``P`` by northeast local moves.  Every cross keeps its label and
its antidiagonal under such moves, so the order is compared label by label:
``P <= P'`` iff each ``+_a`` sits weakly higher in ``P'``.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Literal, Sequence

from . import kernels
from .permutation import Cell, Permutation, bigrass_set
from .pipedream import (
    PlusDiagram,
    is_plus_diagram,
    labels_by_antidiagonal,
    local_moves,
    min_plus,
)

__all__ = [
    "MultiPlusDiagram",
    "Fiber",
    "LambdaSequence",
    "StructureReport",
    "components_for",
    "supp",
    "fiber",
    "all_multi",
    "label_rows",
    "leq",
    "leq_by_reachability",
    "multi_leq",
    "lambda_sequence",
    "meet_component",
    "join_component",
    "poset_meet",
    "poset_join",
    "meet",
    "join",
    "long_moves",
    "hasse_edges",
    "fiber_minimum",
    "verify_structure",
    "MoveOverlayReport",
    "push_run",
    "check_move_overlays",
]


@dataclass(frozen=True)
class MultiPlusDiagram:
    w: Permutation
    components: tuple[PlusDiagram, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def support(self) -> PlusDiagram:
        return supp(self)

    def replace(self, i: int, P: PlusDiagram) -> "MultiPlusDiagram":
        comps = list(self.components)
        comps[i] = P
        return MultiPlusDiagram(self.w, tuple(comps))

    def sort_key(self):
        return tuple(P.sort_key() for P in self.components)

    def colors_at(self, cell: Cell) -> list[int]:
        """1-based indices of the components holding a cross at ``cell``."""
        return [i for i, P in enumerate(self.components, 1) if cell in P.cells]

    def to_text(self) -> str:
        n = self.w.n
        grid = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                cs = self.colors_at((i, j))
                row.append(",".join(map(str, cs)) if cs else ".")
            grid.append(row)
        width = max(len(x) for row in grid for x in row)
        return "\n".join(" ".join(x.rjust(width) for x in row) for row in grid)

    def to_json_obj(self) -> list:
        return [P.to_json_obj() for P in self.components]


def components_for(w: Permutation) -> list[Permutation]:
    """The biGrassmannians indexing the components, padded to ``w``'s size."""
    return [u.in_sn(w.n) for u in bigrass_set(w)]


def supp(Q: MultiPlusDiagram) -> PlusDiagram:
    cells: frozenset[Cell] = frozenset()
    for P in Q.components:
        cells = cells | P.cells
    return PlusDiagram(Q.w.n, cells)


@dataclass(frozen=True)
class Fiber:
    w: Permutation
    support: PlusDiagram
    members: tuple[MultiPlusDiagram, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def fiber(w: Permutation, P: PlusDiagram) -> Fiber:
    """Every multi-plus diagram of ``w`` with support exactly ``P``."""
    if not is_plus_diagram(P, w):
        raise ValueError(f"{sorted(P.cells)} is not a plus diagram for {w}")
    us = components_for(w)
    cands = [[Q for Q in min_plus(u, w.n) if Q.cells <= P.cells] for u in us]
    hits = kernels.overlay_search([[Q.mask for Q in c] for c in cands], 0, P.mask)
    members = [MultiPlusDiagram(w, tuple(cands[i][j] for i, j in enumerate(idx))) for idx in hits]
    members.sort(key=MultiPlusDiagram.sort_key)
    return Fiber(w, P, tuple(members))


def all_multi(w: Permutation) -> Iterable[MultiPlusDiagram]:
    """Every element of the product of the component pipe dream sets."""
    lists = [min_plus(u, w.n) for u in components_for(w)]
    for comps in product(*lists):
        yield MultiPlusDiagram(w, comps)


@lru_cache(maxsize=None)
def _label_rows(u: Permutation, P: PlusDiagram) -> tuple[int, ...]:
    lab = labels_by_antidiagonal(u, P)
    rows = [0] * len(P)
    for (r, _), a in lab.labels.items():
        rows[a - 1] = r
    return tuple(rows)


def label_rows(u: Permutation, P: PlusDiagram) -> tuple[int, ...]:
    """Row of ``+_a`` for ``a = 1..l(u)``."""
    return _label_rows(u, P)


def leq(P: PlusDiagram, P2: PlusDiagram, u: Permutation) -> bool:
    """``P <= P2`` in the northeast-move order on pipe dreams of ``u``."""
    a, b = _checked_rows(u, P), _checked_rows(u, P2)
    return all(y <= x for x, y in zip(a, b))


def _checked_rows(u: Permutation, P: PlusDiagram) -> tuple[int, ...]:
    if P not in _min_plus_set(u, P.n):
        raise ValueError(f"{sorted(P.cells)} is not a reduced pipe dream for {u}")
    return _label_rows(u, P)


@lru_cache(maxsize=None)
def _min_plus_set(u: Permutation, n: int) -> frozenset[PlusDiagram]:
    return frozenset(min_plus(u, n))


@lru_cache(maxsize=4096)
def _ne_reachable(u: Permutation, P: PlusDiagram) -> frozenset[PlusDiagram]:
    seen = {P}
    queue = deque([P])
    while queue:
        Q = queue.popleft()
        for _, R in local_moves(Q, "NE"):
            if R not in seen:
                seen.add(R)
                queue.append(R)
    return frozenset(seen)


def leq_by_reachability(P: PlusDiagram, P2: PlusDiagram, u: Permutation) -> bool:
    return P2 in _ne_reachable(u, P)


def multi_leq(Q: MultiPlusDiagram, Q2: MultiPlusDiagram) -> bool:
    """Componentwise order."""
    us = components_for(Q.w)
    return all(leq(a, b, u) for a, b, u in zip(Q.components, Q2.components, us))


def _long_move_ok(P: PlusDiagram, src: Cell, dst: Cell) -> bool:
    """Whether ``src`` reaches ``dst`` by repeated local moves of that one cross."""
    steps = dst[0] - src[0]
    if steps == 0:
        return src == dst
    if src[0] + src[1] != dst[0] + dst[1]:
        return False
    direction = "SW" if steps > 0 else "NE"
    cur = P
    cell = src
    for _ in range(abs(steps)):
        nxt = None
        for moved, R in local_moves(cur, direction):
            if moved == cell:
                nxt = R
                break
        if nxt is None:
            return False
        cell = (cell[0] + 1, cell[1] - 1) if direction == "SW" else (cell[0] - 1, cell[1] + 1)
        cur = nxt
    return True


@dataclass(frozen=True)
class LambdaSequence:
    order: tuple[int, ...]
    same: tuple[int, ...]
    first: tuple[int, ...]
    second: tuple[int, ...]
    diagrams: tuple[PlusDiagram, ...]

    @property
    def turn(self) -> PlusDiagram:
        """The diagram after the SAME block and the first block of moves."""
        return self.diagrams[len(self.same) + len(self.first)]


def lambda_sequence(
    u: Permutation, P: PlusDiagram, P2: PlusDiagram, kind: Literal["meet", "join"] = "meet"
) -> LambdaSequence:
    """Walk from ``P`` to ``P2`` one label at a time by long moves.

    For ``kind="meet"`` the labels are taken in the order SAME, SW (increasing),
    NE (decreasing); the diagram reached after the SW block is ``P ^ P2``.  For
    ``kind="join"`` the two blocks swap places: NE (decreasing), then SW
    (increasing), and the diagram after the NE block is ``P v P2``.  Every step is checked to
    be a genuine long move that stays inside the pipe dreams of ``u``.
    """
    n = P.n
    rows, rows2 = _checked_rows(u, P), _checked_rows(u, P2)
    pos = labels_by_antidiagonal(u, P).positions()
    pos2 = labels_by_antidiagonal(u, P2).positions()
    labels = range(1, len(rows) + 1)
    same = tuple(a for a in labels if rows[a - 1] == rows2[a - 1])
    sw = [a for a in labels if rows2[a - 1] > rows[a - 1]]
    ne = [a for a in labels if rows2[a - 1] < rows[a - 1]]
    if kind == "meet":
        first, second = tuple(sw), tuple(reversed(ne))
    elif kind == "join":
        first, second = tuple(reversed(ne)), tuple(sw)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    allowed = _min_plus_set(u, n)
    cur = P
    where = dict(pos)
    diagrams = [cur]
    for a in same + first + second:
        src, dst = where[a], pos2[a]
        if src != dst:
            if not _long_move_ok(cur, src, dst):
                raise AssertionError(f"no long move of +_{a} from {src} to {dst} for {u}")
            cur = cur.with_move(src, dst)
            where[a] = dst
            if cur not in allowed:
                raise AssertionError(f"long move of +_{a} left the pipe dreams of {u}")
        diagrams.append(cur)
    if cur != P2:
        raise AssertionError("label walk did not end at the target")
    return LambdaSequence(same + first + second, same, first, second, tuple(diagrams))


def meet_component(u: Permutation, P: PlusDiagram, P2: PlusDiagram) -> PlusDiagram:
    return lambda_sequence(u, P, P2, "meet").turn


def join_component(u: Permutation, P: PlusDiagram, P2: PlusDiagram) -> PlusDiagram:
    return lambda_sequence(u, P, P2, "join").turn


def _poset_bound(elems, leq_fn, x, y, lower: bool):
    if lower:
        bounds = [z for z in elems if leq_fn(z, x) and leq_fn(z, y)]
        best = [z for z in bounds if all(leq_fn(b, z) for b in bounds)]
    else:
        bounds = [z for z in elems if leq_fn(x, z) and leq_fn(y, z)]
        best = [z for z in bounds if all(leq_fn(z, b) for b in bounds)]
    return best[0] if len(best) == 1 else None


def poset_meet(elems: Sequence, leq_fn, x, y):
    """Greatest lower bound of ``x, y`` in a finite poset, or None."""
    return _poset_bound(elems, leq_fn, x, y, True)


def poset_join(elems: Sequence, leq_fn, x, y):
    return _poset_bound(elems, leq_fn, x, y, False)


def meet(Q: MultiPlusDiagram, Q2: MultiPlusDiagram) -> MultiPlusDiagram:
    us = components_for(Q.w)
    return MultiPlusDiagram(
        Q.w, tuple(meet_component(u, a, b) for u, a, b in zip(us, Q.components, Q2.components))
    )


def join(Q: MultiPlusDiagram, Q2: MultiPlusDiagram) -> MultiPlusDiagram:
    us = components_for(Q.w)
    return MultiPlusDiagram(
        Q.w, tuple(join_component(u, a, b) for u, a, b in zip(us, Q.components, Q2.components))
    )


def long_moves(
    Q: MultiPlusDiagram,
    support_preserving: bool = False,
    direction: Literal["SW", "NE", "both"] = "both",
) -> list[MultiPlusDiagram]:
    """Results of sliding one cross of one component through 1 or more local moves."""
    dirs = ("SW", "NE") if direction == "both" else (direction,)
    base = supp(Q).cells if support_preserving else None
    out = []
    for i, P in enumerate(Q.components):
        for d in dirs:
            for cell in sorted(P.cells):
                cur = P
                c = cell
                while True:
                    nxt = next((R for moved, R in local_moves(cur, d) if moved == c), None)
                    if nxt is None:
                        break
                    c = (c[0] + 1, c[1] - 1) if d == "SW" else (c[0] - 1, c[1] + 1)
                    cur = nxt
                    R = Q.replace(i, cur)
                    if base is None or supp(R).cells == base:
                        out.append(R)
    return out


def hasse_edges(members: Sequence[MultiPlusDiagram]) -> list[tuple[int, int]]:
    """Cover relations ``(lower, upper)`` of the componentwise order, by index."""
    m = len(members)
    rel = [[i != j and multi_leq(members[i], members[j]) for j in range(m)] for i in range(m)]
    edges = []
    for i in range(m):
        for j in range(m):
            if rel[i][j] and not any(rel[i][k] and rel[k][j] for k in range(m)):
                edges.append((i, j))
    return edges


def fiber_minimum(w: Permutation, P: PlusDiagram) -> MultiPlusDiagram:
    """Minimum of the fiber over a reduced pipe dream ``P`` of ``w``."""
    if P not in set(min_plus(w, P.n)):
        raise ValueError(f"{sorted(P.cells)} is not a reduced pipe dream for {w}")
    F = fiber(w, P)
    if not F.members:
        raise AssertionError(f"empty fiber over a reduced pipe dream of {w}")
    Q = F.members[0]
    while True:
        moves = long_moves(Q, support_preserving=True, direction="SW")
        if not moves:
            break
        Q = moves[0]
    if not all(multi_leq(Q, R) for R in F.members):
        raise AssertionError(f"fiber of {sorted(P.cells)} has no minimum")
    return Q


@dataclass
class StructureReport:
    w: Permutation
    supports: int = 0
    members: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _check_fiber(w: Permutation, P: PlusDiagram) -> tuple[int, list[str]]:
    F = fiber(w, P)
    members = list(F.members)
    where = f"{w} support {sorted(P.cells)}"
    if not members:
        return 0, [f"{where}: empty fiber"]
    bad: list[str] = []
    index = {Q: k for k, Q in enumerate(members)}
    seen = {0}
    queue = deque([members[0]])
    while queue:
        Q = queue.popleft()
        for R in long_moves(Q, support_preserving=True):
            k = index.get(R)
            if k is None:
                bad.append(f"{where}: support-preserving long move left the fiber")
                continue
            if k not in seen:
                seen.add(k)
                queue.append(R)
    if len(seen) != len(members):
        bad.append(f"{where}: fiber not connected by long moves ({len(seen)} of {len(members)})")
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            x, y = members[a], members[b]
            try:
                m, j = meet(x, y), join(x, y)
            except AssertionError as exc:
                bad.append(f"{where}: {exc}")
                continue
            if m not in index or j not in index:
                bad.append(f"{where}: meet or join leaves the fiber")
                continue
            if poset_meet(members, multi_leq, x, y) != m or poset_join(members, multi_leq, x, y) != j:
                bad.append(f"{where}: fiber meet or join disagrees with the product lattice")
    return len(members), bad


def _check_fiber_args(args):
    return _check_fiber(*args)


def verify_structure(w: Permutation, jobs: int = 1) -> StructureReport:
    """Connectivity and sublattice checks on every fiber over a reduced pipe dream of ``w``."""
    report = StructureReport(w)
    supports = min_plus(w)
    report.supports = len(supports)
    tasks = [(w, P) for P in supports]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_check_fiber_args, tasks, chunksize=8))
    else:
        results = [_check_fiber(*t) for t in tasks]
    for count, bad in results:
        report.members += count
        report.failures.extend(bad)
    return report


@dataclass
class MoveOverlayReport:
    w: Permutation
    moves: int = 0
    decompositions: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _moved_cell(P: PlusDiagram, Q: PlusDiagram) -> tuple[Cell, Cell]:
    (src,) = P.cells - Q.cells
    (dst,) = Q.cells - P.cells
    return src, dst


def push_run(Q: MultiPlusDiagram, start: Cell, kind: Literal["chute", "ladder"]) -> MultiPlusDiagram | None:
    """Slide a run of crosses one step each, in every component holding ``start``.

    ``kind="chute"``: the consecutive crosses of ``start``'s row, from ``start``
    rightwards, each take a northeast local move, rightmost first.
    ``kind="ladder"``: the consecutive crosses of ``start``'s column, from
    ``start`` downwards, each take a southwest local move, lowest first (the
    transpose of the chute case).  Returns None if some move is blocked.
    """
    comps = list(Q.components)
    direction = "NE" if kind == "chute" else "SW"
    for h, P in enumerate(comps):
        if start not in P.cells:
            continue
        i, j = start
        run = []
        cell = start
        while cell in P.cells:
            run.append(cell)
            cell = (i, cell[1] + 1) if kind == "chute" else (cell[0] + 1, j)
        cur = P
        for c in reversed(run):
            nxt = next((R for moved, R in local_moves(cur, direction) if moved == c), None)
            if nxt is None:
                return None
            cur = nxt
        comps[h] = cur
    return MultiPlusDiagram(Q.w, tuple(comps))


def check_move_overlays(w: Permutation, kind: Literal["chute", "ladder"] = "chute") -> MoveOverlayReport:
    """Chute and ladder moves seen as batches of local moves on the components.

    For a chute move ``P -> Q``, every decomposition of ``P`` pushed by
    :func:`push_run` from the jumping cross must overlay to exactly ``Q``.  For
    a ladder move the check runs backwards: every decomposition of ``Q``,
    pushed from the landing cell, must overlay to exactly ``P``.
    """
    from .pipedream import chute_moves, ladder_moves

    report = MoveOverlayReport(w)
    moves_of = chute_moves if kind == "chute" else ladder_moves
    allowed = set(min_plus(w))
    for P in min_plus(w):
        for Qd in moves_of(P):
            report.moves += 1
            if Qd not in allowed:
                report.failures.append(f"{w}: {kind} move from {sorted(P.cells)} left the pipe dreams")
                continue
            src, dst = _moved_cell(P, Qd)
            base, start, goal = (P, src, Qd) if kind == "chute" else (Qd, dst, P)
            for M in fiber(w, base).members:
                R = push_run(M, start, kind)
                report.decompositions += 1
                if R is None:
                    report.failures.append(f"{w}: blocked run at {start} in {sorted(base.cells)}")
                elif supp(R) != goal:
                    report.failures.append(f"{w}: overlay after pushing {start} misses the {kind} move")
    return report
