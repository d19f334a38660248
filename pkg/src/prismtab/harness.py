"""Exhaustive verification sweeps over S_n.

Each suite is a function ``check(w) -> list of (check name, witness)``; an
empty list means ``w`` passed.  :func:`run_suite` maps a suite over every
permutation of size ``n``, optionally in a process pool.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .multiplus import check_move_overlays, verify_structure
from .permutation import Permutation, all_permutations, parse_permutation
from .pipedream import min_plus, min_plus_by_oracle, total_weight
from .polynomial import schubert, stanley_truncation
from .prism import prism, prism_polynomial, stable_polynomial
from .srcomplex import check_conjecture

__all__ = [
    "SUITES",
    "DEFAULT_CEILING",
    "LONG_CEILING",
    "VerificationReport",
    "load_table1",
    "run_suite",
]

DEFAULT_CEILING = 5
LONG_CEILING = 6

Failure = tuple[str, str]


def _w(w: Permutation) -> str:
    return "".join(map(str, w.window)) if w.n < 10 else ",".join(map(str, w.window))


def check_theorem(w: Permutation) -> list[Failure]:
    lhs, rhs = prism_polynomial(w), schubert(w, nvars=w.n)
    if lhs != rhs:
        return [("prism polynomial", f"{lhs.to_text()} != {rhs.to_text()}")]
    return []


def check_pipedreams(w: Permutation) -> list[Failure]:
    out = []
    dreams = min_plus(w)
    if total_weight(dreams, w.n) != schubert(w, nvars=w.n):
        out.append(("pipe dream weights", "sum differs from the Schubert polynomial"))
    if set(dreams) != set(min_plus_by_oracle(w)):
        out.append(("hitting sets", "ladder closure differs from minimal hitting sets"))
    return out


def check_lattice(w: Permutation) -> list[Failure]:
    report = verify_structure(w)
    return [("fiber structure", msg) for msg in report.failures]


def check_conjecture_suite(w: Permutation) -> list[Failure]:
    r = check_conjecture(w, oracle=w.n <= 4)
    out = [("overlay of interior diagrams", json.dumps(P.to_json_obj())) for P in r.witnesses]
    if not r.kmove_connected:
        out.append(("K-move connectivity", f"{len(r.int_plus)} interior diagrams not connected"))
    if r.oracle_agrees is False:
        out.append(("interior oracle", "Demazure test disagrees with the boundary-ridge test"))
    return out


def check_stable(w: Permutation, m_max: int = 3) -> list[Failure]:
    out = []
    for m in range(1, m_max + 1):
        a, b = stable_polynomial(w, m), stanley_truncation(w, m)
        if a != b:
            out.append((f"stable m={m}", f"{a.to_text()} != {b.to_text()}"))
    return out


def check_chute_overlay(w: Permutation) -> list[Failure]:
    out = []
    for kind in ("chute", "ladder"):
        out.extend((f"{kind} overlay", msg) for msg in check_move_overlays(w, kind).failures)
    return out


def load_table1() -> dict:
    with resources.files("prismtab").joinpath("data/table1.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


_TABLE1: dict[str, dict] | None = None


def check_table1(w: Permutation) -> list[Failure]:
    global _TABLE1
    if _TABLE1 is None:
        _TABLE1 = {row["w"]: row for row in load_table1()["rows"]}
    row = _TABLE1.get(_w(w.in_sn(4)))
    if row is None:
        return [("table lookup", "permutation not in the table")]
    out = []
    got = prism_polynomial(w).to_text()
    if got != row["polynomial"]:
        out.append(("polynomial", f"{got} != {row['polynomial']}"))
    count = len(prism(w))
    if count != row["count"]:
        out.append(("tableau count", f"{count} != {row['count']}"))
    return out


SUITES: dict[str, Callable[[Permutation], list[Failure]]] = {
    "theorem": check_theorem,
    "table1": check_table1,
    "pipedreams": check_pipedreams,
    "lattice": check_lattice,
    "conjecture": check_conjecture_suite,
    "stable": check_stable,
    "chute-overlay": check_chute_overlay,
}

# sizes at which each suite runs when no size is given
DEFAULT_N = {
    "theorem": 5,
    "table1": 4,
    "pipedreams": 5,
    "lattice": 5,
    "conjecture": 4,
    "stable": 4,
    "chute-overlay": 5,
}


@dataclass
class VerificationReport:
    suite: str
    n: int
    checked: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        ok = self.checked - len({f[0] for f in self.failures})
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.suite} n={self.n}: {ok}/{self.checked} permutations passed [{verdict}]"

    def to_json_obj(self, with_time: bool = True) -> dict:
        obj = {
            "suite": self.suite,
            "n": self.n,
            "checked": self.checked,
            "passed": self.passed,
            "failures": [{"w": w, "check": c, "witness": x} for w, c, x in self.failures],
        }
        if with_time:
            obj["elapsed_seconds"] = round(self.elapsed, 3)
        return obj


def _run_one(args):
    suite, window = args
    w = Permutation(window)
    return _w(w), SUITES[suite](w)


def run_suite(suite: str, n: int, jobs: int = 1) -> VerificationReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    if suite == "table1":
        n = 4
    start = time.perf_counter()
    tasks = [(suite, w.window) for w in all_permutations(n)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_one(t) for t in tasks]
    report = VerificationReport(suite, n, checked=len(results))
    for name, fails in results:
        report.failures.extend((name, check, witness) for check, witness in fails)
    report.elapsed = time.perf_counter() - start
    return report


def conjecture_records(n: int) -> list[dict]:
    """One interior-face record per permutation of size ``n``."""
    return [check_conjecture(w, oracle=n <= 4).to_json_obj() for w in all_permutations(n)]


def parse_w(text: str) -> Permutation:
    return parse_permutation(text)
