"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Every workload is run on both backends; results must be identical.
"""

from __future__ import annotations

import argparse
import time

from prismtab import _pykernels
from prismtab.permutation import all_permutations, essential_set, length, parse_permutation
from prismtab.pipedream import cell_bit, essential_antidiagonals, relevant_cells
from prismtab.prism import _pairs, _pair_masks, rect_fillings

try:
    from prismtab import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def hitting_workload():
    out = []
    for w in all_permutations(6):
        sets = [sum(cell_bit(c) for c in s) for s in essential_antidiagonals(w)]
        if sets:
            out.append((sets,))
    return out


def interior_workload():
    out = []
    for w in all_permutations(6):
        cells = sorted(relevant_cells(w), key=lambda c: (c[0], -c[1]))
        out.append(([i + j - 1 for i, j in cells], list(w.padded(6))))
    return out


def overlay_workload():
    out = []
    for text in ("426153", "351624", "254163", "315264", "246135", "3571624"):
        w = parse_permutation(text)
        groups = [[_pairs(f) for f in rect_fillings(e)] for e in essential_set(w)]
        masks, _ = _pair_masks(groups)
        out.append((masks, length(w), -1))
    return out


def run(fn, workload, repeat):
    best = float("inf")
    results = None
    for _ in range(repeat):
        t = time.perf_counter()
        results = [fn(*args) for args in workload]
        best = min(best, time.perf_counter() - t)
    return best, results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    cases = [
        ("minimal_hitting_sets", hitting_workload()),
        ("interior_search", interior_workload()),
        ("overlay_search", overlay_workload()),
    ]
    print(f"{'kernel':<22}{'calls':>7}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, workload in cases:
        tp, rp = run(getattr(_pykernels, name), workload, args.repeat)
        if _ckernels is None:
            print(f"{name:<22}{len(workload):>7}{tp:>11.3f}{'-':>11}{'-':>9}")
            continue
        tc, rc = run(getattr(_ckernels, name), workload, args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<22}{len(workload):>7}{tp:>11.3f}{tc:>11.3f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
