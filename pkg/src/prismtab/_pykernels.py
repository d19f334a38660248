"""Pure-Python implementations of the search kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when the
extension is not built or when ``PRISMTAB_PURE_PYTHON`` is set.
"""

from __future__ import annotations

BACKEND = "python"


def overlay_search(candidates, max_bits, target):
    """Choose one mask per component list.

    With ``target >= 0`` return every choice whose union equals ``target``
    (candidates must already be subsets of it).  Otherwise return every choice
    whose union has at most ``max_bits`` set bits.  Choices are index tuples in
    lexicographic order.
    """
    k = len(candidates)
    if k == 0:
        if target > 0:
            return []
        return [()]
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        acc = 0
        for m in candidates[i]:
            acc |= m
        suffix[i] = suffix[i + 1] | acc
    out = []
    idx = [0] * k

    def rec(level, union):
        if level == k:
            if target >= 0:
                if union == target:
                    out.append(tuple(idx))
            else:
                out.append(tuple(idx))
            return
        if target >= 0 and (union | suffix[level]) != target:
            return
        for j, m in enumerate(candidates[level]):
            u = union | m
            if target < 0 and bin(u).count("1") > max_bits:
                continue
            idx[level] = j
            rec(level + 1, u)

    rec(0, 0)
    return out


def minimal_hitting_sets(sets):
    """All inclusion-minimal masks meeting every mask in ``sets``."""
    sets = list(dict.fromkeys(sets))
    if any(s == 0 for s in sets):
        return []
    found = set()

    def rec(chosen, forbidden):
        for s in sets:
            if not s & chosen:
                break
        else:
            found.add(chosen)
            return
        avail = s & ~forbidden
        extra = 0
        while avail:
            bit = avail & -avail
            avail ^= bit
            rec(chosen | bit, forbidden | extra)
            extra |= bit

    rec(0, 0)
    minimal = []
    for h in found:
        ok = True
        rest = h
        while rest:
            bit = rest & -rest
            rest ^= bit
            smaller = h ^ bit
            if all(s & smaller for s in sets):
                ok = False
                break
        if ok:
            minimal.append(h)
    return sorted(minimal)


def interior_search(letters, w):
    """Subsets of word positions whose Demazure product is ``w``.

    ``letters[t]`` is the generator index at position ``t``; ``w`` is a one-line
    window large enough to contain every letter.  The search includes or skips
    each position in order and abandons a branch as soon as the running
    Demazure product leaves the Bruhat interval below ``w``.  Returns bitmasks
    over positions, sorted.
    """
    n = len(w)
    rw = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rw[i][j] = rw[i - 1][j] + (1 if w[i - 1] <= j else 0)
    cur = list(range(1, n + 1))
    rc = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rc[i][j] = rc[i - 1][j] + (1 if cur[i - 1] <= j else 0)
    target = list(w)
    L = len(letters)
    out = []

    def rec(t, mask):
        if t == L:
            if cur == target:
                out.append(mask)
            return
        k = letters[t]
        a, b = cur[k - 1], cur[k]
        if a < b:
            row, wrow = rc[k], rw[k]
            ok = True
            for j in range(a, b):
                row[j] -= 1
                if row[j] < wrow[j]:
                    ok = False
            if ok:
                cur[k - 1], cur[k] = b, a
                rec(t + 1, mask | (1 << t))
                cur[k - 1], cur[k] = a, b
            for j in range(a, b):
                row[j] += 1
        else:
            rec(t + 1, mask | (1 << t))
        rec(t + 1, mask)

    rec(0, 0)
    return sorted(out)


def demazure_product(letters, n):
    cur = list(range(1, n + 1))
    for k in letters:
        if cur[k - 1] < cur[k]:
            cur[k - 1], cur[k] = cur[k], cur[k - 1]
    return cur
