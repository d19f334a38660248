import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prismtab import _pykernels, kernels

try:
    from prismtab import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

masks = st.integers(min_value=0, max_value=(1 << 12) - 1)


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")
    if _ckernels is not None and not os.environ.get("PRISMTAB_PURE_PYTHON"):
        assert kernels.BACKEND == _ckernels.BACKEND


def test_pure_python_switch():
    code = "from prismtab import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PRISMTAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _brute_hitting(sets, bits):
    hits = [m for m in range(1 << bits) if all(m & s for s in sets)]
    return sorted(m for m in hits if not any(o != m and o & m == o for o in hits))


@given(st.lists(st.integers(min_value=1, max_value=255), min_size=1, max_size=5))
@settings(max_examples=80, deadline=None)
def test_hitting_sets_against_brute_force(sets):
    assert _pykernels.minimal_hitting_sets(sets) == _brute_hitting(sets, 8)


def test_hitting_sets_empty_member():
    assert _pykernels.minimal_hitting_sets([0, 3]) == []


def _brute_overlay(cands, max_bits, target):
    out = []
    for idx in itertools.product(*[range(len(c)) for c in cands]):
        u = 0
        for k, j in enumerate(idx):
            u |= cands[k][j]
        if (target >= 0 and u == target) or (target < 0 and bin(u).count("1") <= max_bits):
            out.append(idx)
    return out


@given(st.lists(st.lists(masks, min_size=1, max_size=4), min_size=0, max_size=4), st.integers(0, 12))
@settings(max_examples=80, deadline=None)
def test_overlay_bits_mode(cands, max_bits):
    assert _pykernels.overlay_search(cands, max_bits, -1) == _brute_overlay(cands, max_bits, -1)


@given(st.lists(st.lists(masks, min_size=1, max_size=4), min_size=1, max_size=4), masks)
@settings(max_examples=80, deadline=None)
def test_overlay_target_mode(cands, target):
    cands = [[m & target for m in c] for c in cands]
    assert _pykernels.overlay_search(cands, 0, target) == _brute_overlay(cands, 0, target)


perm4 = st.permutations(range(1, 5)).map(list)
words = st.lists(st.integers(1, 3), max_size=10)


@needs_c
@given(st.lists(st.lists(masks, min_size=1, max_size=4), min_size=0, max_size=5), st.integers(0, 12))
@settings(max_examples=100, deadline=None)
def test_overlay_backends_agree(cands, max_bits):
    assert _ckernels.overlay_search(cands, max_bits, -1) == _pykernels.overlay_search(cands, max_bits, -1)
    target = 0
    for c in cands:
        target |= c[0]
    assert _ckernels.overlay_search(cands, 0, target) == _pykernels.overlay_search(cands, 0, target)


@needs_c
@given(st.lists(st.integers(min_value=1, max_value=(1 << 16) - 1), min_size=1, max_size=6))
@settings(max_examples=100, deadline=None)
def test_hitting_backends_agree(sets):
    assert _ckernels.minimal_hitting_sets(sets) == _pykernels.minimal_hitting_sets(sets)


@needs_c
@given(words, perm4)
@settings(max_examples=150, deadline=None)
def test_demazure_and_interior_backends_agree(word, w):
    assert list(_ckernels.demazure_product(word, 4)) == _pykernels.demazure_product(word, 4)
    assert list(_ckernels.interior_search(word, w)) == _pykernels.interior_search(word, w)


@given(words, perm4)
@settings(max_examples=100, deadline=None)
def test_interior_search_against_brute_force(word, w):
    want = []
    for m in range(1 << len(word)):
        sub = [k for t, k in enumerate(word) if m >> t & 1]
        if _pykernels.demazure_product(sub, 4) == w:
            want.append(m)
    assert _pykernels.interior_search(word, w) == want
