# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see ``_pykernels`` for the reference versions."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef unsigned long long u64

BACKEND = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef class _Overlay:
    cdef int k
    cdef int *offs
    cdef int *sizes
    cdef u64 *masks
    cdef u64 *suffix
    cdef int *idx
    cdef long long target
    cdef int max_bits
    cdef list out

    def __cinit__(self):
        self.offs = NULL
        self.sizes = NULL
        self.masks = NULL
        self.suffix = NULL
        self.idx = NULL

    def __dealloc__(self):
        free(self.offs)
        free(self.sizes)
        free(self.masks)
        free(self.suffix)
        free(self.idx)

    cdef void rec(self, int level, u64 union):
        cdef int j, t
        cdef u64 u, m
        if level == self.k:
            if self.target < 0 or union == <u64>self.target:
                self.out.append(tuple([self.idx[t] for t in range(self.k)]))
            return
        if self.target >= 0 and (union | self.suffix[level]) != <u64>self.target:
            return
        for j in range(self.sizes[level]):
            m = self.masks[self.offs[level] + j]
            u = union | m
            if self.target < 0 and popcount(u) > self.max_bits:
                continue
            self.idx[level] = j
            self.rec(level + 1, u)


def overlay_search(candidates, int max_bits, long long target):
    cdef int k = len(candidates)
    cdef int i, j, total = 0
    cdef u64 acc
    cdef _Overlay st
    if k == 0:
        if target > 0:
            return []
        return [()]
    st = _Overlay()
    st.k = k
    st.max_bits = max_bits
    st.target = target
    st.out = []
    st.offs = <int *> malloc(k * sizeof(int))
    st.sizes = <int *> malloc(k * sizeof(int))
    st.idx = <int *> malloc(k * sizeof(int))
    st.suffix = <u64 *> malloc((k + 1) * sizeof(u64))
    for i in range(k):
        st.offs[i] = total
        st.sizes[i] = len(candidates[i])
        total += st.sizes[i]
    st.masks = <u64 *> malloc((total + 1) * sizeof(u64))
    for i in range(k):
        for j in range(st.sizes[i]):
            st.masks[st.offs[i] + j] = <u64> candidates[i][j]
    st.suffix[k] = 0
    for i in range(k - 1, -1, -1):
        acc = 0
        for j in range(st.sizes[i]):
            acc |= st.masks[st.offs[i] + j]
        st.suffix[i] = st.suffix[i + 1] | acc
    st.rec(0, 0)
    return st.out


cdef class _Hitting:
    cdef int m
    cdef u64 *sets
    cdef set found

    def __cinit__(self):
        self.sets = NULL

    def __dealloc__(self):
        free(self.sets)

    cdef void rec(self, u64 chosen, u64 forbidden):
        cdef int i
        cdef u64 s = 0, avail, bit, extra
        cdef bint hit_all = True
        for i in range(self.m):
            if not (self.sets[i] & chosen):
                s = self.sets[i]
                hit_all = False
                break
        if hit_all:
            self.found.add(chosen)
            return
        avail = s & ~forbidden
        extra = 0
        while avail:
            bit = avail & (~avail + 1)
            avail ^= bit
            self.rec(chosen | bit, forbidden | extra)
            extra |= bit

    cdef bint hits_all(self, u64 h):
        cdef int i
        for i in range(self.m):
            if not (self.sets[i] & h):
                return False
        return True


def minimal_hitting_sets(sets):
    cdef _Hitting st = _Hitting()
    cdef int i
    cdef u64 h, rest, bit
    cdef bint ok
    uniq = list(dict.fromkeys(sets))
    if any(s == 0 for s in uniq):
        return []
    st.m = len(uniq)
    st.sets = <u64 *> malloc((st.m + 1) * sizeof(u64))
    for i in range(st.m):
        st.sets[i] = <u64> uniq[i]
    st.found = set()
    st.rec(0, 0)
    minimal = []
    for py_h in st.found:
        h = <u64> py_h
        ok = True
        rest = h
        while rest:
            bit = rest & (~rest + 1)
            rest ^= bit
            if st.hits_all(h ^ bit):
                ok = False
                break
        if ok:
            minimal.append(py_h)
    minimal.sort()
    return minimal


cdef class _Interior:
    cdef int n
    cdef int L
    cdef int *letters
    cdef int *cur
    cdef int *target
    cdef int *rc
    cdef int *rw
    cdef list out

    def __cinit__(self):
        self.letters = NULL
        self.cur = NULL
        self.target = NULL
        self.rc = NULL
        self.rw = NULL

    def __dealloc__(self):
        free(self.letters)
        free(self.cur)
        free(self.target)
        free(self.rc)
        free(self.rw)

    cdef void rec(self, int t, u64 mask):
        cdef int i, j, k, a, b, stride = self.n + 1
        cdef bint ok, same
        if t == self.L:
            same = True
            for i in range(self.n):
                if self.cur[i] != self.target[i]:
                    same = False
                    break
            if same:
                self.out.append(mask)
            return
        k = self.letters[t]
        a = self.cur[k - 1]
        b = self.cur[k]
        if a < b:
            ok = True
            for j in range(a, b):
                self.rc[k * stride + j] -= 1
                if self.rc[k * stride + j] < self.rw[k * stride + j]:
                    ok = False
            if ok:
                self.cur[k - 1] = b
                self.cur[k] = a
                self.rec(t + 1, mask | ((<u64> 1) << t))
                self.cur[k - 1] = a
                self.cur[k] = b
            for j in range(a, b):
                self.rc[k * stride + j] += 1
        else:
            self.rec(t + 1, mask | ((<u64> 1) << t))
        self.rec(t + 1, mask)


def interior_search(letters, w):
    cdef _Interior st = _Interior()
    cdef int n = len(w)
    cdef int i, j, stride = n + 1
    if len(letters) > 64:
        raise ValueError("at most 64 word positions are supported")
    st.n = n
    st.L = len(letters)
    st.out = []
    st.letters = <int *> malloc((st.L + 1) * sizeof(int))
    st.cur = <int *> malloc(n * sizeof(int))
    st.target = <int *> malloc(n * sizeof(int))
    st.rc = <int *> malloc(stride * stride * sizeof(int))
    st.rw = <int *> malloc(stride * stride * sizeof(int))
    memset(st.rc, 0, stride * stride * sizeof(int))
    memset(st.rw, 0, stride * stride * sizeof(int))
    for i in range(st.L):
        st.letters[i] = letters[i]
    for i in range(n):
        st.cur[i] = i + 1
        st.target[i] = w[i]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            st.rw[i * stride + j] = st.rw[(i - 1) * stride + j] + (1 if st.target[i - 1] <= j else 0)
            st.rc[i * stride + j] = st.rc[(i - 1) * stride + j] + (1 if st.cur[i - 1] <= j else 0)
    st.rec(0, 0)
    st.out.sort()
    return st.out


def demazure_product(letters, int n):
    cur = list(range(1, n + 1))
    for k in letters:
        if cur[k - 1] < cur[k]:
            cur[k - 1], cur[k] = cur[k], cur[k - 1]
    return cur
