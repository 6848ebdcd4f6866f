# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled search kernels.

Same walks as ``_pykernels`` over int64 tables; the caller guarantees that
all entries are below 2**62 and that the column count is at most 62.
"""

from libc.stdlib cimport malloc, free, calloc

ctypedef long long i64
ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    EXHAUSTIVE = 0
    BNB = 1
    BELOW = 2


class _Stop(Exception):
    pass


cdef class _CorrespondenceSearch:
    cdef int m, n, mode
    cdef bint want_all, found
    cdef i64 best, bound, lower_bound
    cdef const i64[:, ::1] dx
    cdef const i64[:, ::1] dy
    cdef u64 *rows
    cdef i64 *inc
    cdef list results

    def __cinit__(self, const i64[:, ::1] dx, const i64[:, ::1] dy, int mode,
                  bint want_all, i64 bound, i64 lower_bound, i64 seed):
        self.m = dx.shape[0]
        self.n = dy.shape[0]
        self.dx = dx
        self.dy = dy
        self.mode = mode
        self.want_all = want_all
        self.bound = bound
        self.lower_bound = lower_bound
        self.best = seed
        self.found = False
        self.results = []
        self.rows = <u64 *> calloc(self.m, sizeof(u64))
        self.inc = <i64 *> calloc(self.m * self.n, sizeof(i64))
        if self.rows == NULL or self.inc == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.rows)
        free(self.inc)

    cdef inline bint pruned(self, i64 v):
        if self.mode == BNB:
            return v > self.best or (v == self.best and self.found
                                     and not self.want_all)
        if self.mode == BELOW:
            return v >= self.bound
        return False

    cdef tuple snapshot(self):
        return tuple([self.rows[i] for i in range(self.m)])

    cdef void leaf(self, i64 v) except *:
        if self.mode == BELOW:
            self.results.append((v, self.snapshot()))
            return
        if not self.found or v < self.best:
            self.best = v
            self.found = True
            self.results = [self.snapshot()]
        elif v == self.best and self.want_all:
            self.results.append(self.snapshot())
        if self.mode == BNB and not self.want_all and self.best <= self.lower_bound:
            raise _Stop()

    cdef void try_row(self, int k, u64 s, u64 covered, i64 partial,
                      i64 *inc) except *:
        cdef i64 v = partial
        cdef u64 t = s, t2
        cdef int y, y2
        cdef i64 d
        while t:
            y = __builtin_ctzll(t)
            t &= t - 1
            if inc[y] > v:
                v = inc[y]
            t2 = t
            while t2:
                y2 = __builtin_ctzll(t2)
                t2 &= t2 - 1
                d = self.dy[y, y2]
                if d > v:
                    v = d
            if self.pruned(v):
                return
        self.rows[k] = s
        if k == 0:
            self.leaf(v)
        else:
            self.rec(k - 1, covered | s, v)

    cdef void rec(self, int k, u64 covered, i64 partial) except *:
        cdef int n = self.n, m = self.m, y, y2, kp
        cdef i64 *inc = self.inc + k * n
        cdef i64 a, w, v
        cdef u64 t, full, need, freebits, sub, s
        for y in range(n):
            v = 0
            for kp in range(k + 1, m):
                a = self.dx[k, kp]
                t = self.rows[kp]
                while t:
                    y2 = __builtin_ctzll(t)
                    t &= t - 1
                    w = a - self.dy[y, y2]
                    if w < 0:
                        w = -w
                    if w > v:
                        v = w
            inc[y] = v
        full = ((<u64> 1) << n) - 1
        if k == 0:
            need = full & ~covered
            freebits = covered & full
            sub = 0
            while True:
                if need | sub:
                    self.try_row(k, need | sub, covered, partial, inc)
                sub = ((sub | ~freebits) + 1) & freebits
                if sub == 0:
                    break
        else:
            s = 1
            while s <= full:
                self.try_row(k, s, covered, partial, inc)
                s += 1
        self.rows[k] = 0


def correspondence_search(const i64[:, ::1] dx, const i64[:, ::1] dy,
                          int mode, bint want_all=False, i64 bound=0,
                          i64 lower_bound=0, i64 seed=0):
    cdef _CorrespondenceSearch search = _CorrespondenceSearch(
        dx, dy, mode, want_all, bound, lower_bound, seed)
    try:
        search.rec(search.m - 1, 0, 0)
    except _Stop:
        pass
    if mode == BELOW:
        return None, search.results
    return search.best, search.results


cdef class _BijectionSearch:
    cdef int n
    cdef bint exclude_identity, found
    cdef i64 best
    cdef const i64[:, ::1] dx
    cdef const i64[:, ::1] dy
    cdef int *perm

    def __cinit__(self, const i64[:, ::1] dx, const i64[:, ::1] dy,
                  bint exclude_identity):
        self.n = dx.shape[0]
        self.dx = dx
        self.dy = dy
        self.exclude_identity = exclude_identity
        self.found = False
        self.best = 0
        self.perm = <int *> calloc(self.n if self.n > 0 else 1, sizeof(int))
        if self.perm == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.perm)

    cdef void rec(self, int i, u64 used, i64 partial, bint identity) except *:
        cdef int j, ip, n = self.n
        cdef i64 v, w
        if i == n:
            if self.exclude_identity and identity:
                return
            self.best = partial
            self.found = True
            if partial == 0:
                raise _Stop()
            return
        for j in range(n):
            if (used >> j) & 1:
                continue
            v = partial
            for ip in range(i):
                w = self.dx[i, ip] - self.dy[j, self.perm[ip]]
                if w < 0:
                    w = -w
                if w > v:
                    v = w
                    if self.found and v >= self.best:
                        break
            if self.found and v >= self.best:
                continue
            self.perm[i] = j
            self.rec(i + 1, used | ((<u64> 1) << j), v, identity and j == i)


def bijection_search(const i64[:, ::1] dx, const i64[:, ::1] dy,
                     bint exclude_identity=False):
    cdef _BijectionSearch search = _BijectionSearch(dx, dy, exclude_identity)
    try:
        search.rec(0, 0, 0, True)
    except _Stop:
        pass
    return search.best if search.found else None
