# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tableau kernel.

Same search as ``_kernel_py.Kernel`` (rule order, branch order, blocking and
step accounting are identical), with labels held as arrays of 64-bit words
on a private stack instead of Python ints.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy, memset

from .errors import ResourceLimitExceeded


cdef inline bint _has(const uint64_t *lab, int i) nogil:
    return (lab[i >> 6] >> (i & 63)) & 1


cdef inline void _put(uint64_t *lab, int i) nogil:
    lab[i >> 6] |= (<uint64_t>1) << (i & 63)


cdef int *_ints(list values) except NULL:
    cdef Py_ssize_t k, m = len(values)
    cdef int *out = <int *>malloc((m if m > 0 else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for k in range(m):
        out[k] = values[k]
    return out


cdef class Kernel:
    cdef int n, words
    cdef int n_and, n_or, n_some, n_all, n_clash, n_bot
    cdef int *and_id
    cdef int *and_l
    cdef int *and_r
    cdef int *or_id
    cdef int *or_l
    cdef int *or_r
    cdef int *some_id
    cdef int *some_role
    cdef int *some_child
    cdef int *all_id
    cdef int *all_role
    cdef int *all_child
    cdef int *clash_a
    cdef int *clash_b
    cdef int *bot_id
    cdef uint64_t *tbox
    # label stack; entries addressed by word offset since realloc may move it
    cdef uint64_t *stack
    cdef Py_ssize_t stack_cap, stack_top
    cdef Py_ssize_t *path
    cdef Py_ssize_t path_len, path_cap
    cdef public long long budget
    cdef public long long steps

    def __cinit__(self, int n, ands, ors, somes, alls, clashes, bots, tbox, budget):
        self.n = n
        self.words = (n + 63) // 64 if n > 0 else 1
        self.n_and = len(ands)
        self.and_id = _ints([t[0] for t in ands])
        self.and_l = _ints([t[1] for t in ands])
        self.and_r = _ints([t[2] for t in ands])
        self.n_or = len(ors)
        self.or_id = _ints([t[0] for t in ors])
        self.or_l = _ints([t[1] for t in ors])
        self.or_r = _ints([t[2] for t in ors])
        self.n_some = len(somes)
        self.some_id = _ints([t[0] for t in somes])
        self.some_role = _ints([t[1] for t in somes])
        self.some_child = _ints([t[2] for t in somes])
        self.n_all = len(alls)
        self.all_id = _ints([t[0] for t in alls])
        self.all_role = _ints([t[1] for t in alls])
        self.all_child = _ints([t[2] for t in alls])
        self.n_clash = len(clashes)
        self.clash_a = _ints([t[0] for t in clashes])
        self.clash_b = _ints([t[1] for t in clashes])
        self.n_bot = len(bots)
        self.bot_id = _ints(list(bots))
        self.tbox = <uint64_t *>malloc(self.words * sizeof(uint64_t))
        if self.tbox == NULL:
            raise MemoryError()
        memset(self.tbox, 0, self.words * sizeof(uint64_t))
        for t in tbox:
            _put(self.tbox, t)
        self.stack_cap = self.words * 64
        self.stack = <uint64_t *>malloc(self.stack_cap * sizeof(uint64_t))
        self.path_cap = 64
        self.path = <Py_ssize_t *>malloc(self.path_cap * sizeof(Py_ssize_t))
        if self.stack == NULL or self.path == NULL:
            raise MemoryError()
        self.stack_top = 0
        self.path_len = 0
        self.budget = budget
        self.steps = 0

    def __dealloc__(self):
        free(self.and_id); free(self.and_l); free(self.and_r)
        free(self.or_id); free(self.or_l); free(self.or_r)
        free(self.some_id); free(self.some_role); free(self.some_child)
        free(self.all_id); free(self.all_role); free(self.all_child)
        free(self.clash_a); free(self.clash_b); free(self.bot_id)
        free(self.tbox); free(self.stack); free(self.path)

    cdef Py_ssize_t _push(self) except -1:
        cdef Py_ssize_t off = self.stack_top
        cdef uint64_t *grown
        if off + self.words > self.stack_cap:
            grown = <uint64_t *>realloc(self.stack, 2 * self.stack_cap * sizeof(uint64_t))
            if grown == NULL:
                raise MemoryError()
            self.stack = grown
            self.stack_cap *= 2
        self.stack_top = off + self.words
        return off

    cdef int _enter(self, Py_ssize_t off) except -1:
        cdef Py_ssize_t *grown
        if self.path_len == self.path_cap:
            grown = <Py_ssize_t *>realloc(self.path, 2 * self.path_cap * sizeof(Py_ssize_t))
            if grown == NULL:
                raise MemoryError()
            self.path = grown
            self.path_cap *= 2
        self.path[self.path_len] = off
        self.path_len += 1
        return 0

    def satisfiable(self, roots):
        cdef Py_ssize_t off
        self.stack_top = 0
        self.path_len = 0
        off = self._push()
        memcpy(self.stack + off, self.tbox, self.words * sizeof(uint64_t))
        for r in roots:
            _put(self.stack + off, r)
        return self._sat(off) == 1

    cdef int _sat(self, Py_ssize_t off) except -1:
        cdef int t, u, i, l, r, w, role, res
        cdef Py_ssize_t noff, p
        cdef uint64_t *lab
        cdef uint64_t *anc
        cdef uint64_t *succ
        cdef bint subset

        self.steps += 1
        if self.steps > self.budget:
            raise ResourceLimitExceeded(self.budget)
        lab = self.stack + off
        for t in range(self.n_and):
            if _has(lab, self.and_id[t]):
                _put(lab, self.and_l[t])
                _put(lab, self.and_r[t])
        for t in range(self.n_bot):
            if _has(lab, self.bot_id[t]):
                return 0
        for t in range(self.n_clash):
            if _has(lab, self.clash_a[t]) and _has(lab, self.clash_b[t]):
                return 0
        for t in range(self.n_or):
            i = self.or_id[t]
            l = self.or_l[t]
            r = self.or_r[t]
            if _has(lab, i) and not _has(lab, l) and not _has(lab, r):
                noff = self._push()
                memcpy(self.stack + noff, self.stack + off, self.words * sizeof(uint64_t))
                _put(self.stack + noff, l)
                res = self._sat(noff)
                self.stack_top = noff
                if res == 1:
                    return 1
                noff = self._push()
                memcpy(self.stack + noff, self.stack + off, self.words * sizeof(uint64_t))
                _put(self.stack + noff, r)
                res = self._sat(noff)
                self.stack_top = noff
                return res
        for p in range(self.path_len):
            anc = self.stack + self.path[p]
            subset = True
            for w in range(self.words):
                if lab[w] & ~anc[w]:
                    subset = False
                    break
            if subset:
                return 1
        self._enter(off)
        for t in range(self.n_some):
            lab = self.stack + off
            if not _has(lab, self.some_id[t]):
                continue
            role = self.some_role[t]
            noff = self._push()
            lab = self.stack + off
            succ = self.stack + noff
            memcpy(succ, self.tbox, self.words * sizeof(uint64_t))
            _put(succ, self.some_child[t])
            for u in range(self.n_all):
                if self.all_role[u] == role and _has(lab, self.all_id[u]):
                    _put(succ, self.all_child[u])
            try:
                res = self._sat(noff)
            except BaseException:
                self.path_len -= 1
                raise
            self.stack_top = noff
            if res == 0:
                self.path_len -= 1
                return 0
        self.path_len -= 1
        return 1
