# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; signatures mirror ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t

cnp.import_array()

BACKEND = "cython"

ctypedef int64_t i64


cdef struct PathCtx:
    const i64* ip
    const i64* ix
    const i64* ec
    unsigned char* on
    i64* used
    i64* path
    i64 last
    i64 s


cdef void _paths_extend(PathCtx* c, i64 v, i64 depth, i64* row) nogil:
    cdef i64 j, w
    for j in range(c.ip[v], c.ip[v + 1]):
        w = c.ix[j]
        if c.on[w]:
            continue
        if depth + 1 == c.last:
            if w > c.s:
                row[w] += 1
        else:
            c.on[w] = 1
            _paths_extend(c, w, depth + 1, row)
            c.on[w] = 0


def path_pair_counts(i64[::1] indptr, i64[::1] indices, i64 n, i64 length):
    cdef cnp.ndarray[i64, ndim=2] out = np.zeros((n, n), dtype=np.int64)
    cdef i64[:, ::1] ov = out
    cdef PathCtx c
    cdef i64 s
    if n == 0:
        return out
    c.ip = &indptr[0]
    c.ix = &indices[0] if indices.shape[0] > 0 else NULL
    c.on = <unsigned char*>calloc(n, 1)
    c.last = length - 1
    try:
        with nogil:
            for s in range(n):
                if c.ip[s] == c.ip[s + 1]:
                    continue
                c.s = s
                c.on[s] = 1
                _paths_extend(&c, s, 0, &ov[s, 0])
                c.on[s] = 0
    finally:
        free(c.on)
    return out + out.T


cdef void _rainbow_extend(PathCtx* c, i64 v, i64 depth, unsigned char* found, i64* store) nogil:
    cdef i64 j, w, col, t
    for j in range(c.ip[v], c.ip[v + 1]):
        w = c.ix[j]
        col = c.ec[j]
        if c.on[w] or c.used[col]:
            continue
        if depth + 1 == c.last:
            if w > c.s and not found[w]:
                found[w] = 1
                c.path[c.last] = w
                for t in range(c.last + 1):
                    store[w * (c.last + 1) + t] = c.path[t]
        else:
            c.on[w] = 1
            c.used[col] = 1
            c.path[depth + 1] = w
            _rainbow_extend(c, w, depth + 1, found, store)
            c.on[w] = 0
            c.used[col] = 0


def rainbow_pairs(i64[::1] indptr, i64[::1] indices, i64[::1] ecol, i64 ncolours, i64 n, i64 length):
    cdef PathCtx c
    cdef i64 s, w, t
    cdef unsigned char* found
    cdef i64* store
    out = []
    if n == 0 or indices.shape[0] == 0:
        return out
    c.ip = &indptr[0]
    c.ix = &indices[0]
    c.ec = &ecol[0]
    c.on = <unsigned char*>calloc(n, 1)
    c.used = <i64*>calloc(ncolours if ncolours > 0 else 1, sizeof(i64))
    c.path = <i64*>calloc(length, sizeof(i64))
    c.last = length - 1
    found = <unsigned char*>calloc(n, 1)
    store = <i64*>malloc(n * length * sizeof(i64))
    try:
        for s in range(n):
            c.s = s
            c.path[0] = s
            c.on[s] = 1
            with nogil:
                _rainbow_extend(&c, s, 0, found, store)
            c.on[s] = 0
            for w in range(s + 1, n):
                if found[w]:
                    out.append(tuple([store[w * length + t] for t in range(length)]))
                    found[w] = 0
    finally:
        free(c.on)
        free(c.used)
        free(c.path)
        free(found)
        free(store)
    return out


cdef struct CensusCtx:
    const i64* ip
    const i64* ix
    const unsigned char* mk
    unsigned char* on
    unsigned char* adj_s
    i64* path
    i64* hist
    i64 last
    i64 s
    i64 labelled
    i64 unlabelled


cdef void _census_extend(CensusCtx* c, i64 v, i64 depth, i64 inter) nogil:
    cdef i64 j, w, t, lo
    for j in range(c.ip[v], c.ip[v + 1]):
        w = c.ix[j]
        if c.on[w]:
            continue
        if depth + 1 == c.last:
            if c.adj_s[w]:
                c.labelled += 1
                c.hist[inter + c.mk[w]] += 1
                if w > c.s and w > c.path[1]:
                    lo = 1
                    for t in range(1, c.last):
                        if c.path[t] < c.s:
                            lo = 0
                            break
                    if lo:
                        c.unlabelled += 1
        else:
            c.on[w] = 1
            c.path[depth + 1] = w
            _census_extend(c, w, depth + 1, inter + c.mk[w])
            c.on[w] = 0


def cycle_census(i64[::1] indptr, i64[::1] indices, i64 n, i64 length, mask):
    cdef cnp.ndarray[unsigned char, ndim=1] mk = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef cnp.ndarray[i64, ndim=1] hist = np.zeros(length + 1, dtype=np.int64)
    cdef CensusCtx c
    cdef i64 s, j
    if n == 0 or indices.shape[0] == 0:
        return 0, 0, hist
    c.ip = &indptr[0]
    c.ix = &indices[0]
    c.mk = &mk[0]
    c.hist = &hist[0]
    c.on = <unsigned char*>calloc(n, 1)
    c.adj_s = <unsigned char*>calloc(n, 1)
    c.path = <i64*>calloc(length, sizeof(i64))
    c.last = length - 1
    c.labelled = 0
    c.unlabelled = 0
    try:
        with nogil:
            for s in range(n):
                for j in range(c.ip[s], c.ip[s + 1]):
                    c.adj_s[c.ix[j]] = 1
                c.s = s
                c.path[0] = s
                c.on[s] = 1
                _census_extend(&c, s, 0, c.mk[s])
                c.on[s] = 0
                for j in range(c.ip[s], c.ip[s + 1]):
                    c.adj_s[c.ix[j]] = 0
    finally:
        free(c.on)
        free(c.adj_s)
        free(c.path)
    return c.labelled, c.unlabelled, hist


cdef i64 _canonical_code(i64* cols, i64 length, i64* seq, i64* firsts) nogil:
    cdef i64 best = -1, code, r, t, b, k, nb, c
    cdef int refl
    for refl in range(2):
        for r in range(length):
            for t in range(length):
                if refl == 0:
                    seq[t] = cols[(r + t) % length]
                else:
                    seq[t] = cols[(length - 1 - ((r + t) % length))]
            nb = 0
            code = 0
            for t in range(length):
                c = seq[t]
                b = -1
                for k in range(nb):
                    if firsts[k] == c:
                        b = k
                        break
                if b < 0:
                    firsts[nb] = c
                    b = nb
                    nb += 1
                code = code * length + b
            if best < 0 or code < best:
                best = code
    return best


cdef struct PatCtx:
    const i64* ip
    const i64* ix
    const i64* ec
    unsigned char* on
    i64* to_s
    i64* path
    i64* cols
    i64* seq
    i64* firsts
    const i64* targets
    i64 ntargets
    i64* counts
    i64 limit
    i64 remaining
    i64 last
    i64 length
    i64 s


cdef int _pat_extend(PatCtx* c, i64 v, i64 depth, list hits) except -1:
    cdef i64 j, w, code, i
    for j in range(c.ip[v], c.ip[v + 1]):
        w = c.ix[j]
        if w <= c.s or c.on[w]:
            continue
        c.cols[depth] = c.ec[j]
        if depth + 1 == c.last:
            if c.to_s[w] >= 0 and w > c.path[1]:
                c.path[c.last] = w
                c.cols[c.last] = c.to_s[w]
                code = _canonical_code(c.cols, c.length, c.seq, c.firsts)
                for i in range(c.ntargets):
                    if c.targets[i] == code:
                        c.counts[i] += 1
                        if c.limit <= 0 or c.counts[i] <= c.limit:
                            hits.append((i, tuple([c.path[t] for t in range(c.length)])))
                            if c.limit > 0 and c.counts[i] == c.limit:
                                c.remaining -= 1
                if c.limit > 0 and c.remaining == 0:
                    return 1
        else:
            c.on[w] = 1
            c.path[depth + 1] = w
            if _pat_extend(c, w, depth + 1, hits):
                c.on[w] = 0
                return 1
            c.on[w] = 0
    return 0


def cycle_pattern_search(i64[::1] indptr, i64[::1] indices, i64[::1] ecol, i64 n, i64 length, targets, i64 limit):
    cdef cnp.ndarray[i64, ndim=1] tg = np.ascontiguousarray(targets, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] counts = np.zeros(len(tg), dtype=np.int64)
    cdef PatCtx c
    cdef i64 s, j
    hits = []
    if n == 0 or indices.shape[0] == 0 or len(tg) == 0:
        return hits, counts
    c.ip = &indptr[0]
    c.ix = &indices[0]
    c.ec = &ecol[0]
    c.targets = &tg[0]
    c.ntargets = len(tg)
    c.counts = &counts[0]
    c.limit = limit
    c.remaining = len(tg)
    c.last = length - 1
    c.length = length
    c.on = <unsigned char*>calloc(n, 1)
    c.to_s = <i64*>malloc(n * sizeof(i64))
    c.path = <i64*>calloc(length, sizeof(i64))
    c.cols = <i64*>calloc(length, sizeof(i64))
    c.seq = <i64*>calloc(length, sizeof(i64))
    c.firsts = <i64*>calloc(length, sizeof(i64))
    try:
        for s in range(n):
            c.to_s[s] = -1
        for s in range(n):
            for j in range(c.ip[s], c.ip[s + 1]):
                c.to_s[c.ix[j]] = c.ec[j]
            c.s = s
            c.path[0] = s
            c.on[s] = 1
            stop = _pat_extend(&c, s, 0, hits)
            c.on[s] = 0
            for j in range(c.ip[s], c.ip[s + 1]):
                c.to_s[c.ix[j]] = -1
            if stop:
                break
    finally:
        free(c.on)
        free(c.to_s)
        free(c.path)
        free(c.cols)
        free(c.seq)
        free(c.firsts)
    return hits, counts


cdef struct FindCtx:
    const i64* ip
    const i64* ix
    unsigned char* on
    unsigned char* adj_s
    i64* path
    i64 last
    i64 s
    i64 states
    i64 cap


cdef int _find_extend(FindCtx* c, i64 v, i64 depth) nogil:
    cdef i64 j, w
    cdef int r
    for j in range(c.ip[v], c.ip[v + 1]):
        w = c.ix[j]
        if w <= c.s or c.on[w]:
            continue
        c.states += 1
        if c.states > c.cap:
            return -1
        if depth + 1 == c.last:
            if c.adj_s[w]:
                c.path[c.last] = w
                return 1
        else:
            c.on[w] = 1
            c.path[depth + 1] = w
            r = _find_extend(c, w, depth + 1)
            c.on[w] = 0
            if r:
                return r
    return 0


def find_cycle(i64[::1] indptr, i64[::1] indices, i64 n, i64 length, i64 state_cap):
    cdef FindCtx c
    cdef i64 s, j
    cdef int r = 0
    if n == 0 or indices.shape[0] == 0:
        return None, 0, True
    c.ip = &indptr[0]
    c.ix = &indices[0]
    c.on = <unsigned char*>calloc(n, 1)
    c.adj_s = <unsigned char*>calloc(n, 1)
    c.path = <i64*>calloc(length, sizeof(i64))
    c.last = length - 1
    c.states = 0
    c.cap = state_cap
    try:
        with nogil:
            for s in range(n):
                for j in range(c.ip[s], c.ip[s + 1]):
                    c.adj_s[c.ix[j]] = 1
                c.s = s
                c.path[0] = s
                c.on[s] = 1
                r = _find_extend(&c, s, 0)
                c.on[s] = 0
                for j in range(c.ip[s], c.ip[s + 1]):
                    c.adj_s[c.ix[j]] = 0
                if r != 0:
                    break
        if r == 1:
            return tuple([c.path[j] for j in range(length)]), c.states, True
        if r == -1:
            return None, c.states, False
        return None, c.states, True
    finally:
        free(c.on)
        free(c.adj_s)
        free(c.path)


cdef struct OrientCtx:
    const i64* op
    const i64* oi
    const i64* jp
    const i64* ji
    const unsigned char* bits
    unsigned char* on
    unsigned char* out_s
    unsigned char* in_s
    i64 last
    i64 total


cdef void _orient_extend(OrientCtx* c, i64 v, i64 depth) nogil:
    cdef i64 j, w, lo, hi
    cdef const i64* arr
    if c.bits[depth]:
        lo = c.op[v]
        hi = c.op[v + 1]
        arr = c.oi
    else:
        lo = c.jp[v]
        hi = c.jp[v + 1]
        arr = c.ji
    for j in range(lo, hi):
        w = arr[j]
        if c.on[w]:
            continue
        if depth + 1 == c.last:
            # closing arc w -> s when bits[last] else s -> w
            if (c.bits[c.last] and c.in_s[w]) or (not c.bits[c.last] and c.out_s[w]):
                c.total += 1
        else:
            c.on[w] = 1
            _orient_extend(c, w, depth + 1)
            c.on[w] = 0


def orientation_count(i64[::1] out_ptr, i64[::1] out_idx, i64[::1] in_ptr, i64[::1] in_idx, i64 n, bits):
    cdef cnp.ndarray[unsigned char, ndim=1] bb = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef OrientCtx c
    cdef i64 s, j
    if n == 0 or out_idx.shape[0] == 0:
        return 0
    c.op = &out_ptr[0]
    c.oi = &out_idx[0]
    c.jp = &in_ptr[0]
    c.ji = &in_idx[0]
    c.bits = &bb[0]
    c.last = len(bb) - 1
    c.total = 0
    c.on = <unsigned char*>calloc(n, 1)
    c.out_s = <unsigned char*>calloc(n, 1)
    c.in_s = <unsigned char*>calloc(n, 1)
    try:
        with nogil:
            for s in range(n):
                # in_s[w]: arc w -> s exists; out_s[w]: arc s -> w exists
                for j in range(c.jp[s], c.jp[s + 1]):
                    c.in_s[c.ji[j]] = 1
                for j in range(c.op[s], c.op[s + 1]):
                    c.out_s[c.oi[j]] = 1
                c.on[s] = 1
                _orient_extend(&c, s, 0)
                c.on[s] = 0
                for j in range(c.jp[s], c.jp[s + 1]):
                    c.in_s[c.ji[j]] = 0
                for j in range(c.op[s], c.op[s + 1]):
                    c.out_s[c.oi[j]] = 0
    finally:
        free(c.on)
        free(c.out_s)
        free(c.in_s)
    return c.total
