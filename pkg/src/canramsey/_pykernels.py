"""Pure-Python reference implementations of the search kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Graphs arrive as CSR arrays (``indptr``, ``indices``, both int64); edge
colours, when needed, arrive as ``ecol`` aligned with ``indices``.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def path_pair_counts(indptr, indices, n: int, length: int) -> np.ndarray:
    """Symmetric n x n matrix of simple-path counts with ``length`` vertices.

    Each path is counted once per unordered endpoint pair (enumerated from
    its smaller endpoint only).
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    out = np.zeros((n, n), dtype=np.int64)
    on = [False] * n
    last = length - 1

    def extend(v: int, depth: int, s: int, row: np.ndarray) -> None:
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if on[w]:
                continue
            if depth + 1 == last:
                if w > s:
                    row[w] += 1
            else:
                on[w] = True
                extend(w, depth + 1, s, row)
                on[w] = False

    for s in range(n):
        row = np.zeros(n, dtype=np.int64)
        on[s] = True
        extend(s, 0, s, row)
        on[s] = False
        out[s] += row
    return out + out.T


def rainbow_pairs(indptr, indices, ecol, ncolours: int, n: int, length: int) -> list[tuple[int, ...]]:
    """First rainbow path (DFS order) from u to each v > u.

    Returns one vertex tuple ``(u, ..., v)`` per connected pair, sorted by
    ``(u, v)``.
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    ec = ecol.tolist()
    used = [0] * max(ncolours, 1)
    on = [False] * n
    path = [0] * length
    last = length - 1
    out: list[tuple[int, ...]] = []

    for s in range(n):
        found: dict[int, tuple[int, ...]] = {}
        path[0] = s
        on[s] = True

        def extend(v: int, depth: int) -> None:
            for j in range(ip[v], ip[v + 1]):
                w = ix[j]
                c = ec[j]
                if on[w] or used[c]:
                    continue
                if depth + 1 == last:
                    if w > s and w not in found:
                        path[last] = w
                        found[w] = tuple(path)
                else:
                    on[w] = True
                    used[c] = 1
                    path[depth + 1] = w
                    extend(w, depth + 1)
                    on[w] = False
                    used[c] = 0

        extend(s, 0)
        on[s] = False
        out.extend(found[w] for w in sorted(found))
    return out


def cycle_census(indptr, indices, n: int, length: int, mask) -> tuple[int, int, np.ndarray]:
    """Labelled and unlabelled C_length counts plus the labelled histogram of
    intersection sizes with the vertex set given by the 0/1 ``mask``.

    Labelled copies are enumerated directly (every start vertex, both
    directions); unlabelled copies are those whose sequence starts at its
    minimum vertex with second vertex below the last.
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    mk = [int(x) for x in mask]
    hist = np.zeros(length + 1, dtype=np.int64)
    on = [False] * n
    path = [0] * length
    counts = [0, 0]
    last = length - 1

    def extend(v: int, depth: int, s: int, inter: int) -> None:
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if on[w]:
                continue
            if depth + 1 == last:
                # w must close back to s
                if s in adjset[w]:
                    counts[0] += 1
                    hist[inter + mk[w]] += 1
                    if w > path[1] and min(path[1:last]) > s and w > s:
                        counts[1] += 1
            else:
                on[w] = True
                path[depth + 1] = w
                extend(w, depth + 1, s, inter + mk[w])
                on[w] = False

    adjset = [set(ix[ip[v]:ip[v + 1]]) for v in range(n)]
    for s in range(n):
        on[s] = True
        path[0] = s
        extend(s, 0, s, mk[s])
        on[s] = False
    return counts[0], counts[1], hist


def _canonical_code(cols: list[int], length: int) -> int:
    best = -1
    seqs = []
    for r in range(length):
        seqs.append(cols[r:] + cols[:r])
    rev = cols[::-1]
    for r in range(length):
        seqs.append(rev[r:] + rev[:r])
    for seq in seqs:
        seen: dict[int, int] = {}
        code = 0
        for c in seq:
            b = seen.setdefault(c, len(seen))
            code = code * length + b
        if best < 0 or code < best:
            best = code
    return best


def cycle_pattern_search(indptr, indices, ecol, n: int, length: int, targets, limit: int):
    """Scan unlabelled C_length copies in lexicographic order of their
    canonical vertex sequence and match their colour pattern, up to
    dihedral symmetry, against ``targets`` (canonical restricted-growth codes).

    Returns ``(hits, counts)``: ``hits`` lists ``(target_index, cycle)`` for
    the first ``limit`` copies per target (``limit <= 0``: no cap, and the
    scan never stops early); ``counts`` holds the number of matching copies
    per target seen before the scan stopped.
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    ec = ecol.tolist()
    tlist = [int(t) for t in targets]
    where: dict[int, list[int]] = {}
    for i, t in enumerate(tlist):
        where.setdefault(t, []).append(i)
    counts = np.zeros(len(tlist), dtype=np.int64)
    hits: list[tuple[int, tuple[int, ...]]] = []
    remaining = [len(tlist)]
    on = [False] * n
    path = [0] * length
    cols = [0] * length
    last = length - 1
    to_s: dict[int, int] = {}

    def record(code: int) -> bool:
        for i in where.get(code, ()):
            counts[i] += 1
            if limit <= 0 or counts[i] <= limit:
                hits.append((i, tuple(path)))
                if limit > 0 and counts[i] == limit:
                    remaining[0] -= 1
        return limit > 0 and remaining[0] == 0

    def extend(v: int, depth: int, s: int) -> bool:
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if w <= s or on[w]:
                continue
            cols[depth] = ec[j]
            if depth + 1 == last:
                if w in to_s and w > path[1]:
                    path[last] = w
                    cols[last] = to_s[w]
                    if record(_canonical_code(cols, length)):
                        return True
            else:
                on[w] = True
                path[depth + 1] = w
                stop = extend(w, depth + 1, s)
                on[w] = False
                if stop:
                    return True
        return False

    if not tlist:
        return hits, counts
    for s in range(n):
        to_s = {ix[j]: ec[j] for j in range(ip[s], ip[s + 1])}
        on[s] = True
        path[0] = s
        stop = extend(s, 0, s)
        on[s] = False
        if stop:
            break
    return hits, counts


def find_cycle(indptr, indices, n: int, length: int, state_cap: int):
    """Exact DFS for one C_length; the cycle starts at its minimum vertex.

    Returns ``(cycle or None, states_visited, completed)``; ``completed`` is
    False when the state cap stopped the search before it was exhaustive.
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    on = [False] * n
    path = [0] * length
    states = [0]
    last = length - 1
    to_s: set[int] = set()

    def extend(v: int, depth: int, s: int) -> int:
        # 1 = found, -1 = cap hit, 0 = exhausted
        for j in range(ip[v], ip[v + 1]):
            w = ix[j]
            if w <= s or on[w]:
                continue
            states[0] += 1
            if states[0] > state_cap:
                return -1
            if depth + 1 == last:
                if w in to_s:
                    path[last] = w
                    return 1
            else:
                on[w] = True
                path[depth + 1] = w
                r = extend(w, depth + 1, s)
                on[w] = False
                if r:
                    return r
        return 0

    for s in range(n):
        to_s = set(ix[ip[s]:ip[s + 1]])
        on[s] = True
        path[0] = s
        r = extend(s, 0, s)
        on[s] = False
        if r == 1:
            return tuple(path), states[0], True
        if r == -1:
            return None, states[0], False
    return None, states[0], True


def orientation_count(out_ptr, out_idx, in_ptr, in_idx, n: int, bits) -> int:
    """Labelled copies (injective homomorphisms) of an oriented cycle.

    Pattern vertex i is joined to i+1 (mod length); ``bits[i] == 1`` means
    the arc points i -> i+1, otherwise i+1 -> i.
    """
    op, oi = out_ptr.tolist(), out_idx.tolist()
    jp, ji = in_ptr.tolist(), in_idx.tolist()
    b = [int(x) for x in bits]
    length = len(b)
    last = length - 1
    outset = [set(oi[op[v]:op[v + 1]]) for v in range(n)]
    on = [False] * n
    total = [0]

    def extend(v: int, depth: int, s: int) -> None:
        if b[depth]:
            nbrs = oi[op[v]:op[v + 1]]
        else:
            nbrs = ji[jp[v]:jp[v + 1]]
        for w in nbrs:
            if on[w]:
                continue
            if depth + 1 == last:
                closing = (s in outset[w]) if b[last] else (w in outset[s])
                if closing:
                    total[0] += 1
            else:
                on[w] = True
                extend(w, depth + 1, s)
                on[w] = False

    for s in range(n):
        on[s] = True
        extend(s, 0, s)
        on[s] = False
    return total[0]
