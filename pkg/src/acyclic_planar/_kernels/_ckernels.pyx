# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the functions in ``_pure``; same contracts."""

from libc.stdlib cimport malloc, calloc, free


def first_bicolored_cycle(int n, eu, ev, ec, int k):
    cdef int m = len(eu)
    cdef int K = k + 1
    cdef int *nbr = <int *> malloc(n * K * sizeof(int))
    cdef int *eid = <int *> malloc(n * K * sizeof(int))
    cdef char *done = <char *> calloc(m * K, sizeof(char))
    cdef int *U = <int *> malloc(m * sizeof(int))
    cdef int *V = <int *> malloc(m * sizeof(int))
    cdef int *C = <int *> malloc(m * sizeof(int))
    cdef int i, j, a, b, u, w, cur, col, nxt, side, steps
    cdef bint closed
    result = None
    try:
        for j in range(n * K):
            nbr[j] = -1
            eid[j] = -1
        for i in range(m):
            U[i] = eu[i]
            V[i] = ev[i]
            C[i] = ec[i]
            if C[i]:
                nbr[U[i] * K + C[i]] = V[i]
                nbr[V[i] * K + C[i]] = U[i]
                eid[U[i] * K + C[i]] = i
                eid[V[i] * K + C[i]] = i
        for i in range(m):
            a = C[i]
            if a == 0:
                continue
            for side in range(2):
                if side == 0:
                    u = U[i]; w = V[i]
                else:
                    u = V[i]; w = U[i]
                for b in range(a + 1, K):
                    if nbr[w * K + b] < 0 or nbr[u * K + b] < 0 or done[i * K + b]:
                        continue
                    cur = w
                    col = b
                    closed = False
                    steps = 0
                    while True:
                        nxt = nbr[cur * K + col]
                        if nxt < 0:
                            break
                        if col == a:
                            done[eid[cur * K + col] * K + b] = 1
                        if nxt == u:
                            closed = col == b
                            break
                        cur = nxt
                        col = a if col == b else b
                        steps += 1
                        if steps > n:
                            break
                    done[i * K + b] = 1
                    if closed:
                        path = [u, w]
                        cur = w
                        col = b
                        while True:
                            nxt = nbr[cur * K + col]
                            if nxt == u:
                                break
                            path.append(nxt)
                            cur = nxt
                            col = a if col == b else b
                        result = (a, b, path)
                        return result
        return None
    finally:
        free(nbr); free(eid); free(done); free(U); free(V); free(C)


cdef bint _closes(int *seen, int K, int n, int u, int w, int a):
    cdef int b, cur, col, nxt, steps
    for b in range(1, K):
        if seen[w * K + b] < 0 or seen[u * K + b] < 0:
            continue
        cur = w
        col = b
        steps = 0
        while True:
            nxt = seen[cur * K + col]
            if nxt < 0:
                break
            if nxt == u:
                if col == b:
                    return True
                break
            cur = nxt
            col = a if col == b else b
            steps += 1
            if steps > n:
                break
    return False


def search_acyclic(int n, eu, ev, int k, long node_limit=0):
    cdef int m = len(eu)
    cdef int K = k + 1
    cdef int *seen = <int *> malloc(n * K * sizeof(int))
    cdef int *U = <int *> malloc((m + 1) * sizeof(int))
    cdef int *V = <int *> malloc((m + 1) * sizeof(int))
    cdef int *col = <int *> calloc(m + 1, sizeof(int))
    cdef int *used = <int *> calloc(m + 2, sizeof(int))
    cdef int i, c, top, u, w
    cdef long nodes = 0
    cdef bint placed
    try:
        for i in range(n * K):
            seen[i] = -1
        for i in range(m):
            U[i] = eu[i]
            V[i] = ev[i]
        # iterative depth-first search; col[i] is the color tried at depth i
        i = 0
        used[0] = 0
        while True:
            if i == m:
                return [col[j] for j in range(m)]
            if i < 0:
                return None
            u = U[i]
            w = V[i]
            c = col[i]
            if c:
                seen[u * K + c] = -1
                seen[w * K + c] = -1
            else:
                nodes += 1
                if node_limit and nodes > node_limit:
                    return None
            placed = False
            top = used[i] + 1
            if top > k:
                top = k
            c += 1
            while c <= top:
                if seen[u * K + c] < 0 and seen[w * K + c] < 0 and not _closes(seen, K, n, u, w, c):
                    placed = True
                    break
                c += 1
            if placed:
                col[i] = c
                seen[u * K + c] = w
                seen[w * K + c] = u
                used[i + 1] = used[i] if used[i] > c else c
                i += 1
                col[i] = 0 if i < m else col[i]
            else:
                col[i] = 0
                i -= 1
    finally:
        free(seen); free(U); free(V); free(col); free(used)
