"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

Conventions shared by every kernel:

* Representations are int64 bitmasks, bit ``i - 1`` holding coordinate ``a_i``.
  Callers fall back to Python ints when a mask would need more than 62 bits.
* Poset vertices are indexed in canonical order (descending mask), so every
  cover edge ``x -> y`` (x above y) has ``x < y``.
* ``R[x, y]`` is True iff ``y <= x``.

The module-level names without prefix are bound to the backend chosen in
``_jit``; the ``nb_`` / ``np_`` variants are always importable for testing
and benchmarking.
"""
import numpy as np

from ._jit import BACKEND, USE_NUMBA, njit

MAX_MASK_BITS = 62
# every coefficient of a product of K factors (1 +- x^e) is bounded by 2**K
MAX_INT64_FACTORS = 62


# ---------------------------------------------------------------------------
# subset enumeration: include/exclude descent pruned by prefix sums


@njit
def nb_enumerate_masks(terms, prefix, n):
    K = terms.shape[0]
    out = np.empty(16, np.int64)
    cnt = 0
    size = 2 * K + 2
    sj = np.empty(size, np.int64)
    sr = np.empty(size, np.int64)
    sm = np.empty(size, np.int64)
    sj[0] = K
    sr[0] = n
    sm[0] = 0
    top = 1
    while top > 0:
        top -= 1
        j = sj[top]
        r = sr[top]
        m = sm[top]
        if r == 0:
            if cnt == out.shape[0]:
                grown = np.empty(2 * cnt, np.int64)
                grown[:cnt] = out
                out = grown
            out[cnt] = m
            cnt += 1
            continue
        if j == 0 or r > prefix[j]:
            continue
        # exclude pushed first so the include branch is explored first
        sj[top] = j - 1
        sr[top] = r
        sm[top] = m
        top += 1
        a = terms[j - 1]
        if a <= r:
            sj[top] = j - 1
            sr[top] = r - a
            sm[top] = m | (np.int64(1) << (j - 1))
            top += 1
    return out[:cnt].copy()


def np_enumerate_masks(terms, prefix, n):
    rem = np.array([n], dtype=np.int64)
    mask = np.zeros(1, dtype=np.int64)
    for j in range(terms.shape[0], 0, -1):
        a = terms[j - 1]
        inc = rem >= a
        rem = np.concatenate((rem[inc] - a, rem))
        mask = np.concatenate((mask[inc] | np.int64(1 << (j - 1)), mask))
        keep = rem <= prefix[j - 1]
        rem, mask = rem[keep], mask[keep]
        if rem.size == 0:
            break
    hits = mask[rem == 0] if rem.size else mask[:0]
    return np.sort(hits)[::-1].copy()


# ---------------------------------------------------------------------------
# truncated product of (1 + sign * x^e)


@njit
def nb_series_product(exponents, degree, sign):
    c = np.zeros(degree + 1, np.int64)
    c[0] = 1
    for e in exponents:
        if e > degree:
            continue
        for d in range(degree, e - 1, -1):
            c[d] += sign * c[d - e]
    return c


def np_series_product(exponents, degree, sign):
    dtype = np.int64 if len(exponents) <= MAX_INT64_FACTORS else object
    c = np.zeros(degree + 1, dtype=dtype)
    c[0] = 1
    for e in exponents:
        e = int(e)
        if e > degree:
            continue
        c[e:] = c[e:] + sign * c[: degree + 1 - e]
    return c


# ---------------------------------------------------------------------------
# local-move edges


@njit
def nb_local_move_edges(masks, level, width):
    V = masks.shape[0]
    src = np.empty(V * width + 1, np.int64)
    dst = np.empty(V * width + 1, np.int64)
    cnt = 0
    block = (np.int64(1) << (level + 1)) - 1
    top = np.int64(1) << level
    for x in range(V):
        m = masks[x]
        for j in range(width):
            if ((m >> j) & block) == top:
                target = m ^ (block << j)
                # masks sorted descending: binary search on the negated order
                lo = x + 1
                hi = V
                while lo < hi:
                    mid = (lo + hi) // 2
                    if masks[mid] > target:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < V and masks[lo] == target:
                    src[cnt] = x
                    dst[cnt] = lo
                    cnt += 1
    return src[:cnt].copy(), dst[:cnt].copy()


def np_local_move_edges(masks, level, width):
    V = masks.shape[0]
    if V == 0:
        empty = np.zeros(0, np.int64)
        return empty, empty.copy()
    block = np.int64((1 << (level + 1)) - 1)
    top = np.int64(1 << level)
    asc = masks[::-1]
    srcs, dsts = [], []
    for j in range(width):
        hit = np.nonzero(((masks >> j) & block) == top)[0]
        if hit.size == 0:
            continue
        target = masks[hit] ^ (block << j)
        pos = np.searchsorted(asc, target)
        pos = np.minimum(pos, V - 1)
        found = asc[pos] == target
        srcs.append(hit[found])
        dsts.append(V - 1 - pos[found])
    if not srcs:
        empty = np.zeros(0, np.int64)
        return empty, empty.copy()
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    order = np.lexsort((dst, src))
    return src[order].astype(np.int64), dst[order].astype(np.int64)


# ---------------------------------------------------------------------------
# order relation from forward edges


@njit
def nb_reachability(V, src, dst):
    R = np.zeros((V, V), np.bool_)
    start = np.zeros(V + 1, np.int64)
    for e in range(src.shape[0]):
        start[src[e] + 1] += 1
    for x in range(V):
        start[x + 1] += start[x]
    order = np.empty(src.shape[0], np.int64)
    fill = start[:V].copy()
    for e in range(src.shape[0]):
        order[fill[src[e]]] = dst[e]
        fill[src[e]] += 1
    for x in range(V - 1, -1, -1):
        R[x, x] = True
        for p in range(start[x], start[x + 1]):
            y = order[p]
            for z in range(y, V):
                if R[y, z]:
                    R[x, z] = True
    return R


def np_reachability(V, src, dst):
    R = np.eye(V, dtype=bool)
    adj = np.zeros((V, V), dtype=bool)
    adj[src, dst] = True
    for x in range(V - 1, -1, -1):
        kids = np.nonzero(adj[x])[0]
        if kids.size:
            R[x] |= R[kids].any(axis=0)
    return R


@njit
def nb_transitive_reduction(R):
    V = R.shape[0]
    C = np.zeros((V, V), np.bool_)
    for x in range(V):
        for y in range(x + 1, V):
            if not R[x, y]:
                continue
            between = False
            for z in range(x + 1, y):
                if R[x, z] and R[z, y]:
                    between = True
                    break
            C[x, y] = not between
    return C


def np_transitive_reduction(R):
    strict = R & ~np.eye(R.shape[0], dtype=bool)
    two_step = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
    return strict & ~two_step


# ---------------------------------------------------------------------------
# lattice tables; -1 marks a missing bound


@njit
def nb_meet_join(R):
    V = R.shape[0]
    meet = np.full((V, V), -1, np.int64)
    join = np.full((V, V), -1, np.int64)
    for a in range(V):
        for b in range(a, V):
            m = -1
            for y in range(V):
                if R[a, y] and R[b, y]:
                    m = y
                    break
            if m >= 0:
                for y in range(m, V):
                    if R[a, y] and R[b, y] and not R[m, y]:
                        m = -1
                        break
            meet[a, b] = m
            meet[b, a] = m
            j = -1
            for y in range(V - 1, -1, -1):
                if R[y, a] and R[y, b]:
                    j = y
                    break
            if j >= 0:
                for y in range(0, j + 1):
                    if R[y, a] and R[y, b] and not R[y, j]:
                        j = -1
                        break
            join[a, b] = j
            join[b, a] = j
    return meet, join


def np_meet_join(R):
    V = R.shape[0]
    if V == 0:
        e = np.zeros((0, 0), np.int64)
        return e, e.copy()
    lower = R[:, None, :] & R[None, :, :]
    cand = lower.argmax(axis=-1)
    ok = lower.any(axis=-1) & ~(lower & ~R[cand]).any(axis=-1)
    meet = np.where(ok, cand, -1).astype(np.int64)
    RT = R.T
    upper = RT[:, None, :] & RT[None, :, :]
    cand = V - 1 - upper[..., ::-1].argmax(axis=-1)
    ok = upper.any(axis=-1) & ~(upper & ~RT[cand]).any(axis=-1)
    join = np.where(ok, cand, -1).astype(np.int64)
    return meet, join


@njit
def nb_modular_violation(R, meet, join):
    V = R.shape[0]
    for x in range(V):
        for z in range(x + 1):
            if not R[z, x]:
                continue
            for y in range(V):
                if join[x, meet[y, z]] != meet[join[x, y], z]:
                    return np.array([x, y, z], np.int64)
    return np.full(3, -1, np.int64)


def np_modular_violation(R, meet, join):
    V = R.shape[0]
    if V == 0:
        return np.full(3, -1, np.int64)
    ar = np.arange(V)
    lhs = join[ar[:, None, None], meet[None, :, :]]
    rhs = meet[join[:, :, None], ar[None, None, :]]
    bad = (lhs != rhs) & R.T[:, None, :]
    hits = np.argwhere(bad)
    if hits.size == 0:
        return np.full(3, -1, np.int64)
    return hits[0].astype(np.int64)


@njit
def nb_cover_symmetry_violation(C, meet, join):
    V = C.shape[0]
    for x in range(V):
        for y in range(x + 1, V):
            m = meet[x, y]
            j = join[x, y]
            down = C[x, m] and C[y, m]
            up = C[j, x] and C[j, y]
            if down != up:
                return np.array([x, y], np.int64)
    return np.full(2, -1, np.int64)


def np_cover_symmetry_violation(C, meet, join):
    V = C.shape[0]
    if V < 2:
        return np.full(2, -1, np.int64)
    x, y = np.triu_indices(V, 1)
    m = meet[x, y]
    j = join[x, y]
    down = C[x, m] & C[y, m]
    up = C[j, x] & C[j, y]
    bad = np.nonzero(down != up)[0]
    if bad.size == 0:
        return np.full(2, -1, np.int64)
    return np.array([x[bad[0]], y[bad[0]]], np.int64)


if USE_NUMBA:
    enumerate_masks = nb_enumerate_masks
    local_move_edges = nb_local_move_edges
    reachability = nb_reachability
    transitive_reduction = nb_transitive_reduction
    meet_join = nb_meet_join
    modular_violation = nb_modular_violation
    cover_symmetry_violation = nb_cover_symmetry_violation
else:
    enumerate_masks = np_enumerate_masks
    local_move_edges = np_local_move_edges
    reachability = np_reachability
    transitive_reduction = np_transitive_reduction
    meet_join = np_meet_join
    modular_violation = np_modular_violation
    cover_symmetry_violation = np_cover_symmetry_violation


def series_product(exponents, degree, sign):
    """Coefficients 0..degree of prod (1 + sign * x^e).

    Exact: the int64 path is taken only when 2**len(exponents) fits, which
    bounds every coefficient; otherwise Python integers are used.
    """
    exps = [int(e) for e in exponents if e <= degree]
    if USE_NUMBA and len(exps) <= MAX_INT64_FACTORS:
        return nb_series_product(np.asarray(exps, dtype=np.int64), degree, sign)
    return np_series_product(exps, degree, sign)
