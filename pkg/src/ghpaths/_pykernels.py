"""Pure-Python search kernels.

Reference implementation of the hot loops; ``_kernels.pyx`` mirrors it line
for line. Inputs are square integer tables (distances already scaled to a
common denominator), so every comparison is exact.

Correspondences are handled as tuples of row masks: ``rows[i]`` is the bit
set of columns related to row ``i``. The row-major bit encoding of a
correspondence is ``sum(rows[i] << (i * n))``, so visiting row ``m - 1``
first and each row's masks in increasing order walks the encodings in
increasing order.
"""

EXHAUSTIVE = 0
BNB = 1
BELOW = 2


class _Stop(Exception):
    pass


def correspondence_search(dx, dy, mode, want_all=False, bound=0,
                          lower_bound=0, seed=0):
    """Depth-first walk over all correspondences between two tables.

    ``mode`` selects the walk:

    * ``EXHAUSTIVE`` visits every correspondence and keeps the minimum.
    * ``BNB`` starts from the incumbent value ``seed`` (a distortion known
      to be attained) and prunes partial assignments that can no longer
      improve on it, stopping once ``lower_bound`` is reached.
    * ``BELOW`` collects every correspondence of distortion ``< bound``.

    Returns ``(best, [rows, ...])`` for the minimising modes and
    ``(None, [(value, rows), ...])`` for ``BELOW``.
    """
    m, n = len(dx), len(dy)
    full = (1 << n) - 1
    rows = [0] * m
    st = {"best": seed if mode == BNB else None, "found": False,
          "results": []}

    def pruned(v):
        if mode == BNB:
            best = st["best"]
            return v > best or (v == best and st["found"] and not want_all)
        if mode == BELOW:
            return v >= bound
        return False

    def leaf(v):
        if mode == BELOW:
            st["results"].append((v, tuple(rows)))
            return
        best = st["best"]
        if not st["found"] or v < best:
            st["best"] = v
            st["found"] = True
            st["results"] = [tuple(rows)]
        elif v == best and want_all:
            st["results"].append(tuple(rows))
        if mode == BNB and not want_all and st["best"] <= lower_bound:
            raise _Stop

    def try_row(k, s, covered, partial, inc):
        v = partial
        dyk = dy
        t = s
        while t:
            y = (t & -t).bit_length() - 1
            t &= t - 1
            if inc[y] > v:
                v = inc[y]
            t2 = t
            row_y = dyk[y]
            while t2:
                y2 = (t2 & -t2).bit_length() - 1
                t2 &= t2 - 1
                if row_y[y2] > v:
                    v = row_y[y2]
            if pruned(v):
                return
        rows[k] = s
        if k == 0:
            leaf(v)
        else:
            rec(k - 1, covered | s, v)

    def rec(k, covered, partial):
        inc = [0] * n
        dxk = dx[k]
        for y in range(n):
            dyy = dy[y]
            v = 0
            for kp in range(k + 1, m):
                a = dxk[kp]
                t = rows[kp]
                while t:
                    y2 = (t & -t).bit_length() - 1
                    t &= t - 1
                    w = a - dyy[y2]
                    if w < 0:
                        w = -w
                    if w > v:
                        v = w
            inc[y] = v
        if k == 0:
            need = full & ~covered
            free = covered & full
            sub = 0
            while True:
                if need | sub:
                    try_row(k, need | sub, covered, partial, inc)
                sub = ((sub | ~free) + 1) & free
                if sub == 0:
                    break
        else:
            for s in range(1, full + 1):
                try_row(k, s, covered, partial, inc)
        rows[k] = 0

    try:
        rec(m - 1, 0, 0)
    except _Stop:
        pass
    if mode == BELOW:
        return None, st["results"]
    return st["best"], st["results"]


def bijection_search(dx, dy, exclude_identity=False):
    """Least distortion of a bijection between two equal-size tables.

    Permutations are enumerated in lexicographic order with early exit once
    the running maximum reaches the current best. Returns ``None`` when no
    admissible bijection exists (a single point with the identity excluded).
    """
    n = len(dx)
    perm = [0] * n
    st = {"best": None}

    def rec(i, used, partial, identity):
        if i == n:
            if exclude_identity and identity:
                return
            st["best"] = partial
            if partial == 0:
                raise _Stop
            return
        dxi = dx[i]
        for j in range(n):
            if used >> j & 1:
                continue
            dyj = dy[j]
            v = partial
            best = st["best"]
            for ip in range(i):
                w = dxi[ip] - dyj[perm[ip]]
                if w < 0:
                    w = -w
                if w > v:
                    v = w
                    if best is not None and v >= best:
                        break
            if best is not None and v >= best:
                continue
            perm[i] = j
            rec(i + 1, used | (1 << j), v, identity and j == i)

    try:
        rec(0, 0, 0, True)
    except _Stop:
        pass
    return st["best"]
