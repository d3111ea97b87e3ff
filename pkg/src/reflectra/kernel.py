"""Compiled inner loops for bulk classification.

Everything here works on plain int64 scalars and numpy buffers so numba can
compile it in nopython mode and release the GIL. The pure-Python modules
(:mod:`reflectra.digits`, :mod:`reflectra.trajectory`) remain the readable
definition; the scanner uses these kernels and the test suite checks that the
two agree.

Status codes returned by the block classifiers: ``-1`` means every input in
the block finished, any other value is the offset of the first input that ran
out of step budget.
"""
import numpy as np
from numba import njit

# ``canon`` outputs are signed: ``+c`` for the cycle through ``c`` and ``-c``
# for its mirror image. 0 stands for the zero limit.
ZERO_CLASS = 0

# Open-addressing table of known cycle members (memo mode only).
CYCLE_TABLE_BITS = 12
# Registry capacity for distinct cycles seen by one worker.
MAX_CYCLES = 512
# Longest cycle the registry accepts; longer cycles fall back to the plain path.
MAX_PERIOD = 256


@njit(nogil=True, cache=True)
def reverse_digits(n):
    r = 0
    while n > 0:
        r = r * 10 + n % 10
        n //= 10
    return r


@njit(nogil=True, cache=True)
def step(x):
    if x > 0:
        return x - reverse_digits(x)
    if x < 0:
        return x + reverse_digits(-x)
    return 0


@njit(nogil=True, cache=True)
def step_array(values, out):
    for i in range(values.shape[0]):
        out[i] = step(values[i])


@njit(nogil=True, cache=True)
def _canonical(buf, start, stop):
    # member of smallest magnitude, positive on a tie; the sign tells whether
    # the cycle is the one through +|canonical| or its mirror image
    best = buf[start]
    for i in range(start, stop):
        v = buf[i]
        a = v if v > 0 else -v
        b = best if best > 0 else -best
        if a < b or (a == b and v > best):
            best = v
    return best


@njit(nogil=True, cache=True)
def classify_one(x, max_steps, buf):
    """Rho walk with a linear seen-scan over ``buf``.

    Returns ``(canonical, iterations, period)``; ``period`` is 0 for the zero
    limit and -1 when the budget ran out.
    """
    if x == 0:
        return ZERO_CLASS, 0, 0
    buf[0] = x
    k = 0
    while k < max_steps:
        u = step(buf[k])
        k += 1
        if u == 0:
            return ZERO_CLASS, k, 0
        for j in range(k):
            if buf[j] == u:
                canon = _canonical(buf, j, k)
                return canon, max(j, 1), k - j
        buf[k] = u
    return ZERO_CLASS, 0, -1


@njit(nogil=True, cache=True)
def classify_block_plain(lo, count, max_steps, buf, out_canon, out_iters):
    for i in range(count):
        canon, iters, period = classify_one(lo + i, max_steps, buf)
        if period < 0:
            return i
        out_canon[i] = canon
        out_iters[i] = iters
    return -1


@njit(nogil=True, cache=True)
def _hash(v, mask):
    h = np.uint64(v) * np.uint64(0x9E3779B97F4A7C15)
    return np.int64(h >> np.uint64(40)) & mask


@njit(nogil=True, cache=True)
def _cycle_lookup(table_keys, table_ids, u):
    mask = table_keys.shape[0] - 1
    s = _hash(u, mask)
    while table_keys[s] != 0:
        if table_keys[s] == u:
            return table_ids[s]
        s = (s + 1) & mask
    return -1


@njit(nogil=True, cache=True)
def _cycle_insert(table_keys, table_ids, u, cid):
    mask = table_keys.shape[0] - 1
    s = _hash(u, mask)
    while table_keys[s] != 0:
        if table_keys[s] == u:
            return
        s = (s + 1) & mask
    table_keys[s] = u
    table_ids[s] = cid


@njit(nogil=True, cache=True)
def _register_cycle(state, table_keys, table_ids, cyc_canon, cyc_neg, members, start, stop):
    """Record the cycle ``members[start:stop]`` and its negation.

    ``state[0]`` is the number of registered cycles. Returns the id of the
    cycle, or -1 when the registry is full.
    """
    n = state[0]
    period = stop - start
    if n + 2 > cyc_canon.shape[0] or period > MAX_PERIOD:
        return -1
    # table occupancy stays below one half
    if 2 * (state[1] + 2 * period) > table_keys.shape[0]:
        return -1
    cid = n
    cyc_canon[cid] = _canonical(members, start, stop)
    closed = True
    for i in range(start, stop):
        if _cycle_lookup(table_keys, table_ids, members[i]) < 0:
            _cycle_insert(table_keys, table_ids, members[i], cid)
            state[1] += 1
    # closed under negation iff -m is itself a member
    for i in range(start, stop):
        found = False
        for j in range(start, stop):
            if members[j] == -members[i]:
                found = True
                break
        if not found:
            closed = False
            break
    if closed:
        cyc_neg[cid] = cid
        state[0] = n + 1
        return cid
    nid = n + 1
    neg = np.empty(period, dtype=np.int64)
    for i in range(period):
        neg[i] = -members[start + i]
    cyc_canon[nid] = _canonical(neg, 0, period)
    for i in range(period):
        _cycle_insert(table_keys, table_ids, neg[i], nid)
        state[1] += 1
    cyc_neg[cid] = nid
    cyc_neg[nid] = cid
    state[0] = n + 2
    return cid


@njit(nogil=True, cache=True)
def classify_block_memo(lo, count, max_steps, buf, state, table_keys, table_ids,
                        cyc_canon, cyc_neg, memo_keys, memo_cls, memo_iters,
                        out_canon, out_iters):
    """Memoized twin of :func:`classify_block_plain`.

    Known cycle members live in a hash table (``table_*``) so a walk stops at
    the first member it meets. Tail values are cached by magnitude in a
    direct-mapped table (``memo_*``); the stored class id is for the positive
    orientation and ``cyc_neg`` maps it to the negative one. Class id -1 is the
    zero limit. All arrays persist across calls for one worker.
    """
    mmask = memo_keys.shape[0] - 1
    for i in range(count):
        x = lo + i
        if x == 0:
            out_canon[i] = ZERO_CLASS
            out_iters[i] = 0
            continue
        buf[0] = x
        k = 0
        cls = -2
        iters = 0
        while True:
            if k >= max_steps:
                return i
            u = step(buf[k])
            k += 1
            buf[k] = u
            if u == 0:
                cls = -1
                iters = k
                break
            cid = _cycle_lookup(table_keys, table_ids, u)
            if cid >= 0:
                cls = cid
                iters = k
                break
            a = u if u > 0 else -u
            slot = a & mmask
            if memo_keys[slot] == a:
                c = memo_cls[slot]
                if c >= 0 and u < 0:
                    c = cyc_neg[c]
                cls = c
                iters = k + memo_iters[slot]
                break
            found = -1
            for j in range(k):
                if buf[j] == u:
                    found = j
                    break
            if found >= 0:
                # a cycle the registry has not seen; buf[k] repeats buf[found]
                cid = _register_cycle(state, table_keys, table_ids, cyc_canon, cyc_neg,
                                      buf, found, k)
                if cid < 0:
                    canon, it, period = classify_one(x, max_steps, buf)
                    out_canon[i] = canon
                    out_iters[i] = it
                    cls = -3
                    break
                cls = cid
                iters = max(found, 1)
                # the walk overshot; truncate to the first member
                k = max(found, 1)
                break
        if cls == -3:
            continue
        out_canon[i] = ZERO_CLASS if cls == -1 else cyc_canon[cls]
        out_iters[i] = iters
        # cache the tail: buf[j] needs iters - j more iterations
        last = iters
        if cls >= 0:
            last = iters - 1
        for j in range(0, last + 1):
            if j > k:
                break
            v = buf[j]
            if v == 0:
                break
            if cls >= 0 and _cycle_lookup(table_keys, table_ids, v) >= 0:
                break
            rem = iters - j
            if rem <= 0:
                break
            a = v if v > 0 else -v
            slot = a & mmask
            memo_keys[slot] = a
            pc = cls
            if cls >= 0 and v < 0:
                pc = cyc_neg[cls]
            memo_cls[slot] = pc
            memo_iters[slot] = rem
    return -1


@njit(nogil=True, cache=True)
def tally(out_canon, out_iters, n, classes, counts):
    """Accumulate ``(canonical, iterations)`` pairs into ``counts``.

    ``classes`` receives canonicals in first-seen order and ``counts[c, it]``
    the histogram. Returns the number of distinct classes, or -1 if either
    array is too small.
    """
    nc = 0
    for i in range(n):
        c = out_canon[i]
        idx = -1
        for j in range(nc):
            if classes[j] == c:
                idx = j
                break
        if idx < 0:
            if nc >= classes.shape[0]:
                return -1
            classes[nc] = c
            idx = nc
            nc += 1
        it = out_iters[i]
        if it >= counts.shape[1]:
            return -1
        counts[idx, it] += 1
    return nc
