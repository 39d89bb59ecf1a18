"""Compiled word kernels.

Letters are signed int32 codes: generator ``i`` is ``i + 1``, its inverse
``-(i + 1)``.  Commutation is described by CSR arrays ``(nc_ptr, nc_idx)``
listing the generators that do *not* commute with each generator.

Reduction is the heap-of-pieces stack discipline: each generator keeps a
stack of its live letters plus a count of live non-commuting letters placed
after its top letter.  A new letter cancels the top of its own stack iff
that count is zero and the signs are opposite.  Each letter costs
O(1 + #non-commuting generators).
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _image_slot(c):
    if c > 0:
        return 2 * (c - 1)
    return 2 * (-c - 1) + 1


@njit(cache=True, nogil=True)
def substitute_reduce(codes, img_ptr, img_data, nc_ptr, nc_idx, n):
    """Substitute image words for ``codes`` and reduce, without materialising
    the unreduced product.

    ``img_ptr``/``img_data`` is a CSR table with slot ``2*i`` holding the
    image of generator ``i`` and slot ``2*i + 1`` the image of its inverse.
    """
    total = 0
    for k in range(codes.shape[0]):
        s = _image_slot(codes[k])
        total += img_ptr[s + 1] - img_ptr[s]
    out = np.empty(total, np.int32)
    prev = np.empty(total, np.int32)
    saved = np.empty(total, np.int32)
    alive = np.zeros(total, np.bool_)
    top = np.full(n, -1, np.int32)
    block = np.zeros(n, np.int32)
    p = 0
    for k in range(codes.shape[0]):
        s = _image_slot(codes[k])
        for q in range(img_ptr[s], img_ptr[s + 1]):
            x = img_data[q]
            g = abs(x) - 1
            t = top[g]
            if t >= 0 and block[g] == 0 and out[t] == -x:
                alive[t] = False
                top[g] = prev[t]
                block[g] = saved[t]
                for r in range(nc_ptr[g], nc_ptr[g + 1]):
                    block[nc_idx[r]] -= 1
            else:
                out[p] = x
                prev[p] = t
                saved[p] = block[g]
                alive[p] = True
                top[g] = p
                block[g] = 0
                for r in range(nc_ptr[g], nc_ptr[g + 1]):
                    block[nc_idx[r]] += 1
                p += 1
    return out[:p][alive[:p]]


@njit(cache=True, nogil=True)
def _reduce_into(codes, m, nc_ptr, nc_idx, out, prev, saved, alive, top, block, res):
    """Reduce ``codes[:m]`` into ``res`` using caller-owned work buffers.

    Returns the reduced length.  ``top`` and ``block`` must be sized to the
    number of generators; they are reset here.
    """
    top[:] = -1
    block[:] = 0
    p = 0
    for k in range(m):
        x = codes[k]
        g = abs(x) - 1
        t = top[g]
        if t >= 0 and block[g] == 0 and out[t] == -x:
            alive[t] = False
            top[g] = prev[t]
            block[g] = saved[t]
            for r in range(nc_ptr[g], nc_ptr[g + 1]):
                block[nc_idx[r]] -= 1
        else:
            out[p] = x
            prev[p] = t
            saved[p] = block[g]
            alive[p] = True
            top[g] = p
            block[g] = 0
            for r in range(nc_ptr[g], nc_ptr[g + 1]):
                block[nc_idx[r]] += 1
            p += 1
    length = 0
    for k in range(p):
        if alive[k]:
            res[length] = out[k]
            length += 1
    return length


@njit(cache=True, nogil=True)
def _lex_into(codes, m, nc_ptr, nc_idx, rank, n, cnt, ptr, col, head, removed, res):
    """Greedy lexicographic normal form of the reduced word ``codes[:m]``.

    Column ``g`` lists, in word order, every letter that cannot pass a
    ``g``-letter (``g`` itself and its non-commuting generators).  A
    ``g``-letter can be shuffled to the front iff it heads column ``g``.
    """
    cnt[:] = 0
    for k in range(m):
        g = abs(codes[k]) - 1
        cnt[g] += 1
        for r in range(nc_ptr[g], nc_ptr[g + 1]):
            cnt[nc_idx[r]] += 1
    ptr[0] = 0
    for g in range(n):
        ptr[g + 1] = ptr[g] + cnt[g]
        head[g] = ptr[g]
    for k in range(m):
        g = abs(codes[k]) - 1
        col[head[g]] = k
        head[g] += 1
        for r in range(nc_ptr[g], nc_ptr[g + 1]):
            j = nc_idx[r]
            col[head[j]] = k
            head[j] += 1
        removed[k] = False
    for g in range(n):
        head[g] = ptr[g]
    for k in range(m):
        pick = -1
        for i in range(n):
            g = rank[i]
            h = head[g]
            while h < ptr[g + 1] and removed[col[h]]:
                h += 1
            head[g] = h
            if h < ptr[g + 1] and abs(codes[col[h]]) - 1 == g:
                pick = col[h]
                break
        removed[pick] = True
        res[k] = codes[pick]
    return m


@njit(cache=True, nogil=True)
def lex_normal_form(codes, nc_ptr, nc_idx, rank, n):
    m = codes.shape[0]
    width = m * n
    res = np.empty(m, np.int32)
    _lex_into(codes, m, nc_ptr, nc_idx, rank, n,
              np.zeros(n, np.int64), np.zeros(n + 1, np.int64),
              np.empty(width, np.int64), np.zeros(n, np.int64),
              np.zeros(m, np.bool_), res)
    return res


@njit(cache=True, nogil=True)
def batch_normal_form(words, lengths, nc_ptr, nc_idx, rank, n):
    """Reduce then normal-form each row of ``words`` (row ``i`` uses
    ``lengths[i]`` letters).  Returns the forms padded with zeros and their
    lengths."""
    rows, w = words.shape
    out = np.empty(w, np.int32)
    prev = np.empty(w, np.int32)
    saved = np.empty(w, np.int32)
    alive = np.zeros(w, np.bool_)
    top = np.empty(n, np.int32)
    block = np.empty(n, np.int32)
    red = np.empty(w, np.int32)
    cnt = np.zeros(n, np.int64)
    ptr = np.zeros(n + 1, np.int64)
    col = np.empty(w * n, np.int64)
    head = np.zeros(n, np.int64)
    removed = np.zeros(w, np.bool_)
    forms = np.zeros((rows, w), np.int32)
    flen = np.empty(rows, np.int64)
    for i in range(rows):
        m = _reduce_into(words[i], lengths[i], nc_ptr, nc_idx, out, prev, saved,
                         alive, top, block, red)
        _lex_into(red, m, nc_ptr, nc_idx, rank, n, cnt, ptr, col, head, removed, forms[i])
        flen[i] = m
    return forms, flen
