"""Compiled sweeps over every tau-free standard word of Q up to a weight.

Words are packed little-endian in base h into int64 codes (letters are
1..h-1, so no digit is zero and the code determines the word). The sweeps
recompute d and delta from the derivation rule inside numba; the pure
Python versions in dga are the reference and the tests compare the two.
"""
from __future__ import annotations

import numba
import numpy as np

_BUF = 4096


def max_weight_for(h: int) -> int:
    """Largest weight whose words still fit in an int64 code."""
    n = 1
    while float(h) ** (n + 1) < 9.2e18:
        n += 1
    return n


def enumerate_words(h: int, max_weight: int) -> list:
    """Per-weight int64 arrays of all standard tau-free words of Q_{h,*}."""
    if max_weight > max_weight_for(h):
        raise ValueError(f"weight {max_weight} does not fit the int64 packing for h={h}")
    body_max = h - 2
    body = [np.zeros(1, dtype=np.int64)]  # weight 0: the empty word, code 0
    for n in range(1, max_weight + 1):
        parts = []
        for k in range(1, min(n, body_max) + 1):
            parts.append(k + h * body[n - k])
        body.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    out = []
    top = h - 1
    for n in range(max_weight + 1):
        ws = [body[n]]
        if n >= top:
            ws.append(top + h * body[n - top])
        out.append(np.concatenate(ws))
    return out


@numba.njit(cache=True)
def _powers(h):
    pw = np.empty(40, dtype=np.int64)
    pw[0] = 1
    for p in range(1, 40):
        pw[p] = pw[p - 1] * h if pw[p - 1] <= 9_200_000_000_000_000_000 // h else 0
    return pw


@numba.njit(cache=True)
def _d_terms(code, h, pw, codes, coefs, start, sign, corrupt):
    """Append sign * d(word) as (code, coef) pairs; return the new end index.

    Splitting letter i at position p into (j, i-j) is pure arithmetic on
    the packed code: prefix + (j + (i-j) h) h^p + suffix h^(p+2).
    corrupt=1 flips the sign of the xi_1 xi_2 term of d(xi_3) (negative control).
    """
    k = start
    p = 0
    rest = code
    while rest > 0:
        i = rest % h
        rest //= h
        if i >= 2:
            s = sign if p % 2 == 0 else -sign
            pre = code % pw[p]
            tail = rest * pw[p + 2]
            for j in range(1, i):
                codes[k] = pre + (j + (i - j) * h) * pw[p] + tail
                coefs[k] = -s if (corrupt and i == 3 and j == 1) else s
                k += 1
        p += 1
    return k


@numba.njit(cache=True)
def _cancels(codes, coefs, k, keys, vals, stamp, gen, touched):
    """True iff the (code, coef) list sums to zero; open addressing, no clearing."""
    mask = keys.shape[0] - 1
    nt = 0
    for t in range(k):
        c = codes[t]
        slot = ((c ^ (c >> 29)) * 0x9E3779B1) & mask
        while stamp[slot] == gen and keys[slot] != c:
            slot = (slot + 1) & mask
        if stamp[slot] != gen:
            stamp[slot] = gen
            keys[slot] = c
            vals[slot] = 0
            touched[nt] = slot
            nt += 1
        vals[slot] += coefs[t]
    for t in range(nt):
        if vals[touched[t]] != 0:
            return False
    return True


@numba.njit(cache=True)
def d_squared_sweep(words, h, corrupt=0):
    """Return (number of violations, first violating code or -1)."""
    pw = _powers(h)
    bad = 0
    first = -1
    c1 = np.empty(_BUF, dtype=np.int64)
    k1 = np.empty(_BUF, dtype=np.int64)
    c2 = np.empty(_BUF * 8, dtype=np.int64)
    k2 = np.empty(_BUF * 8, dtype=np.int64)
    keys = np.empty(_BUF * 16, dtype=np.int64)
    vals = np.empty(_BUF * 16, dtype=np.int64)
    stamp = np.zeros(_BUF * 16, dtype=np.int64)
    touched = np.empty(_BUF * 8, dtype=np.int64)
    for idx in range(words.shape[0]):
        m1 = _d_terms(words[idx], h, pw, c1, k1, 0, 1, corrupt)
        m2 = 0
        for t in range(m1):
            m2 = _d_terms(c1[t], h, pw, c2, k2, m2, k1[t], corrupt)
        if not _cancels(c2, k2, m2, keys, vals, stamp, idx + 1, touched):
            bad += 1
            if first < 0:
                first = words[idx]
    return bad, first


@numba.njit(cache=True)
def _delta_code(code, h, pw):
    """delta(xi_1 xi_i f) = xi_{i+1} f for i <= h-2; -1 encodes zero."""
    if code % h == 1:
        rest = code // h
        i = rest % h
        if rest > 0 and i <= h - 2:
            return (i + 1) + (rest // h) * h
    return -1


@numba.njit(cache=True)
def homotopy_sweep(words, h, corrupt=0):
    """Check (delta d + d delta)(w) = w - i pi(w) on every word."""
    pw = _powers(h)
    bad = 0
    first = -1
    c1 = np.empty(_BUF, dtype=np.int64)
    k1 = np.empty(_BUF, dtype=np.int64)
    acc_c = np.empty(_BUF * 2, dtype=np.int64)
    acc_k = np.empty(_BUF * 2, dtype=np.int64)
    keys = np.empty(_BUF * 8, dtype=np.int64)
    vals = np.empty(_BUF * 8, dtype=np.int64)
    stamp = np.zeros(_BUF * 8, dtype=np.int64)
    touched = np.empty(_BUF * 2, dtype=np.int64)
    for idx in range(words.shape[0]):
        code = words[idx]
        k = 0
        if h > 2:
            m1 = _d_terms(code, h, pw, c1, k1, 0, 1, corrupt)
            for t in range(m1):
                dc = _delta_code(c1[t], h, pw)
                if dc >= 0:
                    acc_c[k] = dc
                    acc_k[k] = k1[t]
                    k += 1
            dc = _delta_code(code, h, pw)
            if dc >= 0:
                k = _d_terms(dc, h, pw, acc_c, acc_k, k, 1, corrupt)
        # subtract w - i pi(w); pi keeps only 1 (code 0) and xi_1 (code 1)
        if code > 1:
            acc_c[k] = code
            acc_k[k] = -1
            k += 1
        if not _cancels(acc_c, acc_k, k, keys, vals, stamp, idx + 1, touched):
            bad += 1
            if first < 0:
                first = code
    return bad, first


def word_lengths(codes, h: int) -> list:
    """Sorted distinct word lengths in a code array."""
    lengths = set()
    c = np.array(codes, dtype=np.int64)
    n = 0
    while c.size:
        n += 1
        c = c // h
        done = c == 0
        if done.any():
            lengths.add(n)
            c = c[~done]
    if len(codes) and (np.asarray(codes) == 0).any():
        lengths.add(0)
    return sorted(lengths)


def decode_word(code: int, h: int) -> tuple:
    out = []
    while code > 0:
        out.append(int(code % h))
        code //= h
    return tuple(out)


def encode_word(word: tuple, h: int) -> int:
    code = 0
    for x in reversed(word):
        code = code * h + x
    return code
