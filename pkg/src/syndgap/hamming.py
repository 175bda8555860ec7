"""Hamming-ball volumes and ordered enumeration of low-weight words."""
from itertools import combinations, product
from math import comb

import numpy as np


def ball_volume(n, q, E):
    """|{x in F_q^n : wt(x) <= E}| as an exact integer."""
    if not 0 <= E <= n:
        raise ValueError("need 0 <= E <= n")
    return sum(comb(n, i) * (q - 1) ** i for i in range(E + 1))


def support_count(n, E):
    return sum(comb(n, i) for i in range(E + 1))


def words_of_weight(n, q, w, chunk=4096):
    """Yield arrays of all words of weight exactly w.

    Order: supports lexicographically, then nonzero value tuples
    lexicographically within a support.
    """
    if w == 0:
        yield np.zeros((1, n), dtype=np.int64)
        return
    values = np.array(list(product(range(1, q), repeat=w)), dtype=np.int64)
    nval = len(values)
    per = max(1, chunk // nval)
    supports = combinations(range(n), w)
    while True:
        block = [s for _, s in zip(range(per), supports)]
        if not block:
            return
        S = np.array(block, dtype=np.int64)
        out = np.zeros((len(S), nval, n), dtype=np.int64)
        rows = np.arange(len(S))[:, None, None]
        vals = np.arange(nval)[None, :, None]
        out[rows, vals, S[:, None, :]] = values[None, :, :]
        yield out.reshape(-1, n)


def words_up_to(n, q, E, chunk=4096):
    """All words of weight <= E, by increasing weight (same order within a weight)."""
    for w in range(E + 1):
        yield from words_of_weight(n, q, w, chunk)


def all_words(n, q, chunk=1 << 16):
    """Every word of F_q^n in lexicographic order, in chunks."""
    total = q**n
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield (idx[:, None] // powers[None, :]) % q
