"""Membership in and enumeration of the syndrome ball H_E = {Hx : wt(x) <= E}."""
import hashlib
import json
import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .codes import DEFAULT_CAP, syndrome_keys
from .errors import BudgetExceeded
from .hamming import ball_volume, support_count, words_up_to

__all__ = [
    "SyndromeBallQuery",
    "SyndromeSet",
    "member",
    "enumerate_ball",
    "ball_volume",
    "build_ball_sets",
    "BallCache",
]

STRATEGIES = ("exhaustive-support", "full-enumeration", "precomputed-set")


class SyndromeSet:
    """H_E as a sorted key array with one stored preimage of weight <= E per member."""

    def __init__(self, q, r, E, keys, preimages):
        order = np.argsort(keys, kind="stable")
        self.q = q
        self.r = r
        self.E = E
        self.keys = np.asarray(keys, dtype=np.int64)[order]
        self.preimages = np.asarray(preimages, dtype=np.int64)[order]
        self.keys.setflags(write=False)
        self.preimages.setflags(write=False)

    def __len__(self):
        return len(self.keys)

    def contains_keys(self, keys):
        keys = np.asarray(keys, dtype=np.int64)
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        return self.keys[pos] == keys

    def contains(self, S):
        """Membership of one syndrome (1-d) or of each row of S (2-d)."""
        S = np.asarray(S, dtype=np.int64)
        res = self.contains_keys(syndrome_keys(self.q, np.atleast_2d(S)))
        return bool(res[0]) if S.ndim == 1 else res

    def preimage(self, s):
        key = int(syndrome_keys(self.q, np.atleast_2d(s))[0])
        pos = int(np.searchsorted(self.keys, key))
        if pos < len(self.keys) and self.keys[pos] == key:
            return self.preimages[pos].copy()
        return None

    def members(self):
        powers = self.q ** np.arange(self.r - 1, -1, -1, dtype=np.int64)
        return (self.keys[:, None] // powers[None, :]) % self.q

    def to_json(self):
        return {
            "q": self.q,
            "r": self.r,
            "E": self.E,
            "keys": self.keys.tolist(),
            "preimages": self.preimages.tolist(),
        }

    @classmethod
    def from_json(cls, data):
        n_pre = np.array(data["preimages"], dtype=np.int64)
        return cls(data["q"], data["r"], data["E"], np.array(data["keys"], dtype=np.int64), n_pre)


@dataclass
class SyndromeBallQuery:
    code: object
    E: int
    strategy: str = "full-enumeration"
    budget: int = DEFAULT_CAP
    ball_set: SyndromeSet = None

    def __post_init__(self):
        if not 0 <= self.E <= self.code.n:
            raise ValueError("radius must lie in [0, n]")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy}")


def member_cost(n, q, E, strategy):
    if strategy == "exhaustive-support":
        return support_count(n, E)
    return ball_volume(n, q, E)


def member(query, s):
    """A preimage x with Hx = s and wt(x) <= E, or None.

    The returned preimage has minimal weight, then the lexicographically
    first support, then the lexicographically first values; at minimal
    weight the preimage on a given support is unique, so all strategies agree.
    """
    C, E = query.code, query.E
    s = np.asarray(s, dtype=np.int64)
    if query.strategy == "precomputed-set":
        ball = query.ball_set or enumerate_ball(query)
        return ball.preimage(s)
    cost = member_cost(C.n, C.q, E, query.strategy)
    if cost > query.budget:
        raise BudgetExceeded(cost, query.budget, f"member[{query.strategy}]")
    if query.strategy == "exhaustive-support":
        if not np.any(s):
            return np.zeros(C.n, dtype=np.int64)
        for w in range(1, E + 1):
            for T in combinations(range(C.n), w):
                z = linalg.solve_linear(C.F, C.H[:, T], s)
                if z is not None and np.count_nonzero(z) == w:
                    x = np.zeros(C.n, dtype=np.int64)
                    x[list(T)] = z
                    return x
        return None
    for block in words_up_to(C.n, C.q, E):
        hit = np.flatnonzero(np.all(C.syndromes(block) == s[None, :], axis=1))
        if hit.size:
            return block[hit[0]].copy()
    return None


def enumerate_ball(query):
    """Exact H_E with the first preimage (in weight/support/value order) for each member."""
    C, E = query.code, query.E
    cost = ball_volume(C.n, C.q, E)
    if cost > query.budget:
        raise BudgetExceeded(cost, query.budget, "enumerate")
    seen = set()
    keys, pre = [], []
    for block in words_up_to(C.n, C.q, E):
        k = syndrome_keys(C.q, C.syndromes(block))
        uk, first = np.unique(k, return_index=True)
        first = np.sort(first)
        for i in first:
            key = int(k[i])
            if key not in seen:
                seen.add(key)
                keys.append(key)
                pre.append(block[i])
    return SyndromeSet(C.q, C.r, E, np.array(keys, dtype=np.int64), np.array(pre, dtype=np.int64).reshape(-1, C.n))


def build_ball_sets(C, radii, budget=DEFAULT_CAP, cache=None):
    """Dict radius -> SyndromeSet, built once from the largest radius."""
    out = {}
    radii = sorted(set(radii))
    if not radii:
        return out
    top = radii[-1]
    big = cache.load(C, top) if cache else None
    if big is None:
        big = enumerate_ball(SyndromeBallQuery(C, top, budget=budget))
        if cache:
            cache.store(C, big)
    weights = np.count_nonzero(big.preimages, axis=1)
    for E in radii:
        # stored preimages have minimal weight, so H_E is the subset with weight <= E
        keep = weights <= E
        out[E] = SyndromeSet(C.q, C.r, E, big.keys[keep], big.preimages[keep])
    return out


class BallCache:
    """JSON files keyed by (seed, n, r, q, E); H is hashed and checked on load."""

    def __init__(self, directory):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, C, E):
        return os.path.join(self.directory, f"ball_s{C.seed}_n{C.n}_r{C.r}_q{C.q}_E{E}.json")

    @staticmethod
    def _digest(C):
        return hashlib.sha256(C.H.tobytes()).hexdigest()

    def load(self, C, E):
        path = self._path(C, E)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            data = json.load(fh)
        if data.get("H_sha256") != self._digest(C):
            return None
        return SyndromeSet.from_json(data)

    def store(self, C, ball):
        data = ball.to_json()
        data["H_sha256"] = self._digest(C)
        with open(self._path(C, ball.E), "w") as fh:
            json.dump(data, fh)
